#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotlab/complexes.hpp"

using namespace cotlab;

namespace {

Matrix mat(const Ring& r, int rows, int cols, std::vector<i64> e) {
    return Matrix(r, rows, cols, std::move(e));
}

// [R -x2-> R] in degrees 0, 1 over Z/4: the finite-support analogue of the
// periodic complex whose identity is not null-homotopic.
ChainComplex two_term_times2(const Ring& z4) {
    FPModule r1 = FPModule::free_module(z4, 1);
    ModuleMorphism d(r1, r1, mat(z4, 1, 1, {2}));
    return ChainComplex::checked(z4, 0, {r1, r1}, {d});
}

}  // namespace

TEST_CASE("elementary complexes") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    SUBCASE("sphere concentrated in one degree") {
        ChainComplex s = elementary_complex(ElementaryKind::Sphere, 0, z2);
        CHECK(s.lo() == 0);
        CHECK(s.hi() == 0);
        CHECK(is_isomorphic(homology(s, 0).homology, z2));
        CHECK(s.module_at(5).is_zero_module());
    }
    SUBCASE("disc is exact") {
        ChainComplex d = elementary_complex(ElementaryKind::Disc, 3, FPModule::free_module(z4, 1));
        CHECK(is_exact_complex(d));
    }
    SUBCASE("sphere on the zero module is the zero complex") {
        ChainComplex s = elementary_complex(ElementaryKind::Sphere, 2, FPModule::zero(z4));
        CHECK(s.is_zero());
    }
    SUBCASE("d∘d != 0 is rejected") {
        FPModule r1 = FPModule::free_module(z4, 1);
        ModuleMorphism one = ModuleMorphism::identity(r1);
        CHECK_THROWS(ChainComplex::checked(z4, 0, {r1, r1, r1}, {one, one}));
    }
}

TEST_CASE("homology of the two-term x2 complex") {
    Ring z4(4);
    ChainComplex c = two_term_times2(z4);
    CHECK(homology(c, 0).homology.invariants() == std::vector<i64>{2});
    CHECK(homology(c, 1).homology.invariants() == std::vector<i64>{2});
    CHECK_FALSE(is_exact_complex(c));
}

TEST_CASE("null homotopy worked examples") {
    Ring z4(4);
    SUBCASE("identity on the x2 complex has no homotopy") {
        ChainComplex c = two_term_times2(z4);
        CHECK_FALSE(null_homotopy(ChainMap::identity(c)).has_value());
    }
    SUBCASE("identity on a disc is null-homotopic") {
        ChainComplex d = elementary_complex(ElementaryKind::Disc, 0, FPModule::free_module(z4, 1));
        CHECK(null_homotopy(ChainMap::identity(d)).has_value());
    }
    SUBCASE("the zero map always has the zero homotopy") {
        ChainComplex c = two_term_times2(z4);
        CHECK(null_homotopy(ChainMap::zero_map(c, c)).has_value());
    }
}

TEST_CASE("all_chain_maps finds exactly the chain maps") {
    Ring z4(4);
    ChainComplex c = two_term_times2(z4);
    ChainComplex s = elementary_complex(ElementaryKind::Sphere, 1, FPModule::cyclic(z4, 2));
    // maps c -> S^1(Z/2): degree-1 component R -> Z/2 arbitrary (4 raw, 2 up
    // to congruence), no constraint from commuting since target is final.
    auto maps = all_chain_maps(c, s);
    CHECK(maps.size() == 2);
    // self-maps of the x2 complex: f0 = f1 mod the homotopy structure; count
    // by brute force over pairs (a, b) with 2a = 2b mod 4.
    auto selfmaps = all_chain_maps(c, c);
    int brute = 0;
    for (i64 a = 0; a < 4; ++a)
        for (i64 b = 0; b < 4; ++b)
            if ((2 * a) % 4 == (2 * b) % 4) ++brute;
    CHECK(static_cast<int>(selfmaps.size()) == brute);
}

TEST_CASE("classify worked examples") {
    Ring z4(4);
    Universe u = enumerate_universe(z4, 2);
    ClassSpec flat = ClassSpec::flat(z4);
    ClassSpec all = ClassSpec::all(z4);
    SUBCASE("disc on the free module is tilde-D") {
        ChainComplex d = elementary_complex(ElementaryKind::Disc, 0, FPModule::free_module(z4, 1));
        ComplexClassification r = classify(d, flat, all, u);
        CHECK(r.is_tilde_d);
        CHECK(r.is_dg_d);
        CHECK(r.exact);
    }
    SUBCASE("the x2 complex is dg-D but not tilde-D") {
        ComplexClassification r = classify(two_term_times2(z4), flat, all, u);
        CHECK(r.is_dg_d);
        CHECK_FALSE(r.is_tilde_d);
        CHECK_FALSE(r.exact);
    }
    SUBCASE("sphere on Z/2 is not dg-D for the flat pair") {
        ChainComplex s = elementary_complex(ElementaryKind::Sphere, 0, FPModule::cyclic(z4, 2));
        ComplexClassification r = classify(s, flat, all, u);
        CHECK_FALSE(r.is_dg_d);
        CHECK(r.is_dg_e);  // every entry lies in All
    }
}

TEST_CASE("tilde criterion agrees with classify") {
    Ring z4(4);
    Universe u = enumerate_universe(z4, 2);
    ClassSpec flat = ClassSpec::flat(z4);
    ClassSpec all = ClassSpec::all(z4);
    SUBCASE("disc agrees") {
        ChainComplex d = elementary_complex(ElementaryKind::Disc, 0, FPModule::free_module(z4, 1));
        CHECK(tilde_criterion_check(d, flat, all, u));
        CHECK(classify(d, flat, all, u).is_tilde_d);
    }
    SUBCASE("sphere fails on exactness") {
        ChainComplex s = elementary_complex(ElementaryKind::Sphere, 0, FPModule::cyclic(z4, 2));
        CHECK_FALSE(tilde_criterion_check(s, flat, all, u));
    }
    SUBCASE("exact complex with non-flat cycles fails via an Ext witness") {
        // splice two x2 discs: 0 -> Z/2 -> Z/4 -> Z/4 -> Z/2 -> 0 ... realized
        // as the exact complex [Z/4 -x2-> Z/4] extended by its kernel/cokernel
        FPModule r1 = FPModule::free_module(z4, 1);
        FPModule z2 = FPModule::cyclic(z4, 2);
        ModuleMorphism incl(z2, r1, mat(z4, 1, 1, {2}));
        ModuleMorphism times2(r1, r1, mat(z4, 1, 1, {2}));
        ModuleMorphism proj(r1, z2, mat(z4, 1, 1, {1}));
        ChainComplex c = ChainComplex::checked(z4, 0, {z2, r1, r1, z2}, {incl, times2, proj});
        REQUIRE(is_exact_complex(c));
        CHECK_FALSE(tilde_criterion_check(c, flat, all, u));
        CHECK(classify(c, flat, all, u).is_tilde_d == false);
        CHECK(tilde_criterion_check(c, all, ClassSpec::injective(z4), u) ==
              classify(c, all, ClassSpec::injective(z4), u).is_tilde_d);
    }
    SUBCASE("random samples agree on both routes") {
        Rng rng(61);
        Universe u12 = enumerate_universe(Ring(12), 1);
        ClassSpec f12 = ClassSpec::flat(u12.ring);
        ClassSpec a12 = ClassSpec::all(u12.ring);
        for (const auto& c : sample_entrywise_complexes(a12, u12, rng, 6, 3))
            CHECK(tilde_criterion_check(c, f12, a12, u12) ==
                  classify(c, f12, a12, u12).is_tilde_d);
        for (const auto& c : sample_tilde_complexes(f12, u12, rng, 6, 3))
            CHECK(tilde_criterion_check(c, f12, a12, u12));
    }
}

TEST_CASE("total complex of functor lifts") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    FPModule r1 = FPModule::free_module(z4, 1);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);
    SUBCASE("tensor of two spheres is a sphere on the tensor") {
        ChainComplex a = elementary_complex(ElementaryKind::Sphere, 0, z2);
        ChainComplex b = elementary_complex(ElementaryKind::Sphere, 0, r1);
        ChainComplex t = lift_functor_total(tz, {a, b});
        CHECK(t.lo() == 0);
        CHECK(t.hi() == 0);
        CHECK(is_isomorphic(t.module_at(0), z2));
    }
    SUBCASE("S0(Z/2) ⊗ D0(Z/4) is D0(Z/2)") {
        ChainComplex a = elementary_complex(ElementaryKind::Sphere, 0, z2);
        ChainComplex b = elementary_complex(ElementaryKind::Disc, 0, r1);
        ChainComplex t = lift_functor_total(tz, {a, b});
        CHECK(t.lo() == 0);
        CHECK(t.hi() == 1);
        CHECK(is_isomorphic(t.module_at(0), z2));
        CHECK(is_isomorphic(t.module_at(1), z2));
        CHECK(is_exact_complex(t));
        // elementwise: the differential is an isomorphism
        CHECK(is_monic(t.diff_at(0)));
        CHECK(is_epic(t.diff_at(0)));
    }
    SUBCASE("lift of the identity functor is the identity on complexes") {
        ChainComplex c = two_term_times2(z4);
        ChainComplex t = lift_functor_total(identity_adjunction(z4), {c});
        CHECK(t.lo() == c.lo());
        CHECK(t.hi() == c.hi());
        for (int n = c.lo(); n <= c.hi(); ++n) {
            CHECK(is_isomorphic(t.module_at(n), c.module_at(n)));
            CHECK(t.diff_at(n).action() == c.diff_at(n).action());
        }
    }
    SUBCASE("d∘d = 0 on random multicomplex totals, arity <= 3") {
        Rng rng(67);
        Universe u = enumerate_universe(z4, 1);
        ClassSpec all = ClassSpec::all(z4);
        for (int arity : {2, 3}) {
            AdjunctionPtr t3 = tensor_adjunction(z4, arity);
            std::vector<ChainComplex> inputs;
            for (int i = 0; i < arity; ++i)
                inputs.push_back(sample_entrywise_complexes(all, u, rng, 1, 3).front());
            // checked() inside asserts d∘d = 0
            ChainComplex t = lift_functor_total(t3, inputs);
            CHECK(t.length() >= 1);
        }
    }
}

TEST_CASE("sum and product total flavors agree") {
    Ring z4(4);
    Rng rng(71);
    Universe u = enumerate_universe(z4, 1);
    ClassSpec all = ClassSpec::all(z4);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);
    for (int i = 0; i < 4; ++i) {
        auto a = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        auto b = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        CHECK(total_flavors_agree(lift_functor(tz, {a, b})));
    }
}

TEST_CASE("adjoint lift uses reversed indexing") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);
    ChainComplex a = elementary_complex(ElementaryKind::Sphere, 1, z2);
    ChainComplex b = elementary_complex(ElementaryKind::Sphere, 2, z2);
    // Ch(G^0)(S^1(Z/2), S^2(Z/2)) should sit in degree 2 - 1 = 1
    ChainComplex g = lift_adjoint_total(tz, 0, {a}, b);
    ChainComplex pruned = g.pruned();
    CHECK(pruned.lo() == 1);
    CHECK(pruned.hi() == 1);
    CHECK(is_isomorphic(pruned.module_at(1), hom_module(z2, z2).module));
}

TEST_CASE("disc extension realizes a complex SES with disc cokernel") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    ChainComplex x = elementary_complex(ElementaryKind::Sphere, 0, z2);
    Ext1Classes e = ext1_classes(z2, z2);
    auto reps = e.all_class_reps();
    REQUIRE(reps.size() == 2);
    int nonsplit_mid_seen = 0;
    for (const auto& cls : reps) {
        ComplexSES s = disc_extension(x, 0, z2, cls);
        CHECK(s.quot.module_at(0).invariants() == std::vector<i64>{2});
        CHECK(s.quot.module_at(1).invariants() == std::vector<i64>{2});
        if (s.mid.module_at(0).invariants() == std::vector<i64>{4}) ++nonsplit_mid_seen;
    }
    CHECK(nonsplit_mid_seen == 1);  // exactly one nonsplit class
}

TEST_CASE("sphere extension lifts only compatible classes") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    // x = S^0(Z/2): no outgoing differential, so every class lifts
    ChainComplex x = elementary_complex(ElementaryKind::Sphere, 0, z2);
    for (const auto& cls : ext1_classes(z2, z2).all_class_reps()) {
        auto s = sphere_extension(x, 0, z2, cls);
        REQUIRE(s.has_value());
        CHECK(s->quot.module_at(0).invariants() == std::vector<i64>{2});
    }
}

TEST_CASE("twisted split extensions are degreewise split but twisted") {
    Ring z4(4);
    Rng rng(73);
    Universe u = enumerate_universe(z4, 1);
    ClassSpec all = ClassSpec::all(z4);
    for (int i = 0; i < 5; ++i) {
        ChainComplex a = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        ChainComplex d = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        ComplexSES s = twisted_split_extension(a, d, rng);
        CHECK(is_exact_sequence(s.sub, s.mid, s.quot, s.inj, s.surj));
    }
}

TEST_CASE("homology long exact sequence on degreewise-split SES of complexes") {
    // Six-term segments H^n(A) -> H^n(B) -> H^n(D) -> H^{n+1}(A) -> ... are
    // exact; verified through the snake construction degreewise.
    Ring z4(4);
    Rng rng(79);
    Universe u = enumerate_universe(z4, 1);
    ClassSpec all = ClassSpec::all(z4);
    for (int i = 0; i < 4; ++i) {
        ChainComplex a = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        ChainComplex d = sample_entrywise_complexes(all, u, rng, 1, 3).front();
        ComplexSES s = twisted_split_extension(a, d, rng);
        for (int n = s.mid.lo(); n < s.mid.hi(); ++n) {
            // snake over the vertical differential maps of the SES at degree n
            ShortExactSequence top = ShortExactSequence::checked(s.inj.at(n), s.surj.at(n));
            ShortExactSequence bot =
                ShortExactSequence::checked(s.inj.at(n + 1), s.surj.at(n + 1));
            SesMorphism sm = SesMorphism::checked(top, bot, s.sub.diff_at(n), s.mid.diff_at(n),
                                                  s.quot.diff_at(n));
            SnakeSequence snake = snake_sequence(sm);
            CHECK(snake.exact());
        }
    }
}

TEST_CASE("sampled SES with dg and tilde cokernels have the advertised classes") {
    Ring z12(12);
    Rng rng(83);
    Universe u = enumerate_universe(z12, 1);
    ClassSpec flat = ClassSpec::flat(z12);
    ClassSpec all = ClassSpec::all(z12);
    for (const auto& s : sample_ses_with_dg_cokernel(flat, u, rng, 6))
        CHECK(classify(s.quot, flat, all, u).is_dg_d);
    for (const auto& s : sample_ses_with_tilde_cokernel(flat, u, rng, 6))
        CHECK(classify(s.quot, flat, all, u).is_tilde_d);
}

TEST_CASE("bounded complexes with D entries admit no obstruction against tilde-E complexes") {
    // Finite-support reading of the bounded-are-dg lemma: every chain map
    // from an entrywise-D complex into a tilde-E complex is null-homotopic.
    Ring z4(4);
    Rng rng(89);
    Universe u = enumerate_universe(z4, 1);
    ClassSpec flat = ClassSpec::flat(z4);
    ClassSpec all = ClassSpec::all(z4);
    auto dgs = sample_entrywise_complexes(flat, u, rng, 4, 3);
    auto tildes = sample_tilde_complexes(all, u, rng, 4, 3);
    int checked = 0;
    for (const auto& c : dgs)
        for (const auto& e : tildes) {
            // tilde-E for (Flat, All) means exact with arbitrary cycles
            REQUIRE(is_exact_complex(e));
            for (const auto& f : all_chain_maps(c, e)) {
                CHECK(null_homotopy(f).has_value());
                ++checked;
            }
        }
    CHECK(checked > 0);
}

TEST_CASE("compatibility: exact entrywise-flat complexes have flat cycles") {
    // For the hereditary verified pair, every finitely supported exact
    // complex with entries in D has all cycles in D. Exhaustive over short
    // free-entry complexes over Z/4.
    Ring z4(4);
    Universe u = enumerate_universe(z4, 2);
    ClassSpec flat = ClassSpec::flat(z4);
    std::vector<FPModule> frees{FPModule::free_module(z4, 1), FPModule::free_module(z4, 2)};
    int exact_seen = 0;
    for (const auto& a : frees)
        for (const auto& b : frees)
            for (const auto& c : frees) {
                // enumerate all differential pairs with d1*d2 = 0
                for (const auto& d1 : hom_module(a, b).all_morphisms()) {
                    for (const auto& d2 : hom_module(b, c).all_morphisms()) {
                        if (!d1.then(d2).is_zero_morphism()) continue;
                        ChainComplex cx = ChainComplex::checked(z4, 0, {a, b, c}, {d1, d2});
                        if (!is_exact_complex(cx)) continue;
                        ++exact_seen;
                        for (int n = 0; n <= 2; ++n)
                            CHECK(flat.contains(homology(cx, n).cycles));
                    }
                }
            }
    CHECK(exact_seen > 0);
}

TEST_CASE("tilde complexes are dg and exact on all classified samples") {
    Ring z12(12);
    Universe u = enumerate_universe(z12, 1);
    ClassSpec flat = ClassSpec::flat(z12);
    ClassSpec all = ClassSpec::all(z12);
    Rng rng(97);
    for (const auto& c : sample_tilde_complexes(flat, u, rng, 8, 3)) {
        ComplexClassification r = classify(c, flat, all, u);
        CHECK(r.is_tilde_d);
        CHECK(r.is_dg_d);
        CHECK(r.exact);
    }
}
