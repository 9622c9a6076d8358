#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotlab/products.hpp"

using namespace cotlab;

namespace {

Matrix mat(const Ring& r, int rows, int cols, std::vector<i64> e) {
    return Matrix(r, rows, cols, std::move(e));
}

// f: Z/2 -> Z/4 multiplication-by-2 inclusion over Z/4.
ModuleMorphism times2_inclusion(const Ring& z4) {
    FPModule z2 = FPModule::cyclic(z4, 2);
    FPModule r1 = FPModule::free_module(z4, 1);
    return ModuleMorphism(z2, r1, mat(z4, 1, 1, {2}));
}

}  // namespace

TEST_CASE("pushout product worked examples") {
    Ring z4(4);
    FPModule r1 = FPModule::free_module(z4, 1);
    FPModule zero = FPModule::zero(z4);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);

    SUBCASE("zero sources give 0 -> R with cokernel R") {
        ModuleMorphism f = ModuleMorphism::zero(zero, r1);
        PushoutProduct pp = pushout_product(tz, {f, f});
        CHECK(pp.colimit.module.is_zero_module());
        CHECK(is_monic(pp.map));
        CHECK(is_isomorphic(cokernel(pp.map).module, r1));
    }
    SUBCASE("the non-flat corner: source Z/2+Z/2, kernel Z/2, cokernel Z/2") {
        ModuleMorphism f = times2_inclusion(z4);
        PushoutProduct pp = pushout_product(tz, {f, f});
        CHECK(pp.colimit.module.invariants() == std::vector<i64>{2, 2});
        CHECK_FALSE(is_monic(pp.map));
        CHECK(kernel(pp.map).module.invariants() == std::vector<i64>{2});
        CHECK(cokernel(pp.map).module.invariants() == std::vector<i64>{2});
    }
    SUBCASE("slot fixed at 0 -> X agrees with the restricted functor") {
        ModuleMorphism f = times2_inclusion(z4);
        FPModule x = FPModule::cyclic(z4, 2);
        AdjunctionPtr restricted = restrict_adjunction(tz, 1, x);
        PushoutProduct lhs = pushout_product(restricted, {f});
        std::vector<ModuleMorphism> fs{f, ModuleMorphism::zero(zero, x)};
        PushoutProduct rhs = pushout_product(tz, fs);
        CHECK(is_isomorphic(lhs.colimit.module, rhs.colimit.module));
        CHECK(is_isomorphic(lhs.map.target(), rhs.map.target()));
    }
}

TEST_CASE("pullback product worked examples") {
    Ring z4(4);
    FPModule z2 = FPModule::cyclic(z4, 2);
    FPModule r1 = FPModule::free_module(z4, 1);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);

    SUBCASE("identity morphisms give an isomorphism") {
        ModuleMorphism idm = ModuleMorphism::identity(z2);
        PullbackProduct pb = pullback_product(tz, 0, {idm}, ModuleMorphism::identity(r1));
        CHECK(is_monic(pb.map));
        CHECK(is_epic(pb.map));
    }
    SUBCASE("hom pullback product, elementwise image comparison") {
        // f: Z/2 -> Z/4 (cokernel Z/2, not flat) and the epi Z/4 -> Z/2 with
        // kernel Z/2 (not injective): the hypotheses of the splitness
        // proposition fail and so does surjectivity; both sides enumerated.
        ModuleMorphism f = times2_inclusion(z4);
        ModuleMorphism epi(r1, z2, mat(z4, 1, 1, {1}));
        PullbackProduct pb = pullback_product(tz, 0, {f}, epi);
        CHECK(pb.map.source().cardinality() == 4);  // Hom(Z/4, Z/4)
        CHECK(pb.limit.module.cardinality() == 4);
        CHECK(image(pb.map).module.cardinality() == 2);
        CHECK_FALSE(is_epic(pb.map));
        // the same construction with hypotheses satisfied is epic
        ModuleMorphism free_epi(r1, r1, mat(z4, 1, 1, {1}));
        PullbackProduct ok = pullback_product(tz, 0, {ModuleMorphism::zero(FPModule::zero(z4), r1)},
                                              free_epi);
        CHECK(is_epic(ok.map));
    }
    SUBCASE("a zero slot degenerates to plain hom application") {
        ModuleMorphism z = ModuleMorphism::zero(FPModule::zero(z4), FPModule::zero(z4));
        ModuleMorphism epi(r1, z2, mat(z4, 1, 1, {1}));
        PullbackProduct pb = pullback_product(tz, 0, {z}, epi);
        // G(0, -) = Hom(0, -) = 0; the map is between zero modules
        CHECK(pb.map.source().is_zero_module());
        CHECK(pb.limit.module.is_zero_module());
    }
}

TEST_CASE("verify_coker_formula worked examples") {
    Ring z4(4);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);
    SUBCASE("the Z/4 corner example has cokernel Z/2 on both routes") {
        ModuleMorphism f = times2_inclusion(z4);
        std::string detail;
        CHECK(verify_coker_formula(tz, {f, f}, &detail));
    }
    SUBCASE("identities give zero on both sides") {
        FPModule z2 = FPModule::cyclic(z4, 2);
        ModuleMorphism idm = ModuleMorphism::identity(z2);
        CHECK(verify_coker_formula(tz, {idm, idm}));
    }
    SUBCASE("n = 3 over Z/6 with random morphisms") {
        LemmaReport r = verify_lemma_coker_pushout(Ring(6), 3, 99, 10);
        CHECK(r.pass());
        CHECK(r.trials == 10);
    }
}

TEST_CASE("check_split_1var worked examples") {
    Ring z4(4);
    Universe u4 = enumerate_universe(z4, 2);
    ClassSpec flat4 = ClassSpec::flat(z4);
    ClassSpec all4 = ClassSpec::all(z4);

    SUBCASE("Z/2 ⊗ - over Z/4 with (Flat, All): 1a holds, 1b fails, equivalence kept") {
        AdjunctionPtr f = restrict_adjunction(tensor_adjunction(z4, 2), 0, FPModule::cyclic(z4, 2));
        Split1VarReport r = check_split_1var(f, flat4, all4, flat4, all4, u4, u4);
        REQUIRE(r.ok);
        CHECK(r.c1a.pass);
        CHECK_FALSE(r.c1b.pass);
        CHECK_FALSE(r.left_holds());
        CHECK_FALSE(r.right_holds());
        CHECK(r.equivalence_holds);
    }
    SUBCASE("base change Z/12 -> Z/4 with flat pairs passes all four") {
        BaseChangePair bc = base_change(12, 4);
        Universe u12 = enumerate_universe(bc.from, 2);
        Split1VarReport r =
            check_split_1var(bc.adjunction, ClassSpec::flat(bc.from), ClassSpec::all(bc.from),
                             flat4, all4, u12, u4);
        REQUIRE(r.ok);
        CHECK(r.c1a.pass);
        CHECK(r.c1b.pass);
        CHECK(r.c2a.pass);
        CHECK(r.c2b.pass);
        CHECK(r.equivalence_holds);
    }
    SUBCASE("the identity adjunction passes all four") {
        Split1VarReport r = check_split_1var(identity_adjunction(z4), flat4, all4, flat4, all4,
                                             u4, u4);
        REQUIRE(r.ok);
        CHECK(r.left_holds());
        CHECK(r.right_holds());
        CHECK(r.equivalence_holds);
    }
    SUBCASE("precondition failure refuses to run") {
        ClassSpec broken = ClassSpec::explicit_list(z4, {FPModule::cyclic(z4, 2)});
        Split1VarReport r = check_split_1var(identity_adjunction(z4), broken, broken, flat4, all4,
                                             u4, u4);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(r.precondition_failure.empty());
    }
}

TEST_CASE("check_nsplit_duality worked examples") {
    SUBCASE("binary tensor over Z/4 with (Flat, All) everywhere") {
        Ring z4(4);
        Universe u = enumerate_universe(z4, 2);
        ClassSpec flat = ClassSpec::flat(z4);
        ClassSpec all = ClassSpec::all(z4);
        NSplitReport r = check_nsplit_duality(tensor_adjunction(z4, 2), {flat, flat}, {all, all},
                                              {u, u}, flat, all, u);
        REQUIRE(r.ok);
        CHECK(r.left_holds());
        CHECK(r.right_holds());
        CHECK(r.equivalence_holds);
    }
    SUBCASE("binary tensor over Z/12 holds as well") {
        Ring z12(12);
        Universe u = enumerate_universe(z12, 1);
        ClassSpec flat = ClassSpec::flat(z12);
        ClassSpec all = ClassSpec::all(z12);
        NSplitReport r = check_nsplit_duality(tensor_adjunction(z12, 2), {flat, flat}, {all, all},
                                              {u, u}, flat, all, u);
        REQUIRE(r.ok);
        CHECK(r.left_holds());
        CHECK(r.right_holds());
        CHECK(r.equivalence_holds);
    }
    SUBCASE("broken explicit slot class fails 0b and some right condition") {
        // the broken class must sit in a slot that feeds both collections
        Ring z4(4);
        Universe u = enumerate_universe(z4, 1);
        ClassSpec flat = ClassSpec::flat(z4);
        ClassSpec all = ClassSpec::all(z4);
        ClassSpec broken = ClassSpec::explicit_list(
            z4, {FPModule::zero(z4), FPModule::cyclic(z4, 2)});
        NSplitReport r = check_nsplit_duality(tensor_adjunction(z4, 2), {flat, broken}, {all, all},
                                              {u, u}, flat, all, u, /*skip_pair_check=*/true);
        REQUIRE(r.ok);
        bool b0_failed = false;
        for (const auto& s : r.zero_side)
            if (s.condition == "0b" && !s.pass) b0_failed = true;
        CHECK(b0_failed);
        CHECK_FALSE(r.left_holds());
        CHECK(r.equivalence_holds);  // both collections fail together
        CHECK_FALSE(r.right_holds());
        // failing reports carry replayable counterexamples
        for (const auto& s : r.zero_side)
            if (!s.pass) CHECK_FALSE(s.counterexamples.empty());
    }
}

TEST_CASE("check_corner_map worked examples") {
    Ring z4(4);
    Universe u = enumerate_universe(z4, 2);
    ClassSpec flat = ClassSpec::flat(z4);
    ClassSpec all = ClassSpec::all(z4);
    AdjunctionPtr tz = tensor_adjunction(z4, 2);
    FPModule r1 = FPModule::free_module(z4, 1);
    FPModule zero = FPModule::zero(z4);

    SUBCASE("flat-cokernel monos 0 -> R give a monic product with cokernel R") {
        ModuleMorphism f = ModuleMorphism::zero(zero, r1);
        CornerMapReport r = check_corner_map(tz, {flat, flat}, {all, all}, {u, u}, flat, all, u,
                                           {f, f});
        CHECK(r.ok);
        CHECK(r.monic);
        CHECK(r.coker_iso);
    }
    SUBCASE("the non-flat cokernel refuses the hypotheses but reports diagnostics") {
        ModuleMorphism f = times2_inclusion(z4);
        CornerMapReport r = check_corner_map(tz, {flat, flat}, {all, all}, {u, u}, flat, all, u,
                                           {f, f});
        CHECK_FALSE(r.ok);
        CHECK_FALSE(r.precondition_failure.empty());
        CHECK_FALSE(r.monic);   // hypothesis is necessary
        CHECK(r.coker_iso);     // the cokernel formula holds regardless
    }
    SUBCASE("random flat-cokernel extensions over Z/12 stay monic") {
        Ring z12(12);
        Universe u12 = enumerate_universe(z12, 1);
        ClassSpec flat12 = ClassSpec::flat(z12);
        ClassSpec all12 = ClassSpec::all(z12);
        AdjunctionPtr t12 = tensor_adjunction(z12, 2);
        auto sess = enumerate_ses_with_cokernel_in(flat12, u12);
        Rng rng(123);
        for (int i = 0; i < 12; ++i) {
            const auto& s1 = sess[static_cast<size_t>(rng.below(static_cast<i64>(sess.size())))];
            const auto& s2 = sess[static_cast<size_t>(rng.below(static_cast<i64>(sess.size())))];
            CornerMapReport r = check_corner_map(t12, {flat12, flat12}, {all12, all12}, {u12, u12},
                                               flat12, all12, u12, {s1.inj, s2.inj});
            CHECK(r.ok);
            CHECK(r.monic);
            CHECK(r.coker_iso);
        }
    }
}

TEST_CASE("check_quillen_1var worked examples") {
    SUBCASE("base change Z/12 -> Z/4 with flat pairs passes the three conditions") {
        BaseChangePair bc = base_change(12, 4);
        Universe u12 = enumerate_universe(bc.from, 1);
        Universe u4 = enumerate_universe(bc.to, 1);
        QuillenReport r = check_quillen_1var(
            bc.adjunction, ClassSpec::flat(bc.from), ClassSpec::all(bc.from),
            ClassSpec::flat(bc.to), ClassSpec::all(bc.to), u12, u4, Rng(7), 8);
        REQUIRE(r.ok);
        CHECK(r.lifted_exactness);
        CHECK(r.preserves_tilde);
        CHECK(r.preserves_dg);
        CHECK(r.ses_samples >= 8);
    }
    SUBCASE("identity adjunction passes") {
        Ring z4(4);
        Universe u = enumerate_universe(z4, 1);
        ClassSpec flat = ClassSpec::flat(z4);
        ClassSpec all = ClassSpec::all(z4);
        QuillenReport r =
            check_quillen_1var(identity_adjunction(z4), flat, all, flat, all, u, u, Rng(8), 6);
        REQUIRE(r.ok);
        CHECK(r.all_pass());
    }
    SUBCASE("failed split precondition refuses to run") {
        Ring z4(4);
        Universe u = enumerate_universe(z4, 2);
        ClassSpec flat = ClassSpec::flat(z4);
        ClassSpec all = ClassSpec::all(z4);
        AdjunctionPtr f = restrict_adjunction(tensor_adjunction(z4, 2), 0, FPModule::cyclic(z4, 2));
        QuillenReport r = check_quillen_1var(f, flat, all, flat, all, u, u, Rng(9), 4);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(r.precondition_failure.empty());
    }
}

TEST_CASE("check_cot_main worked examples") {
    SUBCASE("binary tensor over Z/4 with (Flat, All)") {
        Ring z4(4);
        Universe u = enumerate_universe(z4, 1);
        ClassSpec flat = ClassSpec::flat(z4);
        ClassSpec all = ClassSpec::all(z4);
        QuillenReport r = check_cot_main(tensor_adjunction(z4, 2), {flat, flat}, {all, all},
                                         {u, u}, flat, all, u, Rng(11), 6);
        REQUIRE(r.ok);
        CHECK(r.all_pass());
    }
    SUBCASE("binary tensor over Z/12") {
        Ring z12(12);
        Universe u = enumerate_universe(z12, 1);
        ClassSpec flat = ClassSpec::flat(z12);
        ClassSpec all = ClassSpec::all(z12);
        QuillenReport r = check_cot_main(tensor_adjunction(z12, 2), {flat, flat}, {all, all},
                                         {u, u}, flat, all, u, Rng(12), 4);
        REQUIRE(r.ok);
        CHECK(r.all_pass());
    }
}

TEST_CASE("lemma batteries at small trial counts") {
    SUBCASE("pp-restriction at n = 2 and 3") {
        CHECK(verify_lemma_pp_restriction(Ring(4), 2, 5, 8).pass());
        CHECK(verify_lemma_pp_restriction(Ring(6), 3, 5, 4).pass());
    }
    SUBCASE("pp-square at n = 2 and 3") {
        CHECK(verify_lemma_pp_square(Ring(4), 2, 6, 8).pass());
        CHECK(verify_lemma_pp_square(Ring(6), 3, 6, 4).pass());
    }
    SUBCASE("pp-adjunction at n = 2 and 3") {
        CHECK(verify_lemma_pp_adjunction(Ring(4), 2, 7, 6).pass());
        CHECK(verify_lemma_pp_adjunction(Ring(4), 3, 7, 3).pass());
    }
    SUBCASE("flat-split is exhaustive and snake-checked") {
        LemmaReport r = verify_lemma_flat_split(Ring(6), 1);
        CHECK(r.pass());
        CHECK(r.trials > 0);
    }
    SUBCASE("exact-sums") { CHECK(verify_lemma_exact_sums(Ring(12), 13, 10).pass()); }
    SUBCASE("corner-map converse finds conclusion failures for broken hypotheses") {
        CHECK(verify_corner_converse(Ring(4), 21, 20).pass());
    }
}
