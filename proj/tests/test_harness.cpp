#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotlab/harness.hpp"

using namespace cotlab;

TEST_CASE("json round trips") {
    Ring z12(12);
    SUBCASE("matrix") {
        Matrix m(z12, 2, 3, {1, 2, 3, 4, 5, 6});
        CHECK(matrix_from_json(to_json(m)) == m);
    }
    SUBCASE("module via presentation and via invariants") {
        FPModule m(z12, Matrix(z12, 2, 2, {2, 0, 0, 6}));
        FPModule back = module_from_json(to_json(m));
        CHECK(back.presentation() == m.presentation());
        Json j{{"ring", 12}, {"invariants", {2, 6}}};
        CHECK(module_from_json(j).invariants() == std::vector<i64>{2, 6});
    }
    SUBCASE("morphism") {
        FPModule z2 = FPModule::cyclic(z12, 2);
        FPModule z6 = FPModule::cyclic(z12, 6);
        ModuleMorphism f(z2, z6, Matrix(z12, 1, 1, {3}));
        ModuleMorphism back = morphism_from_json(to_json(f));
        CHECK(back.action() == f.action());
    }
    SUBCASE("ses validates on load") {
        ShortExactSequence s = split_ses(FPModule::cyclic(z12, 2), FPModule::cyclic(z12, 3));
        ShortExactSequence back = ses_from_json(to_json(s));
        CHECK(back.mid.invariants() == s.mid.invariants());
        Json bad = to_json(s);
        bad["surj"] = to_json(Matrix::zero(z12, 2, 1));
        CHECK_THROWS(ses_from_json(bad));
    }
    SUBCASE("complex") {
        Ring z4(4);
        FPModule r1 = FPModule::free_module(z4, 1);
        ChainComplex c = ChainComplex::checked(z4, -1, {r1, r1},
                                               {ModuleMorphism(r1, r1, Matrix(z4, 1, 1, {2}))});
        ChainComplex back = complex_from_json(to_json(c));
        CHECK(back.lo() == -1);
        CHECK(back.diff_at(-1).action() == c.diff_at(-1).action());
    }
}

TEST_CASE("gen_random postconditions") {
    Ring z4(4);
    Universe u = enumerate_universe(z4, 2);
    SUBCASE("ses with flat cokernel, invariants verified at construction") {
        ShortExactSequence s = gen_random_ses(ClassSpec::flat(z4), u, 1);
        CHECK(ClassSpec::flat(z4).contains(s.right));
        CHECK(is_monic(s.inj));
        CHECK(is_epic(s.surj));
    }
    SUBCASE("module from the enumerated universe") {
        FPModule m = gen_random_module(Ring(12), 2, 5);
        CHECK(enumerate_universe(Ring(12), 2).contains(m));
    }
    SUBCASE("same seed twice gives identical values") {
        for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
            ShortExactSequence a = gen_random_ses(ClassSpec::flat(z4), u, seed);
            ShortExactSequence b = gen_random_ses(ClassSpec::flat(z4), u, seed);
            CHECK(a.mid.presentation() == b.mid.presentation());
            CHECK(a.inj.action() == b.inj.action());
            ChainComplex c1 = gen_random_complex(ClassSpec::all(z4), u, seed, 3);
            ChainComplex c2 = gen_random_complex(ClassSpec::all(z4), u, seed, 3);
            CHECK(to_json(c1) == to_json(c2));
        }
    }
    SUBCASE("empty class is an error") {
        ClassSpec empty = ClassSpec::explicit_list(z4, {});
        CHECK_THROWS(gen_random_ses(empty, u, 1));
    }
}

TEST_CASE("scenario round trip and bundled scenarios") {
    Scenario s;
    s.name = "t";
    s.seed = 9;
    s.trials = 3;
    s.checks.push_back(Json{{"id", "nullhomotopy-example"}});
    Scenario back = Scenario::from_json(s.to_json_value());
    CHECK(back.name == "t");
    CHECK(back.seed == 9);
    CHECK(back.checks == s.checks);

    CHECK(bundled_scenario("paper-core-z4").has_value());
    CHECK(bundled_scenario("negative-controls").has_value());
    CHECK_FALSE(bundled_scenario("nope").has_value());
}

TEST_CASE("run_suite determinism modulo timing") {
    Scenario s;
    s.name = "det";
    s.seed = 4;
    s.trials = 6;
    s.checks.push_back(Json{{"id", "cotorsion-pair"}, {"ring", 4}, {"max_factors", 1},
                            {"d", "flat"}, {"e", "all"}});
    s.checks.push_back(Json{{"id", "lemma"}, {"lemma", "coker-pushout"}, {"ring", 4},
                            {"arity", 2}, {"trials", 6}});
    s.checks.push_back(Json{{"id", "nullhomotopy-example"}});
    RunReport a = run_suite(s);
    RunReport b = run_suite(s);
    CHECK(a.to_json_value(false) == b.to_json_value(false));
}

TEST_CASE("empty suite passes trivially") {
    Scenario s;
    s.name = "empty";
    RunReport r = run_suite(s);
    CHECK(r.checks.empty());
    CHECK(r.all_as_expected());
}

TEST_CASE("harness distinguishes hypothesis failure from conclusion failure") {
    Scenario s;
    s.name = "controls";
    s.seed = 2;
    // hypothesis failure: broken pair feeding the hereditary checker
    s.checks.push_back(Json{{"id", "hereditary"}, {"ring", 4}, {"max_factors", 1},
                            {"d", "explicit:@z2"}, {"e", "explicit:@z2"}, {"expect", "fail"}});
    // conclusion failure: valid pairs, bad functor
    s.checks.push_back(Json{{"id", "split1"}, {"functor", "tensor:2"}, {"ring", 4},
                            {"max_factors", 2}, {"d", "flat"}, {"e", "all"}, {"expect", "fail"}});
    RunReport r = run_suite(s);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.all_as_expected());
    CHECK(r.checks[0].hypothesis_failed);
    CHECK_FALSE(r.checks[1].hypothesis_failed);
}

TEST_CASE("class and functor parsing") {
    Ring z12(12);
    CHECK(class_from_name("flat", z12).label() == "flat");
    CHECK(class_from_name("explicit:@z2", z12).contains(FPModule::cyclic(z12, 2)));
    CHECK_THROWS(class_from_name("bogus", z12));
    CHECK(functor_from_name("tensor:2", Ring(4))->arity() == 1);
    CHECK(functor_from_name("tensor2", Ring(4))->arity() == 2);
    CHECK(functor_from_name("basechange:12:4", z12)->result_ring().modulus() == 4);
    CHECK_THROWS(functor_from_name("basechange:12:5", z12));
    CHECK_THROWS(functor_from_name("warp", z12));
}
