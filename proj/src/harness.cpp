#include "cotlab/harness.hpp"

#include <chrono>
#include <fstream>

#include "cotlab/parallel.hpp"
#include <sstream>

namespace cotlab {

Scenario Scenario::from_json(const Json& j) {
    Scenario s;
    s.name = j.value("name", "unnamed");
    s.seed = j.value("seed", std::uint64_t{1});
    s.trials = j.value("trials", 50);
    if (j.contains("checks")) {
        require(j.at("checks").is_array(), "scenario: checks must be an array");
        s.checks = j.at("checks");
    }
    return s;
}

Json Scenario::to_json_value() const {
    return Json{{"name", name}, {"seed", seed}, {"trials", trials}, {"checks", checks}};
}

bool RunReport::all_as_expected() const {
    for (const auto& c : checks)
        if (!c.as_expected()) return false;
    return true;
}

Json RunReport::to_json_value(bool include_timing) const {
    Json cj = Json::array();
    for (const auto& c : checks) {
        Json e{{"id", c.id},
               {"pass", c.pass},
               {"expected_pass", c.expected_pass},
               {"as_expected", c.as_expected()},
               {"hypothesis_failed", c.hypothesis_failed},
               {"summary", c.summary},
               {"payload", c.payload}};
        if (include_timing) e["time_ms"] = c.time_ms;
        cj.push_back(std::move(e));
    }
    return Json{{"scenario", scenario},
                {"seed", seed},
                {"tool_version", tool_version},
                {"pass", all_as_expected()},
                {"checks", cj}};
}

std::string RunReport::text_summary() const {
    std::ostringstream os;
    os << "scenario " << scenario << " (seed " << seed << ")\n";
    for (const auto& c : checks) {
        os << "  [" << (c.as_expected() ? "ok" : "FAIL") << "] " << c.id << ": "
           << (c.pass ? "pass" : "fail");
        if (!c.expected_pass) os << " (expected failure)";
        if (c.hypothesis_failed) os << " (hypothesis failed)";
        if (!c.summary.empty()) os << " - " << c.summary;
        os << "\n";
    }
    os << (all_as_expected() ? "ALL CHECKS AS EXPECTED" : "CHECK MISMATCHES PRESENT") << "\n";
    return os.str();
}

FPModule gen_random_module(const Ring& ring, int max_factors, std::uint64_t seed) {
    Universe u = enumerate_universe(ring, max_factors);
    Rng rng(seed);
    return rng.pick(u.modules);
}

ModuleMorphism gen_random_morphism(const Ring& ring, int max_factors, std::uint64_t seed) {
    Universe u = enumerate_universe(ring, max_factors);
    Rng rng(seed);
    FPModule a = rng.pick(u.modules);
    FPModule b = rng.pick(u.modules);
    HomModule h = hom_module(a, b);
    std::vector<i64> coords(h.module.generators());
    for (auto& c : coords) c = rng.below(ring.modulus());
    return h.to_morphism(Matrix(ring, 1, h.module.generators(), std::move(coords)));
}

ShortExactSequence gen_random_ses(const ClassSpec& cokernel_class, const Universe& u,
                                  std::uint64_t seed) {
    auto members = cokernel_class.members(u);
    require(!members.empty(), "gen_random_ses: empty class");
    Rng rng(seed);
    const FPModule& d = rng.pick(members);
    const FPModule& x = rng.pick(u.modules);
    Ext1Classes e = ext1_classes(d, x);
    std::vector<i64> coords(e.module.generators());
    for (auto& c : coords) c = rng.below(u.ring.modulus());
    ShortExactSequence s =
        realize_extension(d, x, e.class_rep(Matrix(u.ring, 1, e.module.generators(), coords)));
    require(cokernel_class.contains(s.right), "gen_random_ses postcondition");
    return s;
}

ChainComplex gen_random_complex(const ClassSpec& entries, const Universe& u, std::uint64_t seed,
                                int max_len) {
    Rng rng(seed);
    return sample_entrywise_complexes(entries, u, rng, 1, max_len).front();
}

ClassSpec class_from_name(const std::string& name, const Ring& ring) {
    if (name == "all") return ClassSpec::all(ring);
    if (name == "zero") return ClassSpec::zero(ring);
    if (name == "projective") return ClassSpec::projective(ring);
    if (name == "flat") return ClassSpec::flat(ring);
    if (name == "injective") return ClassSpec::injective(ring);
    auto parse_list = [&](const std::string& path) {
        std::vector<FPModule> mods;
        if (!path.empty() && path[0] == '@') {
            // built-in lists used by the bundled scenarios
            if (path == "@z2" || path == "@broken") {
                mods.push_back(FPModule::zero(ring));
                mods.push_back(FPModule::cyclic(ring, 2));
                return mods;
            }
            fail("unknown builtin class list: " + path);
        }
        std::ifstream in(path);
        if (!in.good()) fail("cannot open class file: " + path);
        Json j = Json::parse(in);
        for (const auto& m : j) mods.push_back(module_from_json(m));
        return mods;
    };
    if (name.rfind("perp:", 0) == 0)
        return ClassSpec::perp_of(ring, parse_list(name.substr(5)));
    if (name.rfind("explicit:", 0) == 0)
        return ClassSpec::explicit_list(ring, parse_list(name.substr(9)));
    fail("unknown class spec: " + name);
}

AdjunctionPtr functor_from_name(const std::string& name, const Ring& ring) {
    if (name == "identity" || name == "tensor") return identity_adjunction(ring);
    if (name == "tensor2") return tensor_adjunction(ring, 2);
    if (name == "tensor3") return tensor_adjunction(ring, 3);
    if (name.rfind("tensor:", 0) == 0) {
        i64 d = std::stoll(name.substr(7));
        return restrict_adjunction(tensor_adjunction(ring, 2), 0, FPModule::cyclic(ring, d));
    }
    if (name.rfind("basechange:", 0) == 0) {
        size_t c = name.find(':', 11);
        require(c != std::string::npos, "basechange spec needs m:n");
        i64 m = std::stoll(name.substr(11, c - 11));
        i64 n = std::stoll(name.substr(c + 1));
        return base_change(m, n).adjunction;
    }
    fail("unknown functor spec: " + name);
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

CheckOutcome run_check(const Json& spec, std::uint64_t default_seed, int default_trials) {
    CheckOutcome out;
    out.id = spec.value("id", "?");
    out.expected_pass = spec.value("expect", "pass") != std::string("fail");
    Timer timer;

    const std::string id = out.id;
    std::uint64_t seed = spec.value("seed", default_seed);
    int trials = spec.value("trials", default_trials);

    auto ring_of = [&](const char* key = "ring") { return Ring(spec.at(key).get<i64>()); };
    auto universe_of = [&](const Ring& r) {
        return enumerate_universe(r, spec.value("max_factors", 2));
    };

    try {
        if (id == "cotorsion-pair" || id == "completeness" || id == "hereditary" ||
            id == "pair-analysis") {
            Ring ring = ring_of();
            Universe u = universe_of(ring);
            ClassSpec d = class_from_name(spec.at("d").get<std::string>(), ring);
            ClassSpec e = class_from_name(spec.at("e").get<std::string>(), ring);
            CotorsionReport r = check_cotorsion_pair(d, e, u);
            if (id == "cotorsion-pair") {
                out.pass = r.is_pair;
            } else if (id == "completeness") {
                CompletenessResult c = check_completeness(d, e, u);
                out.pass = r.is_pair && c.enough_injectives && c.enough_projectives;
                out.hypothesis_failed = !r.is_pair;
            } else if (id == "hereditary") {
                HereditaryResult h = check_hereditary(d, e, u);
                out.pass = r.is_pair && h.hereditary && h.resolving && h.coresolving;
                out.hypothesis_failed = !r.is_pair;
                out.payload = Json{{"pair", to_json(r)},
                                   {"ext2_vanishes", h.ext2_vanishes},
                                   {"resolving", h.resolving},
                                   {"coresolving", h.coresolving},
                                   {"witnesses", h.witnesses}};
            } else {
                CotorsionReport full = analyze_pair(d, e, u);
                out.pass = full.is_pair && full.complete && full.hereditary;
                out.payload = to_json(full);
            }
            if (out.payload.is_null()) out.payload = to_json(r);
            out.summary = r.d_label + "," + r.e_label + " over Z/" + std::to_string(r.modulus);
        } else if (id == "thm-assumptions") {
            Ring ring = ring_of();
            Universe u = universe_of(ring);
            ClassSpec d = class_from_name(spec.at("d").get<std::string>(), ring);
            ClassSpec e = class_from_name(spec.at("e").get<std::string>(), ring);
            ThmAssumptionsReport t = check_thm_assumptions(d, e, u);
            out.pass = t.all_pass();
            out.hypothesis_failed = !t.universe_ok;
            out.payload = Json{{"universe_ok", t.universe_ok},
                               {"complete", t.complete},
                               {"quotient_covers", t.every_object_quotient_of_d},
                               {"hereditary", t.hereditary},
                               {"witnesses", t.witnesses}};
        } else if (id == "split1") {
            Ring ring = ring_of();
            Ring ring2 = spec.contains("ring2") ? Ring(spec.at("ring2").get<i64>()) : ring;
            AdjunctionPtr f = functor_from_name(spec.at("functor").get<std::string>(), ring);
            Universe u = universe_of(ring);
            Universe u2 = universe_of(ring2);
            ClassSpec d = class_from_name(spec.at("d").get<std::string>(), ring);
            ClassSpec e = class_from_name(spec.at("e").get<std::string>(), ring);
            ClassSpec d2 = class_from_name(spec.value("d2", spec.at("d").get<std::string>()), ring2);
            ClassSpec e2 = class_from_name(spec.value("e2", spec.at("e").get<std::string>()), ring2);
            Split1VarReport r = check_split_1var(f, d, e, d2, e2, u, u2);
            out.pass = r.ok && r.left_holds() && r.right_holds() && r.equivalence_holds;
            out.hypothesis_failed = !r.ok;
            out.payload = to_json(r);
        } else if (id == "nsplit") {
            Ring ring = ring_of();
            int arity = spec.value("arity", 2);
            Universe u = universe_of(ring);
            ClassSpec d = class_from_name(spec.value("d", "flat"), ring);
            ClassSpec e = class_from_name(spec.value("e", "all"), ring);
            ClassSpec d0 = class_from_name(spec.value("d0", spec.value("d", "flat")), ring);
            ClassSpec e0 = class_from_name(spec.value("e0", spec.value("e", "all")), ring);
            bool skip = spec.value("skip_pair_check", false);
            std::vector<ClassSpec> ds(arity, d), es(arity, e);
            if (spec.contains("d_slot1") && arity >= 2)
                ds[1] = class_from_name(spec.at("d_slot1").get<std::string>(), ring);
            NSplitReport r = check_nsplit_duality(tensor_adjunction(ring, arity), ds, es,
                                                  std::vector<Universe>(arity, u), d0, e0, u, skip);
            out.pass = r.ok && r.left_holds() && r.right_holds() && r.equivalence_holds;
            out.hypothesis_failed = !r.ok;
            out.payload = to_json(r);
        } else if (id == "quillen1") {
            std::string fn = spec.at("functor").get<std::string>();
            Ring ring = ring_of();
            AdjunctionPtr f = functor_from_name(fn, ring);
            Ring ring2 = f->result_ring();
            Universe u = enumerate_universe(f->slot_ring(0), spec.value("max_factors", 1));
            Universe u2 = enumerate_universe(ring2, spec.value("max_factors", 1));
            ClassSpec d = class_from_name(spec.value("d", "flat"), f->slot_ring(0));
            ClassSpec e = class_from_name(spec.value("e", "all"), f->slot_ring(0));
            ClassSpec d2 = class_from_name(spec.value("d2", spec.value("d", "flat")), ring2);
            ClassSpec e2 = class_from_name(spec.value("e2", spec.value("e", "all")), ring2);
            QuillenReport r = check_quillen_1var(f, d, e, d2, e2, u, u2, Rng(seed), trials);
            out.pass = r.all_pass();
            out.hypothesis_failed = !r.ok;
            out.payload = to_json(r);
        } else if (id == "cotmain") {
            Ring ring = ring_of();
            int arity = spec.value("arity", 2);
            Universe u = enumerate_universe(ring, spec.value("max_factors", 1));
            ClassSpec d = class_from_name(spec.value("d", "flat"), ring);
            ClassSpec e = class_from_name(spec.value("e", "all"), ring);
            QuillenReport r = check_cot_main(tensor_adjunction(ring, arity),
                                             std::vector<ClassSpec>(arity, d),
                                             std::vector<ClassSpec>(arity, e),
                                             std::vector<Universe>(arity, u), d, e, u, Rng(seed),
                                             trials);
            out.pass = r.all_pass();
            out.hypothesis_failed = !r.ok;
            out.payload = to_json(r);
        } else if (id == "corner-monicity-random") {
            Ring ring = ring_of();
            Universe u = enumerate_universe(ring, spec.value("max_factors", 1));
            ClassSpec d = class_from_name(spec.value("d", "flat"), ring);
            ClassSpec e = class_from_name(spec.value("e", "all"), ring);
            AdjunctionPtr ma = tensor_adjunction(ring, 2);
            auto sess = enumerate_ses_with_cokernel_in(d, u);
            Rng rng(seed);
            bool all_ok = true;
            int done = 0;
            for (int i = 0; i < trials && !sess.empty(); ++i) {
                const auto& s1 = sess[static_cast<size_t>(rng.below(static_cast<i64>(sess.size())))];
                const auto& s2 = sess[static_cast<size_t>(rng.below(static_cast<i64>(sess.size())))];
                CornerMapReport r = check_corner_map(ma, {d, d}, {e, e}, {u, u}, d, e, u,
                                                   {s1.inj, s2.inj});
                if (!(r.ok && r.monic && r.coker_iso)) all_ok = false;
                ++done;
            }
            out.pass = all_ok && done == trials;
            out.payload = Json{{"trials", done}};
        } else if (id == "nonflat-counterexample") {
            // bundled Z/4 example: kernel Z/2, coker formula intact
            Ring z4(4);
            FPModule z2 = FPModule::cyclic(z4, 2);
            FPModule r1 = FPModule::free_module(z4, 1);
            Matrix two(z4, 1, 1, {2});
            ModuleMorphism f(z2, r1, two);
            AdjunctionPtr tz = tensor_adjunction(z4, 2);
            PushoutProduct pp = pushout_product(tz, {f, f});
            bool nonmonic = !is_monic(pp.map);
            bool kernel_z2 = kernel(pp.map).module.invariants() == std::vector<i64>{2};
            std::string detail;
            bool coker_ok = verify_coker_formula(tz, {f, f}, &detail);
            out.pass = nonmonic && kernel_z2 && coker_ok;
            out.payload = Json{{"nonmonic", nonmonic}, {"kernel_is_z2", kernel_z2},
                               {"coker_formula", coker_ok}, {"detail", detail}};
        } else if (id == "nullhomotopy-example") {
            // two-term x2 complex: identity certified non-null-homotopic
            Ring z4(4);
            FPModule r1 = FPModule::free_module(z4, 1);
            ModuleMorphism d2m(r1, r1, Matrix(z4, 1, 1, {2}));
            ChainComplex c = ChainComplex::checked(z4, 0, {r1, r1}, {d2m});
            bool no_homotopy = !null_homotopy(ChainMap::identity(c)).has_value();
            ChainComplex disc = elementary_complex(ElementaryKind::Disc, 0, r1);
            bool disc_contractible = null_homotopy(ChainMap::identity(disc)).has_value();
            out.pass = no_homotopy && disc_contractible;
            out.payload = Json{{"x2_identity_nullhomotopic", !no_homotopy},
                               {"disc_identity_nullhomotopic", disc_contractible}};
        } else if (id == "ext-routes-agree") {
            Ring ring = ring_of();
            Universe u = universe_of(ring);
            bool ok = true;
            for (const auto& a : u.modules)
                for (const auto& b : u.modules) {
                    Ext1Classes cls = ext1_classes(a, b);
                    if (!is_isomorphic(cls.module, ext(1, a, b))) ok = false;
                }
            out.pass = ok;
        } else if (id == "lemma") {
            const std::string which = spec.at("lemma").get<std::string>();
            Ring ring = ring_of();
            int arity = spec.value("arity", 2);
            LemmaReport r;
            if (which == "coker-pushout")
                r = verify_lemma_coker_pushout(ring, arity, seed, trials);
            else if (which == "pp-restriction")
                r = verify_lemma_pp_restriction(ring, arity, seed, trials);
            else if (which == "pp-square")
                r = verify_lemma_pp_square(ring, arity, seed, trials);
            else if (which == "pp-adjunction")
                r = verify_lemma_pp_adjunction(ring, arity, seed, trials);
            else if (which == "hom-left-split")
                r = verify_lemma_hom_left_split(ring, spec.value("max_factors", 2));
            else if (which == "flat-split")
                r = verify_lemma_flat_split(ring, spec.value("max_factors", 2));
            else if (which == "exact-sums")
                r = verify_lemma_exact_sums(ring, seed, trials);
            else if (which == "corner-converse")
                r = verify_corner_converse(ring, seed, trials);
            else
                fail("unknown lemma: " + which);
            out.pass = r.pass();
            out.summary = r.lemma + " (" + std::to_string(r.trials) + " trials)";
            out.payload = to_json(r);
        } else {
            fail("unknown check id: " + id);
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.summary = std::string("exception: ") + e.what();
    }
    out.time_ms = timer.elapsed_ms();
    return out;
}

}  // namespace

RunReport run_suite(const Scenario& s) {
    RunReport report;
    report.scenario = s.name;
    report.seed = s.seed;
    report.tool_version = kToolVersion;
    // independent checks run concurrently; results keep scenario order
    report.checks.resize(s.checks.size());
    for_each_index(static_cast<int>(s.checks.size()), [&](int i) {
        report.checks[static_cast<size_t>(i)] =
            run_check(s.checks.at(static_cast<size_t>(i)), s.seed, s.trials);
    });
    return report;
}

namespace {

const char* kPaperCoreZ4 = R"JSON({
  "name": "paper-core-z4",
  "seed": 1,
  "trials": 40,
  "checks": [
    {"id": "pair-analysis", "ring": 4, "max_factors": 2, "d": "flat", "e": "all"},
    {"id": "pair-analysis", "ring": 12, "max_factors": 2, "d": "all", "e": "injective"},
    {"id": "thm-assumptions", "ring": 4, "max_factors": 2, "d": "flat", "e": "all"},
    {"id": "ext-routes-agree", "ring": 4, "max_factors": 2},
    {"id": "split1", "functor": "basechange:12:4", "ring": 12, "ring2": 4, "d": "flat", "e": "all"},
    {"id": "nsplit", "arity": 2, "ring": 4, "max_factors": 2, "d": "flat", "e": "all"},
    {"id": "quillen1", "functor": "basechange:12:4", "ring": 12, "max_factors": 1, "d": "flat", "e": "all", "trials": 12},
    {"id": "cotmain", "arity": 2, "ring": 4, "max_factors": 1, "d": "flat", "e": "all", "trials": 10},
    {"id": "corner-monicity-random", "ring": 4, "max_factors": 1, "d": "flat", "e": "all", "trials": 10},
    {"id": "nonflat-counterexample"},
    {"id": "nullhomotopy-example"},
    {"id": "lemma", "lemma": "coker-pushout", "ring": 4, "arity": 2, "trials": 25},
    {"id": "lemma", "lemma": "pp-restriction", "ring": 4, "arity": 2, "trials": 15},
    {"id": "lemma", "lemma": "pp-square", "ring": 4, "arity": 2, "trials": 15},
    {"id": "lemma", "lemma": "pp-adjunction", "ring": 4, "arity": 2, "trials": 10},
    {"id": "lemma", "lemma": "flat-split", "ring": 4, "max_factors": 2},
    {"id": "lemma", "lemma": "exact-sums", "ring": 4, "trials": 15}
  ]
})JSON";

const char* kNegativeControls = R"JSON({
  "name": "negative-controls",
  "seed": 2,
  "trials": 20,
  "checks": [
    {"id": "cotorsion-pair", "ring": 12, "max_factors": 2, "d": "flat", "e": "flat", "expect": "fail"},
    {"id": "split1", "functor": "tensor:2", "ring": 4, "d": "flat", "e": "all", "expect": "fail"},
    {"id": "nsplit", "arity": 2, "ring": 4, "max_factors": 1, "d": "flat", "e": "all", "d_slot1": "explicit:@broken", "skip_pair_check": true, "expect": "fail"},
    {"id": "quillen1", "functor": "tensor:2", "ring": 4, "d": "flat", "e": "all", "expect": "fail"},
    {"id": "hereditary", "ring": 4, "max_factors": 2, "d": "explicit:@z2", "e": "explicit:@z2", "expect": "fail"},
    {"id": "lemma", "lemma": "corner-converse", "ring": 4, "trials": 25}
  ]
})JSON";

}  // namespace

std::optional<Scenario> bundled_scenario(const std::string& name) {
    if (name == "paper-core-z4") return Scenario::from_json(Json::parse(kPaperCoreZ4));
    if (name == "negative-controls") return Scenario::from_json(Json::parse(kNegativeControls));
    return std::nullopt;
}

std::vector<std::string> bundled_scenario_names() {
    return {"paper-core-z4", "negative-controls"};
}

}  // namespace cotlab
