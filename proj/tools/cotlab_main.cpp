// cotlab: exact-arithmetic workbench for cotorsion pairs, complexes and
// pushout/pullback products over Z/nZ.
//
//   cotlab compute <op> --in file.json [--out file]
//   cotlab enumerate --ring n --max-factors k
//   cotlab check <pair|completeness|hereditary|assumptions|split1|nsplit|quillen|cotmain> ...
//   cotlab verify lemma <name> --ring n [--arity k] [--seed S] [--trials T]
//   cotlab run <scenario.json | paper-core-z4 | negative-controls>
//
// Exit code 0 iff every executed check matched its expectation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cotlab/harness.hpp"
#include "cotlab/parallel.hpp"

using namespace cotlab;

namespace {

struct GlobalOpts {
    std::string format = "text";
    std::string out_path;
    std::uint64_t seed = 1;
    int trials = 50;
    int threads = 0;
    bool serial = false;
};

void emit(const GlobalOpts& g, const Json& payload, const std::string& text) {
    std::string body = (g.format == "json") ? payload.dump(2) + "\n" : text;
    if (g.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(g.out_path);
        out << body;
    }
}

int finish(const GlobalOpts& g, bool pass, const Json& payload, const std::string& text) {
    emit(g, payload, text);
    return pass ? 0 : 1;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) fail("cannot open " + path);
    return Json::parse(in);
}

int run_single_check(const GlobalOpts& g, Json spec) {
    if (!spec.contains("seed")) spec["seed"] = g.seed;
    if (!spec.contains("trials")) spec["trials"] = g.trials;
    Scenario s;
    s.name = "cli";
    s.seed = g.seed;
    s.trials = g.trials;
    s.checks.push_back(spec);
    RunReport r = run_suite(s);
    return finish(g, r.all_as_expected(), r.to_json_value(false), r.text_summary());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cotlab - cotorsion pair and pushout-product workbench over Z/nZ"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out_path, "write output to a file");
    app.add_option("--seed", g.seed, "seed for randomized batteries");
    app.add_option("--trials", g.trials, "trial count for randomized batteries");
    app.add_option("--threads", g.threads, "worker threads (0 = runtime default)");
    app.add_flag("--serial", g.serial, "force the serial reference kernels");

    auto* compute = app.add_subcommand("compute", "run one exact computation from JSON input");
    compute->fallthrough();
    std::string compute_op, compute_in;
    compute->add_option("op", compute_op,
                        "howell|smith|solve|canonical|tensor|hom|ext1|ext2|homology")
        ->required();
    compute->add_option("--in", compute_in, "input JSON file")->required();

    auto* enumerate = app.add_subcommand("enumerate", "enumerate a module universe");
    enumerate->fallthrough();
    i64 en_ring = 4;
    int en_factors = 1;
    enumerate->add_option("--ring", en_ring, "modulus n")->required();
    enumerate->add_option("--max-factors", en_factors, "maximum invariant factors");

    auto* check = app.add_subcommand("check", "run a checker");
    check->fallthrough();
    std::string check_kind;
    check->add_option("kind", check_kind,
                      "pair|completeness|hereditary|assumptions|split1|nsplit|quillen|cotmain")
        ->required();
    i64 ck_ring = 4, ck_ring2 = 0;
    int ck_factors = 2, ck_arity = 2;
    std::string ck_pairs = "flat,all", ck_pairs2, ck_functor = "identity";
    check->add_option("--ring", ck_ring, "modulus n");
    check->add_option("--ring2", ck_ring2, "target modulus (base change)");
    check->add_option("--max-factors", ck_factors, "universe size parameter");
    check->add_option("--arity", ck_arity, "functor arity (nsplit/cotmain)");
    check->add_option("--pairs", ck_pairs, "class pair d,e");
    check->add_option("--pairs2", ck_pairs2, "target class pair d',e'");
    check->add_option("--functor", ck_functor, "tensor[:d]|identity|basechange:m:n");

    auto* verify = app.add_subcommand("verify", "run a lemma battery");
    verify->fallthrough();
    std::string verify_what, verify_lemma;
    i64 vf_ring = 4;
    int vf_arity = 2, vf_factors = 2;
    verify->add_option("what", verify_what, "must be 'lemma'")->required();
    verify
        ->add_option("lemma", verify_lemma,
                     "coker-pushout|pp-restriction|pp-square|pp-adjunction|hom-left-split|"
                     "flat-split|exact-sums|corner-converse")
        ->required();
    verify->add_option("--ring", vf_ring, "modulus n");
    verify->add_option("--arity", vf_arity, "cube arity");
    verify->add_option("--max-factors", vf_factors, "universe size parameter");

    auto* run = app.add_subcommand("run", "run a scenario file or bundled scenario");
    run->fallthrough();
    std::string run_name;
    run->add_option("scenario", run_name, "path or bundled name")->required();

    CLI11_PARSE(app, argc, argv);

    exec_mode() = g.serial ? ExecMode::Serial : ExecMode::Parallel;
    thread_count() = g.threads;

    try {
        if (*compute) {
            Json in = load_json(compute_in);
            Json out;
            if (compute_op == "howell") {
                HowellResult h = howell_form(matrix_from_json(in));
                out = Json{{"h", to_json(h.h)}, {"u", to_json(h.u)},
                           {"padded_rows", h.padded_rows}};
            } else if (compute_op == "smith") {
                SmithResult s = smith_form(matrix_from_json(in));
                out = Json{{"diag", s.diag}, {"l", to_json(s.l)}, {"r", to_json(s.r)}};
            } else if (compute_op == "solve") {
                RightSolve s = solve_linear(matrix_from_json(in.at("a")),
                                            matrix_from_json(in.at("b")));
                out = Json{{"solvable", s.solvable}};
                if (s.solvable) {
                    out["x"] = to_json(s.x);
                    out["kernel"] = to_json(s.kernel);
                }
            } else if (compute_op == "canonical") {
                FPModule m = module_from_json(in);
                out = Json{{"invariants", canonical_form(m)}, {"cardinality", m.cardinality()}};
            } else if (compute_op == "tensor") {
                FPModule t = tensor(module_from_json(in.at("a")), module_from_json(in.at("b")));
                out = to_json(t);
            } else if (compute_op == "hom") {
                HomModule h =
                    hom_module(module_from_json(in.at("a")), module_from_json(in.at("b")));
                out = to_json(h.module);
            } else if (compute_op == "ext1" || compute_op == "ext2") {
                int k = compute_op == "ext1" ? 1 : 2;
                out = to_json(ext(k, module_from_json(in.at("a")), module_from_json(in.at("b"))));
            } else if (compute_op == "homology") {
                ChainComplex c = complex_from_json(in.at("complex"));
                int n = in.at("degree").get<int>();
                HomologyData h = homology(c, n);
                out = Json{{"cycles", to_json(h.cycles)},
                           {"boundaries", to_json(h.boundaries)},
                           {"homology", to_json(h.homology)}};
            } else {
                fail("unknown compute op: " + compute_op);
            }
            return finish(g, true, out, out.dump(2) + "\n");
        }

        if (*enumerate) {
            Universe u = enumerate_universe(Ring(en_ring), en_factors);
            Json mods = Json::array();
            for (const auto& m : u.modules) mods.push_back(m.invariants());
            Json out{{"ring", en_ring}, {"max_factors", en_factors}, {"modules", mods}};
            std::ostringstream text;
            text << "universe over Z/" << en_ring << " with max_factors " << en_factors << ": "
                 << u.modules.size() << " modules\n";
            for (const auto& m : u.modules) {
                text << "  [";
                for (size_t i = 0; i < m.invariants().size(); ++i)
                    text << (i ? "," : "") << m.invariants()[i];
                text << "]\n";
            }
            return finish(g, true, out, text.str());
        }

        if (*check) {
            auto split_pairs = [](const std::string& p) {
                size_t c = p.find(',');
                require(c != std::string::npos, "--pairs expects d,e");
                return std::pair<std::string, std::string>{p.substr(0, c), p.substr(c + 1)};
            };
            auto [dname, ename] = split_pairs(ck_pairs);
            Json spec{{"ring", ck_ring}, {"max_factors", ck_factors}, {"d", dname}, {"e", ename}};
            if (check_kind == "pair")
                spec["id"] = "cotorsion-pair";
            else if (check_kind == "completeness")
                spec["id"] = "completeness";
            else if (check_kind == "hereditary")
                spec["id"] = "hereditary";
            else if (check_kind == "assumptions")
                spec["id"] = "thm-assumptions";
            else if (check_kind == "split1") {
                spec["id"] = "split1";
                spec["functor"] = ck_functor;
                if (ck_ring2 > 0) spec["ring2"] = ck_ring2;
                if (!ck_pairs2.empty()) {
                    auto [d2, e2] = split_pairs(ck_pairs2);
                    spec["d2"] = d2;
                    spec["e2"] = e2;
                }
            } else if (check_kind == "nsplit") {
                spec["id"] = "nsplit";
                spec["arity"] = ck_arity;
            } else if (check_kind == "quillen") {
                spec["id"] = "quillen1";
                spec["functor"] = ck_functor;
                spec["max_factors"] = std::min(ck_factors, 1);
            } else if (check_kind == "cotmain") {
                spec["id"] = "cotmain";
                spec["arity"] = ck_arity;
                spec["max_factors"] = std::min(ck_factors, 1);
            } else {
                fail("unknown check kind: " + check_kind);
            }
            return run_single_check(g, std::move(spec));
        }

        if (*verify) {
            require(verify_what == "lemma", "usage: cotlab verify lemma <name> ...");
            Json spec{{"id", "lemma"},
                      {"lemma", verify_lemma},
                      {"ring", vf_ring},
                      {"arity", vf_arity},
                      {"max_factors", vf_factors}};
            return run_single_check(g, std::move(spec));
        }

        if (*run) {
            Scenario s;
            if (auto bundled = bundled_scenario(run_name)) {
                s = *bundled;
            } else {
                Json j;
                try {
                    j = load_json(run_name);
                    s = Scenario::from_json(j);
                } catch (const std::exception& e) {
                    std::cerr << "scenario error in " << run_name << ": " << e.what() << "\n";
                    return 2;
                }
            }
            if (app.count("--seed")) s.seed = g.seed;
            if (app.count("--trials")) s.trials = g.trials;
            RunReport r = run_suite(s);
            return finish(g, r.all_as_expected(), r.to_json_value(false), r.text_summary());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
