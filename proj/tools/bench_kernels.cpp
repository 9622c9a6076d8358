// Benchmark of the data-parallel check kernels against the serial reference
// implementation. Both paths must produce identical results; the timings show
// the OpenMP speedup on the Ext-table and trial-battery loops.

#include <chrono>
#include <cstring>
#include <iostream>

#include "cotlab/cotorsion.hpp"
#include "cotlab/json_io.hpp"
#include "cotlab/parallel.hpp"
#include "cotlab/products.hpp"

using namespace cotlab;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct BenchCase {
    std::string name;
    std::function<Json()> run;
};

void run_case(const BenchCase& bc, int reps) {
    Json serial_result, parallel_result;
    double t_serial = 0, t_parallel = 0;
    for (int i = 0; i < reps; ++i) {
        exec_mode() = ExecMode::Serial;
        t_serial += time_ms([&] { serial_result = bc.run(); });
        exec_mode() = ExecMode::Parallel;
        t_parallel += time_ms([&] { parallel_result = bc.run(); });
    }
    bool identical = serial_result == parallel_result;
    std::cout << bc.name << ": serial " << t_serial / reps << " ms, openmp " << t_parallel / reps
              << " ms, speedup " << (t_parallel > 0 ? t_serial / t_parallel : 0.0)
              << (identical ? "" : "  [RESULT MISMATCH]") << "\n";
    if (!identical) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 3;
    for (int i = 1; i < argc; ++i)
        if (std::strncmp(argv[i], "--reps=", 7) == 0) reps = std::atoi(argv[i] + 7);

    std::vector<BenchCase> cases;

    cases.push_back({"ext_table Z/12 mf2", [] {
                         Universe u = enumerate_universe(Ring(12), 2);
                         ExtTable t = ext_table(u);
                         return Json{{"ext1", t.ext1}, {"ext2", t.ext2}};
                     }});
    cases.push_back({"completeness (All,Inj) Z/12 mf2", [] {
                         Ring ring(12);
                         Universe u = enumerate_universe(ring, 2);
                         CompletenessResult c = check_completeness(
                             ClassSpec::all(ring), ClassSpec::injective(ring), u);
                         return Json{{"inj", c.enough_injectives}, {"proj", c.enough_projectives}};
                     }});
    cases.push_back({"coker-pushout battery n=3 Z/6", [] {
                         return to_json(verify_lemma_coker_pushout(Ring(6), 3, 42, 60));
                     }});
    cases.push_back({"hom-left-split exhaustive Z/4 mf1", [] {
                         return to_json(verify_lemma_hom_left_split(Ring(4), 1));
                     }});

    for (const auto& bc : cases) run_case(bc, reps);
    return 0;
}
