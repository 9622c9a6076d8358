#pragma once

// Scenario files, seeded generators, suite orchestration and report emission.
// A scenario fully determines a run; re-running with the same seed yields an
// identical report modulo timing.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotlab/json_io.hpp"

namespace cotlab {

inline constexpr const char* kToolVersion = "cotlab 0.1.0";

struct Scenario {
    std::string name;
    std::uint64_t seed = 1;
    int trials = 50;
    Json checks = Json::array();

    static Scenario from_json(const Json& j);
    Json to_json_value() const;
};

// Bundled scenario by name ("paper-core-z4", "negative-controls"), if any.
std::optional<Scenario> bundled_scenario(const std::string& name);
std::vector<std::string> bundled_scenario_names();

struct CheckOutcome {
    std::string id;
    bool pass = false;           // the raw check outcome
    bool expected_pass = true;   // negative controls expect failure
    bool hypothesis_failed = false;
    std::string summary;
    Json payload;
    double time_ms = 0.0;

    bool as_expected() const { return pass == expected_pass; }
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::vector<CheckOutcome> checks;

    bool all_as_expected() const;
    Json to_json_value(bool include_timing) const;
    std::string text_summary() const;
};

// Seeded random objects with verified postconditions.
FPModule gen_random_module(const Ring& ring, int max_factors, std::uint64_t seed);
ModuleMorphism gen_random_morphism(const Ring& ring, int max_factors, std::uint64_t seed);
ShortExactSequence gen_random_ses(const ClassSpec& cokernel_class, const Universe& u,
                                  std::uint64_t seed);
ChainComplex gen_random_complex(const ClassSpec& entries, const Universe& u, std::uint64_t seed,
                                int max_len);

// Parse a ClassSpec name: all | zero | projective | flat | injective |
// perp:<file> | explicit:<file>.
ClassSpec class_from_name(const std::string& name, const Ring& ring);

// Parse a functor spec: tensor[:d] | tensor2 | tensor3 | identity |
// basechange:m:n (for 1-variable checks, tensor:d fixes Z/d in slot 0).
AdjunctionPtr functor_from_name(const std::string& name, const Ring& ring);

RunReport run_suite(const Scenario& s);

}  // namespace cotlab
