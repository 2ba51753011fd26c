#pragma once

// Cross-validation harness behind the `verify` subcommand: detectors
// against the enumeration oracle, and closed-form moments against
// exhaustive coloring statistics.

#include <cstdint>
#include <ostream>

#include "chromathresh/graph.hpp"

namespace chromathresh {

struct VerifyOptions {
    std::uint64_t graphs = 300;  // random graphs for detect-vs-oracle
    Vertex max_n = 10;
    std::uint64_t master_seed = 0;
    bool deep = false;           // include the n = 6 coloring spaces
};

struct VerifyReport {
    std::uint64_t detect_queries = 0;
    std::uint64_t detect_mismatches = 0;
    std::uint64_t formula_checks = 0;
    std::uint64_t formula_mismatches = 0;

    bool ok() const { return detect_mismatches == 0 && formula_mismatches == 0; }
};

VerifyReport run_verification(const VerifyOptions& opts, std::ostream& log);

} // namespace chromathresh
