#pragma once

#include <string>
#include <vector>

#include "scbf/spectral_field.hpp"

namespace scbf {

struct OracleReport {
    std::string name;
    int trials = 0;
    double max_deviation = 0.0;  // scaled; pass <=> max_deviation <= tolerance
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;  // outside theorem hypotheses, not a failure
    std::uint64_t seed = 0;
    std::string note;
};

// Consolidated property battery over every testable operator inequality.
// Inequality sweeps run on 16^2, oracle equivalence on 8^2, plus an 8^3
// smoke subset. Failures carry the inputs' seed for replay.
std::vector<OracleReport> run_property_battery(std::uint64_t seed, int trials);

// names in the order the battery runs them (cross-checked against the
// operator inventory in tests)
std::vector<std::string> battery_manifest();

bool battery_all_pass(const std::vector<OracleReport>& reports);

}  // namespace scbf
