#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jones {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0; // worst numeric residual, when meaningful
    std::string detail;
};

// Runs the cross-module invariant suite. level "quick" uses reduced sizes,
// "full" the documented ranges (n <= 6, k <= 8 for the algebra block, plus the
// seeded concentration run).
std::vector<CheckResult> run_checks(const std::string& level, std::uint64_t seed);

} // namespace jones
