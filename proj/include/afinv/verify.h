/** \file verify.h
    Self-verification suites run by the `verify` CLI command and by the
    acceptance test binary.  Each check pins its tolerance in code and
    compares the engines against independent oracles (closed forms, direct
    formula implementations, quadrature, dynamics).
*/
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace verify {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;     // deterministic; no timing information
    double elapsed_s = 0;   // wall time, for the caller's own reporting
};

/// Runs one of "oned", "trees", "invert", "dynamics", or "all".
std::vector<Check> run_suite(const std::string& suite, std::uint64_t seed = 20240901);

bool all_passed(const std::vector<Check>& checks);

}  // namespace verify
