#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace nct {

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    int dim_lo = 2, dim_hi = 8;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::map<std::string, double> extra;  // informative measurements, no pass/fail

    nlohmann::ordered_json to_json() const;
};

/// Runs one of the randomized matrix-oracle suites:
///   identities  - every rewrite rule and g1/g2 substitution identity (tol 1e-10)
///   curvature   - sphere-integral closed form vs modular normal form (tol 1e-10)
///   projection  - curvature at h = s p vs the f1..f4 combination (tol 1e-9)
///   gradient    - finite-difference action derivative vs the gradient pairing (tol 1e-6)
/// Deterministic for fixed (name, trials, dims, seed). Throws
/// std::invalid_argument for an unknown suite name.
SuiteReport run_verification_suite(const std::string& name, int trials, int dim_lo, int dim_hi,
                                   std::uint64_t seed);

}  // namespace nct
