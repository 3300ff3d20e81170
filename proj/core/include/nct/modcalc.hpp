#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nct/funexpr.hpp"
#include "nct/sphere.hpp"

namespace nct {

/// A word fell outside the supported rewrite fragment (delta-order above two,
/// missing e^{-h} prefix, or more than two tensor slots).
struct RewriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// coeff * e^{-h} * func(nabla, ...) applied to delta^{args[0]}(h) (x) ...
/// (x) delta^{args[m-1]}(h); the j-th variable of func acts on the j-th
/// factor. Normal form folds the rational part of the coefficient into func,
/// so coeff.q == 1 and only the pi^2 flag remains.
struct ModTerm {
    Coeff coeff;
    FunExpr func;
    std::vector<MultiIndex> args;  // m in {1, 2}

    bool operator==(const ModTerm&) const = default;
};

/// Normal-form sum of ModTerms: at most one term per (args, pi^2) key.
class ModExpr {
public:
    ModExpr() = default;
    explicit ModExpr(std::vector<ModTerm> terms);

    const std::vector<ModTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ModExpr operator+(const ModExpr& o) const;
    bool operator==(const ModExpr&) const = default;

    std::string to_latex() const;
    nlohmann::ordered_json to_json() const;

private:
    std::vector<ModTerm> terms_;
};

/// Rewrites a xi-free word expression into the modular normal form
/// e^{-h} * Phi(nabla,...)(derivatives of h) by exhaustively applying
///   (R1) e^{-h} delta^a(e^h)   -> g-substitution            (|a| <= 2)
///   (R2) Phi(...) e^{-h}       -> e^{-h} e^{-sum vars}Phi(...)
///   (R3) Phi(x) Psi(y)         -> (Phi ox Psi)(x ox y)
///   (R4) e^{h} e^{-h}          -> 1 (either order).
/// Fails loudly (RewriteError) on words outside the fragment.
ModExpr substitute_exponential_derivatives(const NCExpression& x);

/// Same rewrite, but rule applications are picked in seed-driven random
/// order; exercises the order-independence of the normal form.
ModExpr substitute_exponential_derivatives_shuffled(const NCExpression& x, std::uint64_t seed);

struct CurvatureFunctions {
    FunExpr one_var;  // coefficient of sum_i delta_i^2(h)
    FunExpr two_var;  // coefficient of sum_i delta_i(h)^2
    bool pi2 = false; // overall pi^2 factor, reported separately
};

/// Extracts (k, H) from a ModExpr of the curvature shape: per direction one
/// term on delta_i^2(h) and one on delta_i(h) (x) delta_i(h), the same
/// function in every direction. Rejects anything else.
CurvatureFunctions curvature_functions(const ModExpr& m);

}  // namespace nct
