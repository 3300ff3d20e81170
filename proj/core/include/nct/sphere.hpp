#pragma once

#include "nct/symbol.hpp"

namespace nct {

/// Exact monomial moment over the unit 3-sphere,
///   moment(a) = integral of xi^a over S^3,
/// zero when any exponent is odd, otherwise an exact rational multiple of
/// pi^2 from the Gamma-quotient closed form.
Coeff moment(const MultiIndex& alpha);

/// xi-free noncommutative expression: sphere-integrated symbols live here.
class NCExpression {
public:
    NCExpression() = default;

    /// Wraps a symbol with no xi-dependence; throws otherwise.
    static NCExpression from_symbol(SymbolExpr x);

    const SymbolExpr& expr() const { return expr_; }
    const std::vector<Term>& terms() const { return expr_.terms(); }
    bool is_zero() const { return expr_.is_zero(); }

    NCExpression operator+(const NCExpression& o) const;
    bool operator==(const NCExpression&) const = default;

    std::string to_latex() const { return expr_.to_latex(); }
    nlohmann::ordered_json to_json() const;
    static NCExpression from_json(const nlohmann::json& j);

private:
    explicit NCExpression(SymbolExpr x) : expr_(std::move(x)) {}
    SymbolExpr expr_;
};

/// Restriction to |xi| = 1 followed by exact integration: radial powers are
/// discarded, each xi-monomial is replaced by its moment. Requires a
/// homogeneous input (any degree) with pi^2-free coefficients.
NCExpression integrate_on_sphere(const SymbolExpr& b);

}  // namespace nct
