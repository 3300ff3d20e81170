#include "nct/sphere.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nct {

Coeff moment(const MultiIndex& alpha) {
    for (int i = 0; i < 4; ++i)
        if (alpha[i] % 2 != 0) return Coeff{0};
    // 2 * prod Gamma((a_i+1)/2) / Gamma(2 + |a|/2); each half-integer Gamma
    // value is a rational multiple of sqrt(pi), four of them give one pi^2.
    Rational gammas{1};
    for (int i = 0; i < 4; ++i) {
        int m = alpha[i] / 2;  // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        Rational g{1};
        for (int k = 1; k <= 2 * m; ++k) g *= k;
        for (int k = 1; k <= m; ++k) g /= 4 * k;
        gammas *= g;
    }
    Rational denom{1};  // Gamma(2 + |a|/2) = (1 + |a|/2)!
    for (int k = 1; k <= 1 + alpha.order() / 2; ++k) denom *= k;
    return Coeff{2 * gammas / denom, true};
}

NCExpression NCExpression::from_symbol(SymbolExpr x) {
    for (const Term& t : x.terms())
        if (!t.xi.is_trivial())
            throw std::invalid_argument("NCExpression: symbol still depends on xi");
    return NCExpression(std::move(x));
}

NCExpression NCExpression::operator+(const NCExpression& o) const {
    return NCExpression(expr_ + o.expr_);
}

nlohmann::ordered_json NCExpression::to_json() const { return expr_.to_json(); }

NCExpression NCExpression::from_json(const nlohmann::json& j) {
    return from_symbol(SymbolExpr::from_json(j));
}

NCExpression integrate_on_sphere(const SymbolExpr& b) {
    if (!b.is_zero() && !b.degree())
        throw std::invalid_argument("integrate_on_sphere: input is not homogeneous");
    std::vector<Term> out;
    for (const Term& t : b.terms()) {
        Coeff m = moment(t.xi.mono);
        if (m.is_zero()) continue;
        Term nt;
        nt.coeff = t.coeff * m;  // throws if t already carries pi^2
        nt.xi = XiPart{};
        nt.word = t.word;
        out.push_back(std::move(nt));
    }
    return NCExpression::from_symbol(SymbolExpr(std::move(out)));
}

}  // namespace nct
