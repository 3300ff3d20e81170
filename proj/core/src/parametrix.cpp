#include "nct/parametrix.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace nct {

int GradedSymbol::top_degree() const {
    if (parts.empty()) throw std::logic_error("GradedSymbol: no parts");
    return parts.rbegin()->first;
}

void GradedSymbol::add_part(int degree, const SymbolExpr& x) {
    if (x.is_zero()) return;
    if (x.degree() != degree)
        throw std::invalid_argument("GradedSymbol: part is not homogeneous of the given degree");
    auto [it, inserted] = parts.emplace(degree, x);
    if (!inserted) {
        it->second += x;
        if (it->second.is_zero()) parts.erase(it);
    }
}

const SymbolExpr& GradedSymbol::part(int degree) const {
    static const SymbolExpr zero;
    auto it = parts.find(degree);
    return it == parts.end() ? zero : it->second;
}

GradedSymbol laplacian_symbol() {
    GradedSymbol a;
    // a_2 = e^h |xi|^2
    a.add_part(2, SymbolExpr(Term{Coeff{1}, XiPart{MultiIndex{}, 1}, {Atom::exp_h(1)}}));
    // a_1 = sum_i delta_i(e^h) xi_i
    SymbolExpr a1;
    for (int i = 1; i <= 4; ++i) {
        XiPart xi{MultiIndex::unit(i), 0};
        a1 += SymbolExpr(Term{Coeff{1}, xi, {Atom::delta_exp_h(MultiIndex::unit(i), 1)}});
    }
    a.add_part(1, a1);
    // a_0 = sum_i ( delta_i^2(e^h) - delta_i(e^h) e^{-h} delta_i(e^h) )
    SymbolExpr a0;
    for (int i = 1; i <= 4; ++i) {
        MultiIndex ei = MultiIndex::unit(i);
        Atom d = Atom::delta_exp_h(ei, 1);
        a0 += SymbolExpr(Term{Coeff{1}, XiPart{}, {Atom::delta_exp_h(ei + ei, 1)}});
        a0 += SymbolExpr(Term{Coeff{-1}, XiPart{}, {d, Atom::exp_h(-1), d}});
    }
    a.add_part(0, a0);
    return a;
}

GradedSymbol compose(const GradedSymbol& rho, const GradedSymbol& rho2, int min_degree) {
    int top = rho.top_degree() + rho2.top_degree();
    if (min_degree > top)
        throw std::invalid_argument("compose: truncation degree above the product's top degree");

    GradedSymbol out;
    for (const auto& [d1, p1] : rho.parts)
        for (const auto& [d2, p2] : rho2.parts) {
            int max_order = d1 + d2 - min_degree;
            for (int m = 0; m <= max_order; ++m)
                for (const MultiIndex& l : multi_indices_of_order(m)) {
                    SymbolExpr dxi = xi_derive(p1, l);
                    if (dxi.is_zero()) continue;
                    SymbolExpr ddelta = delta_derive(p2, l);
                    if (ddelta.is_zero()) continue;
                    SymbolExpr term = Rational(1, l.factorial()) * (dxi * ddelta);
                    if (!term.is_zero()) out.add_part(d1 + d2 - m, term);
                }
        }
    return out;
}

const SymbolExpr& parametrix_term(int n) {
    if (n < 0) throw std::invalid_argument("parametrix_term: n must be >= 0");
    static std::vector<SymbolExpr> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    if (cache.empty())
        cache.push_back(SymbolExpr(Term{Coeff{1}, XiPart{MultiIndex{}, -1}, {Atom::exp_h(-1)}}));

    static const GradedSymbol lap = laplacian_symbol();
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        SymbolExpr bn;
        for (int j = 0; j < m; ++j)
            for (int k = 0; k <= 2; ++k) {
                int order = m - 2 - j + k;  // |l| forced by 2+j+|l|-k = m
                if (order < 0) continue;
                for (const MultiIndex& l : multi_indices_of_order(order)) {
                    SymbolExpr dxi = xi_derive(cache[j], l);
                    if (dxi.is_zero()) continue;
                    SymbolExpr ddelta = delta_derive(lap.part(k), l);
                    if (ddelta.is_zero()) continue;
                    bn += Rational(-1, l.factorial()) * (dxi * ddelta * cache[0]);
                }
            }
        cache.push_back(std::move(bn));
    }
    return cache[n];
}

}  // namespace nct
