#pragma once

#include <map>

#include "nct/symbol.hpp"

namespace nct {

/// Symbol split into homogeneous components, keyed by xi-degree.
struct GradedSymbol {
    std::map<int, SymbolExpr> parts;  // nonzero, each homogeneous of its key

    int top_degree() const;
    void add_part(int degree, const SymbolExpr& x);  // validates homogeneity

    const SymbolExpr& part(int degree) const;  // zero if absent
};

/// Symbol of the conformally rescaled Laplacian: degree parts {2, 1, 0}.
GradedSymbol laplacian_symbol();

/// Symbol composition sum_l (1/l!) d_xi^l(rho) delta^l(rho'), truncated to
/// components of degree >= min_degree. Throws std::invalid_argument when the
/// requested window lies entirely above the product's top degree, so an empty
/// result is always an explicit signal rather than a silent truncation.
GradedSymbol compose(const GradedSymbol& rho, const GradedSymbol& rho2, int min_degree);

/// n-th term of the parametrix of the Laplacian, homogeneous of degree -2-n.
/// b_0 = e^{-h}|xi|^{-2}; higher terms follow the recursion
///   b_n = - sum 1/l! d_xi^l(b_j) delta^l(a_k) b_0   over 2+j+|l|-k = n.
/// Results are memoized.
const SymbolExpr& parametrix_term(int n);

}  // namespace nct
