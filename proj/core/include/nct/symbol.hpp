#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nct/coeff.hpp"
#include "nct/multi_index.hpp"

namespace nct {

/// One noncommuting generator: e^{+-h}, delta^a(e^{+-h}) or delta^a(h).
///
/// Normal forms never contain delta^a(e^{-h}); SymbolExpr rewrites such atoms
/// into words over {e^{-h}, delta^b(e^{h})} using delta(e^{-h}) =
/// -e^{-h} delta(e^{h}) e^{-h}. The constructor still accepts them so that
/// serialized input round-trips.
struct Atom {
    enum class Kind { ExpH, DeltaExpH, DeltaH };

    Kind kind;
    int sign;          // +1 or -1; meaningful for ExpH and DeltaExpH
    MultiIndex index;  // meaningful for DeltaExpH and DeltaH

    static Atom exp_h(int sign);
    static Atom delta_exp_h(const MultiIndex& index, int sign);  // |index|=0 collapses to exp_h
    static Atom delta_h(const MultiIndex& index);                // requires |index| >= 1

    auto operator<=>(const Atom&) const = default;
};

using Word = std::vector<Atom>;

/// Scalar xi-dependence of a term: a monomial xi^mono times |xi|^(2*radial).
struct XiPart {
    MultiIndex mono;
    int radial = 0;  // power of |xi|^2, may be negative

    int degree() const { return mono.order() + 2 * radial; }

    auto operator<=>(const XiPart&) const = default;
    bool is_trivial() const { return mono.is_zero() && radial == 0; }
};

struct Term {
    Coeff coeff;
    XiPart xi;
    Word word;
};

/// Finite sum of terms (rational x (pi^2)^p) * xi-part * word, kept in a
/// canonical normal form: words reduced (no delta(e^{-h}) atoms, adjacent
/// e^{h} e^{-h} pairs cancelled), terms sorted and merged, zeros dropped.
/// Equality of expressions is equality of the stored representations.
class SymbolExpr {
public:
    SymbolExpr() = default;
    explicit SymbolExpr(std::vector<Term> terms);
    explicit SymbolExpr(Term term);

    static SymbolExpr zero() { return SymbolExpr(); }
    static SymbolExpr one();
    static SymbolExpr atom(const Atom& a);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Common xi-degree of all terms, or nullopt if terms disagree
    /// (the zero expression also reports nullopt: it carries no witness).
    std::optional<int> degree() const;

    SymbolExpr operator+(const SymbolExpr& o) const;
    SymbolExpr operator-(const SymbolExpr& o) const;
    SymbolExpr operator-() const;
    SymbolExpr operator*(const SymbolExpr& o) const;
    SymbolExpr& operator+=(const SymbolExpr& o);

    friend SymbolExpr operator*(const Coeff& c, const SymbolExpr& x);
    friend SymbolExpr operator*(const Rational& c, const SymbolExpr& x);

    bool operator==(const SymbolExpr&) const = default;

    std::string to_latex() const;
    nlohmann::ordered_json to_json() const;
    static SymbolExpr from_json(const nlohmann::json& j);

private:
    std::vector<Term> terms_;
};

inline SymbolExpr add(const SymbolExpr& a, const SymbolExpr& b) { return a + b; }
inline SymbolExpr mul(const SymbolExpr& a, const SymbolExpr& b) { return a * b; }

/// Derivation delta_i (direction 1..4), extended by the Leibniz rule;
/// xi-parts are constants for it.
SymbolExpr delta_derive(const SymbolExpr& x, int direction);

/// d/d(xi_i): acts on xi-parts only, lowers the degree of a homogeneous
/// expression by one.
SymbolExpr xi_derive(const SymbolExpr& x, int direction);

SymbolExpr delta_derive(const SymbolExpr& x, const MultiIndex& index);
SymbolExpr xi_derive(const SymbolExpr& x, const MultiIndex& index);

std::string to_latex(const Atom& a);

}  // namespace nct
