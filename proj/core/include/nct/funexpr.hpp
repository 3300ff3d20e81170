#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nct/coeff.hpp"

namespace nct {

/// Integer linear form a*s + b*t, used as an exponent argument.
struct LinForm {
    int a = 0, b = 0;
    auto operator<=>(const LinForm&) const = default;
    LinForm operator+(const LinForm& o) const { return {a + o.a, b + o.b}; }
    LinForm operator-() const { return {-a, -b}; }
};

using Monomial2 = std::pair<int, int>;           // (power of s, power of t)
using Poly2 = std::map<Monomial2, Rational>;     // sparse exact polynomial

/// Series division met an irremovable singular factor (a genuine pole or a
/// transcription bug on the caller's side).
struct NotRemovable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested evaluation accuracy unattainable at the working-precision cap.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact truncated Taylor expansion at the origin, total degree <= order.
struct Series2 {
    int order = 0;
    std::map<Monomial2, Rational> c;

    Rational coeff(int i, int j) const;
    /// Restriction t -> sign*s as univariate coefficients (degree 0..order).
    std::vector<Rational> restrict_diagonal(int sign) const;
    bool operator==(const Series2&) const = default;
};

/// Closed-form expression in the variables s, t: an exact sum of polynomial
/// multiples of exponentials of integer linear forms, divided by a monomial
/// in {s, t, s+t},
///     f = [ sum_k p_k(s,t) e^{a_k s + b_k t} ] / ( s^A t^B (s+t)^C ).
///
/// This normal form is closed under +, -, *, the divisions the curvature
/// derivation needs, and integer-linear substitutions; it makes function
/// equality decidable and Taylor coefficients exact. All singularities are
/// along s = 0, t = 0, s + t = 0 and are removable for every function built
/// here (taylor() verifies this as it divides).
class FunExpr {
public:
    FunExpr() = default;  // zero

    static FunExpr constant(const Rational& q);
    static FunExpr var_s();
    static FunExpr var_t();
    static FunExpr exponential(int a, int b);  // e^{a s + b t}

    bool is_zero() const { return num_.empty(); }
    bool depends_on_t() const;

    FunExpr operator+(const FunExpr& o) const;
    FunExpr operator-(const FunExpr& o) const;
    FunExpr operator-() const;
    FunExpr operator*(const FunExpr& o) const;

    /// Division. The divisor must reduce to c * s^i t^j (s+t)^k * e^{l};
    /// anything else (for example 1/(e^s - 1)) throws std::invalid_argument.
    FunExpr operator/(const FunExpr& o) const;

    FunExpr& operator+=(const FunExpr& o) { return *this = *this + o; }
    FunExpr& operator-=(const FunExpr& o) { return *this = *this - o; }
    FunExpr& operator*=(const FunExpr& o) { return *this = *this * o; }

    /// Exact function equality (cross-multiplied canonical comparison).
    bool operator==(const FunExpr& o) const;

    /// Substitute integer linear forms for s and t. Throws if an active
    /// denominator factor would map to something other than +-s, +-t,
    /// +-(s+t) (in particular, onto the singular set).
    FunExpr substitute(const LinForm& image_s, const LinForm& image_t) const;

    /// Exact Taylor coefficients at the origin to the given total order.
    Series2 taylor(int order) const;

    /// Evaluate to within abs_err. Points on or near the singular lines are
    /// handled by exact recentred series; elsewhere extended-precision
    /// evaluation with adaptive precision doubling is used.
    double eval(double s, double t = 0.0, double abs_err = 1e-13) const;

    std::string to_latex() const;
    nlohmann::ordered_json to_json() const;

    // canonical-form access (rendering, hashing, debugging)
    const std::map<LinForm, Poly2>& numerator_terms() const { return num_; }
    int den_pow_s() const { return den_s_; }
    int den_pow_t() const { return den_t_; }
    int den_pow_st() const { return den_st_; }

private:
    std::map<LinForm, Poly2> num_;
    int den_s_ = 0, den_t_ = 0, den_st_ = 0;

    struct EvalCache;
    mutable std::shared_ptr<EvalCache> cache_;

    void normalize();
    double eval_direct(const Rational& s, const Rational& t, double abs_err) const;
    double eval_origin_series(const Rational& s, const Rational& t) const;
    double eval_on_line(int line, const Rational& s, const Rational& t, double abs_err) const;
};

/// Univariate Taylor coefficients (requires a function of s only).
std::vector<Rational> taylor_univariate(const FunExpr& f, int order);

}  // namespace nct
