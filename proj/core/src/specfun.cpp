#include "nct/specfun.hpp"

#include <random>

namespace nct::specfun {

namespace {

const FunExpr kOne = FunExpr::constant(1);
const FunExpr kS = FunExpr::var_s();
const FunExpr kT = FunExpr::var_t();

FunExpr exp_st(int a, int b) { return FunExpr::exponential(a, b); }

FunExpr to_var_t(const FunExpr& f) { return f.substitute({0, 1}, {1, 0}); }

FunExpr at_sum(const FunExpr& f) { return f.substitute({1, 1}, {0, 0}); }

}  // namespace

FunExpr sinh_s() { return (exp_st(1, 0) - exp_st(-1, 0)) * FunExpr::constant(Rational(1, 2)); }
FunExpr cosh_s() { return (exp_st(1, 0) + exp_st(-1, 0)) * FunExpr::constant(Rational(1, 2)); }

FunExpr reflect(const FunExpr& f) { return f.substitute({-1, 0}, {0, -1}); }

FunExpr g1() { return (exp_st(1, 0) - kOne) / kS; }

FunExpr g2() {
    // (u(v-1)log u - (u-1)log v) / (log u log v (log u + log v)) at u=e^s, v=e^t
    FunExpr num = exp_st(1, 0) * (exp_st(0, 1) - kOne) * kS - (exp_st(1, 0) - kOne) * kT;
    return num / (kS * kT * (kS + kT));
}

FunExpr k() { return (exp_st(-1, 0) - kOne) / kS; }

FunExpr H() {
    FunExpr num = (exp_st(1, 0) - kOne) * (FunExpr::constant(3) * exp_st(0, 1) + kOne) * kT -
                  (exp_st(1, 0) + FunExpr::constant(3)) * kS * (exp_st(0, 1) - kOne);
    return exp_st(-1, -1) * num / (FunExpr::constant(2) * kS * kT * (kS + kT));
}

FunExpr k_tilde() { return exp_st(1, 0) * k(); }

FunExpr H_tilde() { return exp_st(1, 1) * H(); }

FunExpr T() {
    FunExpr num = FunExpr::constant(-2) * kS + exp_st(1, 0) -
                  exp_st(-1, 0) * (FunExpr::constant(2) * kS + FunExpr::constant(3)) +
                  FunExpr::constant(2);
    return num / (FunExpr::constant(4) * kS * kS);
}

FunExpr f1() {
    return (FunExpr::constant(-2) * sinh_s() + cosh_s() - kOne) *
           FunExpr::constant(Rational(1, 4));
}

FunExpr f2() { return (cosh_s() - kOne) * FunExpr::constant(Rational(1, 4)); }

FunExpr f3() {
    return (sinh_s() - kS) * FunExpr::constant(Rational(1, 2)) -
           (cosh_s() - kOne) * FunExpr::constant(Rational(1, 4));
}

FunExpr f4() { return kS - sinh_s(); }

FunExpr E(const FunExpr& G) { return ((exp_st(-1, -1) - kOne) / (kS + kT)) * G; }

FunExpr L(const FunExpr& G) {
    FunExpr Gmt = G.substitute({0, -1}, {1, 0});  // G(-t)
    FunExpr Gt = to_var_t(G);                     // G(t)
    FunExpr Gms = reflect(G);                     // G(-s)
    return exp_st(-1, -1) * ((Gmt - G) / (kS + kT) + ((Gt - Gms) / (kS + kT)) * exp_st(0, 1));
}

FunExpr M1(const FunExpr& G) { return (to_var_t(G) - at_sum(G)) / kS; }

FunExpr M2(const FunExpr& G) { return (at_sum(G) - G) / kT; }

FunExpr P(const FunExpr& G) {
    return at_sum(G) * ((exp_st(-1, 0) - kOne) / kS) + M1(G) * exp_st(-1, 0) + M2(G);
}

FunExpr Gbar(const FunExpr& G) { return reflect(G) * exp_st(-1, 0); }

FunExpr Q(const FunExpr& G) {
    return at_sum(Gbar(G)) * ((exp_st(-1, 0) - kOne) / kS) + M1(G) * exp_st(-1, 0) + M2(G);
}

FunExpr omega1() { return -T() - reflect(T()) * exp_st(-1, 0); }

FunExpr omega2() {
    FunExpr G = T();
    return E(G) + L(G) - P(G) - Q(G);
}

FunExpr omega2_diag() { return omega2().substitute({1, 0}, {1, 0}); }

FunExpr omega2_antidiag() {
    // (4s + e^{-2s} - 2 e^s + 1) / (4 s^2)
    FunExpr num = FunExpr::constant(4) * kS + exp_st(-2, 0) - FunExpr::constant(2) * exp_st(1, 0) +
                  kOne;
    return num / (FunExpr::constant(4) * kS * kS);
}

IdentityReport check_identity(const FunExpr& lhs, const FunExpr& rhs, const Box& box,
                              int samples, double tol, std::uint64_t seed) {
    IdentityReport report;
    try {
        Series2 a = lhs.taylor(10), b = rhs.taylor(10);
        report.series_compared = true;
        report.series_equal = (a == b);
    } catch (const NotRemovable&) {
        report.series_compared = false;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(box.s_min, box.s_max);
    std::uniform_real_distribution<double> ut(box.t_min, box.t_max);
    double eval_err = std::max(tol / 100, 1e-300);
    for (int i = 0; i < samples; ++i) {
        double s = us(rng), t = ut(rng);
        double dev = std::abs(lhs.eval(s, t, eval_err) - rhs.eval(s, t, eval_err));
        if (dev > report.max_dev) {
            report.max_dev = dev;
            report.worst_s = s;
            report.worst_t = t;
        }
    }
    report.pass = report.max_dev <= tol && (!report.series_compared || report.series_equal);
    return report;
}

}  // namespace nct::specfun
