#pragma once

#include <cstdint>

#include "nct/funexpr.hpp"

namespace nct::specfun {

// One-variable functions are functions of s; two-variable functions pair the
// first variable s with the left factor of the argument product. Functions of
// the modular operator are stored in the logarithmic variable, i.e. g(Delta)
// appears as s -> g(e^s).

FunExpr g1();  // (e^s - 1)/s
FunExpr g2();  // two-variable substitution kernel in logarithmic coordinates

FunExpr k();        // (e^{-s} - 1)/s
FunExpr H();        // curvature two-variable function, closed quotient form
FunExpr k_tilde();  // e^s k(s)
FunExpr H_tilde();  // e^{s+t} H(s,t)

FunExpr T();  // Einstein-Hilbert action density function

// dilaton h = s p: coefficients of Delta(p), Delta(p)p, p Delta(p), p Delta(p)p
FunExpr f1();
FunExpr f2();
FunExpr f3();
FunExpr f4();

// gradient building blocks, parameterized by a one-variable G
FunExpr E(const FunExpr& G);
FunExpr L(const FunExpr& G);
FunExpr M1(const FunExpr& G);
FunExpr M2(const FunExpr& G);
FunExpr P(const FunExpr& G);
FunExpr Q(const FunExpr& G);
FunExpr Gbar(const FunExpr& G);

FunExpr omega1();  // -T(s) - T(-s) e^{-s}
FunExpr omega2();  // E + L - P - Q with G = T

FunExpr omega2_diag();      // omega2(s, s), by regular substitution
FunExpr omega2_antidiag();  // omega2(s, -s), closed form

// convenience closed forms over e^{+-s}
FunExpr sinh_s();
FunExpr cosh_s();

/// Substitute -s for s in a one-variable function.
FunExpr reflect(const FunExpr& f);

struct Box {
    double s_min, s_max, t_min, t_max;
};

struct IdentityReport {
    bool pass = false;
    double max_dev = 0.0;
    double worst_s = 0.0, worst_t = 0.0;
    bool series_compared = false;
    bool series_equal = false;
};

/// Randomized sampling comparison of two functions plus, when both sides
/// admit a Taylor expansion, an exact series comparison at the origin to
/// order 10. Deterministic for a fixed seed.
IdentityReport check_identity(const FunExpr& lhs, const FunExpr& rhs, const Box& box,
                              int samples, double tol, std::uint64_t seed);

}  // namespace nct::specfun
