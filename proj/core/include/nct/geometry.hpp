#pragma once

#include <array>
#include <string>

#include "nct/modcalc.hpp"
#include "nct/parametrix.hpp"
#include "nct/specfun.hpp"
#include "nct/sphere.hpp"

namespace nct {

struct CurvatureResult {
    NCExpression raw;    // sphere-integrated b_2
    ModExpr modular;     // e^{-h} k(nabla)(...) + e^{-h} H(nabla,nabla)(...)
    FunExpr k;
    FunExpr H;
    bool pi2 = true;     // overall pi^2 factor of raw/modular, carried separately
    std::string constant_note;
};

/// Full curvature chain: parametrix b_2 -> sphere integral -> modular normal
/// form -> (k, H). Asserts on the way that the raw form equals the closed
/// curvature expression.
CurvatureResult derive_curvature();

/// The closed form the pipeline must reproduce:
/// pi^2 sum_i ( -e^{-h} d_i^2(e^h) e^{-h} + 3/2 e^{-h} d_i(e^h) e^{-h} d_i(e^h) e^{-h} ).
NCExpression curvature_integral_closed_form();

struct ProjectionCurvature {
    /// Coefficients of Delta(p), Delta(p)p, pDelta(p), pDelta(p)p in the
    /// specialization of k(nabla) + H(nabla,nabla) to h = s p (the pi^2
    /// prefactor of the curvature integral is carried separately).
    std::array<FunExpr, 4> f;
    std::string normalization;
};

/// Specializes the curvature formula to a projection dilaton h = s p using
/// the finite nabla-spectrum {0, -s, s}; coefficients are collected exactly.
ProjectionCurvature derive_projection_curvature();

struct GradientResult {
    FunExpr omega1;
    FunExpr omega2;
    ModExpr modular_form;  // sum_i e^{-h}( omega1(d_i^2 h) + omega2(d_i h (x) d_i h) )
};

GradientResult derive_gradient();

}  // namespace nct
