#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "nct/funexpr.hpp"
#include "nct/modcalc.hpp"
#include "nct/sphere.hpp"

namespace nct {

using Matrix = Eigen::MatrixXcd;

struct SpectralData {
    Matrix basis;             // unitary U with h = U diag(lambda) U^*
    Eigen::VectorXd lambda;   // eigenvalues, ascending
};

/// Finite-dimensional model: a Hermitian dilaton h, four anti-Hermitian
/// derivation generators A_i (delta_i = ad A_i), and the normalized trace
/// phi_0 = tr/n. Every symbolic identity in the derivation can be evaluated
/// here numerically. Immutable after construction.
class MatrixModel {
public:
    MatrixModel(Matrix h, std::array<Matrix, 4> generators);

    /// Seeded random model: ||h|| <= h_norm, independent generators; with
    /// commuting_generators the A_i are diagonal imaginary (the faithful
    /// analogue of the commuting torus derivations).
    static MatrixModel random(int dim, std::uint64_t seed, double h_norm = 2.0,
                              bool commuting_generators = false);

    /// Same generators, different dilaton.
    MatrixModel with_dilaton(Matrix h) const;

    int dim() const { return static_cast<int>(h_.rows()); }
    const Matrix& h() const { return h_; }
    const Matrix& generator(int direction) const { return gen_[direction - 1]; }
    const SpectralData& spectral() const { return spectral_; }
    const Matrix& exp_h(int sign) const { return sign > 0 ? exp_plus_ : exp_minus_; }

    Matrix delta(int direction, const Matrix& x) const;
    /// delta^a = delta_1^{a_1} ... delta_4^{a_4} (delta_4 acts first).
    Matrix delta_pow(const MultiIndex& index, const Matrix& x) const;

    std::complex<double> trace_state(const Matrix& x) const { return x.trace() / double(dim()); }

private:
    Matrix h_;
    std::array<Matrix, 4> gen_;
    SpectralData spectral_;
    Matrix exp_plus_, exp_minus_;
};

/// F(nabla)(x): entrywise multiplication by F(lambda_j - lambda_i) in the
/// eigenbasis of h.
Matrix apply_modfun(const MatrixModel& m, const FunExpr& f, const Matrix& x);

/// F(nabla, nabla)(x (x) y): entry (i,j) of the result in the eigenbasis is
/// sum_k F(lambda_k - lambda_i, lambda_j - lambda_k) x_ik y_kj.
Matrix apply_modfun(const MatrixModel& m, const FunExpr& f, const Matrix& x, const Matrix& y);

Matrix eval_ncexpression(const MatrixModel& m, const NCExpression& x);
Matrix eval_modexpr(const MatrixModel& m, const ModExpr& x);

/// Einstein-Hilbert action Omega(h) = sum_i phi_0(e^{-h} T(nabla)(delta_i h) delta_i h).
double action(const MatrixModel& m);

/// Grad_h Omega = sum_i e^{-h}( omega_1(nabla)(delta_i^2 h) + omega_2(nabla,nabla)(delta_i h (x) delta_i h) ).
Matrix action_gradient(const MatrixModel& m);

struct GradientCheck {
    double fd = 0.0;       // Richardson-extrapolated central difference
    double pairing = 0.0;  // phi_0(a Grad_h Omega)
    double rel_error = 0.0;
};

GradientCheck gradient_check(const MatrixModel& m, const Matrix& a, double eps);

Matrix random_hermitian(int dim, std::mt19937_64& rng);
Matrix random_anti_hermitian(int dim, std::mt19937_64& rng);
/// Exact-rank random orthogonal projection p = V diag(1..1,0..0) V^*.
Matrix random_projection(int dim, std::mt19937_64& rng);

}  // namespace nct
