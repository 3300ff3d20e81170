#include "nct/oracle.hpp"

#include <stdexcept>

#include "nct/specfun.hpp"

namespace nct {

namespace {

constexpr double kEvalTol = 1e-12;

SpectralData decompose(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("MatrixModel: eigendecomposition failed (input not Hermitian?)");
    return {solver.eigenvectors(), solver.eigenvalues()};
}

Matrix exp_of(const SpectralData& sd, double sign) {
    Eigen::VectorXd e = (sign * sd.lambda.array()).exp();
    return sd.basis * e.asDiagonal() * sd.basis.adjoint();
}

}  // namespace

MatrixModel::MatrixModel(Matrix h, std::array<Matrix, 4> generators)
    : h_(std::move(h)), gen_(std::move(generators)), spectral_(decompose(h_)) {
    if ((h_ - h_.adjoint()).norm() > 1e-12 * std::max(1.0, h_.norm()))
        throw std::invalid_argument("MatrixModel: dilaton must be Hermitian");
    for (const Matrix& a : gen_)
        if ((a + a.adjoint()).norm() > 1e-12 * std::max(1.0, a.norm()))
            throw std::invalid_argument("MatrixModel: generators must be anti-Hermitian");
    exp_plus_ = exp_of(spectral_, 1.0);
    exp_minus_ = exp_of(spectral_, -1.0);
}

MatrixModel MatrixModel::random(int dim, std::uint64_t seed, double h_norm,
                                bool commuting_generators) {
    std::mt19937_64 rng(seed);
    Matrix h = random_hermitian(dim, rng);
    double norm = decompose(h).lambda.cwiseAbs().maxCoeff();
    std::uniform_real_distribution<double> scale(0.25, 1.0);
    if (norm > 0) h *= h_norm * scale(rng) / norm;

    std::array<Matrix, 4> gens;
    for (auto& g : gens) {
        if (commuting_generators) {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            Eigen::VectorXd d(dim);
            for (int i = 0; i < dim; ++i) d[i] = u(rng);
            g = (std::complex<double>(0, 1) * d.asDiagonal().toDenseMatrix()).eval();
        } else {
            g = random_anti_hermitian(dim, rng);
        }
    }
    return MatrixModel(std::move(h), std::move(gens));
}

MatrixModel MatrixModel::with_dilaton(Matrix h) const { return MatrixModel(std::move(h), gen_); }

Matrix MatrixModel::delta(int direction, const Matrix& x) const {
    const Matrix& a = gen_.at(direction - 1);
    return a * x - x * a;
}

Matrix MatrixModel::delta_pow(const MultiIndex& index, const Matrix& x) const {
    Matrix r = x;
    for (int dir = 4; dir >= 1; --dir)
        for (int k = 0; k < index[dir - 1]; ++k) r = delta(dir, r);
    return r;
}

Matrix apply_modfun(const MatrixModel& m, const FunExpr& f, const Matrix& x) {
    const SpectralData& sd = m.spectral();
    int n = m.dim();
    Matrix xt = sd.basis.adjoint() * x * sd.basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            xt(i, j) *= f.eval(sd.lambda[j] - sd.lambda[i], 0.0, kEvalTol);
    return sd.basis * xt * sd.basis.adjoint();
}

Matrix apply_modfun(const MatrixModel& m, const FunExpr& f, const Matrix& x, const Matrix& y) {
    const SpectralData& sd = m.spectral();
    int n = m.dim();
    Matrix xt = sd.basis.adjoint() * x * sd.basis;
    Matrix yt = sd.basis.adjoint() * y * sd.basis;
    Matrix zt = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> acc = 0;
            for (int k = 0; k < n; ++k) {
                double w = f.eval(sd.lambda[k] - sd.lambda[i], sd.lambda[j] - sd.lambda[k],
                                  kEvalTol);
                acc += w * xt(i, k) * yt(k, j);
            }
            zt(i, j) = acc;
        }
    return sd.basis * zt * sd.basis.adjoint();
}

Matrix eval_ncexpression(const MatrixModel& m, const NCExpression& x) {
    int n = m.dim();
    Matrix sum = Matrix::Zero(n, n);
    for (const Term& t : x.terms()) {
        Matrix w = Matrix::Identity(n, n);
        for (const Atom& a : t.word) {
            switch (a.kind) {
                case Atom::Kind::ExpH:
                    w *= m.exp_h(a.sign);
                    break;
                case Atom::Kind::DeltaExpH:
                    w *= m.delta_pow(a.index, m.exp_h(a.sign));
                    break;
                case Atom::Kind::DeltaH:
                    w *= m.delta_pow(a.index, m.h());
                    break;
            }
        }
        sum += t.coeff.to_double() * w;
    }
    return sum;
}

Matrix eval_modexpr(const MatrixModel& m, const ModExpr& x) {
    int n = m.dim();
    Matrix sum = Matrix::Zero(n, n);
    for (const ModTerm& t : x.terms()) {
        Matrix applied;
        if (t.args.size() == 1) {
            applied = apply_modfun(m, t.func, m.delta_pow(t.args[0], m.h()));
        } else {
            applied = apply_modfun(m, t.func, m.delta_pow(t.args[0], m.h()),
                                   m.delta_pow(t.args[1], m.h()));
        }
        sum += t.coeff.to_double() * (m.exp_h(-1) * applied);
    }
    return sum;
}

double action(const MatrixModel& m) {
    static const FunExpr t_fun = specfun::T();
    double omega = 0.0;
    for (int i = 1; i <= 4; ++i) {
        Matrix dh = m.delta(i, m.h());
        Matrix term = m.exp_h(-1) * apply_modfun(m, t_fun, dh) * dh;
        omega += m.trace_state(term).real();
    }
    return omega;
}

Matrix action_gradient(const MatrixModel& m) {
    static const FunExpr w1 = specfun::omega1();
    static const FunExpr w2 = specfun::omega2();
    int n = m.dim();
    Matrix grad = Matrix::Zero(n, n);
    for (int i = 1; i <= 4; ++i) {
        Matrix dh = m.delta(i, m.h());
        Matrix d2h = m.delta(i, dh);
        grad += m.exp_h(-1) * (apply_modfun(m, w1, d2h) + apply_modfun(m, w2, dh, dh));
    }
    return grad;
}

GradientCheck gradient_check(const MatrixModel& m, const Matrix& a, double eps) {
    if (!(eps > 0) || eps >= 1e-2)
        throw std::invalid_argument("gradient_check: eps must lie in (0, 1e-2)");
    auto omega_at = [&](double e) { return action(m.with_dilaton(m.h() + e * a)); };
    auto central = [&](double e) { return (omega_at(e) - omega_at(-e)) / (2 * e); };
    double d1 = central(eps), d2 = central(eps / 2);
    GradientCheck out;
    out.fd = (4 * d2 - d1) / 3;
    out.pairing = m.trace_state(a * action_gradient(m)).real();
    double scale = std::max({1e-8, std::abs(out.fd), std::abs(out.pairing)});
    out.rel_error = std::abs(out.fd - out.pairing) / scale;
    return out;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix b(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = std::complex<double>(u(rng), u(rng));
    return (b + b.adjoint()) / 2;
}

Matrix random_anti_hermitian(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix b(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = std::complex<double>(u(rng), u(rng));
    return (b - b.adjoint()) / 2;
}

Matrix random_projection(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix b(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = std::complex<double>(u(rng), u(rng));
    Eigen::HouseholderQR<Matrix> qr(b);
    Matrix q = qr.householderQ();
    std::uniform_int_distribution<int> rank(1, dim - 1);
    int r = rank(rng);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < r; ++i) d[i] = 1.0;
    return q * d.asDiagonal() * q.adjoint();
}

}  // namespace nct
