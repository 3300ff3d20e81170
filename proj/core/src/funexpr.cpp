#include "nct/funexpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>
#include <nlohmann/json.hpp>

namespace nct {

using Real = boost::multiprecision::mpfr_float;

namespace {

struct PrecisionGuard {
    unsigned saved;
    explicit PrecisionGuard(unsigned digits10) : saved(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(saved); }
};

void poly_accumulate(Poly2& p, const Monomial2& m, const Rational& q) {
    if (q == 0) return;
    auto [it, inserted] = p.emplace(m, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0) p.erase(it);
    }
}

Poly2 poly_add(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [m, q] : b) poly_accumulate(r, m, q);
    return r;
}

Poly2 poly_scale(const Poly2& a, const Rational& q) {
    if (q == 0) return {};
    Poly2 r = a;
    for (auto& [m, c] : r) c *= q;
    return r;
}

// product truncated to total degree <= maxdeg
Poly2 poly_mul(const Poly2& a, const Poly2& b, int maxdeg = std::numeric_limits<int>::max()) {
    Poly2 r;
    for (const auto& [ma, qa] : a)
        for (const auto& [mb, qb] : b) {
            int i = ma.first + mb.first, j = ma.second + mb.second;
            if (i + j > maxdeg) continue;
            poly_accumulate(r, {i, j}, qa * qb);
        }
    return r;
}

std::optional<Poly2> poly_div_s(const Poly2& p) {
    Poly2 q;
    for (const auto& [m, c] : p) {
        if (m.first == 0) return std::nullopt;
        q[{m.first - 1, m.second}] = c;
    }
    return q;
}

std::optional<Poly2> poly_div_t(const Poly2& p) {
    Poly2 q;
    for (const auto& [m, c] : p) {
        if (m.second == 0) return std::nullopt;
        q[{m.first, m.second - 1}] = c;
    }
    return q;
}

// exact division by (s+t); nullopt when a remainder is left behind
std::optional<Poly2> poly_div_st(const Poly2& p) {
    if (p.empty()) return Poly2{};
    int ds = 0;
    for (const auto& [m, c] : p) ds = std::max(ds, m.first);
    // rows c_i(t) of p viewed as a polynomial in s
    std::vector<std::map<int, Rational>> rows(ds + 1), qrows(ds > 0 ? ds : 1);
    for (const auto& [m, c] : p) rows[m.first][m.second] = c;
    auto sub_shifted = [](std::map<int, Rational> base, const std::map<int, Rational>& tq) {
        for (const auto& [j, c] : tq) {
            auto [it, inserted] = base.emplace(j + 1, -c);
            if (!inserted) {
                it->second -= c;
                if (it->second == 0) base.erase(it);
            }
        }
        return base;
    };
    // q_{i-1} = c_i - t q_i, downward from q_{ds} = 0
    std::map<int, Rational> qi;  // q_i for current i
    for (int i = ds; i >= 1; --i) {
        qi = sub_shifted(rows[i], qi);
        qrows[i - 1] = qi;
    }
    std::map<int, Rational> rem = sub_shifted(rows[0], qi);
    if (!rem.empty()) return std::nullopt;
    Poly2 q;
    for (int i = 0; i < std::max(ds, 1); ++i)
        for (const auto& [j, c] : qrows[i])
            if (c != 0) q[{i, j}] = c;
    return q;
}

Poly2 poly_pow(const Poly2& base, int n, int maxdeg = std::numeric_limits<int>::max()) {
    Poly2 r{{{0, 0}, Rational(1)}};
    for (int k = 0; k < n; ++k) r = poly_mul(r, base, maxdeg);
    return r;
}

Poly2 monomial_poly(int ps, int pt, int pst) {
    Poly2 r{{{0, 0}, Rational(1)}};
    if (ps) r = poly_mul(r, Poly2{{{ps, 0}, Rational(1)}});
    if (pt) r = poly_mul(r, Poly2{{{0, pt}, Rational(1)}});
    if (pst) r = poly_mul(r, poly_pow(Poly2{{{1, 0}, Rational(1)}, {{0, 1}, Rational(1)}}, pst));
    return r;
}

// series of e^{a s + b t}: coefficient of s^i t^j is a^i b^j / (i! j!)
Poly2 exp_series(const LinForm& l, int order) {
    Poly2 r;
    Rational pow_a{1};
    for (int i = 0; i <= order; ++i) {
        if (i > 0) {
            if (l.a == 0) break;
            pow_a *= Rational(l.a, i);
        }
        Rational pow_ab = pow_a;
        for (int j = 0; i + j <= order; ++j) {
            if (j > 0) {
                if (l.b == 0) break;
                pow_ab *= Rational(l.b, j);
            }
            poly_accumulate(r, {i, j}, pow_ab);
        }
    }
    return r;
}

Rational poly_eval(const Poly2& p, const Rational& s, const Rational& t) {
    Rational r{0};
    for (const auto& [m, c] : p) {
        Rational v = c;
        for (int k = 0; k < m.first; ++k) v *= s;
        for (int k = 0; k < m.second; ++k) v *= t;
        r += v;
    }
    return r;
}

Rational rational_pow(const Rational& x, int n) {
    Rational r{1};
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

std::string poly_latex(const Poly2& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p) {
        Integer n = numerator(c), d = denominator(c);
        bool neg = n < 0;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        Integer an = abs(n);
        std::string body;
        if (m.first > 0) body += m.first == 1 ? "s" : "s^{" + std::to_string(m.first) + "}";
        if (m.second > 0) body += m.second == 1 ? "t" : "t^{" + std::to_string(m.second) + "}";
        std::string cs = d == 1 ? an.str() : "\\tfrac{" + an.str() + "}{" + d.str() + "}";
        if (body.empty())
            os << cs;
        else if (cs == "1")
            os << body;
        else
            os << cs << " " << body;
    }
    return os.str();
}

std::string linform_latex(const LinForm& l) {
    std::ostringstream os;
    auto piece = [&](int c, const char* v, bool lead) {
        if (c == 0) return std::string();
        std::string out;
        if (c < 0)
            out += lead ? "-" : " - ";
        else if (!lead)
            out += " + ";
        if (std::abs(c) != 1) out += std::to_string(std::abs(c));
        out += v;
        return out;
    };
    std::string a = piece(l.a, "s", true);
    os << a << piece(l.b, "t", a.empty());
    return os.str();
}

}  // namespace

Rational Series2::coeff(int i, int j) const {
    auto it = c.find({i, j});
    return it == c.end() ? Rational(0) : it->second;
}

std::vector<Rational> Series2::restrict_diagonal(int sign) const {
    std::vector<Rational> out(order + 1, Rational(0));
    for (const auto& [m, q] : c) {
        int deg = m.first + m.second;
        if (deg > order) continue;
        out[deg] += (sign < 0 && m.second % 2 == 1) ? -q : q;
    }
    return out;
}

struct FunExpr::EvalCache {
    std::mutex mutex;
    bool has_origin = false;
    Series2 origin;
};

void FunExpr::normalize() {
    for (auto it = num_.begin(); it != num_.end();)
        it = it->second.empty() ? num_.erase(it) : std::next(it);
    if (num_.empty()) {
        den_s_ = den_t_ = den_st_ = 0;
    } else {
        auto cancel = [&](int& power, auto&& divide) {
            while (power > 0) {
                std::map<LinForm, Poly2> reduced;
                for (const auto& [l, p] : num_) {
                    auto q = divide(p);
                    if (!q) return;
                    reduced.emplace(l, std::move(*q));
                }
                num_ = std::move(reduced);
                --power;
            }
        };
        cancel(den_s_, poly_div_s);
        cancel(den_t_, poly_div_t);
        cancel(den_st_, poly_div_st);
    }
    cache_ = std::make_shared<EvalCache>();
}

FunExpr FunExpr::constant(const Rational& q) {
    FunExpr f;
    if (q != 0) f.num_[LinForm{}] = Poly2{{{0, 0}, q}};
    f.normalize();
    return f;
}

FunExpr FunExpr::var_s() {
    FunExpr f;
    f.num_[LinForm{}] = Poly2{{{1, 0}, Rational(1)}};
    f.normalize();
    return f;
}

FunExpr FunExpr::var_t() {
    FunExpr f;
    f.num_[LinForm{}] = Poly2{{{0, 1}, Rational(1)}};
    f.normalize();
    return f;
}

FunExpr FunExpr::exponential(int a, int b) {
    FunExpr f;
    f.num_[LinForm{a, b}] = Poly2{{{0, 0}, Rational(1)}};
    f.normalize();
    return f;
}

bool FunExpr::depends_on_t() const {
    if (den_t_ > 0 || den_st_ > 0) return true;
    for (const auto& [l, p] : num_) {
        if (l.b != 0) return true;
        for (const auto& [m, c] : p)
            if (m.second != 0) return true;
    }
    return false;
}

FunExpr FunExpr::operator+(const FunExpr& o) const {
    FunExpr r;
    r.den_s_ = std::max(den_s_, o.den_s_);
    r.den_t_ = std::max(den_t_, o.den_t_);
    r.den_st_ = std::max(den_st_, o.den_st_);
    Poly2 lift_a = monomial_poly(r.den_s_ - den_s_, r.den_t_ - den_t_, r.den_st_ - den_st_);
    Poly2 lift_b =
        monomial_poly(r.den_s_ - o.den_s_, r.den_t_ - o.den_t_, r.den_st_ - o.den_st_);
    for (const auto& [l, p] : num_) r.num_[l] = poly_mul(p, lift_a);
    for (const auto& [l, p] : o.num_) {
        Poly2 lifted = poly_mul(p, lift_b);
        auto it = r.num_.find(l);
        if (it == r.num_.end())
            r.num_.emplace(l, std::move(lifted));
        else
            it->second = poly_add(it->second, lifted);
    }
    r.normalize();
    return r;
}

FunExpr FunExpr::operator-() const {
    FunExpr r = *this;
    for (auto& [l, p] : r.num_)
        for (auto& [m, c] : p) c = -c;
    return r;
}

FunExpr FunExpr::operator-(const FunExpr& o) const { return *this + (-o); }

FunExpr FunExpr::operator*(const FunExpr& o) const {
    FunExpr r;
    r.den_s_ = den_s_ + o.den_s_;
    r.den_t_ = den_t_ + o.den_t_;
    r.den_st_ = den_st_ + o.den_st_;
    for (const auto& [la, pa] : num_)
        for (const auto& [lb, pb] : o.num_) {
            Poly2 prod = poly_mul(pa, pb);
            auto it = r.num_.find(la + lb);
            if (it == r.num_.end())
                r.num_.emplace(la + lb, std::move(prod));
            else
                it->second = poly_add(it->second, prod);
        }
    r.normalize();
    return r;
}

FunExpr FunExpr::operator/(const FunExpr& o) const {
    if (o.num_.empty()) throw std::invalid_argument("FunExpr: division by zero");
    if (o.num_.size() != 1)
        throw std::invalid_argument("FunExpr: divisor is not a monomial-exponential factor");
    const auto& [lg, pg] = *o.num_.begin();
    Poly2 body = pg;
    int fs = 0, ft = 0, fst = 0;
    for (;;) {
        if (auto q = poly_div_s(body)) {
            body = std::move(*q);
            ++fs;
        } else if (auto q = poly_div_t(body)) {
            body = std::move(*q);
            ++ft;
        } else if (auto q = poly_div_st(body)) {
            body = std::move(*q);
            ++fst;
        } else {
            break;
        }
    }
    if (body.size() != 1 || body.begin()->first != Monomial2{0, 0})
        throw std::invalid_argument(
            "FunExpr: divisor does not factor as c * s^i t^j (s+t)^k * exp");
    Rational c = body.begin()->second;

    FunExpr r;
    r.den_s_ = den_s_ + fs;
    r.den_t_ = den_t_ + ft;
    r.den_st_ = den_st_ + fst;
    Poly2 lift = monomial_poly(o.den_s_, o.den_t_, o.den_st_);  // divisor's own denominator
    for (const auto& [l, p] : num_) {
        Poly2 q = poly_scale(poly_mul(p, lift), 1 / c);
        auto it = r.num_.find(l + (-lg));
        if (it == r.num_.end())
            r.num_.emplace(l + (-lg), std::move(q));
        else
            it->second = poly_add(it->second, q);
    }
    r.normalize();
    return r;
}

bool FunExpr::operator==(const FunExpr& o) const {
    // N1 * D2 == N2 * D1, exact in the polynomial-exponential module
    Poly2 d1 = monomial_poly(den_s_, den_t_, den_st_);
    Poly2 d2 = monomial_poly(o.den_s_, o.den_t_, o.den_st_);
    std::map<LinForm, Poly2> lhs, rhs;
    for (const auto& [l, p] : num_) lhs[l] = poly_mul(p, d2);
    for (const auto& [l, p] : o.num_) rhs[l] = poly_mul(p, d1);
    return lhs == rhs;
}

FunExpr FunExpr::substitute(const LinForm& image_s, const LinForm& image_t) const {
    FunExpr r;
    // A denominator base must land on an integer multiple of s, t or s+t;
    // the multiple is divided back out of the numerator.
    Rational scale{1};
    auto map_base = [&](const LinForm& image, int power) {
        if (power == 0) return;
        if (image.a == 0 && image.b == 0)
            throw std::invalid_argument(
                "FunExpr::substitute: substitution maps a singular factor to zero");
        int g = std::gcd(std::abs(image.a), std::abs(image.b));
        LinForm nf{image.a / g, image.b / g};
        int factor = g;
        if (nf.a < 0 || (nf.a == 0 && nf.b < 0)) {
            nf = -nf;
            factor = -g;
        }
        if (nf == LinForm{1, 0})
            r.den_s_ += power;
        else if (nf == LinForm{0, 1})
            r.den_t_ += power;
        else if (nf == LinForm{1, 1})
            r.den_st_ += power;
        else
            throw std::invalid_argument(
                "FunExpr::substitute: denominator would leave {s, t, s+t}");
        scale *= rational_pow(Rational(1, factor), power);
    };
    map_base(image_s, den_s_);
    map_base(image_t, den_t_);
    map_base(image_s + image_t, den_st_);

    Poly2 ps{{{1, 0}, Rational(image_s.a)}, {{0, 1}, Rational(image_s.b)}};
    Poly2 pt{{{1, 0}, Rational(image_t.a)}, {{0, 1}, Rational(image_t.b)}};
    std::erase_if(ps, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(pt, [](const auto& kv) { return kv.second == 0; });

    for (const auto& [l, p] : num_) {
        LinForm nl{l.a * image_s.a + l.b * image_t.a, l.a * image_s.b + l.b * image_t.b};
        Poly2 np;
        for (const auto& [m, c] : p) {
            Poly2 mono = poly_scale(poly_mul(poly_pow(ps, m.first), poly_pow(pt, m.second)),
                                    c * scale);
            np = poly_add(np, mono);
        }
        auto it = r.num_.find(nl);
        if (it == r.num_.end())
            r.num_.emplace(nl, std::move(np));
        else
            it->second = poly_add(it->second, np);
    }
    r.normalize();
    return r;
}

Series2 FunExpr::taylor(int order) const {
    if (order < 0) throw std::invalid_argument("FunExpr::taylor: negative order");
    int work = order + den_s_ + den_t_ + den_st_;
    Poly2 series;
    for (const auto& [l, p] : num_) series = poly_add(series, poly_mul(p, exp_series(l, work), work));

    for (int k = 0; k < den_s_; ++k) {
        auto q = poly_div_s(series);
        if (!q) throw NotRemovable("FunExpr::taylor: singular factor s does not divide");
        series = std::move(*q);
    }
    for (int k = 0; k < den_t_; ++k) {
        auto q = poly_div_t(series);
        if (!q) throw NotRemovable("FunExpr::taylor: singular factor t does not divide");
        series = std::move(*q);
    }
    for (int k = 0; k < den_st_; ++k) {
        auto q = poly_div_st(series);
        if (!q) throw NotRemovable("FunExpr::taylor: singular factor s+t does not divide");
        series = std::move(*q);
    }

    Series2 out;
    out.order = order;
    for (const auto& [m, c] : series)
        if (m.first + m.second <= order) out.c.emplace(m, c);
    return out;
}

namespace {

// adaptive precision doubling around a computation returning Real at a given
// number of decimal digits
template <typename F>
double adaptive_eval(double abs_err, F&& compute) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (unsigned digits = 40; digits <= 5200; digits *= 2) {
        double v = compute(digits);
        if (!std::isnan(prev) && std::abs(v - prev) <= std::max(abs_err / 2, 1e-300)) return v;
        prev = v;
    }
    throw EvalError("FunExpr::eval: requested accuracy unattainable at precision cap");
}

}  // namespace

double FunExpr::eval_direct(const Rational& s, const Rational& t, double abs_err) const {
    Rational den = rational_pow(s, den_s_) * rational_pow(t, den_t_) *
                   rational_pow(s + t, den_st_);
    return adaptive_eval(abs_err, [&](unsigned digits) {
        PrecisionGuard guard(digits);
        Real sum = 0;
        for (const auto& [l, p] : num_) {
            Rational arg = l.a * s + l.b * t;
            sum += Real(poly_eval(p, s, t)) * exp(Real(arg));
        }
        return (sum / Real(den)).convert_to<double>();
    });
}

double FunExpr::eval_origin_series(const Rational& s, const Rational& t) const {
    constexpr int kOriginOrder = 28;
    {
        std::lock_guard lock(cache_->mutex);
        if (!cache_->has_origin) {
            cache_->origin = taylor(kOriginOrder);
            cache_->has_origin = true;
        }
    }
    const Series2& ser = cache_->origin;
    PrecisionGuard guard(80);
    Real rs(s), rt(t), sum = 0;
    for (const auto& [m, c] : ser.c) {
        Real v(c);
        for (int k = 0; k < m.first; ++k) v *= rs;
        for (int k = 0; k < m.second; ++k) v *= rt;
        sum += v;
    }
    return sum.convert_to<double>();
}

double FunExpr::eval_on_line(int line, const Rational& s, const Rational& t,
                             double abs_err) const {
    constexpr int kOrder = 24;
    Rational cs, ct, u;
    int ds, dt;
    switch (line) {
        case 0: cs = 0; ct = t; ds = 1; dt = 0; u = s; break;
        case 1: cs = s; ct = 0; ds = 0; dt = 1; u = t; break;
        default:
            cs = (s - t) / 2;
            ct = (t - s) / 2;
            ds = dt = 1;
            u = (s + t) / 2;
            break;
    }

    // numerator restricted to the line: per exponential term an exact
    // rational series in u times the transcendental constant e^{l(center)}
    std::vector<std::pair<Rational, std::vector<Rational>>> parts;  // (exp arg, series)
    for (const auto& [l, p] : num_) {
        std::vector<Rational> ser(kOrder + 1, Rational(0));
        for (const auto& [m, c] : p) {
            // c * (cs + ds u)^i (ct + dt u)^j expanded in u
            std::vector<Rational> factor{c};
            auto mul_linear = [&](const Rational& c0, int slope, int times) {
                for (int k = 0; k < times; ++k) {
                    std::vector<Rational> next(std::min<size_t>(factor.size() + 1, kOrder + 1),
                                               Rational(0));
                    for (size_t d = 0; d < factor.size(); ++d) {
                        next[d] += factor[d] * c0;
                        if (slope != 0 && d + 1 < next.size()) next[d + 1] += factor[d] * slope;
                    }
                    factor = std::move(next);
                }
            };
            mul_linear(cs, ds, m.first);
            mul_linear(ct, dt, m.second);
            for (size_t d = 0; d < factor.size(); ++d) ser[d] += factor[d];
        }
        // times e^{g u} with integer slope g
        int g = l.a * ds + l.b * dt;
        if (g != 0) {
            std::vector<Rational> expo(kOrder + 1, Rational(0));
            Rational coef{1};
            expo[0] = 1;
            for (int k = 1; k <= kOrder; ++k) {
                coef *= Rational(g, k);
                expo[k] = coef;
            }
            std::vector<Rational> conv(kOrder + 1, Rational(0));
            for (int i = 0; i <= kOrder; ++i)
                for (int j = 0; i + j <= kOrder; ++j) conv[i + j] += ser[i] * expo[j];
            ser = std::move(conv);
        }
        parts.emplace_back(l.a * cs + l.b * ct, std::move(ser));
    }

    // denominator restricted to the line, as an exact series with known
    // valuation (one factor per active singular base)
    std::vector<Rational> den{Rational(1)};
    int valuation = 0;
    auto mul_den = [&](const Rational& c0, int slope, int power) {
        for (int k = 0; k < power; ++k) {
            if (c0 == 0) {
                ++valuation;
                den.insert(den.begin(), Rational(0));  // multiply by slope*u
                for (auto& c : den) c *= slope;
                if (den.size() > kOrder + 1u) den.resize(kOrder + 1);
                continue;
            }
            std::vector<Rational> next(std::min<size_t>(den.size() + 1, kOrder + 1), Rational(0));
            for (size_t d = 0; d < den.size(); ++d) {
                next[d] += den[d] * c0;
                if (slope != 0 && d + 1 < next.size()) next[d + 1] += den[d] * slope;
            }
            den = std::move(next);
        }
    };
    mul_den(cs, ds, den_s_);
    mul_den(ct, dt, den_t_);
    mul_den(cs + ct, ds + dt, den_st_);

    // strip u^valuation: the first coefficients of the restricted numerator
    // vanish identically when the singularity is removable
    std::vector<Rational> den_unit(den.begin() + valuation, den.end());
    if (den_unit.empty() || den_unit[0] == 0)
        throw std::logic_error("FunExpr::eval_on_line: denominator valuation mismatch");

    int out_order = kOrder - valuation;
    return adaptive_eval(abs_err, [&](unsigned digits) {
        PrecisionGuard guard(digits);
        std::vector<Real> numer(kOrder + 1, Real(0));
        Real scale = 0;
        for (const auto& [arg, ser] : parts) {
            Real c = exp(Real(arg));
            scale += abs(c);
            for (int k = 0; k <= kOrder; ++k)
                if (ser[k] != 0) numer[k] += c * Real(ser[k]);
        }
        // dropped coefficients must be rounding noise, not a genuine pole
        for (int k = 0; k < valuation; ++k)
            if (abs(numer[k]) > scale * 1e-6 + Real(1e-300))
                throw EvalError("FunExpr::eval: pole detected on a singular line");
        // series division numer/den_unit, then Horner at u
        std::vector<Real> q(out_order + 1);
        Real d0 = Real(den_unit[0]);
        for (int k = 0; k <= out_order; ++k) {
            Real acc = numer[k + valuation];
            for (int j = 1; j <= k && j < static_cast<int>(den_unit.size()); ++j)
                acc -= Real(den_unit[j]) * q[k - j];
            q[k] = acc / d0;
        }
        Real ru(u), value = 0;
        for (int k = out_order; k >= 0; --k) value = value * ru + q[k];
        return value.convert_to<double>();
    });
}

double FunExpr::eval(double s, double t, double abs_err) const {
    if (num_.empty()) return 0.0;
    if (!std::isfinite(s) || !std::isfinite(t))
        throw std::invalid_argument("FunExpr::eval: point must be finite");
    Rational rs(s), rt(t);
    bool has_den = den_s_ || den_t_ || den_st_;
    if (!has_den) return eval_direct(rs, rt, abs_err);

    if (std::abs(s) <= 0.02 && std::abs(t) <= 0.02) return eval_origin_series(rs, rt);

    if (den_s_ > 0 && rs == 0) return eval_on_line(0, rs, rt, abs_err);
    if (den_t_ > 0 && rt == 0) return eval_on_line(1, rs, rt, abs_err);
    if (den_st_ > 0 && rs + rt == 0) return eval_on_line(2, rs, rt, abs_err);

    constexpr double kLineThreshold = 1e-3;
    double inf = std::numeric_limits<double>::infinity();
    double dist_s = den_s_ ? std::abs(s) : inf;
    double dist_t = den_t_ ? std::abs(t) : inf;
    double dist_st = den_st_ ? std::abs(s + t) / std::sqrt(2.0) : inf;
    double best = std::min({dist_s, dist_t, dist_st});
    if (best < kLineThreshold) {
        if (best == dist_s) return eval_on_line(0, rs, rt, abs_err);
        if (best == dist_t) return eval_on_line(1, rs, rt, abs_err);
        return eval_on_line(2, rs, rt, abs_err);
    }
    return eval_direct(rs, rt, abs_err);
}

std::string FunExpr::to_latex() const {
    if (num_.empty()) return "0";
    std::ostringstream num;
    bool first = true;
    for (const auto& [l, p] : num_) {
        std::string body = poly_latex(p);
        std::string expo = (l == LinForm{}) ? "" : "e^{" + linform_latex(l) + "}";
        if (!expo.empty() && p.size() == 1 && p.begin()->first == Monomial2{0, 0}) {
            // pure coefficient times exponential
            std::string c = body;
            if (c == "1")
                body = expo;
            else if (c == "-1")
                body = "-" + expo;
            else
                body = c + " " + expo;
        } else if (!expo.empty()) {
            body = "\\left(" + body + "\\right) " + expo;
        }
        bool neg = !body.empty() && body[0] == '-';
        if (neg) body = body.substr(1);
        num << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << body;
        first = false;
    }
    if (den_s_ == 0 && den_t_ == 0 && den_st_ == 0) return num.str();
    std::ostringstream den;
    auto pow_str = [](const std::string& b, int k) {
        if (k == 0) return std::string();
        if (k == 1) return b;
        return b + "^{" + std::to_string(k) + "}";
    };
    den << pow_str("s", den_s_) << pow_str("t", den_t_) << pow_str("(s+t)", den_st_);
    return "\\frac{" + num.str() + "}{" + den.str() + "}";
}

nlohmann::ordered_json FunExpr::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [l, p] : num_) {
        nlohmann::ordered_json jp = nlohmann::ordered_json::array();
        for (const auto& [m, c] : p) {
            jp.push_back({{"pow", {m.first, m.second}},
                          {"num", numerator(c).str()},
                          {"den", denominator(c).str()}});
        }
        terms.push_back({{"exp", {l.a, l.b}}, {"poly", std::move(jp)}});
    }
    return {{"num", std::move(terms)},
            {"den", {{"s", den_s_}, {"t", den_t_}, {"s_plus_t", den_st_}}}};
}

std::vector<Rational> taylor_univariate(const FunExpr& f, int order) {
    if (f.depends_on_t())
        throw std::invalid_argument("taylor_univariate: function depends on t");
    Series2 ser = f.taylor(order);
    std::vector<Rational> out(order + 1, Rational(0));
    for (const auto& [m, c] : ser.c) out[m.first] = c;
    return out;
}

}  // namespace nct
