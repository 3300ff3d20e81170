#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace nct {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Scalar of the form q * (pi^2)^p with q an exact rational and p in {0, 1}.
/// The pi^2 power is part of a term's identity: quantities with and without
/// the sphere-volume factor never merge.
struct Coeff {
    Rational q{0};
    bool pi2 = false;

    Coeff() = default;
    Coeff(Rational value, bool pi2_factor = false) : q(std::move(value)), pi2(pi2_factor) {}
    Coeff(long value) : q(value) {}

    bool is_zero() const { return q == 0; }

    Coeff operator-() const { return {-q, pi2}; }

    Coeff operator*(const Coeff& o) const {
        if (pi2 && o.pi2)
            throw std::domain_error("Coeff: product leaves Q + Q*pi^2 (pi^4 coefficient)");
        return {q * o.q, pi2 || o.pi2};
    }

    Coeff& operator*=(const Rational& r) {
        q *= r;
        return *this;
    }

    bool operator==(const Coeff&) const = default;

    double to_double() const;
    std::string to_latex() const;
};

inline constexpr double kPiSquared = 9.869604401089358;  // pi^2 to double precision

inline double Coeff::to_double() const {
    double v = q.convert_to<double>();
    return pi2 ? v * kPiSquared : v;
}

}  // namespace nct
