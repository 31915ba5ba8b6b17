#pragma once

#include <map>
#include <string>

#include "mvf/value.hpp"

namespace mvf {

/**
 * Exact element of the subring of R generated by the rationals and the
 * Values: a finite sum  sum q_i * u_i  with rational q_i and pairwise
 * distinct reduced monomials u_i (Values with all exponents in [0,1)).
 *
 * Distinct reduced monomials are linearly independent over Q (real
 * radicals of distinct prime products), so the representation is
 * canonical: a Scalar is zero iff it has no terms. Signs of multi-term
 * sums are decided by certified MPFR interval refinement, which
 * terminates because a nonzero representation denotes a nonzero real.
 *
 * This is the exact number domain of formula evaluation: predicate
 * values are Values, connectives combine them by +, -, *, min, max.
 */
class Scalar {
public:
    Scalar() = default;  // 0
    Scalar(const Rat& q);
    Scalar(long n) : Scalar(Rat(n)) {}
    Scalar(const Value& v);
    static Scalar from_norm(const Norm& n);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rat to_rational() const;  // requires is_rational()

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    int sign() const;
    static int compare(const Scalar& a, const Scalar& b);

    bool operator==(const Scalar&) const = default;
    bool operator<(const Scalar& b) const { return compare(*this, b) < 0; }
    bool operator<=(const Scalar& b) const { return compare(*this, b) <= 0; }
    bool operator>(const Scalar& b) const { return compare(*this, b) > 0; }
    bool operator>=(const Scalar& b) const { return compare(*this, b) >= 0; }

    double to_double() const;  // non-authoritative
    std::string str() const;

    const std::map<Value, Rat, ValueKeyLess>& terms() const { return terms_; }

private:
    std::map<Value, Rat, ValueKeyLess> terms_;  // reduced monomial -> nonzero coeff

    void add_term(const Value& monomial, const Rat& coeff);
};

// Connectives of the continuous logic, on [0,1]-valued scalars.
Scalar trunc_sub(const Scalar& a, const Scalar& b);  // max(0, a - b)
Scalar clamp_add(const Scalar& a, const Scalar& b);  // min(1, a + b)
Scalar min_scalar(const Scalar& a, const Scalar& b);
Scalar max_scalar(const Scalar& a, const Scalar& b);
inline Scalar one_minus(const Scalar& a) { return Scalar(Rat(1)) - a; }

}  // namespace mvf
