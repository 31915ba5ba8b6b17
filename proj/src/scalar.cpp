#include "mvf/scalar.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace mvf {

void Scalar::add_term(const Value& monomial, const Rat& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(monomial);
    if (it == terms_.end()) {
        terms_.emplace(monomial, coeff);
    } else {
        it->second += coeff;
        it->second.canonicalize();
        if (it->second == 0) terms_.erase(it);
    }
}

Scalar::Scalar(const Rat& q) {
    add_term(Value(), q);
}

Scalar::Scalar(const Value& v) {
    auto [q, u] = v.split_rational();
    add_term(u, q);
}

Scalar Scalar::from_norm(const Norm& n) {
    return n.is_zero() ? Scalar() : Scalar(n.value());
}

bool Scalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Scalar::to_rational() const {
    if (terms_.empty()) return Rat(0);
    if (!is_rational()) throw std::domain_error("scalar is irrational: " + str());
    return terms_.begin()->second;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar r = a;
    for (const auto& [u, q] : b.terms_) r.add_term(u, q);
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (const auto& [u, q] : terms_) r.terms_.emplace(u, Rat(-q));
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return a + (-b);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (const auto& [ua, qa] : a.terms_) {
        for (const auto& [ub, qb] : b.terms_) {
            // the product monomial may pick up an integer exponent part
            auto [q, u] = (ua * ub).split_rational();
            r.add_term(u, qa * qb * q);
        }
    }
    return r;
}

namespace {

// Enclosure of sum q_i * u_i at the given precision. Positive monomials,
// directed rounding per endpoint.
void enclose(const std::map<Value, Rat, ValueKeyLess>& terms, mpfr_prec_t prec,
             mpfr_t lo, mpfr_t hi) {
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    mpfr_t mlo, mhi, t;
    mpfr_inits2(prec, mlo, mhi, t, static_cast<mpfr_ptr>(nullptr));
    for (const auto& [u, q] : terms) {
        mpfr_set_ui(mlo, 1, MPFR_RNDD);
        mpfr_set_ui(mhi, 1, MPFR_RNDU);
        for (const auto& [p, e] : u.factors()) {
            // e in (0,1): p^e = (p^num)^(1/den)
            if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
                throw std::overflow_error("scalar exponent too large for enclosure");
            Int pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e.get_num().get_ui());
            unsigned long den = e.get_den().get_ui();
            mpfr_set_z(t, pk.get_mpz_t(), MPFR_RNDD);
            mpfr_rootn_ui(t, t, den, MPFR_RNDD);
            mpfr_mul(mlo, mlo, t, MPFR_RNDD);
            mpfr_set_z(t, pk.get_mpz_t(), MPFR_RNDU);
            mpfr_rootn_ui(t, t, den, MPFR_RNDU);
            mpfr_mul(mhi, mhi, t, MPFR_RNDU);
        }
        if (q > 0) {
            mpfr_mul_q(t, mlo, q.get_mpq_t(), MPFR_RNDD);
            mpfr_add(lo, lo, t, MPFR_RNDD);
            mpfr_mul_q(t, mhi, q.get_mpq_t(), MPFR_RNDU);
            mpfr_add(hi, hi, t, MPFR_RNDU);
        } else {
            mpfr_mul_q(t, mhi, q.get_mpq_t(), MPFR_RNDD);
            mpfr_add(lo, lo, t, MPFR_RNDD);
            mpfr_mul_q(t, mlo, q.get_mpq_t(), MPFR_RNDU);
            mpfr_add(hi, hi, t, MPFR_RNDU);
        }
    }
    mpfr_clears(mlo, mhi, t, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

int Scalar::sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_.begin()->second);
    if (terms_.size() == 2) {
        // q1 u1 + q2 u2: reduce to an exact Value comparison
        auto it = terms_.begin();
        const auto& [u1, q1] = *it;
        const auto& [u2, q2] = *++it;
        int s1 = sgn(q1), s2 = sgn(q2);
        if (s1 == s2) return s1;
        // |q1| u1 vs |q2| u2
        Rat ratio = abs(q1 / q2);
        int c = Value::compare(Value::from_rational(ratio) * u1, u2);
        if (c == 0) return 0;  // cannot happen for distinct reduced monomials
        return c > 0 ? s1 : s2;
    }
    // certified interval refinement; nonzero by linear independence of
    // distinct reduced radical monomials over Q
    for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
        enclose(terms_, prec, lo, hi);
        int slo = mpfr_sgn(lo), shi = mpfr_sgn(hi);
        mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
        if (slo > 0) return 1;
        if (shi < 0) return -1;
    }
    throw std::runtime_error("scalar sign undecided at precision cap: " + str());
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
    if (a.terms_ == b.terms_) return 0;
    return (a - b).sign();
}

double Scalar::to_double() const {
    double r = 0;
    for (const auto& [u, q] : terms_) r += q.get_d() * u.to_double();
    return r;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [u, q] : terms_) {
        if (!s.empty()) s += " + ";
        if (u.is_one()) {
            s += rat_str(q);
        } else if (q == 1) {
            s += u.str();
        } else {
            s += "(" + rat_str(q) + ")*" + u.str();
        }
    }
    return s;
}

Scalar trunc_sub(const Scalar& a, const Scalar& b) {
    Scalar d = a - b;
    return d.sign() <= 0 ? Scalar() : d;
}

Scalar clamp_add(const Scalar& a, const Scalar& b) {
    Scalar s = a + b;
    return Scalar::compare(s, Scalar(Rat(1))) >= 0 ? Scalar(Rat(1)) : s;
}

Scalar min_scalar(const Scalar& a, const Scalar& b) {
    return Scalar::compare(a, b) <= 0 ? a : b;
}

Scalar max_scalar(const Scalar& a, const Scalar& b) {
    return Scalar::compare(a, b) >= 0 ? a : b;
}

}  // namespace mvf
