#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvf/hahn.hpp"

namespace mvf {

/**
 * Integer polynomial in n named variables; the index of L_P predicates.
 * Parsed from the usual infix syntax: X^2 + 1, X1*X2 - 1.
 */
class IntPolynomial {
public:
    using Monomials = std::map<std::vector<unsigned>, Int>;

    IntPolynomial() : vars_{} {}
    IntPolynomial(std::vector<std::string> vars, Monomials monos);

    static IntPolynomial parse(std::string_view text);
    static IntPolynomial variable(const std::string& name);
    static IntPolynomial constant(const Int& c);

    size_t arity() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const Monomials& monomials() const { return monos_; }
    unsigned degree_in(size_t var) const;
    bool is_zero() const { return monos_.empty(); }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial operator-() const;
    IntPolynomial pow(unsigned k) const;

    bool operator==(const IntPolynomial&) const = default;
    std::string str() const;

private:
    std::vector<std::string> vars_;
    Monomials monos_;  // exponent vector (aligned with vars_) -> nonzero coeff

    static std::pair<IntPolynomial, IntPolynomial> aligned(const IntPolynomial& a,
                                                           const IntPolynomial& b);
    void add_mono(const std::vector<unsigned>& e, const Int& c);
};

/**
 * Element of Z^h[X]: homogeneous of degree r_i in each pair (X_i, X_i*).
 * A monomial stores only the X_i-degrees d_i; the starred degree is
 * r_i - d_i by the pair-degree invariant.
 */
struct HomPolynomial {
    std::vector<unsigned> pair_degrees;
    std::map<std::vector<unsigned>, Int> monomials;

    bool operator==(const HomPolynomial&) const = default;
    std::string str(const std::vector<std::string>& vars) const;
};

// P^h(X, X*) = P(X/X*) * (X*)^{deg P}: each monomial padded with starred
// variables to the uniform pair-degree deg_{X_i} P.
HomPolynomial homogenize(const IntPolynomial& p);

// Substitutes X_i* = 1: recovers the original polynomial coefficient-wise.
IntPolynomial dehomogenize(const HomPolynomial& h, const std::vector<std::string>& vars);

/** Normalized projective pair over a carrier ring: max(|num|,|den|) = 1. */
template <class Elem>
struct ProjPoint {
    Elem num, den;
};

/**
 * Carrier interface for the L_P structure machinery. A structure wraps
 * a concrete ring whose elements have a multiplicative Norm, and knows
 * how to scale by an element of prescribed norm (a monomial). The Hahn
 * field and the Gauss extension both model this.
 */
template <class S>
concept Structure = requires(const S& s, const typename S::Elem& e, const Int& n, const Value& v) {
    { s.norm(e) } -> std::same_as<Norm>;
    { s.from_int(n) } -> std::same_as<typename S::Elem>;
    { s.scale(e, v) } -> std::same_as<typename S::Elem>;  // multiply by the norm-v monomial
    { s.zero() } -> std::same_as<typename S::Elem>;
    { s.one() } -> std::same_as<typename S::Elem>;
    { s.print(e) } -> std::same_as<std::string>;
    { e + e } -> std::convertible_to<typename S::Elem>;
    { e - e } -> std::convertible_to<typename S::Elem>;
    { e* e } -> std::convertible_to<typename S::Elem>;
};

// The L_P structure on the projective line over a Hahn field.
struct HahnOps {
    using Elem = HahnSeries;
    FieldPtr field;

    Norm norm(const HahnSeries& e) const { return e.valuation(); }
    HahnSeries from_int(const Int& n) const { return HahnSeries::constant(field, Rat(n)); }
    HahnSeries scale(const HahnSeries& e, const Value& v) const { return e.scaled(Rat(1), v); }
    HahnSeries zero() const { return HahnSeries::zero(field); }
    HahnSeries one() const { return HahnSeries::constant(field, 1); }
    std::string print(const HahnSeries& e) const { return e.str(); }
    HahnSeries parse_elem(std::string_view text) const { return HahnSeries::parse(field, text); }
};

using PPoint = ProjPoint<HahnSeries>;

template <class S>
    requires Structure<S>
ProjPoint<typename S::Elem> make_point(const S& s, typename S::Elem x, typename S::Elem y) {
    Norm nx = s.norm(x), ny = s.norm(y);
    if (nx.is_zero() && ny.is_zero())
        throw std::domain_error("projective point needs a nonzero coordinate");
    Norm m = max_norm(nx, ny);
    if (m == Norm::one()) return {std::move(x), std::move(y)};
    Value scale_exp = m.value().inverse();
    return {s.scale(x, scale_exp), s.scale(y, scale_exp)};
}

template <class S>
ProjPoint<typename S::Elem> infinity_point(const S& s) {
    return {s.one(), s.zero()};
}

template <class S>
bool is_infinity(const S& s, const ProjPoint<typename S::Elem>& a) {
    return s.norm(a.den).is_zero();
}

// d(a,b) = |a.num * b.den - a.den * b.num|, on normalized points.
template <class S>
Norm distance(const S& s, const ProjPoint<typename S::Elem>& a,
              const ProjPoint<typename S::Elem>& b) {
    return s.norm(a.num * b.den - a.den * b.num);
}

// ||P(a_1..a_n)|| = |P^h(nums, dens)|.
template <class S>
Norm eval_hom(const S& s, const HomPolynomial& h,
              std::span<const ProjPoint<typename S::Elem>> args) {
    if (args.size() != h.pair_degrees.size())
        throw std::invalid_argument("predicate arity mismatch");
    using Elem = typename S::Elem;
    // per-argument power tables up to the pair degree
    std::vector<std::vector<Elem>> num_pow(args.size()), den_pow(args.size());
    for (size_t i = 0; i < args.size(); ++i) {
        num_pow[i].push_back(s.one());
        den_pow[i].push_back(s.one());
        for (unsigned k = 1; k <= h.pair_degrees[i]; ++k) {
            num_pow[i].push_back(num_pow[i].back() * args[i].num);
            den_pow[i].push_back(den_pow[i].back() * args[i].den);
        }
    }
    Elem acc = s.zero();
    for (const auto& [exps, coeff] : h.monomials) {
        Elem term = s.from_int(coeff);
        for (size_t i = 0; i < args.size(); ++i) {
            unsigned d = exps[i];
            term = term * num_pow[i][d] * den_pow[i][h.pair_degrees[i] - d];
        }
        acc = acc + term;
    }
    return s.norm(acc);
}

template <class S>
Norm eval_predicate(const S& s, const IntPolynomial& p,
                    std::span<const ProjPoint<typename S::Elem>> args) {
    return eval_hom(s, homogenize(p), args);
}

template <class S>
std::string print_point(const S& s, const ProjPoint<typename S::Elem>& a) {
    return "[" + s.print(a.num) + " : " + s.print(a.den) + "]";
}

// "[<elem> : <elem>]" or "inf".
template <class S>
ProjPoint<typename S::Elem> parse_point(const S& s, std::string_view text) {
    auto trim = [](std::string_view sv) {
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
        return sv;
    };
    std::string_view sv = trim(text);
    if (sv == "inf") return infinity_point(s);
    if (sv.size() < 2 || sv.front() != '[' || sv.back() != ']')
        throw std::invalid_argument("point literal must be [x : y] or inf: " + std::string(text));
    sv = sv.substr(1, sv.size() - 2);
    size_t depth = 0, colon = std::string_view::npos;
    for (size_t i = 0; i < sv.size(); ++i) {
        if (sv[i] == '(' || sv[i] == '[') ++depth;
        if (sv[i] == ')' || sv[i] == ']') --depth;
        if (sv[i] == ':' && depth == 0) {
            colon = i;
            break;
        }
    }
    if (colon == std::string_view::npos)
        throw std::invalid_argument("point literal needs ':': " + std::string(text));
    return make_point(s, s.parse_elem(trim(sv.substr(0, colon))),
                      s.parse_elem(trim(sv.substr(colon + 1))));
}

}  // namespace mvf
