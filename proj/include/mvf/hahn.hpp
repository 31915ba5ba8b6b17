#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvf/groups.hpp"
#include "mvf/value.hpp"

namespace mvf {

class HahnSeries;

/**
 * Handle for Q((t^Gamma)): a concrete value group plus the flag whether
 * divisible-hull exponents are admitted. All series carry a handle and
 * operations verify their exponents lie in the declared group (or hull).
 */
class Field {
public:
    Field(ConcreteGroup group, bool allow_roots);

    const ConcreteGroup& group() const { return group_; }
    bool allow_roots() const { return allow_roots_; }
    bool admits(const Value& exponent) const;

    bool operator==(const Field& o) const {
        return group_ == o.group_ && allow_roots_ == o.allow_roots_;
    }

    static std::shared_ptr<const Field> make(ConcreteGroup group, bool allow_roots);

private:
    ConcreteGroup group_;
    bool allow_roots_;
};

using FieldPtr = std::shared_ptr<const Field>;

/**
 * Finitely supported formal sum  sum c_gamma t^gamma  with rational
 * coefficients and Value exponents, plus an optional precision floor pi
 * recording that terms with exponent < pi have been discarded.
 *
 * The value-group convention is multiplicative: exponents compose by
 * t^gamma * t^delta = t^{gamma*delta} and the unit monomial is t^1, so
 * the constant slot is the identity exponent. This is the single most
 * error-prone convention in the codebase; convention_test pins it.
 *
 * The valuation of a nonzero series is the largest exponent in its
 * support; the valuation ring is {|x| <= 1}.
 */
class HahnSeries {
public:
    HahnSeries() = default;  // zero of no particular field; factories preferred

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Value, Rat, ValueLess>& terms() const { return terms_; }
    const std::optional<Value>& precision_floor() const { return floor_; }

    // max exponent of the support; the zero series maps to the bottom marker
    Norm valuation() const;

    // coefficient at the unit exponent t^1; requires |x| <= 1 and a
    // precision floor (if any) <= 1
    Rat residue() const;

    Rat coefficient(const Value& exponent) const;

    friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
    HahnSeries operator-() const;

    HahnSeries& operator+=(const HahnSeries& b) { return *this = *this + b; }
    HahnSeries& operator-=(const HahnSeries& b) { return *this = *this - b; }
    HahnSeries& operator*=(const HahnSeries& b) { return *this = *this * b; }

    // multiply by the monomial c * t^gamma; floors scale along
    HahnSeries scaled(const Rat& c, const Value& gamma) const;

    HahnSeries truncated_below(const Value& floor) const;
    HahnSeries with_floor(std::optional<Value> floor) const;

    bool operator==(const HahnSeries& o) const {
        return terms_ == o.terms_ && floor_ == o.floor_;
    }

    std::string str() const;

    // factories
    static HahnSeries make(FieldPtr field, std::vector<std::pair<Value, Rat>> terms,
                           std::optional<Value> floor = std::nullopt);
    static HahnSeries constant(FieldPtr field, const Rat& c);
    static HahnSeries monomial(FieldPtr field, const Rat& c, const Value& exponent);
    static HahnSeries zero(FieldPtr field);

    // literal syntax: 2 + 3*t^(1/2) - t^(2^1/2 * 3^-1)
    static HahnSeries parse(FieldPtr field, std::string_view text);

private:
    FieldPtr field_;
    std::map<Value, Rat, ValueLess> terms_;
    std::optional<Value> floor_;

    void set_term(const Value& exponent, const Rat& c);
    void apply_floor();
    static FieldPtr common_field(const HahnSeries& a, const HahnSeries& b);
};

// res(x * y^{-1}) when 0 < v(x) <= v(y), else 0; total by definition.
Rat res2(const HahnSeries& x, const HahnSeries& y);

// b with valuation(a*b - 1) < floor, via truncated geometric expansion;
// exact (no floor) when the expansion terminates.
HahnSeries invert(const HahnSeries& a, const Value& floor);

using SeriesPolynomial = std::vector<HahnSeries>;  // coefficients, ascending degree

HahnSeries eval_polynomial(const SeriesPolynomial& p, const HahnSeries& x);
SeriesPolynomial derivative(const SeriesPolynomial& p);

/**
 * Newton--Hensel iteration x <- x - P(x)/P'(x) from a seed whose residue
 * is a simple root of the residue polynomial. Returns x with
 * valuation(P(x)) <= floor (asserted). `iterates`, when given, records
 * the successive approximations starting with the seed.
 */
HahnSeries newton_root(const SeriesPolynomial& p, const HahnSeries& seed, const Value& floor,
                       std::vector<HahnSeries>* iterates = nullptr);

// sup of |x| over |x| < 1: zero marker for the trivial group, the largest
// group element below 1 for discrete rank-1 groups, 1 for dense groups.
Norm discreteness_gap(const Field& f);

}  // namespace mvf
