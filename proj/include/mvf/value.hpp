#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvf/rational.hpp"

namespace mvf {

/**
 * An exact positive real of the form prod p^{e_p} with finitely many
 * primes p and nonzero rational exponents e_p. The empty product is 1.
 *
 * These serve both as value-group elements and as metric distances.
 * Closed under multiplication, inverses and rational powers (roots),
 * and totally ordered by the order of the reals, decided exactly.
 *
 * Structural equality equals semantic equality: exponents are kept in
 * lowest terms and zero exponents are dropped.
 */
class Value {
public:
    Value() = default;  // the identity 1

    // p^e for a prime p and nonzero rational e.
    static Value prime_power(const Int& p, const Rat& e);

    // Prime factorization of a positive rational (integer exponents).
    static Value from_rational(const Rat& q);

    // "2^1/2 * 3^-1", "12", "3/4", "1". Exponents read as p^(a/b).
    static Value parse(std::string_view text);

    bool is_one() const { return factors_.empty(); }

    // True when every exponent is an integer (the value is rational).
    bool is_rational() const;
    Rat to_rational() const;  // requires is_rational()

    Value inverse() const;
    Value pow(const Rat& e) const;

    friend Value operator*(const Value& a, const Value& b);
    Value& operator*=(const Value& b) { return *this = *this * b; }

    // Order of the represented reals: clear exponent denominators by
    // their lcm and compare products of integer prime powers exactly.
    static int compare(const Value& a, const Value& b);

    bool operator==(const Value&) const = default;
    bool operator<(const Value& b) const { return compare(*this, b) < 0; }
    bool operator<=(const Value& b) const { return compare(*this, b) <= 0; }
    bool operator>(const Value& b) const { return compare(*this, b) > 0; }
    bool operator>=(const Value& b) const { return compare(*this, b) >= 0; }

    // Splits v = q * u with q rational and u having exponents in [0,1).
    // Used by Scalar to canonicalize sums of Values.
    std::pair<Rat, Value> split_rational() const;

    // Cheap lexicographic order on the representation, for map keys.
    static int structural_compare(const Value& a, const Value& b);

    double to_double() const;  // non-authoritative
    std::string str() const;

    const std::vector<std::pair<Int, Rat>>& factors() const { return factors_; }

private:
    // Sorted by prime; exponents nonzero, in lowest terms.
    std::vector<std::pair<Int, Rat>> factors_;

    void push_factor(const Int& p, const Rat& e);
    static Value from_sorted(std::vector<std::pair<Int, Rat>> fs);
};

Value max_value(const Value& a, const Value& b);
Value min_value(const Value& a, const Value& b);

// Semantic order, for ordered containers of exponents.
struct ValueLess {
    bool operator()(const Value& a, const Value& b) const { return Value::compare(a, b) < 0; }
};

// Structural order: cheaper, consistent with equality but not with the reals.
struct ValueKeyLess {
    bool operator()(const Value& a, const Value& b) const {
        return Value::structural_compare(a, b) < 0;
    }
};

/**
 * A Value or an exact zero marker. Valuations and distances live here:
 * |0| is the distinguished bottom element, below every Value.
 */
class Norm {
public:
    Norm() = default;  // zero
    Norm(Value v) : v_(std::move(v)) {}

    static Norm zero() { return Norm(); }
    static Norm one() { return Norm(Value()); }

    bool is_zero() const { return !v_.has_value(); }
    const Value& value() const;

    static int compare(const Norm& a, const Norm& b);
    bool operator==(const Norm&) const = default;
    bool operator<(const Norm& b) const { return compare(*this, b) < 0; }
    bool operator<=(const Norm& b) const { return compare(*this, b) <= 0; }

    friend Norm operator*(const Norm& a, const Norm& b);

    double to_double() const { return v_ ? v_->to_double() : 0.0; }
    std::string str() const { return v_ ? v_->str() : "0"; }

private:
    std::optional<Value> v_;
};

Norm max_norm(const Norm& a, const Norm& b);

}  // namespace mvf
