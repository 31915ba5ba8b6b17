#pragma once

#include <string>
#include <vector>

#include "mvf/hahn.hpp"

namespace mvf {

/**
 * Element of K[X] carrying the Gauss norm |sum c_i X^i| = max_i |c_i|.
 * The dense subring of the Gauss extension; enough for every anchored
 * computation since the distinguished norm-1 witness is X itself.
 */
class GaussElement {
public:
    GaussElement() = default;  // zero

    static GaussElement from_coeffs(std::vector<HahnSeries> coeffs);
    static GaussElement constant(HahnSeries c);
    static GaussElement variable(const FieldPtr& field);  // X

    bool is_zero() const { return coeffs_.empty(); }
    size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<HahnSeries>& coeffs() const { return coeffs_; }
    HahnSeries coeff(size_t i, const FieldPtr& field) const;

    Norm gauss_norm() const;  // max of coefficient valuations

    friend GaussElement operator+(const GaussElement& a, const GaussElement& b);
    friend GaussElement operator-(const GaussElement& a, const GaussElement& b);
    friend GaussElement operator*(const GaussElement& a, const GaussElement& b);
    GaussElement operator-() const;

    GaussElement scaled(const Rat& c, const Value& gamma) const;

    bool operator==(const GaussElement&) const = default;
    std::string str() const;

    // literal syntax: (1 + t^(1/2))*X^2 - 3*X + t^(1/2)
    static GaussElement parse(const FieldPtr& field, std::string_view text);

private:
    std::vector<HahnSeries> coeffs_;  // ascending in X, no trailing zeros

    void trim();
};

// Structure interface over the Gauss ring (projective.hpp concept).
struct GaussOps {
    using Elem = GaussElement;
    FieldPtr field;

    Norm norm(const GaussElement& e) const { return e.gauss_norm(); }
    GaussElement from_int(const Int& n) const {
        return GaussElement::constant(HahnSeries::constant(field, Rat(n)));
    }
    GaussElement scale(const GaussElement& e, const Value& v) const { return e.scaled(Rat(1), v); }
    GaussElement zero() const { return GaussElement(); }
    GaussElement one() const { return GaussElement::constant(HahnSeries::constant(field, 1)); }
    std::string print(const GaussElement& e) const { return e.str(); }
    GaussElement parse_elem(std::string_view text) const { return GaussElement::parse(field, text); }
};

}  // namespace mvf
