#pragma once

#include <random>

#include "mvf/projective.hpp"

namespace mvf {

/**
 * Seeded pseudorandom generation of Values, series, points and
 * polynomials for tests and the axiom checker. Built on mt19937_64 with
 * explicit modulo mapping, so streams are identical across platforms
 * and library versions (byte-identical reports for identical seeds).
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    long range(long lo, long hi);  // uniform on [lo, hi]
    Rat rational(long num_bound, long den_bound, bool allow_zero = true);

    Value group_element(const ConcreteGroup& g, long depth);
    // random series with the given number of terms drawn from the lattice box
    HahnSeries series(const FieldPtr& field, long depth, int max_terms, long coeff_bound);
    // random series of valuation exactly 1 (a unit scaling factor)
    HahnSeries unit_series(const FieldPtr& field, long depth, int max_tail_terms, long coeff_bound);
    PPoint point(const FieldPtr& field, long depth, int max_terms, long coeff_bound);
    IntPolynomial polynomial(size_t arity, unsigned max_degree, long coeff_bound, int max_monomials);

private:
    std::mt19937_64 rng_;
};

}  // namespace mvf
