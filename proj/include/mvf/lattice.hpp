#pragma once

#include <optional>
#include <vector>

#include "mvf/rational.hpp"

namespace mvf {

/**
 * Integer row lattice: the Z-span of the rows of an integer matrix,
 * with a Hermite-normal-form basis and the unimodular transform that
 * produced it (U * A = H). Exponent vectors of group generators live
 * here; membership tests back both group arithmetic and twist domains.
 */
class IntLattice {
public:
    explicit IntLattice(std::vector<std::vector<Int>> rows);

    size_t rank() const { return rank_; }
    size_t cols() const { return cols_; }

    // First rank() rows of the HNF; canonical for the lattice.
    const std::vector<std::vector<Int>>& basis() const { return basis_; }

    // Z-rows of U beyond the rank: relations among the input rows.
    const std::vector<std::vector<Int>>& relations() const { return relations_; }

    // Coordinates of v w.r.t. basis(), if v lies in the lattice.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& v) const;

    // Coordinates over Q, if v lies in the rational span (divisible hull).
    std::optional<std::vector<Rat>> solve_rational(const std::vector<Rat>& v) const;

    // Coordinates of v w.r.t. the original input rows (some solution).
    std::optional<std::vector<Int>> solve_in_generators(const std::vector<Int>& v) const;

    bool operator==(const IntLattice& o) const { return basis_ == o.basis_ && cols_ == o.cols_; }

private:
    size_t cols_ = 0;
    size_t rank_ = 0;
    std::vector<std::vector<Int>> basis_;      // rank x cols, HNF
    std::vector<std::vector<Int>> relations_;  // kernel rows over the inputs
    std::vector<std::vector<Int>> transform_;  // first rank rows of U
    std::vector<size_t> pivots_;               // pivot column per basis row
};

}  // namespace mvf
