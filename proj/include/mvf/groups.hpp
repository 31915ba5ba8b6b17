#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvf/lattice.hpp"
#include "mvf/parallel.hpp"
#include "mvf/scalar.hpp"
#include "mvf/value.hpp"

namespace mvf {

/**
 * Finitely generated multiplicative subgroup of the positive rationals,
 * given by a nonempty list of generators (Values with integer exponents
 * only). The derived object is the integer lattice of prime-exponent
 * vectors, with a Hermite-normal-form basis.
 */
class ConcreteGroup {
public:
    explicit ConcreteGroup(std::vector<Value> generators);

    size_t rank() const { return lattice_.rank(); }
    const std::vector<Value>& generators() const { return generators_; }
    const std::vector<Int>& primes() const { return primes_; }
    const IntLattice& lattice() const { return lattice_; }

    // HNF basis rows as group elements.
    std::vector<Value> basis() const;

    bool contains(const Value& v) const;       // in the lattice
    bool hull_contains(const Value& v) const;  // in the divisible hull

    // Coordinates of v w.r.t. basis(); nullopt when not a member.
    std::optional<std::vector<Int>> basis_coords(const Value& v) const;
    // Some integer expression of v over generators(); nullopt when not a member.
    std::optional<std::vector<Int>> generator_coords(const Value& v) const;

    Value element_from_basis(const std::vector<long>& coords) const;

    // Groups are equal when they span the same lattice.
    bool operator==(const ConcreteGroup& o) const {
        return primes_ == o.primes_ && lattice_ == o.lattice_;
    }

    std::string str() const;

private:
    std::vector<Value> generators_;
    std::vector<Int> primes_;  // sorted union of generator supports
    IntLattice lattice_;

    std::optional<std::vector<Int>> exponent_vector(const Value& v) const;
};

// |G/pG| = p^k with k a natural number or infinity.
struct PrimeQuotient {
    bool infinite = false;
    unsigned k = 0;

    bool operator==(const PrimeQuotient&) const = default;
    static PrimeQuotient finite(unsigned k) { return {false, k}; }
    static PrimeQuotient inf() { return {true, 0}; }
    std::string str() const;
};

/**
 * Symbolic theory of a regular ordered abelian group, the invariants of
 * the elementary classification: regular discrete groups are all
 * equivalent to (Z,+,<); regular dense ones are classified by the
 * quotient sizes |G/pG|, stored as finite exceptions over a default.
 */
class GroupTheory {
public:
    enum class Kind { trivial, discrete_regular, dense_regular };

    static GroupTheory trivial();
    static GroupTheory discrete_regular();
    static GroupTheory divisible_dense();  // all |G/pG| = 1; the theory of R^+
    static GroupTheory dense(PrimeQuotient default_quotient,
                             std::map<Int, PrimeQuotient> exceptions = {});

    Kind kind() const { return kind_; }
    bool is_dense() const { return kind_ == Kind::dense_regular; }
    bool is_trivial() const { return kind_ == Kind::trivial; }

    PrimeQuotient quotient_at(const Int& p) const;
    const PrimeQuotient& default_quotient() const { return default_; }
    const std::map<Int, PrimeQuotient>& exceptions() const { return exceptions_; }

    bool operator==(const GroupTheory&) const = default;

    std::string str() const;

private:
    Kind kind_ = Kind::trivial;
    PrimeQuotient default_;
    std::map<Int, PrimeQuotient> exceptions_;  // canonical: entries differ from default_
};

// rank 0 -> trivial; rank 1 -> discrete (f.g. rank-1 subgroups of R^+ are
// cyclic); rank r >= 2 -> dense with |G/pG| = p^r at every prime.
GroupTheory classify_group(const ConcreteGroup& g);

// Elementary equivalence test: kinds match, and for dense groups the
// invariants agree at every prime (infinite matches only infinite).
bool equiv_groups(const GroupTheory& a, const GroupTheory& b);

// True iff dense with all |G/pG| trivial. Rejects the trivial theory.
bool is_divisible(const GroupTheory& t);

/**
 * A group element gamma with |gamma - target| <= tolerance, found by
 * enumerating basis-coordinate vectors with |c_i| <= bound; the
 * lexicographically smallest satisfying vector wins, independent of
 * schedule. Throws not_found_error when the box holds no witness.
 */
Value dense_witness(const ConcreteGroup& g, const Value& target, const Norm& tolerance,
                    long bound, ExecMode mode = ExecMode::parallel);

// Shared search kernel: lex-min coordinate vector whose group element
// lies in the interval (lo, hi) with the given end inclusivities.
std::optional<std::pair<std::vector<long>, Value>> search_box(
    const ConcreteGroup& g, const Scalar& lo, bool lo_closed, const Scalar& hi, bool hi_closed,
    long bound, ExecMode mode);

}  // namespace mvf
