#include "mvf/groups.hpp"

#include <omp.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mvf/errors.hpp"

namespace mvf {

ConcreteGroup::ConcreteGroup(std::vector<Value> generators)
    : generators_(std::move(generators)),
      lattice_([&] {
          if (generators_.empty()) throw std::invalid_argument("group needs at least one generator");
          std::set<Int> support;
          for (const auto& g : generators_) {
              for (const auto& [p, e] : g.factors()) {
                  if (e.get_den() != 1)
                      throw std::domain_error("group generators must be positive rationals: " + g.str());
                  support.insert(p);
              }
          }
          primes_.assign(support.begin(), support.end());
          std::vector<std::vector<Int>> rows;
          rows.reserve(generators_.size());
          for (const auto& g : generators_) {
              std::vector<Int> row(primes_.size(), 0);
              for (const auto& [p, e] : g.factors()) {
                  size_t j = std::lower_bound(primes_.begin(), primes_.end(), p) - primes_.begin();
                  row[j] = e.get_num();
              }
              rows.push_back(std::move(row));
          }
          return IntLattice(std::move(rows));
      }()) {}

std::optional<std::vector<Int>> ConcreteGroup::exponent_vector(const Value& v) const {
    std::vector<Int> vec(primes_.size(), 0);
    for (const auto& [p, e] : v.factors()) {
        if (e.get_den() != 1) return std::nullopt;
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p) return std::nullopt;
        vec[it - primes_.begin()] = e.get_num();
    }
    return vec;
}

bool ConcreteGroup::contains(const Value& v) const {
    auto vec = exponent_vector(v);
    return vec && lattice_.solve(*vec).has_value();
}

bool ConcreteGroup::hull_contains(const Value& v) const {
    std::vector<Rat> vec(primes_.size(), Rat(0));
    for (const auto& [p, e] : v.factors()) {
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p) return false;
        vec[it - primes_.begin()] = e;
    }
    return lattice_.solve_rational(vec).has_value();
}

std::optional<std::vector<Int>> ConcreteGroup::basis_coords(const Value& v) const {
    auto vec = exponent_vector(v);
    if (!vec) return std::nullopt;
    return lattice_.solve(*vec);
}

std::optional<std::vector<Int>> ConcreteGroup::generator_coords(const Value& v) const {
    auto vec = exponent_vector(v);
    if (!vec) return std::nullopt;
    return lattice_.solve_in_generators(*vec);
}

std::vector<Value> ConcreteGroup::basis() const {
    std::vector<Value> out;
    for (const auto& row : lattice_.basis()) {
        Value v;
        for (size_t j = 0; j < primes_.size(); ++j)
            if (row[j] != 0) v *= Value::prime_power(primes_[j], Rat(row[j]));
        out.push_back(v);
    }
    return out;
}

Value ConcreteGroup::element_from_basis(const std::vector<long>& coords) const {
    auto b = basis();
    if (coords.size() != b.size()) throw std::invalid_argument("coordinate/rank mismatch");
    Value v;
    for (size_t i = 0; i < b.size(); ++i)
        if (coords[i] != 0) v *= b[i].pow(Rat(coords[i]));
    return v;
}

std::string ConcreteGroup::str() const {
    std::string s = "<";
    for (size_t i = 0; i < generators_.size(); ++i) {
        if (i) s += ", ";
        s += generators_[i].str();
    }
    return s + ">";
}

std::string PrimeQuotient::str() const {
    return infinite ? "inf" : std::to_string(k);
}

GroupTheory GroupTheory::trivial() {
    return GroupTheory();
}

GroupTheory GroupTheory::discrete_regular() {
    GroupTheory t;
    t.kind_ = Kind::discrete_regular;
    return t;
}

GroupTheory GroupTheory::divisible_dense() {
    return dense(PrimeQuotient::finite(0));
}

GroupTheory GroupTheory::dense(PrimeQuotient default_quotient,
                               std::map<Int, PrimeQuotient> exceptions) {
    GroupTheory t;
    t.kind_ = Kind::dense_regular;
    t.default_ = default_quotient;
    for (auto& [p, q] : exceptions)
        if (!(q == default_quotient)) t.exceptions_.emplace(p, q);
    return t;
}

PrimeQuotient GroupTheory::quotient_at(const Int& p) const {
    auto it = exceptions_.find(p);
    return it == exceptions_.end() ? default_ : it->second;
}

std::string GroupTheory::str() const {
    switch (kind_) {
        case Kind::trivial: return "trivial";
        case Kind::discrete_regular: return "discrete";
        case Kind::dense_regular: break;
    }
    if (default_ == PrimeQuotient::finite(0) && exceptions_.empty()) return "dense divisible";
    std::string s = "dense default=" + default_.str();
    if (!exceptions_.empty()) {
        s += " except";
        bool first = true;
        for (const auto& [p, q] : exceptions_) {
            s += (first ? " " : ", ") + p.get_str() + ":" + q.str();
            first = false;
        }
    }
    return s;
}

GroupTheory classify_group(const ConcreteGroup& g) {
    size_t r = g.rank();
    if (r == 0) return GroupTheory::trivial();
    if (r == 1) return GroupTheory::discrete_regular();
    return GroupTheory::dense(PrimeQuotient::finite(static_cast<unsigned>(r)));
}

bool equiv_groups(const GroupTheory& a, const GroupTheory& b) {
    if (a.kind() != b.kind()) return false;
    if (a.kind() != GroupTheory::Kind::dense_regular) return true;
    // both maps are finite exceptions over a default, so agreement at the
    // defaults plus agreement at the union of exception primes decides
    if (!(a.default_quotient() == b.default_quotient())) return false;
    for (const auto& [p, q] : a.exceptions())
        if (!(b.quotient_at(p) == q)) return false;
    for (const auto& [p, q] : b.exceptions())
        if (!(a.quotient_at(p) == q)) return false;
    return true;
}

bool is_divisible(const GroupTheory& t) {
    if (t.is_trivial()) throw std::domain_error("divisibility is undefined for the trivial theory");
    return t.kind() == GroupTheory::Kind::dense_regular &&
           t.default_quotient() == PrimeQuotient::finite(0) && t.exceptions().empty();
}

namespace {

bool in_interval(const Value& gamma, const Scalar& lo, bool lo_closed, const Scalar& hi,
                 bool hi_closed) {
    Scalar g(gamma);
    int cl = Scalar::compare(g, lo);
    if (cl < 0 || (cl == 0 && !lo_closed)) return false;
    int ch = Scalar::compare(g, hi);
    if (ch > 0 || (ch == 0 && !hi_closed)) return false;
    return true;
}

// First satisfying coordinate vector in lex order within the sub-box
// where coords[0] is fixed; writes through `out` and returns true on hit.
bool scan_fixed_first(const std::vector<Value>& basis, long first,
                      long bound, const Scalar& lo, bool lo_closed, const Scalar& hi,
                      bool hi_closed, std::vector<long>& out, Value& out_value) {
    size_t r = basis.size();
    std::vector<long> c(r, -bound);
    c[0] = first;
    std::vector<Value> partial(r + 1);
    partial[0] = Value();
    auto recompute_from = [&](size_t level) {
        for (size_t i = level; i < r; ++i) partial[i + 1] = partial[i] * basis[i].pow(Rat(c[i]));
    };
    recompute_from(0);
    while (true) {
        const Value& gamma = partial[r];
        if (in_interval(gamma, lo, lo_closed, hi, hi_closed)) {
            out = c;
            out_value = gamma;
            return true;
        }
        // lex successor with c[0] fixed
        size_t i = r;
        while (i > 1 && c[i - 1] == bound) --i;
        if (i == 1) return false;
        ++c[i - 1];
        for (size_t j = i; j < r; ++j) c[j] = -bound;
        recompute_from(i - 1);
    }
}

}  // namespace

std::optional<std::pair<std::vector<long>, Value>> search_box(
    const ConcreteGroup& g, const Scalar& lo, bool lo_closed, const Scalar& hi, bool hi_closed,
    long bound, ExecMode mode) {
    if (bound < 0) throw std::invalid_argument("negative search bound");
    auto basis = g.basis();
    size_t r = basis.size();
    if (r == 0) return std::nullopt;

    long width = 2 * bound + 1;
    bool found_any = false;
    std::vector<long> best;
    Value best_value;

    if (mode == ExecMode::serial) {
        for (long f = -bound; f <= bound; ++f) {
            std::vector<long> c;
            Value v;
            if (scan_fixed_first(basis, f, bound, lo, lo_closed, hi, hi_closed, c, v))
                return std::make_pair(std::move(c), std::move(v));
        }
        return std::nullopt;
    }

#pragma omp parallel
    {
        bool local_found = false;
        std::vector<long> local_best;
        Value local_value;
#pragma omp for schedule(dynamic)
        for (long idx = 0; idx < width; ++idx) {
            long f = idx - bound;
            // chunks may arrive out of order; only a strictly smaller
            // first coordinate can still improve this thread's best
            if (local_found && f > local_best[0]) continue;
            std::vector<long> c;
            Value v;
            if (scan_fixed_first(basis, f, bound, lo, lo_closed, hi, hi_closed, c, v)) {
                if (!local_found || c < local_best) {
                    local_found = true;
                    local_best = std::move(c);
                    local_value = std::move(v);
                }
            }
        }
#pragma omp critical
        if (local_found && (!found_any || local_best < best)) {
            found_any = true;
            best = std::move(local_best);
            best_value = std::move(local_value);
        }
    }
    if (!found_any) return std::nullopt;
    return std::make_pair(std::move(best), std::move(best_value));
}

Value dense_witness(const ConcreteGroup& g, const Value& target, const Norm& tolerance,
                    long bound, ExecMode mode) {
    if (g.rank() < 2) throw std::domain_error("dense_witness requires a dense group (rank >= 2)");
    if (Value::compare(target, Value()) > 0)
        throw std::domain_error("dense_witness target must lie in (0,1]");
    if (!tolerance.is_zero() && Value::compare(tolerance.value(), Value()) > 0)
        throw std::domain_error("dense_witness tolerance must lie in [0,1]");

    if (tolerance.is_zero()) {
        // exact membership: unique coordinates, still subject to the bound
        auto coords = g.basis_coords(target);
        if (coords) {
            bool within = true;
            for (const auto& c : *coords)
                if (cmp(abs(c), bound) > 0) within = false;
            if (within) return target;
        }
        throw not_found_error("no exact representation of " + target.str() + " within exponent bound " +
                              std::to_string(bound));
    }

    Scalar t(target), tol = Scalar::from_norm(tolerance);
    auto hit = search_box(g, t - tol, true, t + tol, true, bound, mode);
    if (!hit)
        throw not_found_error("no group element within tolerance of " + target.str() +
                              " for exponent bound " + std::to_string(bound));
    return hit->second;
}

}  // namespace mvf
