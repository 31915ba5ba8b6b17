#include "mvf/lattice.hpp"

#include <stdexcept>

namespace mvf {

IntLattice::IntLattice(std::vector<std::vector<Int>> rows) {
    size_t m = rows.size();
    cols_ = m ? rows[0].size() : 0;
    for (const auto& r : rows)
        if (r.size() != cols_) throw std::invalid_argument("ragged lattice rows");

    std::vector<std::vector<Int>> h = std::move(rows);
    std::vector<std::vector<Int>> u(m, std::vector<Int>(m, 0));
    for (size_t i = 0; i < m; ++i) u[i][i] = 1;

    auto row_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t j = 0; j < cols_; ++j) h[dst][j] -= q * h[src][j];
        for (size_t j = 0; j < m; ++j) u[dst][j] -= q * u[src][j];
    };
    auto row_swap = [&](size_t a, size_t b) {
        std::swap(h[a], h[b]);
        std::swap(u[a], u[b]);
    };
    auto row_neg = [&](size_t i) {
        for (auto& x : h[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    };

    size_t r = 0;
    for (size_t j = 0; j < cols_ && r < m; ++j) {
        // gcd elimination in column j, rows r..m-1
        while (true) {
            size_t best = m;
            for (size_t i = r; i < m; ++i) {
                if (h[i][j] != 0 && (best == m || cmp(abs(h[i][j]), abs(h[best][j])) < 0)) best = i;
            }
            if (best == m) break;
            if (best != r) row_swap(r, best);
            bool done = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (h[i][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[r][j].get_mpz_t());
                    row_sub(i, r, q);
                    if (h[i][j] != 0) done = false;
                }
            }
            if (done) break;
        }
        if (h[r][j] == 0) continue;
        if (h[r][j] < 0) row_neg(r);
        // reduce entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[r][j].get_mpz_t());
            if (q != 0) row_sub(i, r, q);
        }
        pivots_.push_back(j);
        ++r;
    }
    rank_ = r;
    basis_.assign(h.begin(), h.begin() + r);
    transform_.assign(u.begin(), u.begin() + r);
    relations_.assign(u.begin() + r, u.end());
}

std::optional<std::vector<Int>> IntLattice::solve(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<Int> rem = v;
    std::vector<Int> coords(rank_);
    for (size_t i = 0; i < rank_; ++i) {
        const Int& pivot = basis_[i][pivots_[i]];
        Int q, rr;
        mpz_fdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), rem[pivots_[i]].get_mpz_t(), pivot.get_mpz_t());
        if (rr != 0) return std::nullopt;
        coords[i] = q;
        for (size_t j = 0; j < cols_; ++j) rem[j] -= q * basis_[i][j];
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return coords;
}

std::optional<std::vector<Rat>> IntLattice::solve_rational(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> rem = v;
    std::vector<Rat> coords(rank_);
    for (size_t i = 0; i < rank_; ++i) {
        Rat q = rem[pivots_[i]] / Rat(basis_[i][pivots_[i]]);
        q.canonicalize();
        coords[i] = q;
        for (size_t j = 0; j < cols_; ++j) {
            rem[j] -= q * Rat(basis_[i][j]);
            rem[j].canonicalize();
        }
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return coords;
}

std::optional<std::vector<Int>> IntLattice::solve_in_generators(const std::vector<Int>& v) const {
    auto y = solve(v);
    if (!y) return std::nullopt;
    size_t m = transform_.empty() ? relations_.size() : transform_[0].size();
    if (!transform_.empty()) m = transform_[0].size();
    std::vector<Int> x(m, 0);
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < m; ++j) x[j] += (*y)[i] * transform_[i][j];
    return x;
}

}  // namespace mvf
