#pragma once

// Independent brute-force oracles used by unit and acceptance tests.
// These deliberately avoid the lattice machinery under test: everything
// here is plain Value arithmetic and exhaustive enumeration.

#include <numeric>
#include <set>
#include <vector>

#include "mvf/value.hpp"

namespace mvf_test {

using mvf::Value;
using mvf::ValueKeyLess;

// |G/pG| by coset enumeration: representatives are generator products
// with exponents in [0,p); two are identified when their quotient is a
// p-th power of a small generator combination.
inline size_t coset_count_oracle(const std::vector<Value>& gens, long p) {
    size_t m = gens.size();
    long box = 3 * p;

    std::set<Value, ValueKeyLess> pth_powers;
    std::vector<long> d(m, -box);
    while (true) {
        Value v;
        for (size_t i = 0; i < m; ++i) v *= gens[i].pow(mvf::Rat(p * d[i]));
        pth_powers.insert(v);
        size_t i = 0;
        while (i < m && d[i] == box) d[i++] = -box;
        if (i == m) break;
        ++d[i];
    }

    std::vector<Value> elems;
    std::vector<long> c(m, 0);
    while (true) {
        Value v;
        for (size_t i = 0; i < m; ++i) v *= gens[i].pow(mvf::Rat(c[i]));
        elems.push_back(v);
        size_t i = 0;
        while (i < m && c[i] == p - 1) c[i++] = 0;
        if (i == m) break;
        ++c[i];
    }

    std::vector<size_t> parent(elems.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t a = 0; a < elems.size(); ++a)
        for (size_t b = a + 1; b < elems.size(); ++b) {
            if (find(a) == find(b)) continue;
            if (pth_powers.count(elems[a] * elems[b].inverse())) parent[find(b)] = find(a);
        }
    std::set<size_t> roots;
    for (size_t i = 0; i < elems.size(); ++i) roots.insert(find(i));
    return roots.size();
}

}  // namespace mvf_test
