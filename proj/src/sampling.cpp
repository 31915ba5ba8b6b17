#include "mvf/sampling.hpp"

namespace mvf {

long Sampler::range(long lo, long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat Sampler::rational(long num_bound, long den_bound, bool allow_zero) {
    long num = range(-num_bound, num_bound);
    if (!allow_zero)
        while (num == 0) num = range(-num_bound, num_bound);
    long den = range(1, den_bound);
    return rat(num, den);
}

Value Sampler::group_element(const ConcreteGroup& g, long depth) {
    std::vector<long> coords(g.rank());
    for (auto& c : coords) c = range(-depth, depth);
    return g.element_from_basis(coords);
}

HahnSeries Sampler::series(const FieldPtr& field, long depth, int max_terms, long coeff_bound) {
    int n = static_cast<int>(range(1, max_terms));
    std::vector<std::pair<Value, Rat>> terms;
    for (int i = 0; i < n; ++i)
        terms.emplace_back(group_element(field->group(), depth), rational(coeff_bound, 1, false));
    return HahnSeries::make(field, std::move(terms));
}

HahnSeries Sampler::unit_series(const FieldPtr& field, long depth, int max_tail_terms,
                                long coeff_bound) {
    std::vector<std::pair<Value, Rat>> terms;
    terms.emplace_back(Value(), rational(coeff_bound, 1, false));
    int n = static_cast<int>(range(0, max_tail_terms));
    for (int i = 0; i < n; ++i) {
        Value e = group_element(field->group(), depth);
        if (e.is_one()) continue;
        if (Value::compare(e, Value()) > 0) e = e.inverse();  // keep the tail infinitesimal
        terms.emplace_back(e, rational(coeff_bound, 1, false));
    }
    return HahnSeries::make(field, std::move(terms));
}

PPoint Sampler::point(const FieldPtr& field, long depth, int max_terms, long coeff_bound) {
    HahnOps ops{field};
    auto nonzero = [&] {
        // random terms may cancel; retry until the series is nonzero
        HahnSeries s = series(field, depth, max_terms, coeff_bound);
        while (s.is_zero()) s = series(field, depth, max_terms, coeff_bound);
        return s;
    };
    // one coordinate in roughly ten is zero or infinity
    long shape = range(0, 9);
    if (shape == 0) return make_point(ops, HahnSeries::zero(field), nonzero());
    if (shape == 1) return make_point(ops, nonzero(), HahnSeries::zero(field));
    return make_point(ops, nonzero(), nonzero());
}

IntPolynomial Sampler::polynomial(size_t arity, unsigned max_degree, long coeff_bound,
                                  int max_monomials) {
    std::vector<std::string> vars;
    for (size_t i = 0; i < arity; ++i) vars.push_back("X" + std::to_string(i + 1));
    IntPolynomial p;
    int n = static_cast<int>(range(1, max_monomials));
    for (int m = 0; m < n; ++m) {
        IntPolynomial mono = IntPolynomial::constant(Int(range(-coeff_bound, coeff_bound)));
        for (size_t i = 0; i < arity; ++i) {
            unsigned d = static_cast<unsigned>(range(0, static_cast<long>(max_degree)));
            mono = mono * IntPolynomial::variable(vars[i]).pow(d);
        }
        p = p + mono;
    }
    if (p.is_zero()) p = IntPolynomial::variable(vars.empty() ? "X1" : vars[0]);
    return p;
}

}  // namespace mvf
