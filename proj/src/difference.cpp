#include "mvf/difference.hpp"

#include <algorithm>

#include "mvf/errors.hpp"

namespace mvf {

namespace {

Rat rat_pow(const Rat& base, const Int& exp) {
    if (base == 0) throw std::domain_error("zero twist value");
    Int e = abs(exp);
    if (!e.fits_ulong_p()) throw std::overflow_error("twist exponent too large");
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e.get_ui());
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e.get_ui());
    r.canonicalize();
    if (exp < 0) r = 1 / r;
    return r;
}

}  // namespace

TwistAuto::TwistAuto(const ConcreteGroup& group, std::vector<std::pair<Value, Rat>> generator_values)
    : group_(group) {
    values_.assign(group_.generators().size(), Rat(1));
    for (auto& [g, u] : generator_values) {
        if (u == 0) throw std::domain_error("twist values must be nonzero rationals");
        auto it = std::find(group_.generators().begin(), group_.generators().end(), g);
        if (it == group_.generators().end())
            throw std::domain_error("twist key is not a group generator: " + g.str());
        values_[it - group_.generators().begin()] = u;
    }
    // u must be constant on relations among the generators, otherwise the
    // recipe does not define a map on the lattice
    for (const auto& rel : group_.lattice().relations()) {
        Rat prod = 1;
        for (size_t i = 0; i < rel.size(); ++i) prod *= rat_pow(values_[i], rel[i]);
        if (prod != 1)
            throw std::domain_error("twist values violate a generator relation in " + group_.str());
    }
}

Rat TwistAuto::factor(const Value& exponent) const {
    auto coords = group_.generator_coords(exponent);
    if (!coords)
        throw valuation_error("exponent outside the twist domain (lattice only): " + exponent.str());
    Rat u = 1;
    for (size_t i = 0; i < coords->size(); ++i) u *= rat_pow(values_[i], (*coords)[i]);
    return u;
}

TwistAuto TwistAuto::inverted() const {
    std::vector<Rat> inv;
    inv.reserve(values_.size());
    for (const auto& u : values_) inv.push_back(1 / u);
    return TwistAuto(group_, std::move(inv));
}

HahnSeries apply(const FieldAuto& sigma, const HahnSeries& x) {
    if (std::holds_alternative<IdentityAuto>(sigma)) return x;
    const auto& tw = std::get<TwistAuto>(sigma);
    std::vector<std::pair<Value, Rat>> terms;
    terms.reserve(x.term_count());
    for (const auto& [e, c] : x.terms()) terms.emplace_back(e, c * tw.factor(e));
    return HahnSeries::make(x.field(), std::move(terms), x.precision_floor());
}

FieldAuto inverted(const FieldAuto& sigma) {
    if (std::holds_alternative<IdentityAuto>(sigma)) return sigma;
    return std::get<TwistAuto>(sigma).inverted();
}

std::string auto_str(const FieldAuto& sigma) {
    if (std::holds_alternative<IdentityAuto>(sigma)) return "identity";
    const auto& tw = std::get<TwistAuto>(sigma);
    std::string s = "twist(";
    const auto& gens = tw.group().generators();
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ", ";
        s += gens[i].str() + " => " + rat_str(tw.values()[i]);
    }
    return s + ")";
}

GaussElement apply(const GaussLift& sigma, const GaussElement& x) {
    if (x.is_zero()) return x;
    std::vector<HahnSeries> out;
    out.reserve(x.coeffs().size());
    HahnSeries apow = HahnSeries::constant(sigma.a.field(), 1);
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        out.push_back(mvf::apply(sigma.base, x.coeffs()[i]) * apow);
        apow = apow * sigma.a;
    }
    return GaussElement::from_coeffs(std::move(out));
}

GaussLift inverted(const GaussLift& sigma) {
    if (sigma.a.term_count() != 1)
        throw std::domain_error(
            "exact inverse of a Gauss lift needs a monomial multiplier; the completion is out of "
            "scope");
    const auto& [gamma, c] = *sigma.a.terms().begin();
    HahnSeries a_inv = HahnSeries::monomial(sigma.a.field(), Rat(1) / c, gamma.inverse());
    FieldAuto base_inv = inverted(sigma.base);
    return GaussLift{base_inv, mvf::apply(base_inv, a_inv)};
}

GaussDiff gauss_extend(FieldPtr base, FieldAuto sigma, const HahnSeries& a) {
    if (!(a.valuation() == Norm::one()))
        throw std::domain_error("Gauss extension needs |a| = 1, got |a| = " + a.valuation().str());
    GaussDiff d{GaussOps{std::move(base)}, GaussLift{std::move(sigma), a}};
    // sigma~(X)/X = a, exactly
    GaussElement sx = d.apply_sigma(d.x_element());
    if (!(sx == GaussElement::from_coeffs({HahnSeries::zero(a.field()), a})))
        throw std::logic_error("Gauss lift does not satisfy sigma(X) = a*X");
    return d;
}

}  // namespace mvf
