#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mvf/gauss.hpp"
#include "mvf/parallel.hpp"
#include "mvf/projective.hpp"

namespace mvf {

/** The identity automorphism. */
struct IdentityAuto {
    bool operator==(const IdentityAuto&) const = default;
};

/**
 * Character twist: c * t^gamma -> c * u(gamma) * t^gamma for a group
 * homomorphism u: Gamma -> Q^x given by its values on the generators.
 * Defined on lattice exponents only; the constructor verifies u kills
 * every relation among the generators, so the extension to the lattice
 * is well defined. Isometric by construction (exponents unchanged).
 */
class TwistAuto {
public:
    TwistAuto(const ConcreteGroup& group, std::vector<std::pair<Value, Rat>> generator_values);

    Rat factor(const Value& exponent) const;  // u(gamma); throws outside the lattice
    TwistAuto inverted() const;
    const ConcreteGroup& group() const { return group_; }
    const std::vector<Rat>& values() const { return values_; }

    bool operator==(const TwistAuto& o) const {
        return group_ == o.group_ && values_ == o.values_;
    }

private:
    ConcreteGroup group_;
    std::vector<Rat> values_;  // aligned with group_.generators()

    TwistAuto(ConcreteGroup g, std::vector<Rat> vals)
        : group_(std::move(g)), values_(std::move(vals)) {}
};

using FieldAuto = std::variant<IdentityAuto, TwistAuto>;

HahnSeries apply(const FieldAuto& sigma, const HahnSeries& x);
FieldAuto inverted(const FieldAuto& sigma);
std::string auto_str(const FieldAuto& sigma);

/**
 * The lift sigma~ of the Gauss extension: sigma~(sum c_i X^i) =
 * sum sigma(c_i) a^i X^i for a fixed a with |a| = 1.
 */
struct GaussLift {
    FieldAuto base;
    HahnSeries a;
};

GaussElement apply(const GaussLift& sigma, const GaussElement& x);
// Exact inversion needs an exact inverse of a; supported when a is a
// monomial (the completion is out of scope for general a).
GaussLift inverted(const GaussLift& sigma);

/** Difference structure on the projective line over a Hahn field. */
struct HahnDiff {
    using Ops = HahnOps;
    using Elem = HahnSeries;
    HahnOps ops;
    FieldAuto sigma;

    HahnSeries apply_sigma(const HahnSeries& e) const { return mvf::apply(sigma, e); }
    HahnSeries apply_sigma_inv(const HahnSeries& e) const { return mvf::apply(inverted(sigma), e); }
};

/** Difference structure on the projective line over a Gauss extension. */
struct GaussDiff {
    using Ops = GaussOps;
    using Elem = GaussElement;
    GaussOps ops;
    GaussLift sigma;

    GaussElement apply_sigma(const GaussElement& e) const { return mvf::apply(sigma, e); }
    GaussElement apply_sigma_inv(const GaussElement& e) const { return mvf::apply(inverted(sigma), e); }

    GaussElement x_element() const { return GaussElement::variable(ops.field); }
    GaussElement embed(const HahnSeries& s) const { return GaussElement::constant(s); }
};

// The Gauss extension of (K, sigma) by a norm-1 element a: adjoins b = X
// with |b| = 1 and sigma~(b)/b = a (asserted exactly on construction).
GaussDiff gauss_extend(FieldPtr base, FieldAuto sigma, const HahnSeries& a);

template <class D>
ProjPoint<typename D::Elem> apply_sigma_point(const D& d, const ProjPoint<typename D::Elem>& p) {
    // isometric, so normalization is preserved
    return {d.apply_sigma(p.num), d.apply_sigma(p.den)};
}

struct AxiomViolation {
    char axiom;  // '2', '3', '4'
    size_t index;
    std::string detail;
    bool operator<(const AxiomViolation& o) const {
        return std::tie(axiom, index) < std::tie(o.axiom, o.index);
    }
};

struct AxiomReport {
    size_t checks = 0;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * Sample-based check of the MVF_sigma axioms:
 *   (II)  ||P(x)|| = ||P(sigma(x))||  on every (poly, point-tuple) sample,
 *   (III) d(infty, sigma(infty)) = 0,
 *   (IV)  sup_y inf_x ||sigma(x) - y|| = 0, certified by the exact
 *         preimage witness x = sigma^{-1}(y) per sampled y.
 * All checks exact; the report lists violations with witnesses.
 */
template <class D>
AxiomReport check_axioms(const D& d, const std::vector<IntPolynomial>& polys,
                         const std::vector<ProjPoint<typename D::Elem>>& points,
                         ExecMode mode = ExecMode::parallel) {
    using Elem = typename D::Elem;
    AxiomReport rep;

    auto inf = infinity_point(d.ops);
    ++rep.checks;
    if (!(distance(d.ops, inf, apply_sigma_point(d, inf)) == Norm::zero()))
        rep.violations.push_back({'3', 0, "d(inf, sigma(inf)) != 0"});

    // (II): consecutive point windows per polynomial
    struct Task {
        size_t poly, start;
    };
    std::vector<Task> tasks;
    for (size_t pi = 0; pi < polys.size(); ++pi) {
        size_t r = polys[pi].arity();
        if (r == 0 || points.size() < r) continue;
        for (size_t s = 0; s + r <= points.size(); s += r) tasks.push_back({pi, s});
    }
    std::vector<std::string> bad2(tasks.size());
    std::vector<char> hit2(tasks.size(), 0);
    const bool par = mode == ExecMode::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (long ti = 0; ti < static_cast<long>(tasks.size()); ++ti) {
        const auto& [pi, s] = tasks[ti];
        size_t r = polys[pi].arity();
        std::vector<ProjPoint<Elem>> args(points.begin() + s, points.begin() + s + r);
        std::vector<ProjPoint<Elem>> sargs;
        sargs.reserve(r);
        for (const auto& p : args) sargs.push_back(apply_sigma_point(d, p));
        Norm lhs = eval_predicate(d.ops, polys[pi], std::span<const ProjPoint<Elem>>(args));
        Norm rhs = eval_predicate(d.ops, polys[pi], std::span<const ProjPoint<Elem>>(sargs));
        if (!(lhs == rhs)) {
            hit2[ti] = 1;
            bad2[ti] = "||P|| = " + lhs.str() + " but ||P(sigma(.))|| = " + rhs.str() +
                       " for P = " + polys[pi].str() + " at " + print_point(d.ops, args[0]);
        }
    }
    rep.checks += tasks.size();
    for (size_t ti = 0; ti < tasks.size(); ++ti)
        if (hit2[ti]) rep.violations.push_back({'2', ti, bad2[ti]});

    // (IV): exact preimage witness per sampled y
    std::vector<std::string> bad4(points.size());
    std::vector<char> hit4(points.size(), 0);
#pragma omp parallel for schedule(dynamic) if (par)
    for (long yi = 0; yi < static_cast<long>(points.size()); ++yi) {
        ProjPoint<Elem> x{d.apply_sigma_inv(points[yi].num), d.apply_sigma_inv(points[yi].den)};
        Norm res = distance(d.ops, apply_sigma_point(d, x), points[yi]);
        if (!(res == Norm::zero())) {
            hit4[yi] = 1;
            bad4[yi] = "||sigma(x) - y|| = " + res.str() + " at y = " + print_point(d.ops, points[yi]);
        }
    }
    rep.checks += points.size();
    for (size_t yi = 0; yi < points.size(); ++yi)
        if (hit4[yi]) rep.violations.push_back({'4', yi, bad4[yi]});

    std::sort(rep.violations.begin(), rep.violations.end());
    return rep;
}

}  // namespace mvf
