#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "mvf/difference.hpp"
#include "mvf/scalar.hpp"

namespace mvf {

/** Term of L_{P,sigma}: a variable with a sigma-power, or the constant infinity. */
struct FormulaTerm {
    enum class Kind { variable, infinity };
    Kind kind = Kind::variable;
    std::string var;
    unsigned sigma_power = 0;

    static FormulaTerm variable(std::string name, unsigned k = 0) {
        return {Kind::variable, std::move(name), k};
    }
    static FormulaTerm inf() { return {Kind::infinity, {}, 0}; }

    bool operator==(const FormulaTerm&) const = default;
    std::string str() const;
};

/**
 * AST of continuous-logic L_{P,sigma} formulas: predicates ||P(terms)||,
 * the metric, constants in [0,1], the connective basis
 * {1-x, x-.y, max, min, product, min(1,x+y)} and the quantifiers sup/inf.
 */
class Formula {
public:
    enum class Op { pred, dist, constant, neg, trunc_sub, max, min, prod, clamp_add, sup, inf };

    struct Node {
        Op op;
        IntPolynomial poly;              // pred: vars aligned with terms
        std::vector<FormulaTerm> terms;  // pred arguments / dist pair
        Rat q;                           // constant
        std::string var;                 // quantified variable
        std::shared_ptr<const Node> a, b;
    };

    static Formula pred(IntPolynomial p, std::vector<FormulaTerm> terms);
    static Formula dist(FormulaTerm a, FormulaTerm b);
    static Formula constant(const Rat& q);  // requires q in [0,1]
    static Formula neg(Formula f);
    static Formula trunc_sub(Formula f, Formula g);
    static Formula max(Formula f, Formula g);
    static Formula min(Formula f, Formula g);
    static Formula prod(Formula f, Formula g);
    static Formula clamp_add(Formula f, Formula g);
    static Formula sup(std::string var, Formula f);
    static Formula inf(std::string var, Formula f);

    // inf y . min(1, ||y*x - s(y)|| + max(1 - ||y||, 1 - ||y^*||))
    static Formula phi();
    // the quantifier-free bracket of phi, free in x and y
    static Formula phi_bracket();

    // text syntax: inf y . min(1, ||y*x - s(y)|| + max(1 - ||y||, 1 - ||y^*||))
    static Formula parse(std::string_view text);

    const Node& root() const { return *root_; }
    std::set<std::string> free_vars() const;
    std::string str() const;

private:
    std::shared_ptr<const Node> root_;
    explicit Formula(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
};

/**
 * One-sided bookkeeping for finite-witness quantifier approximation:
 * a reported Inf over a witness set is an upper bound of the true inf,
 * a reported Sup a lower bound of the true sup. Compositions that mix
 * the two senses degrade to `mixed`; `exact` survives only through
 * quantifier-free formulas.
 */
enum class BoundDir { exact, upper_bound_of_inf, lower_bound_of_sup, mixed };

BoundDir flip_dir(BoundDir d);
BoundDir combine_dir(BoundDir a, BoundDir b);
std::string dir_str(BoundDir d);

template <class Elem>
struct WitnessSet {
    std::vector<ProjPoint<Elem>> points;  // nonempty
    std::string provenance = "explicit";  // explicit | grid(depth,height) | registered
};

template <class Elem>
struct WitnessConfig {
    std::map<std::string, WitnessSet<Elem>> per_var;
    std::optional<WitnessSet<Elem>> fallback;

    const WitnessSet<Elem>& for_var(const std::string& v) const {
        auto it = per_var.find(v);
        if (it != per_var.end()) return it->second;
        if (fallback) return *fallback;
        throw std::invalid_argument("no witness set for quantifier over " + v);
    }
};

template <class Elem>
struct EvalResult {
    Scalar value;
    BoundDir direction = BoundDir::exact;
    std::map<std::string, ProjPoint<Elem>> witness;  // quantified vars -> points
};

namespace detail {

template <class D>
ProjPoint<typename D::Elem> resolve_term(const D& d, const FormulaTerm& t,
                                         const std::map<std::string, ProjPoint<typename D::Elem>>& env) {
    if (t.kind == FormulaTerm::Kind::infinity) return infinity_point(d.ops);
    auto it = env.find(t.var);
    if (it == env.end()) throw std::invalid_argument("unbound formula variable: " + t.var);
    ProjPoint<typename D::Elem> p = it->second;
    for (unsigned k = 0; k < t.sigma_power; ++k) p = apply_sigma_point(d, p);
    return p;
}

}  // namespace detail

/**
 * Evaluates a formula over a difference structure. Quantifier-free
 * connectives are exact over Scalars; Inf takes the minimum over its
 * witness set (an upper bound of the true inf), Sup the maximum. The
 * returned witness is the first point in witness order attaining each
 * extremum, so results do not depend on the execution schedule.
 */
template <class D>
EvalResult<typename D::Elem> evaluate(const D& d, const Formula::Node& n,
                                      std::map<std::string, ProjPoint<typename D::Elem>> env,
                                      const WitnessConfig<typename D::Elem>& witnesses,
                                      ExecMode mode) {
    using Elem = typename D::Elem;
    using Result = EvalResult<Elem>;
    auto rec = [&](const std::shared_ptr<const Formula::Node>& child) {
        return evaluate(d, *child, env, witnesses, mode);
    };

    switch (n.op) {
        case Formula::Op::pred: {
            std::vector<ProjPoint<Elem>> args;
            args.reserve(n.terms.size());
            for (const auto& t : n.terms) args.push_back(detail::resolve_term(d, t, env));
            Norm v = eval_predicate(d.ops, n.poly, std::span<const ProjPoint<Elem>>(args));
            return Result{Scalar::from_norm(v), BoundDir::exact, {}};
        }
        case Formula::Op::dist: {
            auto a = detail::resolve_term(d, n.terms[0], env);
            auto b = detail::resolve_term(d, n.terms[1], env);
            return Result{Scalar::from_norm(distance(d.ops, a, b)), BoundDir::exact, {}};
        }
        case Formula::Op::constant:
            return Result{Scalar(n.q), BoundDir::exact, {}};
        case Formula::Op::neg: {
            Result r = rec(n.a);
            r.value = one_minus(r.value);
            r.direction = flip_dir(r.direction);
            return r;
        }
        case Formula::Op::trunc_sub:
        case Formula::Op::max:
        case Formula::Op::min:
        case Formula::Op::prod:
        case Formula::Op::clamp_add: {
            Result ra = rec(n.a), rb = rec(n.b);
            Result r;
            switch (n.op) {
                case Formula::Op::trunc_sub:
                    r.value = mvf::trunc_sub(ra.value, rb.value);
                    r.direction = combine_dir(ra.direction, flip_dir(rb.direction));
                    break;
                case Formula::Op::max: r.value = max_scalar(ra.value, rb.value); break;
                case Formula::Op::min: r.value = min_scalar(ra.value, rb.value); break;
                case Formula::Op::prod: r.value = ra.value * rb.value; break;
                case Formula::Op::clamp_add: r.value = mvf::clamp_add(ra.value, rb.value); break;
                default: break;
            }
            if (n.op != Formula::Op::trunc_sub)
                r.direction = combine_dir(ra.direction, rb.direction);
            r.witness = ra.witness;
            r.witness.insert(rb.witness.begin(), rb.witness.end());
            return r;
        }
        case Formula::Op::sup:
        case Formula::Op::inf: {
            const WitnessSet<Elem>& ws = witnesses.for_var(n.var);
            if (ws.points.empty()) throw std::invalid_argument("empty witness set for " + n.var);
            const bool take_min = n.op == Formula::Op::inf;
            size_t count = ws.points.size();
            std::vector<Result> sub(count);

            if (mode == ExecMode::parallel && count > 1) {
#pragma omp parallel for schedule(dynamic)
                for (long i = 0; i < static_cast<long>(count); ++i) {
                    auto local_env = env;
                    local_env[n.var] = ws.points[i];
                    sub[i] = evaluate(d, *n.a, std::move(local_env), witnesses, mode);
                }
                size_t best = 0;
                for (size_t i = 1; i < count; ++i) {
                    int c = Scalar::compare(sub[i].value, sub[best].value);
                    if (take_min ? c < 0 : c > 0) best = i;
                }
                Result r = sub[best];
                r.witness[n.var] = ws.points[best];
                BoundDir quant =
                    take_min ? BoundDir::upper_bound_of_inf : BoundDir::lower_bound_of_sup;
                BoundDir dir = quant;
                for (const auto& s : sub) dir = combine_dir(dir, s.direction);
                r.direction = dir;
                return r;
            }

            // serial reference: running extremum, earliest index wins ties
            size_t best = 0;
            BoundDir dir = take_min ? BoundDir::upper_bound_of_inf : BoundDir::lower_bound_of_sup;
            for (size_t i = 0; i < count; ++i) {
                auto local_env = env;
                local_env[n.var] = ws.points[i];
                sub[i] = evaluate(d, *n.a, std::move(local_env), witnesses, ExecMode::serial);
                dir = combine_dir(dir, sub[i].direction);
                if (i > 0) {
                    int c = Scalar::compare(sub[i].value, sub[best].value);
                    if (take_min ? c < 0 : c > 0) best = i;
                }
            }
            Result r = sub[best];
            r.witness[n.var] = ws.points[best];
            r.direction = dir;
            return r;
        }
    }
    throw std::logic_error("unreachable formula op");
}

template <class D>
EvalResult<typename D::Elem> evaluate(const D& d, const Formula& f,
                                      const std::map<std::string, ProjPoint<typename D::Elem>>& env,
                                      const WitnessConfig<typename D::Elem>& witnesses,
                                      ExecMode mode = ExecMode::parallel) {
    return evaluate(d, f.root(), env, witnesses, mode);
}

// The distinguished formula phi at the point a, over the given witness set for y.
template <class D>
EvalResult<typename D::Elem> phi_eval(const D& d, const ProjPoint<typename D::Elem>& a,
                                      const WitnessSet<typename D::Elem>& ws,
                                      ExecMode mode = ExecMode::parallel) {
    WitnessConfig<typename D::Elem> cfg;
    cfg.per_var.emplace("y", ws);
    return evaluate(d, Formula::phi(), {{"x", a}}, cfg, mode);
}

// The clamped bracket of phi at one witness y.
template <class D>
Scalar phi_bracket_at(const D& d, const ProjPoint<typename D::Elem>& a,
                      const ProjPoint<typename D::Elem>& y) {
    WitnessConfig<typename D::Elem> cfg;
    return evaluate(d, Formula::phi_bracket(), {{"x", a}, {"y", y}}, cfg, ExecMode::serial).value;
}

/**
 * Deterministic witness grid over a Hahn field: normalized points [u : v]
 * with monomial coordinates, coefficients bounded by `height` and
 * exponents from lattice basis vectors with coordinates bounded by
 * `depth`; deduplicated up to projective equality. Monotone in both
 * parameters.
 */
WitnessSet<HahnSeries> grid_witnesses(const HahnOps& ops, long depth, long height);

struct PiWitnessResult {
    PPoint point;
    std::vector<long> coords;
    EvalResult<HahnSeries> phi_report;
};

/**
 * A point a = [c : 1] with c a group-element monomial and
 * 1 - 1/n <= |c| < 1, satisfying the n-th condition of the partial type
 * pi; found by the dense-witness box search, paired with a phi report
 * over the supplied witness set. Throws not_found_error when the
 * exponent box is exhausted.
 */
PiWitnessResult pi_witness(const HahnDiff& d, unsigned n, long bound,
                           const WitnessSet<HahnSeries>& ws, ExecMode mode = ExecMode::parallel);

}  // namespace mvf
