#include "mvf/formula.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "mvf/errors.hpp"

namespace mvf {

std::string FormulaTerm::str() const {
    if (kind == Kind::infinity) return "inf";
    if (sigma_power == 0) return var;
    if (sigma_power == 1) return "s(" + var + ")";
    return "s^" + std::to_string(sigma_power) + "(" + var + ")";
}

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

NodePtr node(Formula::Node n) {
    return std::make_shared<const Formula::Node>(std::move(n));
}

}  // namespace

Formula Formula::pred(IntPolynomial p, std::vector<FormulaTerm> terms) {
    if (p.arity() != terms.size())
        throw std::invalid_argument("predicate arity does not match its term list");
    Node n{Op::pred, std::move(p), std::move(terms), Rat(0), {}, nullptr, nullptr};
    return Formula(node(std::move(n)));
}

Formula Formula::dist(FormulaTerm a, FormulaTerm b) {
    Node n{Op::dist, {}, {std::move(a), std::move(b)}, Rat(0), {}, nullptr, nullptr};
    return Formula(node(std::move(n)));
}

Formula Formula::constant(const Rat& q) {
    if (q < 0 || q > 1) throw std::domain_error("formula constants lie in [0,1]: " + rat_str(q));
    Node n{Op::constant, {}, {}, q, {}, nullptr, nullptr};
    return Formula(node(std::move(n)));
}

Formula Formula::neg(Formula f) {
    Node n{Op::neg, {}, {}, Rat(0), {}, f.root_, nullptr};
    return Formula(node(std::move(n)));
}

#define MVF_BINARY(NAME)                                                \
    Formula Formula::NAME(Formula f, Formula g) {                      \
        Node n{Op::NAME, {}, {}, Rat(0), {}, f.root_, g.root_};        \
        return Formula(node(std::move(n)));                            \
    }

MVF_BINARY(trunc_sub)
MVF_BINARY(max)
MVF_BINARY(min)
MVF_BINARY(prod)
MVF_BINARY(clamp_add)
#undef MVF_BINARY

Formula Formula::sup(std::string var, Formula f) {
    Node n{Op::sup, {}, {}, Rat(0), std::move(var), f.root_, nullptr};
    return Formula(node(std::move(n)));
}

Formula Formula::inf(std::string var, Formula f) {
    Node n{Op::inf, {}, {}, Rat(0), std::move(var), f.root_, nullptr};
    return Formula(node(std::move(n)));
}

Formula Formula::phi_bracket() {
    // ||y*x - s(y)|| + max(1 - ||y||, 1 - ||y^*||), clamped into [0,1]
    IntPolynomial p = IntPolynomial::variable("y") * IntPolynomial::variable("x") -
                      IntPolynomial::variable("s(y)");
    Formula a = pred(std::move(p), {FormulaTerm::variable("y"), FormulaTerm::variable("x"),
                                    FormulaTerm::variable("y", 1)});
    Formula ny = neg(pred(IntPolynomial::variable("y"), {FormulaTerm::variable("y")}));
    Formula nys = neg(dist(FormulaTerm::variable("y"), FormulaTerm::inf()));
    return clamp_add(std::move(a), max(std::move(ny), std::move(nys)));
}

Formula Formula::phi() {
    return inf("y", phi_bracket());
}

namespace {

void collect_free(const Formula::Node& n, std::set<std::string>& bound,
                  std::set<std::string>& free) {
    switch (n.op) {
        case Formula::Op::pred:
        case Formula::Op::dist:
            for (const auto& t : n.terms)
                if (t.kind == FormulaTerm::Kind::variable && !bound.count(t.var)) free.insert(t.var);
            return;
        case Formula::Op::constant: return;
        case Formula::Op::sup:
        case Formula::Op::inf: {
            bool fresh = bound.insert(n.var).second;
            collect_free(*n.a, bound, free);
            if (fresh) bound.erase(n.var);
            return;
        }
        default:
            if (n.a) collect_free(*n.a, bound, free);
            if (n.b) collect_free(*n.b, bound, free);
    }
}

}  // namespace

std::set<std::string> Formula::free_vars() const {
    std::set<std::string> bound, free;
    collect_free(*root_, bound, free);
    return free;
}

std::string Formula::str() const {
    const Node& n = *root_;
    switch (n.op) {
        case Op::pred: return "||" + n.poly.str() + "||";
        case Op::dist: return "d(" + n.terms[0].str() + ", " + n.terms[1].str() + ")";
        case Op::constant: return rat_str(n.q);
        case Op::neg: return "(1 - " + Formula(n.a).str() + ")";
        case Op::trunc_sub: return "(" + Formula(n.a).str() + " - " + Formula(n.b).str() + ")";
        case Op::max: return "max(" + Formula(n.a).str() + ", " + Formula(n.b).str() + ")";
        case Op::min: return "min(" + Formula(n.a).str() + ", " + Formula(n.b).str() + ")";
        case Op::prod: return "(" + Formula(n.a).str() + " * " + Formula(n.b).str() + ")";
        case Op::clamp_add: return "(" + Formula(n.a).str() + " + " + Formula(n.b).str() + ")";
        case Op::sup: return "sup " + n.var + " . " + Formula(n.a).str();
        case Op::inf: return "inf " + n.var + " . " + Formula(n.a).str();
    }
    return "?";
}

BoundDir flip_dir(BoundDir d) {
    switch (d) {
        case BoundDir::upper_bound_of_inf: return BoundDir::lower_bound_of_sup;
        case BoundDir::lower_bound_of_sup: return BoundDir::upper_bound_of_inf;
        default: return d;
    }
}

BoundDir combine_dir(BoundDir a, BoundDir b) {
    if (a == BoundDir::exact) return b;
    if (b == BoundDir::exact) return a;
    if (a == b) return a;
    return BoundDir::mixed;
}

std::string dir_str(BoundDir d) {
    switch (d) {
        case BoundDir::exact: return "exact";
        case BoundDir::upper_bound_of_inf: return "upper_bound_of_inf";
        case BoundDir::lower_bound_of_sup: return "lower_bound_of_sup";
        case BoundDir::mixed: return "mixed";
    }
    return "?";
}

// ---- formula text parser ----

namespace {

struct FormulaParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "' in formula: " + std::string(text));
    }
    bool accept_norm_bars() {
        skip_ws();
        if (pos + 1 < text.size() && text[pos] == '|' && text[pos + 1] == '|') {
            pos += 2;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) throw parse_error("expected an identifier in formula");
        return std::string(text.substr(start, pos - start));
    }
    std::string peek_ident() {
        size_t save = pos;
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string s(text.substr(start, pos - start));
        pos = save;
        return s;
    }
    unsigned uint_lit() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw parse_error("expected an integer in formula");
        return static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
    }
    Rat number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        return parse_rational(text.substr(start, pos - start));
    }

    FormulaTerm term() {
        std::string id = ident();
        if (id == "inf") return FormulaTerm::inf();
        if (id == "s") {
            unsigned k = 1;
            if (accept('^')) k = uint_lit();
            expect('(');
            std::string v = ident();
            expect(')');
            return FormulaTerm::variable(v, k);
        }
        return FormulaTerm::variable(id);
    }

    Formula formula() {
        std::string id = peek_ident();
        if (id == "inf" || id == "sup") {
            size_t save = pos;
            ident();
            // distinguish the quantifier from the constant infinity: a
            // quantifier is followed by a variable and '.'
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
                std::string var = ident();
                if (accept('.')) {
                    Formula body = formula();
                    return id == "inf" ? Formula::inf(var, std::move(body))
                                       : Formula::sup(var, std::move(body));
                }
            }
            pos = save;
        }
        return sum();
    }
    Formula sum() {
        Formula acc = product();
        while (true) {
            if (accept('+'))
                acc = Formula::clamp_add(std::move(acc), product());
            else if (accept('-'))
                acc = Formula::trunc_sub(std::move(acc), product());
            else
                break;
        }
        return acc;
    }
    Formula product() {
        Formula acc = atom();
        while (accept('*')) acc = Formula::prod(std::move(acc), atom());
        return acc;
    }
    Formula atom() {
        if (accept_norm_bars()) {
            Formula f = norm_body();
            if (!accept_norm_bars()) throw parse_error("unterminated ||...|| in formula");
            return f;
        }
        char c = peek();
        if (c == '(') {
            ++pos;
            Formula f = formula();
            expect(')');
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Formula::constant(number());
        std::string id = peek_ident();
        if (id == "min" || id == "max") {
            ident();
            expect('(');
            Formula a = formula();
            expect(',');
            Formula b = formula();
            expect(')');
            return id == "min" ? Formula::min(std::move(a), std::move(b))
                               : Formula::max(std::move(a), std::move(b));
        }
        if (id == "d") {
            ident();
            expect('(');
            FormulaTerm a = term();
            expect(',');
            FormulaTerm b = term();
            expect(')');
            return Formula::dist(std::move(a), std::move(b));
        }
        throw parse_error("unexpected input in formula at '" + std::string(text.substr(pos)) + "'");
    }

    // inside ||...||: either IDENT^* (the starred norm, i.e. d(x, inf)) or
    // an integer polynomial over terms
    Formula norm_body() {
        size_t save = pos;
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            std::string id = ident();
            if (id != "s" && id != "inf" && accept('^') && accept('*'))
                return Formula::dist(FormulaTerm::variable(id), FormulaTerm::inf());
            pos = save;
        }
        std::vector<std::pair<std::string, FormulaTerm>> registry;
        IntPolynomial p = polyexpr(registry);
        std::vector<FormulaTerm> terms;
        for (const auto& v : p.vars()) {
            auto it = std::find_if(registry.begin(), registry.end(),
                                   [&](const auto& e) { return e.first == v; });
            if (it == registry.end()) throw parse_error("internal: unregistered predicate term");
            terms.push_back(it->second);
        }
        return Formula::pred(std::move(p), std::move(terms));
    }
    IntPolynomial polyexpr(std::vector<std::pair<std::string, FormulaTerm>>& reg) {
        bool neg = accept('-');
        IntPolynomial acc = polyterm(reg);
        if (neg) acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + polyterm(reg);
            else if (accept('-'))
                acc = acc - polyterm(reg);
            else
                break;
        }
        return acc;
    }
    IntPolynomial polyterm(std::vector<std::pair<std::string, FormulaTerm>>& reg) {
        IntPolynomial acc = polyfactor(reg);
        while (accept('*')) acc = acc * polyfactor(reg);
        return acc;
    }
    IntPolynomial polyfactor(std::vector<std::pair<std::string, FormulaTerm>>& reg) {
        IntPolynomial base = polyatom(reg);
        if (accept('^')) base = base.pow(uint_lit());
        return base;
    }
    IntPolynomial polyatom(std::vector<std::pair<std::string, FormulaTerm>>& reg) {
        char c = peek();
        if (c == '(') {
            ++pos;
            IntPolynomial e = polyexpr(reg);
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return IntPolynomial::constant(Int(std::string(text.substr(start, pos - start))));
        }
        FormulaTerm t = term();
        std::string name = t.str();
        if (std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; }) ==
            reg.end())
            reg.emplace_back(name, t);
        return IntPolynomial::variable(name);
    }
};

}  // namespace

Formula Formula::parse(std::string_view text) {
    FormulaParser p{text};
    Formula f = p.formula();
    p.skip_ws();
    if (p.pos != text.size())
        throw parse_error("trailing input in formula: " + std::string(text.substr(p.pos)));
    return f;
}

// ---- witness grids ----

namespace {

struct GridKey {
    int slot;  // 0: [w:1], 1: [1:w], 2: [0:1], 3: [1:0]
    Rat q;
    Value e;

    bool operator<(const GridKey& o) const {
        if (slot != o.slot) return slot < o.slot;
        if (int c = cmp(q, o.q)) return c < 0;
        return Value::structural_compare(e, o.e) < 0;
    }
};

}  // namespace

WitnessSet<HahnSeries> grid_witnesses(const HahnOps& ops, long depth, long height) {
    if (depth < 0 || height < 0) throw std::invalid_argument("negative grid parameter");
    const ConcreteGroup& group = ops.field->group();
    size_t r = group.rank();

    std::vector<Value> exponents;
    std::vector<long> c(r, -depth);
    while (true) {
        exponents.push_back(group.element_from_basis(c));
        size_t i = r;
        while (i > 0 && c[i - 1] == depth) --i;
        if (i == 0) break;
        ++c[i - 1];
        std::fill(c.begin() + i, c.end(), -depth);
    }

    // candidate coordinates: the zero series plus monomials c * t^gamma
    struct Cand {
        bool zero;
        Value e;
        Rat c;
    };
    std::vector<Cand> cands;
    cands.push_back({true, {}, Rat(0)});
    for (const auto& e : exponents)
        for (long k = -height; k <= height; ++k)
            if (k != 0) cands.push_back({false, e, Rat(k)});

    WitnessSet<HahnSeries> ws;
    ws.provenance = "grid(" + std::to_string(depth) + "," + std::to_string(height) + ")";
    std::set<GridKey> seen;
    auto emit = [&](const GridKey& key) {
        if (!seen.insert(key).second) return;
        HahnSeries one = HahnSeries::constant(ops.field, 1);
        HahnSeries zero = HahnSeries::zero(ops.field);
        switch (key.slot) {
            case 0:
                ws.points.push_back(make_point(ops, HahnSeries::monomial(ops.field, key.q, key.e), one));
                break;
            case 1:
                ws.points.push_back(make_point(ops, one, HahnSeries::monomial(ops.field, key.q, key.e)));
                break;
            case 2: ws.points.push_back(make_point(ops, zero, one)); break;
            case 3: ws.points.push_back(make_point(ops, one, zero)); break;
        }
    };

    for (const auto& u : cands) {
        for (const auto& v : cands) {
            if (u.zero && v.zero) continue;
            if (u.zero) {
                emit({2, Rat(0), Value()});
            } else if (v.zero) {
                emit({3, Rat(0), Value()});
            } else if (Value::compare(u.e, v.e) <= 0) {
                Rat q = u.c / v.c;
                q.canonicalize();
                emit({0, q, u.e * v.e.inverse()});
            } else {
                Rat q = v.c / u.c;
                q.canonicalize();
                emit({1, q, v.e * u.e.inverse()});
            }
        }
    }
    return ws;
}

PiWitnessResult pi_witness(const HahnDiff& d, unsigned n, long bound,
                           const WitnessSet<HahnSeries>& ws, ExecMode mode) {
    if (n == 0) throw std::invalid_argument("pi_witness needs a positive n");
    const ConcreteGroup& group = d.ops.field->group();
    if (group.rank() < 2) throw std::domain_error("pi_witness requires a dense value group");

    Scalar lo(rat(static_cast<long>(n) - 1, static_cast<long>(n)));
    auto hit = search_box(group, lo, true, Scalar(Rat(1)), false, bound, mode);
    if (!hit)
        throw not_found_error("no group element in [1 - 1/" + std::to_string(n) +
                              ", 1) within exponent bound " + std::to_string(bound));
    PPoint a = make_point(d.ops, HahnSeries::monomial(d.ops.field, 1, hit->second),
                          HahnSeries::constant(d.ops.field, 1));
    PiWitnessResult res{a, hit->first, phi_eval(d, a, ws, mode)};
    return res;
}

}  // namespace mvf
