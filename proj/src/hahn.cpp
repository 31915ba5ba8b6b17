#include "mvf/hahn.hpp"

#include <algorithm>
#include <cctype>

#include "mvf/errors.hpp"

namespace mvf {

Field::Field(ConcreteGroup group, bool allow_roots)
    : group_(std::move(group)), allow_roots_(allow_roots) {}

bool Field::admits(const Value& exponent) const {
    return allow_roots_ ? group_.hull_contains(exponent) : group_.contains(exponent);
}

FieldPtr Field::make(ConcreteGroup group, bool allow_roots) {
    return std::make_shared<const Field>(std::move(group), allow_roots);
}

void HahnSeries::set_term(const Value& exponent, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(exponent, c);
    if (!fresh) {
        it->second += c;
        it->second.canonicalize();
        if (it->second == 0) terms_.erase(it);
    }
}

void HahnSeries::apply_floor() {
    if (!floor_) return;
    terms_.erase(terms_.begin(), terms_.lower_bound(*floor_));
}

FieldPtr HahnSeries::common_field(const HahnSeries& a, const HahnSeries& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_ && !(*a.field_ == *b.field_))
        throw std::invalid_argument("series from different fields");
    return a.field_ ? a.field_ : b.field_;
}

HahnSeries HahnSeries::make(FieldPtr field, std::vector<std::pair<Value, Rat>> terms,
                            std::optional<Value> floor) {
    if (!field) throw std::invalid_argument("series needs a field");
    HahnSeries s;
    s.field_ = std::move(field);
    s.floor_ = std::move(floor);
    for (auto& [e, c] : terms) {
        if (!s.field_->admits(e))
            throw valuation_error("exponent outside the declared group: " + e.str());
        Rat cc = c;
        cc.canonicalize();
        s.set_term(e, cc);
    }
    s.apply_floor();
    return s;
}

HahnSeries HahnSeries::constant(FieldPtr field, const Rat& c) {
    return make(std::move(field), {{Value(), c}});
}

HahnSeries HahnSeries::monomial(FieldPtr field, const Rat& c, const Value& exponent) {
    return make(std::move(field), {{exponent, c}});
}

HahnSeries HahnSeries::zero(FieldPtr field) {
    return make(std::move(field), {});
}

Norm HahnSeries::valuation() const {
    if (terms_.empty()) return Norm::zero();
    return Norm(terms_.rbegin()->first);
}

Rat HahnSeries::residue() const {
    if (Norm::compare(valuation(), Norm::one()) > 0)
        throw valuation_error("residue of an element outside the valuation ring");
    if (floor_ && Value::compare(*floor_, Value()) > 0)
        throw valuation_error("residue undefined: precision floor above the constant slot");
    return coefficient(Value());
}

Rat HahnSeries::coefficient(const Value& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
}

namespace {

std::optional<Value> coarsest(const std::optional<Value>& a, const std::optional<Value>& b) {
    if (!a) return b;
    if (!b) return a;
    return max_value(*a, *b);
}

}  // namespace

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
    HahnSeries r;
    r.field_ = HahnSeries::common_field(a, b);
    r.floor_ = coarsest(a.floor_, b.floor_);
    r.terms_ = a.terms_;
    for (const auto& [e, c] : b.terms_) r.set_term(e, c);
    r.apply_floor();
    return r;
}

HahnSeries HahnSeries::operator-() const {
    HahnSeries r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) {
    return a + (-b);
}

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
    HahnSeries r;
    r.field_ = HahnSeries::common_field(a, b);
    r.floor_ = coarsest(a.floor_, b.floor_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.set_term(ea * eb, ca * cb);
    r.apply_floor();
    return r;
}

HahnSeries HahnSeries::scaled(const Rat& c, const Value& gamma) const {
    HahnSeries r;
    r.field_ = field_;
    if (c == 0) return r;
    if (field_ && !field_->admits(gamma))
        throw valuation_error("scaling exponent outside the declared group: " + gamma.str());
    for (const auto& [e, k] : terms_) r.terms_.emplace(e * gamma, c * k);
    if (floor_) r.floor_ = *floor_ * gamma;
    return r;
}

HahnSeries HahnSeries::truncated_below(const Value& floor) const {
    HahnSeries r = *this;
    r.floor_ = coarsest(r.floor_, floor);
    r.apply_floor();
    return r;
}

HahnSeries HahnSeries::with_floor(std::optional<Value> floor) const {
    HahnSeries r = *this;
    r.floor_ = std::move(floor);
    r.apply_floor();
    return r;
}

std::string HahnSeries::str() const {
    std::string s;
    if (terms_.empty()) {
        s = "0";
    } else {
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rat ac = abs(c);
            if (first) {
                if (c < 0) s += "-";
                first = false;
            } else {
                s += c < 0 ? " - " : " + ";
            }
            if (e.is_one()) {
                s += rat_str(ac);
            } else {
                if (ac != 1) s += rat_str(ac) + "*";
                s += "t^(" + e.str() + ")";
            }
        }
    }
    if (floor_) s += " [floor " + floor_->str() + "]";
    return s;
}

// ---- series literals ----

namespace {

struct SeriesLexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
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
    std::string_view until_matching_paren() {
        // pos sits right after '('
        size_t depth = 1, start = pos;
        while (pos < text.size()) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')' && --depth == 0) {
                auto inner = text.substr(start, pos - start);
                ++pos;
                return inner;
            }
            ++pos;
        }
        throw parse_error("unbalanced parentheses in series literal");
    }
    std::string_view number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (start == pos) throw parse_error("expected a number in series literal");
        return text.substr(start, pos - start);
    }
};

}  // namespace

HahnSeries HahnSeries::parse(FieldPtr field, std::string_view text) {
    SeriesLexer lx{text};
    std::vector<std::pair<Value, Rat>> terms;
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('-'))
            sign = -1;
        else if (lx.accept('+')) {
            if (first) throw parse_error("series literal cannot start with '+'");
        } else if (!first) {
            throw parse_error("expected '+' or '-' between series terms");
        }
        first = false;

        Rat coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = parse_rational(lx.number());
            have_coeff = true;
        }
        Value exponent;  // t^1 unless a t-factor follows
        bool have_t = false;
        if (have_coeff ? lx.accept('*') : true) {
            if (lx.peek() == 't') {
                ++lx.pos;
                have_t = true;
                if (!lx.accept('^'))
                    throw parse_error(
                        "bare 't' is ambiguous under the multiplicative convention (t^1 = 1); "
                        "write an explicit exponent t^(...)");
                if (!lx.accept('(')) throw parse_error("expected '(' after t^");
                exponent = Value::parse(lx.until_matching_paren());
            } else if (have_coeff) {
                throw parse_error("expected t-factor after '*' in series literal");
            }
        }
        if (!have_coeff && !have_t) throw parse_error("malformed series term");
        terms.emplace_back(exponent, sign * coeff);
    }
    if (terms.empty()) throw parse_error("empty series literal");
    return make(std::move(field), std::move(terms));
}

// ---- field operations ----

Rat res2(const HahnSeries& x, const HahnSeries& y) {
    if (x.is_zero() || y.is_zero()) return Rat(0);
    Norm vx = x.valuation(), vy = y.valuation();
    if (Norm::compare(vx, vy) > 0) return Rat(0);
    // only the coefficient at the unit exponent matters; an inverse with
    // residual below min(1, v(y)) leaves it exact
    Value f = min_value(Value(), vy.value());
    if (y.precision_floor()) f = min_value(f, *y.precision_floor());
    return (x * invert(y, f)).residue();
}

HahnSeries invert(const HahnSeries& a, const Value& floor) {
    if (a.is_zero()) throw std::domain_error("cannot invert the zero series");
    const auto& [gamma, c] = *a.terms().rbegin();
    HahnSeries m_inv = HahnSeries::monomial(a.field(), Rat(1) / c, gamma.inverse());
    // exact arithmetic on the stored coefficients; the input floor is
    // accounted for in the output floor instead
    HahnSeries q = a.with_floor(std::nullopt) * m_inv;  // 1 - r, |r| < 1
    HahnSeries one = HahnSeries::constant(a.field(), 1);
    HahnSeries r = one - q;

    std::optional<Value> out_floor;
    if (a.precision_floor())
        out_floor = *a.precision_floor() * gamma.inverse() * gamma.inverse();

    if (r.is_zero()) {  // exact monomial inverse
        return out_floor ? m_inv.with_floor(out_floor) : m_inv;
    }

    HahnSeries s = one;
    HahnSeries power = r.truncated_below(floor);
    for (int guard = 0; guard < 100000; ++guard) {
        HahnSeries residual = one - q * s;
        if (Norm::compare(residual.with_floor(std::nullopt).valuation(), Norm(floor)) < 0) {
            HahnSeries b = m_inv * s.with_floor(std::nullopt);
            out_floor = coarsest(out_floor, floor * gamma.inverse());
            return b.with_floor(out_floor);
        }
        s = s + power;
        power = (power * r).truncated_below(floor);
    }
    throw std::runtime_error("invert: geometric expansion failed to reach the floor");
}

HahnSeries eval_polynomial(const SeriesPolynomial& p, const HahnSeries& x) {
    if (p.empty()) throw std::invalid_argument("empty polynomial");
    HahnSeries acc = p.back();
    for (size_t i = p.size() - 1; i-- > 0;) acc = acc * x + p[i];
    return acc;
}

SeriesPolynomial derivative(const SeriesPolynomial& p) {
    SeriesPolynomial d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i].scaled(Rat(static_cast<long>(i)), Value()));
    if (d.empty() && !p.empty()) d.push_back(HahnSeries::zero(p[0].field()));
    return d;
}

namespace {

Rat eval_rat_poly(const std::vector<Rat>& p, const Rat& x) {
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

}  // namespace

HahnSeries newton_root(const SeriesPolynomial& p, const HahnSeries& seed, const Value& floor,
                       std::vector<HahnSeries>* iterates) {
    if (p.size() < 2) throw std::invalid_argument("newton_root needs degree >= 1");
    for (const auto& c : p)
        if (Norm::compare(c.valuation(), Norm::one()) > 0)
            throw newton_error(newton_error::kind::bad_seed,
                               "polynomial coefficient outside the valuation ring");
    if (Norm::compare(seed.valuation(), Norm::one()) > 0)
        throw newton_error(newton_error::kind::bad_seed, "seed outside the valuation ring");

    // residue-level preconditions: simple residue root
    std::vector<Rat> rp, rdp;
    for (const auto& c : p) rp.push_back(c.residue());
    for (size_t i = 1; i < p.size(); ++i) rdp.push_back(Rat(static_cast<long>(i)) * rp[i]);
    Rat r0 = seed.residue();
    if (eval_rat_poly(rp, r0) != 0)
        throw newton_error(newton_error::kind::bad_seed,
                           "residue of P at residue(seed) is nonzero");
    if (eval_rat_poly(rdp, r0) == 0)
        throw newton_error(newton_error::kind::non_simple_root,
                           "residue derivative vanishes at the seed");

    SeriesPolynomial dp = derivative(p);
    HahnSeries x = seed.with_floor(std::nullopt);
    bool truncated = seed.precision_floor().has_value();
    if (iterates) iterates->push_back(x);
    Norm residual_norm = eval_polynomial(p, x).valuation();

    for (int step = 0; step < 64; ++step) {
        HahnSeries value = eval_polynomial(p, x);
        Norm v = value.valuation();
        if (Norm::compare(v, Norm(floor)) <= 0) {
            // residual check on every successful return: asserted, not assumed
            if (Norm::compare(eval_polynomial(p, x).valuation(), Norm(floor)) > 0)
                throw newton_error(newton_error::kind::non_convergence, "residual check failed");
            return truncated ? x.with_floor(floor) : x;
        }
        if (step > 0 && Norm::compare(v, residual_norm) >= 0)
            throw newton_error(newton_error::kind::non_convergence,
                               "residual valuation failed to strictly decrease");
        residual_norm = v;

        HahnSeries deriv = eval_polynomial(dp, x);
        // correction accurate below floor: |delta_err| < |P(x)| * f <= floor
        Value f = min_value(Value(), floor * v.value().inverse());
        HahnSeries delta = value * invert(deriv, f).with_floor(std::nullopt);
        HahnSeries next = x - delta;
        HahnSeries cut = next.truncated_below(floor).with_floor(std::nullopt);
        truncated = truncated || cut.term_count() != next.term_count();
        x = std::move(cut);
        if (iterates) iterates->push_back(x);
    }
    throw newton_error(newton_error::kind::non_convergence, "iteration limit reached");
}

Norm discreteness_gap(const Field& f) {
    size_t r = f.group().rank();
    if (r == 0) return Norm::zero();
    if (r >= 2) return Norm::one();
    Value g = f.group().basis()[0];
    if (Value::compare(g, Value()) > 0) g = g.inverse();
    return Norm(g);
}

}  // namespace mvf
