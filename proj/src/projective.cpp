#include "mvf/projective.hpp"

#include <algorithm>
#include <cctype>

#include "mvf/errors.hpp"

namespace mvf {

IntPolynomial::IntPolynomial(std::vector<std::string> vars, Monomials monos)
    : vars_(std::move(vars)) {
    for (auto& [e, c] : monos) {
        if (e.size() != vars_.size()) throw std::invalid_argument("monomial arity mismatch");
        add_mono(e, c);
    }
}

void IntPolynomial::add_mono(const std::vector<unsigned>& e, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = monos_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) monos_.erase(it);
    }
}

IntPolynomial IntPolynomial::variable(const std::string& name) {
    IntPolynomial p;
    p.vars_ = {name};
    p.monos_.emplace(std::vector<unsigned>{1}, Int(1));
    return p;
}

IntPolynomial IntPolynomial::constant(const Int& c) {
    IntPolynomial p;
    if (c != 0) p.monos_.emplace(std::vector<unsigned>{}, c);
    return p;
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::aligned(const IntPolynomial& a,
                                                               const IntPolynomial& b) {
    std::vector<std::string> vars = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    auto remap = [&vars](const IntPolynomial& p) {
        std::vector<size_t> where(p.vars_.size());
        for (size_t i = 0; i < p.vars_.size(); ++i)
            where[i] = std::find(vars.begin(), vars.end(), p.vars_[i]) - vars.begin();
        IntPolynomial q;
        q.vars_ = vars;
        for (const auto& [e, c] : p.monos_) {
            std::vector<unsigned> ne(vars.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
            q.monos_.emplace(std::move(ne), c);
        }
        return q;
    };
    return {remap(a), remap(b)};
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    auto [x, y] = IntPolynomial::aligned(a, b);
    for (const auto& [e, c] : y.monos_) x.add_mono(e, c);
    return x;
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial p = *this;
    for (auto& [e, c] : p.monos_) c = -c;
    return p;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    return a + (-b);
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    auto [x, y] = IntPolynomial::aligned(a, b);
    IntPolynomial r;
    r.vars_ = x.vars_;
    for (const auto& [ea, ca] : x.monos_) {
        for (const auto& [eb, cb] : y.monos_) {
            std::vector<unsigned> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_mono(e, ca * cb);
        }
    }
    return r;
}

IntPolynomial IntPolynomial::pow(unsigned k) const {
    IntPolynomial r = constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

unsigned IntPolynomial::degree_in(size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : monos_)
        if (var < e.size()) d = std::max(d, e[var]);
    return d;
}

std::string IntPolynomial::str() const {
    if (monos_.empty()) return "0";
    // order terms by their printed body so printing does not depend on
    // the internal variable order (keeps parse/str idempotent)
    std::vector<std::pair<std::string, Int>> terms;
    for (const auto& [e, c] : monos_) {
        std::string body;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!body.empty()) body += "*";
            body += vars_[i];
            if (e[i] > 1) body += "^" + std::to_string(e[i]);
        }
        terms.emplace_back(std::move(body), c);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.empty() != b.first.empty()) return b.first.empty();  // constants last
        return a.first < b.first;
    });
    std::string s;
    for (const auto& [body, c] : terms) {
        Int ac = abs(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (body.empty()) {
            s += ac.get_str();
        } else {
            if (ac != 1) s += ac.get_str() + "*";
            s += body;
        }
    }
    return s;
}

// ---- infix parser ----

namespace {

struct PolyParser {
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
            throw parse_error(std::string("expected '") + c + "' in polynomial: " + std::string(text));
    }

    IntPolynomial expr() {
        bool neg = accept('-');
        IntPolynomial acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }
    IntPolynomial term() {
        IntPolynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }
    IntPolynomial factor() {
        IntPolynomial base = atom();
        if (accept('^')) {
            unsigned k = uint_lit();
            base = base.pow(k);
        }
        return base;
    }
    unsigned uint_lit() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw parse_error("expected an integer in polynomial");
        return static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
    }
    IntPolynomial atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            IntPolynomial e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return IntPolynomial::constant(Int(std::string(text.substr(start, pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
            return IntPolynomial::variable(std::string(text.substr(start, pos - start)));
        }
        throw parse_error("unexpected character in polynomial: " + std::string(text));
    }
};

}  // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) {
    PolyParser p{text};
    IntPolynomial e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input in polynomial: " + std::string(text));
    return e;
}

HomPolynomial homogenize(const IntPolynomial& p) {
    HomPolynomial h;
    h.pair_degrees.resize(p.arity());
    for (size_t i = 0; i < p.arity(); ++i) h.pair_degrees[i] = p.degree_in(i);
    for (const auto& [e, c] : p.monomials()) h.monomials.emplace(e, c);
    return h;
}

IntPolynomial dehomogenize(const HomPolynomial& h, const std::vector<std::string>& vars) {
    IntPolynomial::Monomials monos;
    for (const auto& [e, c] : h.monomials) monos.emplace(e, c);
    return IntPolynomial(vars, std::move(monos));
}

std::string HomPolynomial::str(const std::vector<std::string>& vars) const {
    if (monomials.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : monomials) {
        if (!s.empty()) s += " + ";
        s += c.get_str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i]) s += "*" + vars[i] + "^" + std::to_string(e[i]);
            unsigned star = pair_degrees[i] - e[i];
            if (star) s += "*" + vars[i] + "s^" + std::to_string(star);
        }
    }
    return s;
}

}  // namespace mvf
