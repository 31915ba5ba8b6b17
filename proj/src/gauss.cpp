#include "mvf/gauss.hpp"

#include <cctype>

#include "mvf/errors.hpp"

namespace mvf {

void GaussElement::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussElement GaussElement::from_coeffs(std::vector<HahnSeries> coeffs) {
    GaussElement g;
    g.coeffs_ = std::move(coeffs);
    g.trim();
    return g;
}

GaussElement GaussElement::constant(HahnSeries c) {
    return from_coeffs({std::move(c)});
}

GaussElement GaussElement::variable(const FieldPtr& field) {
    return from_coeffs({HahnSeries::zero(field), HahnSeries::constant(field, 1)});
}

HahnSeries GaussElement::coeff(size_t i, const FieldPtr& field) const {
    return i < coeffs_.size() ? coeffs_[i] : HahnSeries::zero(field);
}

Norm GaussElement::gauss_norm() const {
    Norm n;
    for (const auto& c : coeffs_) n = max_norm(n, c.valuation());
    return n;
}

GaussElement operator+(const GaussElement& a, const GaussElement& b) {
    std::vector<HahnSeries> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < out.size(); ++i) {
        if (i < a.coeffs_.size() && i < b.coeffs_.size())
            out[i] = a.coeffs_[i] + b.coeffs_[i];
        else
            out[i] = i < a.coeffs_.size() ? a.coeffs_[i] : b.coeffs_[i];
    }
    return GaussElement::from_coeffs(std::move(out));
}

GaussElement GaussElement::operator-() const {
    GaussElement g = *this;
    for (auto& c : g.coeffs_) c = -c;
    return g;
}

GaussElement operator-(const GaussElement& a, const GaussElement& b) {
    return a + (-b);
}

GaussElement operator*(const GaussElement& a, const GaussElement& b) {
    if (a.is_zero() || b.is_zero()) return GaussElement();
    std::vector<HahnSeries> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                                HahnSeries::zero(a.coeffs_[0].field()
                                                     ? a.coeffs_[0].field()
                                                     : b.coeffs_[0].field()));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return GaussElement::from_coeffs(std::move(out));
}

GaussElement GaussElement::scaled(const Rat& c, const Value& gamma) const {
    GaussElement g = *this;
    for (auto& k : g.coeffs_) k = k.scaled(c, gamma);
    g.trim();
    return g;
}

std::string GaussElement::str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = coeffs_[i].str();
        if (i == 0) {
            s += c;
        } else {
            if (coeffs_[i].term_count() > 1)
                s += "(" + c + ")*";
            else if (c != "1")
                s += c + "*";
            s += "X";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

GaussElement GaussElement::parse(const FieldPtr& field, std::string_view text) {
    // split into top-level +/- chunks, then read [coeff *] X[^k] per chunk
    std::vector<HahnSeries> coeffs{HahnSeries::zero(field)};
    size_t pos = 0, depth = 0, start = 0;
    int sign = 1;
    bool any = false;
    auto flush = [&](std::string_view chunk, int s) {
        while (!chunk.empty() && std::isspace(static_cast<unsigned char>(chunk.front())))
            chunk.remove_prefix(1);
        while (!chunk.empty() && std::isspace(static_cast<unsigned char>(chunk.back())))
            chunk.remove_suffix(1);
        if (chunk.empty()) throw parse_error("empty term in Gauss literal: " + std::string(text));
        any = true;
        // find a top-level X
        size_t xpos = std::string_view::npos, d = 0;
        for (size_t i = 0; i < chunk.size(); ++i) {
            if (chunk[i] == '(') ++d;
            if (chunk[i] == ')') --d;
            if (d == 0 && chunk[i] == 'X') {
                xpos = i;
                break;
            }
        }
        HahnSeries c = HahnSeries::constant(field, s);
        size_t deg = 0;
        if (xpos == std::string_view::npos) {
            c = c * HahnSeries::parse(field, chunk);
        } else {
            deg = 1;
            std::string_view pre = chunk.substr(0, xpos);
            std::string_view post = chunk.substr(xpos + 1);
            while (!pre.empty() && std::isspace(static_cast<unsigned char>(pre.back())))
                pre.remove_suffix(1);
            if (!pre.empty()) {
                if (pre.back() != '*')
                    throw parse_error("expected '*' before X: " + std::string(chunk));
                pre.remove_suffix(1);
                while (!pre.empty() && std::isspace(static_cast<unsigned char>(pre.back())))
                    pre.remove_suffix(1);
                if (pre.size() >= 2 && pre.front() == '(' && pre.back() == ')')
                    pre = pre.substr(1, pre.size() - 2);
                c = c * HahnSeries::parse(field, pre);
            }
            while (!post.empty() && std::isspace(static_cast<unsigned char>(post.front())))
                post.remove_prefix(1);
            if (!post.empty()) {
                if (post.front() != '^')
                    throw parse_error("unexpected input after X: " + std::string(chunk));
                post.remove_prefix(1);
                deg = std::stoul(std::string(post));
            }
        }
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, HahnSeries::zero(field));
        coeffs[deg] += c;
    };
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-') && pos > start) {
            flush(text.substr(start, pos - start), sign);
            sign = ch == '-' ? -1 : 1;
            start = pos + 1;
        } else if (depth == 0 && ch == '-' && pos == start) {
            sign = -sign;
            start = pos + 1;
        }
    }
    flush(text.substr(start), sign);
    if (!any) throw parse_error("empty Gauss literal");
    return from_coeffs(std::move(coeffs));
}

}  // namespace mvf
