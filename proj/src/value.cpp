#include "mvf/value.hpp"

#include <algorithm>
#include <cmath>

#include "mvf/errors.hpp"

namespace mvf {

namespace {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

unsigned long to_ulong_exponent(const Int& e) {
    if (e < 0 || !e.fits_ulong_p())
        throw std::overflow_error("value exponent too large for exact comparison");
    return e.get_ui();
}

}  // namespace

void Value::push_factor(const Int& p, const Rat& e) {
    if (e != 0) factors_.emplace_back(p, e);
}

Value Value::from_sorted(std::vector<std::pair<Int, Rat>> fs) {
    Value v;
    v.factors_ = std::move(fs);
    return v;
}

Value Value::prime_power(const Int& p, const Rat& e) {
    if (!is_prime(p)) throw std::domain_error("not a prime: " + p.get_str());
    Value v;
    Rat ce = e;
    ce.canonicalize();
    v.push_factor(p, ce);
    return v;
}

Value Value::from_rational(const Rat& q) {
    if (q <= 0) throw std::domain_error("from_rational requires a positive rational");
    Value v;
    auto factor_into = [&v](Int n, int sign) {
        // trial division; the final remainder > 1 is prime
        auto add = [&v, sign](const Int& p, unsigned long k) {
            v *= Value::prime_power(p, Rat(static_cast<long>(k) * sign));
        };
        unsigned long k = 0;
        while (n % 2 == 0) { n /= 2; ++k; }
        if (k) add(2, k);
        Int d = 3;
        while (d * d <= n) {
            k = 0;
            while (n % d == 0) { n /= d; ++k; }
            if (k) add(d, k);
            d += 2;
        }
        if (n > 1) add(n, 1);
    };
    factor_into(q.get_num(), +1);
    factor_into(q.get_den(), -1);
    return v;
}

bool Value::is_rational() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const auto& f) { return f.second.get_den() == 1; });
}

Rat Value::to_rational() const {
    Rat q = 1;
    for (const auto& [p, e] : factors_) {
        if (e.get_den() != 1) throw std::domain_error("value is irrational: " + str());
        Int power;
        Int num = e.get_num();
        bool neg = num < 0;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), to_ulong_exponent(neg ? Int(-num) : num));
        if (neg)
            q /= Rat(power);
        else
            q *= Rat(power);
    }
    q.canonicalize();
    return q;
}

Value Value::inverse() const {
    std::vector<std::pair<Int, Rat>> fs;
    fs.reserve(factors_.size());
    for (const auto& [p, e] : factors_) fs.emplace_back(p, Rat(-e));
    return from_sorted(std::move(fs));
}

Value Value::pow(const Rat& e) const {
    if (e == 0) return Value();
    std::vector<std::pair<Int, Rat>> fs;
    fs.reserve(factors_.size());
    for (const auto& [p, f] : factors_) {
        Rat g = f * e;
        g.canonicalize();
        fs.emplace_back(p, g);
    }
    return from_sorted(std::move(fs));
}

Value operator*(const Value& a, const Value& b) {
    std::vector<std::pair<Int, Rat>> fs;
    fs.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
        if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
            fs.push_back(*ia++);
        } else if (ia == a.factors_.end() || ib->first < ia->first) {
            fs.push_back(*ib++);
        } else {
            Rat e = ia->second + ib->second;
            e.canonicalize();
            if (e != 0) fs.emplace_back(ia->first, e);
            ++ia, ++ib;
        }
    }
    return Value::from_sorted(std::move(fs));
}

int Value::compare(const Value& a, const Value& b) {
    if (a.factors_ == b.factors_) return 0;
    // fast filter: compare logarithms in doubles with a conservative
    // error bound; only near-ties fall through to the exact path
    {
        double s = 0, scale = 0;
        auto ia = a.factors_.begin(), ib = b.factors_.begin();
        while (ia != a.factors_.end() || ib != b.factors_.end()) {
            double e;
            const Int* p;
            if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
                e = ia->second.get_d();
                p = &ia->first;
                ++ia;
            } else if (ia == a.factors_.end() || ib->first < ia->first) {
                e = -ib->second.get_d();
                p = &ib->first;
                ++ib;
            } else {
                e = ia->second.get_d() - ib->second.get_d();
                p = &ia->first;
                ++ia, ++ib;
            }
            double term = e * std::log(p->get_d());
            s += term;
            scale += std::abs(term);
        }
        double eps = 1e-11 * (scale + 1.0);
        if (std::isfinite(s) && std::isfinite(scale)) {
            if (s > eps) return 1;
            if (s < -eps) return -1;
        }
    }
    Value d = a * b.inverse();
    if (d.factors_.empty()) return 0;
    // lcm of exponent denominators
    Int n = 1;
    for (const auto& [p, e] : d.factors_) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), e.get_den().get_mpz_t());
    Int num = 1, den = 1;
    for (const auto& [p, e] : d.factors_) {
        Int k = e.get_num() * (n / e.get_den());
        Int power;
        bool neg = k < 0;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), to_ulong_exponent(neg ? Int(-k) : k));
        (neg ? den : num) *= power;
    }
    return cmp(num, den) < 0 ? -1 : (cmp(num, den) > 0 ? 1 : 0);
}

std::pair<Rat, Value> Value::split_rational() const {
    Rat q = 1;
    std::vector<std::pair<Int, Rat>> reduced;
    for (const auto& [p, e] : factors_) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
        Rat frac = e - Rat(fl);
        frac.canonicalize();
        if (fl != 0) {
            Int power;
            bool neg = fl < 0;
            mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), to_ulong_exponent(neg ? Int(-fl) : fl));
            if (neg)
                q /= Rat(power);
            else
                q *= Rat(power);
        }
        if (frac != 0) reduced.emplace_back(p, frac);
    }
    q.canonicalize();
    return {q, from_sorted(std::move(reduced))};
}

int Value::structural_compare(const Value& a, const Value& b) {
    size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = cmp(a.factors_[i].first, b.factors_[i].first)) return c;
        if (int c = cmp(a.factors_[i].second, b.factors_[i].second)) return c;
    }
    if (a.factors_.size() != b.factors_.size())
        return a.factors_.size() < b.factors_.size() ? -1 : 1;
    return 0;
}

double Value::to_double() const {
    double r = 1.0;
    for (const auto& [p, e] : factors_) r *= std::pow(p.get_d(), e.get_d());
    return r;
}

std::string Value::str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : factors_) {
        if (!s.empty()) s += " * ";
        s += p.get_str();
        if (e != 1) s += "^" + rat_str(e);
    }
    return s;
}

Value Value::parse(std::string_view text) {
    auto trim = [](std::string_view sv) {
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
        return sv;
    };
    Value v;
    std::string_view rest = text;
    bool any = false;
    while (true) {
        size_t star = rest.find('*');
        std::string_view tok = trim(star == std::string_view::npos ? rest : rest.substr(0, star));
        if (tok.empty()) throw parse_error("empty factor in value literal: " + std::string(text));
        any = true;
        size_t caret = tok.find('^');
        if (caret == std::string_view::npos) {
            v *= Value::from_rational(parse_rational(tok));
        } else {
            Int p;
            if (p.set_str(std::string(trim(tok.substr(0, caret))), 10) != 0)
                throw parse_error("malformed prime in value literal: " + std::string(tok));
            Rat e = parse_rational(trim(tok.substr(caret + 1)));
            if (e == 0) throw parse_error("zero exponent in value literal: " + std::string(tok));
            v *= Value::prime_power(p, e);
        }
        if (star == std::string_view::npos) break;
        rest = rest.substr(star + 1);
    }
    if (!any) throw parse_error("empty value literal");
    return v;
}

Value max_value(const Value& a, const Value& b) {
    return Value::compare(a, b) >= 0 ? a : b;
}

Value min_value(const Value& a, const Value& b) {
    return Value::compare(a, b) <= 0 ? a : b;
}

const Value& Norm::value() const {
    if (!v_) throw std::domain_error("zero norm has no value-group element");
    return *v_;
}

int Norm::compare(const Norm& a, const Norm& b) {
    if (a.is_zero() && b.is_zero()) return 0;
    if (a.is_zero()) return -1;
    if (b.is_zero()) return 1;
    return Value::compare(*a.v_, *b.v_);
}

Norm operator*(const Norm& a, const Norm& b) {
    if (a.is_zero() || b.is_zero()) return Norm();
    return Norm(a.value() * b.value());
}

Norm max_norm(const Norm& a, const Norm& b) {
    return Norm::compare(a, b) >= 0 ? a : b;
}

}  // namespace mvf
