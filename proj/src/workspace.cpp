#include "mvf/workspace.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mvf/errors.hpp"

namespace mvf {

namespace {

std::string_view trim(std::string_view sv) {
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
    return sv;
}

std::vector<std::string_view> split_top_level(std::string_view sv, char delim) {
    std::vector<std::string_view> out;
    long depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < sv.size(); ++i) {
        char c = sv[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == delim && depth == 0) {
            out.push_back(trim(sv.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(sv.substr(start)));
    return out;
}

// "name(body)" -> body, when the head matches
bool match_call(std::string_view sv, std::string_view head, std::string_view& body) {
    if (sv.size() < head.size() + 2 || sv.substr(0, head.size()) != head) return false;
    std::string_view rest = trim(sv.substr(head.size()));
    if (rest.empty() || rest.front() != '(' || rest.back() != ')') return false;
    body = trim(rest.substr(1, rest.size() - 2));
    return true;
}

std::string lower(std::string_view sv) {
    std::string s(sv);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Verdict parse_verdict(std::string_view sv) {
    std::string s = lower(trim(sv));
    if (s == "yes") return Verdict::yes;
    if (s == "no") return Verdict::no;
    if (s == "unknown") return Verdict::unknown;
    throw parse_error("expected yes|no|unknown, got: " + std::string(sv));
}

}  // namespace

Workspace Workspace::load(const std::vector<std::string>& paths) {
    Workspace ws;
    ws.formulas_.emplace("phi", Formula::phi());
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw parse_error("cannot open config file: " + path);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            try {
                ws.add_line(line);
            } catch (const std::exception& e) {
                throw parse_error(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    return ws;
}

Workspace Workspace::from_text(const std::string& text) {
    Workspace ws;
    ws.formulas_.emplace("phi", Formula::phi());
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) ws.add_line(line);
    return ws;
}

void Workspace::add_line(const std::string& raw) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    size_t eq = line.find('=');
    // '=>' belongs to twist bodies, so look for a bare '=' only before any '('
    size_t paren = line.find('(');
    if (eq == std::string::npos || (paren != std::string::npos && eq > paren))
        throw parse_error("config lines have the form `kind name = expression`");
    std::string_view head = trim(line.substr(0, eq));
    std::string_view expr = trim(line.substr(eq + 1));
    size_t space = head.find_first_of(" \t");
    if (space == std::string_view::npos) throw parse_error("missing kind or name before '='");
    std::string kind = lower(trim(head.substr(0, space)));
    std::string name(trim(head.substr(space)));
    if (name.empty() || name.find_first_of(" \t") != std::string::npos)
        throw parse_error("malformed entry name: " + name);

    if (kind == "group") return add_group(name, expr);
    if (kind == "grouptheory") return add_group_theory(name, expr);
    if (kind == "field") return add_field(name, expr);
    if (kind == "auto") return add_auto(name, expr);
    if (kind == "formula") return add_formula(name, expr);
    if (kind == "witness") return add_witness(name, expr);
    throw parse_error("unknown config kind: " + kind);
}

void Workspace::add_group(const std::string& name, std::string_view expr) {
    if (groups_.count(name)) throw parse_error("duplicate group name: " + name);
    if (expr.size() < 2 || expr.front() != '<' || expr.back() != '>')
        throw parse_error("group syntax: group g = <2, 3>");
    std::vector<Value> gens;
    for (auto part : split_top_level(expr.substr(1, expr.size() - 2), ','))
        gens.push_back(Value::parse(part));
    groups_.emplace(name, ConcreteGroup(std::move(gens)));
}

void Workspace::add_group_theory(const std::string& name, std::string_view expr) {
    if (group_theories_.count(name)) throw parse_error("duplicate grouptheory name: " + name);
    std::string s = lower(trim(expr));
    if (s == "trivial") {
        group_theories_.emplace(name, GroupTheory::trivial());
        return;
    }
    if (s == "discrete") {
        group_theories_.emplace(name, GroupTheory::discrete_regular());
        return;
    }
    auto words = split_top_level(expr, ' ');
    if (words.empty() || lower(words[0]) != "dense")
        throw parse_error("grouptheory syntax: trivial | discrete | dense divisible | dense "
                          "default=<k|inf> [except p:k, ...]");
    PrimeQuotient def = PrimeQuotient::finite(0);
    std::map<Int, PrimeQuotient> except;
    auto parse_quot = [](std::string_view sv) {
        std::string t = lower(trim(sv));
        if (t == "inf") return PrimeQuotient::inf();
        return PrimeQuotient::finite(static_cast<unsigned>(std::stoul(t)));
    };
    for (size_t i = 1; i < words.size(); ++i) {
        std::string w = lower(words[i]);
        if (w.empty()) continue;
        if (w == "divisible") {
            def = PrimeQuotient::finite(0);
        } else if (w.rfind("default=", 0) == 0) {
            def = parse_quot(w.substr(8));
        } else if (w == "except") {
            std::string rest;
            for (size_t j = i + 1; j < words.size(); ++j) rest += std::string(words[j]) + " ";
            for (auto part : split_top_level(rest, ',')) {
                if (part.empty()) continue;
                auto kv = split_top_level(part, ':');
                if (kv.size() != 2) throw parse_error("except syntax: except 3:0, 5:inf");
                except.emplace(Int(std::string(kv[0])), parse_quot(kv[1]));
            }
            break;
        } else {
            throw parse_error("unexpected grouptheory token: " + w);
        }
    }
    group_theories_.emplace(name, GroupTheory::dense(def, std::move(except)));
}

GroupTheory Workspace::resolve_group_theory(const std::string& name) const {
    auto git = groups_.find(name);
    if (git != groups_.end()) return classify_group(git->second);
    auto tit = group_theories_.find(name);
    if (tit != group_theories_.end()) return tit->second;
    throw parse_error("unknown group or grouptheory: " + name);
}

FieldTheory Workspace::parse_field_theory(std::string_view text) const {
    std::string_view sv = trim(text);
    std::string_view body;
    if (match_call(sv, "hahn", body)) {
        auto parts = split_top_level(body, ',');
        if (parts.size() != 2) throw parse_error("hahn syntax: hahn(<residue>, <group>)");
        return FieldTheory::hahn(parse_field_theory(parts[0]),
                                 resolve_group_theory(std::string(parts[1])));
    }
    std::string s = lower(sv);
    if (s == "q") return FieldTheory::number_field("Q");
    if (s == "acf0") return FieldTheory::acf0();
    if (s == "rcf") return FieldTheory::rcf();
    if (s == "pseudofinite") return FieldTheory::pseudo_finite();
    if (match_call(sv, "padic", body) || match_call(sv, "Qp", body))
        return FieldTheory::padic_closed(Int(std::string(trim(body))));
    if (match_call(sv, "laurent", body)) return FieldTheory::laurent_over(std::string(trim(body)));
    if (match_call(sv, "numberfield", body))
        return FieldTheory::number_field(std::string(trim(body)));
    if (match_call(sv, "custom", body)) {
        auto parts = split_top_level(body, ',');
        if (parts.empty() || parts[0].empty()) throw parse_error("custom needs a name");
        TheoryFlags flags;
        for (size_t i = 1; i < parts.size(); ++i) {
            auto kv = split_top_level(parts[i], '=');
            if (kv.size() != 2) throw parse_error("custom flag syntax: large=yes|no|unknown");
            std::string key = lower(kv[0]);
            if (key == "large")
                flags.is_large = parse_verdict(kv[1]);
            else if (key == "fixedpoint")
                flags.is_fixed_point = parse_verdict(kv[1]);
            else
                throw parse_error("unknown custom flag: " + key);
        }
        return FieldTheory::custom(std::string(parts[0]), flags);
    }
    throw parse_error("unknown field theory expression: " + std::string(text));
}

void Workspace::add_field(const std::string& name, std::string_view expr) {
    if (fields_.count(name)) throw parse_error("duplicate field name: " + name);
    if (expr.size() < 2 || expr.front() != '(' || expr.back() != ')')
        throw parse_error("field syntax: field K = (group: g, residue: Q[, roots: yes])");
    std::string group_name;
    std::string dg_text, residue_text, roots_text;
    for (auto part : split_top_level(expr.substr(1, expr.size() - 2), ',')) {
        auto kv = split_top_level(part, ':');
        if (kv.size() != 2) throw parse_error("field entries are key: value pairs");
        std::string key = lower(kv[0]);
        if (key == "group")
            group_name = std::string(kv[1]);
        else if (key == "residue")
            residue_text = std::string(kv[1]);
        else if (key == "dg")
            dg_text = std::string(kv[1]);
        else if (key == "roots")
            roots_text = lower(kv[1]);
        else
            throw parse_error("unknown field key: " + key);
    }
    if (residue_text.empty()) throw parse_error("field needs a residue");
    FieldTheory residue = parse_field_theory(residue_text);

    FieldEntry fe{MVFDescriptor::trivially_valued(residue), group_name,
                  roots_text == "yes" || roots_text == "true", false};
    if (!dg_text.empty()) {
        if (!group_name.empty())
            throw parse_error("a field is declared by either dg or group, not both");
        if (trim(dg_text) == "0") {
            fe.descriptor = MVFDescriptor::trivially_valued(residue);
        } else {
            Value dg = Value::parse(dg_text);
            if (Value::compare(dg, Value()) >= 0)
                throw parse_error("discreteness gap must lie in (0,1): " + dg_text);
            fe.descriptor = MVFDescriptor::discrete(dg, residue);
        }
    } else {
        if (group_name.empty()) throw parse_error("field needs a group or a dg");
        GroupTheory gt = resolve_group_theory(group_name);
        if (gt.is_dense()) {
            fe.descriptor = MVFDescriptor::dense(gt, residue);
        } else if (gt.kind() == GroupTheory::Kind::discrete_regular) {
            // a concrete discrete field: its gap comes from the lattice
            auto git = groups_.find(group_name);
            if (git == groups_.end())
                throw parse_error("discrete field declarations need a concrete group or a dg");
            Norm gap = discreteness_gap(Field(git->second, false));
            fe.descriptor = MVFDescriptor::discrete(gap.value(), residue);
        } else {
            fe.descriptor = MVFDescriptor::trivially_valued(residue);
        }
        fe.concrete = groups_.count(group_name) > 0;
    }
    fields_.emplace(name, std::move(fe));
}

void Workspace::add_auto(const std::string& name, std::string_view expr) {
    if (autos_.count(name)) throw parse_error("duplicate auto name: " + name);
    std::string_view body;
    if (lower(expr) == "identity") {
        autos_.emplace(name, IdentityAuto{});
        return;
    }
    if (match_call(expr, "twist", body)) {
        TwistSpec spec;
        for (auto part : split_top_level(body, ',')) {
            size_t arrow = part.find("=>");
            if (arrow == std::string_view::npos) throw parse_error("twist syntax: twist(2 => -1)");
            spec.generator_values.emplace_back(Value::parse(trim(part.substr(0, arrow))),
                                               parse_rational(trim(part.substr(arrow + 2))));
        }
        autos_.emplace(name, std::move(spec));
        return;
    }
    if (match_call(expr, "gauss", body)) {
        auto parts = split_top_level(body, ',');
        if (parts.size() != 2) throw parse_error("gauss syntax: gauss(<auto>, a = <series>)");
        GaussSpec spec;
        spec.base_auto = std::string(parts[0]);
        auto it = autos_.find(spec.base_auto);
        if (it == autos_.end()) throw parse_error("unknown base auto: " + spec.base_auto);
        if (std::holds_alternative<GaussSpec>(it->second))
            throw parse_error("gauss lifts cannot stack");
        std::string_view rhs = parts[1];
        size_t eq = rhs.find('=');
        if (eq == std::string_view::npos || lower(trim(rhs.substr(0, eq))) != "a")
            throw parse_error("gauss syntax: gauss(<auto>, a = <series>)");
        spec.a_literal = std::string(trim(rhs.substr(eq + 1)));
        autos_.emplace(name, std::move(spec));
        return;
    }
    throw parse_error("auto syntax: identity | twist(g => u, ...) | gauss(auto, a = series)");
}

void Workspace::add_formula(const std::string& name, std::string_view expr) {
    if (formulas_.count(name)) throw parse_error("duplicate formula name: " + name);
    formulas_.emplace(name, Formula::parse(expr));
}

void Workspace::add_witness(const std::string& name, std::string_view expr) {
    if (witnesses_.count(name)) throw parse_error("duplicate witness name: " + name);
    WitnessEntry we;
    std::string_view body;
    if (match_call(expr, "grid", body)) {
        auto parts = split_top_level(body, ',');
        if (parts.size() != 2) throw parse_error("witness grid syntax: grid(depth, height)");
        we.is_grid = true;
        we.depth = std::stol(std::string(parts[0]));
        we.height = std::stol(std::string(parts[1]));
    } else if (expr.size() >= 2 && expr.front() == '{' && expr.back() == '}') {
        for (auto part : split_top_level(expr.substr(1, expr.size() - 2), ';'))
            if (!part.empty()) we.point_literals.emplace_back(part);
        if (we.point_literals.empty()) throw parse_error("empty witness list");
    } else {
        throw parse_error("witness syntax: grid(d, h) | { [x : y] ; ... }");
    }
    witnesses_.emplace(name, std::move(we));
}

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) throw parse_error(std::string("unknown ") + kind + ": " + name);
    return it->second;
}

}  // namespace

const ConcreteGroup& Workspace::group(const std::string& n) const { return lookup(groups_, n, "group"); }
const GroupTheory& Workspace::group_theory(const std::string& n) const {
    return lookup(group_theories_, n, "grouptheory");
}
const Workspace::FieldEntry& Workspace::field(const std::string& n) const {
    return lookup(fields_, n, "field");
}
const Workspace::AutoEntry& Workspace::automorphism(const std::string& n) const {
    return lookup(autos_, n, "auto");
}
const Formula& Workspace::formula(const std::string& n) const {
    return lookup(formulas_, n, "formula");
}
const Workspace::WitnessEntry& Workspace::witness(const std::string& n) const {
    return lookup(witnesses_, n, "witness");
}

FieldPtr Workspace::concrete_field(const std::string& field_name) const {
    const FieldEntry& fe = field(field_name);
    if (!fe.concrete)
        throw parse_error("field " + field_name +
                          " is symbolic; concrete commands need a concrete group");
    return Field::make(group(fe.group_name), fe.roots);
}

FieldAuto Workspace::bind_field_auto(const std::string& auto_name, const FieldPtr& field) const {
    if (auto_name.empty()) return IdentityAuto{};
    const AutoEntry& ae = automorphism(auto_name);
    if (std::holds_alternative<IdentityAuto>(ae)) return IdentityAuto{};
    if (const auto* tw = std::get_if<TwistSpec>(&ae))
        return TwistAuto(field->group(), tw->generator_values);
    throw parse_error("auto " + auto_name + " is a Gauss lift, not a field automorphism");
}

Workspace::AnyStructure Workspace::make_structure(const std::string& field_name,
                                                  const std::string& auto_name) const {
    FieldPtr fp = concrete_field(field_name);
    if (auto_name.empty()) return HahnDiff{HahnOps{fp}, IdentityAuto{}};
    const AutoEntry& ae = automorphism(auto_name);
    if (const auto* gs = std::get_if<GaussSpec>(&ae)) {
        FieldAuto base = bind_field_auto(gs->base_auto, fp);
        HahnSeries a = HahnSeries::parse(fp, gs->a_literal);
        return gauss_extend(fp, std::move(base), a);
    }
    return HahnDiff{HahnOps{fp}, bind_field_auto(auto_name, fp)};
}

}  // namespace mvf
