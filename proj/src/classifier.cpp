#include "mvf/classifier.hpp"

#include <stdexcept>

namespace mvf {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

namespace {

void note(Trace* trace, const std::string& line) {
    if (trace) trace->push_back(line);
}

FieldTheory::Node base_node(BaseTag tag, std::string param, TheoryFlags flags = {}) {
    FieldTheory::Node n;
    n.hahn = false;
    n.tag = tag;
    n.param = std::move(param);
    n.custom_flags = flags;
    return n;
}

}  // namespace

FieldTheory FieldTheory::acf0() {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::acf0, "")));
}
FieldTheory FieldTheory::rcf() {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::rcf, "")));
}
FieldTheory FieldTheory::padic_closed(const Int& p) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw std::domain_error("PadicClosed needs a prime: " + p.get_str());
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::padic_closed, p.get_str())));
}
FieldTheory FieldTheory::laurent_over(const std::string& inner_name) {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::laurent_over, inner_name)));
}
FieldTheory FieldTheory::number_field(const std::string& name) {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::number_field, name)));
}
FieldTheory FieldTheory::pseudo_finite() {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::pseudo_finite, "")));
}
FieldTheory FieldTheory::custom(const std::string& name, TheoryFlags flags) {
    return FieldTheory(std::make_shared<const Node>(base_node(BaseTag::custom, name, flags)));
}

FieldTheory FieldTheory::hahn(FieldTheory inner, GroupTheory group) {
    if (group.is_trivial())
        throw std::domain_error("Hahn layers carry non-trivial regular group theories only");
    Node n;
    n.hahn = true;
    n.inner = inner.n_;
    n.group = std::move(group);
    return FieldTheory(std::make_shared<const Node>(std::move(n)));
}

TheoryFlags FieldTheory::flags() const {
    if (n_->hahn) return {Verdict::yes, Verdict::yes};  // large; fixed point by div. extension
    switch (n_->tag) {
        case BaseTag::acf0:
        case BaseTag::rcf:
        case BaseTag::padic_closed:
        case BaseTag::laurent_over: return {Verdict::yes, Verdict::yes};
        case BaseTag::number_field: return {Verdict::no, Verdict::no};
        case BaseTag::pseudo_finite: return {Verdict::yes, Verdict::no};
        case BaseTag::custom: return n_->custom_flags;
    }
    return {};
}

bool FieldTheory::equal(const Node& a, const Node& b) {
    if (a.hahn != b.hahn) return false;
    if (a.hahn) return a.group == b.group && equal(*a.inner, *b.inner);
    return a.tag == b.tag && a.param == b.param && a.custom_flags == b.custom_flags;
}

std::string FieldTheory::str() const {
    if (n_->hahn) return "hahn(" + inner().str() + ", " + n_->group.str() + ")";
    switch (n_->tag) {
        case BaseTag::acf0: return "ACF0";
        case BaseTag::rcf: return "RCF";
        case BaseTag::padic_closed: return "Padic(" + n_->param + ")";
        case BaseTag::laurent_over: return "Laurent(" + n_->param + ")";
        case BaseTag::number_field: return n_->param == "Q" ? "Q" : "NumberField(" + n_->param + ")";
        case BaseTag::pseudo_finite: return "PseudoFinite";
        case BaseTag::custom: return "Custom(" + n_->param + ")";
    }
    return "?";
}

FieldTheory canonicalize(const FieldTheory& f, Trace* trace) {
    if (!f.is_hahn()) return f;
    FieldTheory inner = canonicalize(f.inner(), trace);
    if (is_divisible(f.group())) {
        if (inner.is_hahn()) {
            note(trace, "R1: hahn(" + inner.str() + ", divisible) ~> " + inner.str());
            return inner;
        }
        if (inner.flags().is_fixed_point == Verdict::yes) {
            note(trace, "R2: hahn(" + inner.str() + ", divisible) ~> " + inner.str() +
                            " (fixed point)");
            return inner;
        }
    }
    return FieldTheory::hahn(inner, f.group());
}

namespace {

Verdict any_yes_all_no(std::initializer_list<Verdict> vs) {
    bool all_no = true;
    for (Verdict v : vs) {
        if (v == Verdict::yes) return Verdict::yes;
        if (v != Verdict::no) all_no = false;
    }
    return all_no ? Verdict::no : Verdict::unknown;
}

bool core_catalog(BaseTag t) {
    return t != BaseTag::custom;
}

Verdict equiv_canonical(const FieldTheory& a, const FieldTheory& b, Trace* trace);

Verdict equiv_base_base(const FieldTheory& a, const FieldTheory& b, Trace* trace) {
    if (a.tag() == b.tag()) {
        switch (a.tag()) {
            case BaseTag::acf0:
            case BaseTag::rcf:
            case BaseTag::pseudo_finite: return Verdict::yes;
            case BaseTag::padic_closed:
                // different primes have different definable residue fields
                return a.param() == b.param() ? Verdict::yes : Verdict::no;
            case BaseTag::laurent_over:
            case BaseTag::number_field:
            case BaseTag::custom:
                if (a.param() == b.param() &&
                    (a.tag() != BaseTag::custom || a.flags() == b.flags()))
                    return Verdict::yes;
                break;
        }
    } else if (core_catalog(a.tag()) && core_catalog(b.tag())) {
        // the catalog tags are pairwise inequivalent: closure properties,
        // largeness and PAC-ness separate them in first order
        note(trace, "catalog: " + a.str() + " and " + b.str() + " are inequivalent base tags");
        return Verdict::no;
    }
    // theory-determined flags refute equivalence when they conflict
    TheoryFlags fa = a.flags(), fb = b.flags();
    auto conflict = [](Verdict x, Verdict y) {
        return (x == Verdict::yes && y == Verdict::no) || (x == Verdict::no && y == Verdict::yes);
    };
    if (conflict(fa.is_large, fb.is_large) || conflict(fa.is_fixed_point, fb.is_fixed_point)) {
        note(trace, "flag conflict between " + a.str() + " and " + b.str());
        return Verdict::no;
    }
    return Verdict::unknown;
}

Verdict equiv_base_hahn(const FieldTheory& base, const FieldTheory& h, Trace* trace) {
    TheoryFlags f = base.flags();
    // every Hahn expression is large and a fixed point (div. extension)
    if (f.is_large == Verdict::no) {
        note(trace, base.str() + " is not large, Hahn-series fields are");
        return Verdict::no;
    }
    if (f.is_fixed_point == Verdict::no) {
        note(trace, base.str() + " is not a fixed point, Hahn-series fields are");
        return Verdict::no;
    }
    if (base.tag() == BaseTag::pseudo_finite) {
        note(trace, "pseudofinite fields are PAC, Hahn-series fields are not");
        return Verdict::no;
    }
    if (base.tag() == BaseTag::acf0 || base.tag() == BaseTag::rcf) {
        // closures force divisible value groups
        if (!(h.group().is_dense() && is_divisible(h.group()))) {
            note(trace, base.str() + " forces a divisible value group");
            return Verdict::no;
        }
        Verdict e = equiv_canonical(base, canonicalize(h.inner(), trace), trace);
        note(trace,
             base.str() + " = hahn(l, divisible) iff l is the matching closure: " + verdict_str(e));
        return e;
    }
    if (base.tag() == BaseTag::padic_closed || base.tag() == BaseTag::laurent_over) {
        // the canonical definable valuation and its coarsenings exclude
        // dense non-divisible decompositions and pin the divisible case
        // to the residue theory
        if (h.group().is_dense()) {
            if (!is_divisible(h.group())) {
                note(trace, base.str() + " admits no dense non-divisible Hahn decomposition");
                return Verdict::no;
            }
            return equiv_canonical(base, canonicalize(h.inner(), trace), trace);
        }
        // a discrete layer may well be the same theory spelled out, e.g.
        // laurent(Q) and hahn(Q, discrete); the catalog cannot decide
        note(trace, base.str() + " vs a discrete Hahn layer: undecided");
        return Verdict::unknown;
    }
    return Verdict::unknown;
}

Verdict equiv_hahn_hahn(const FieldTheory& a, const FieldTheory& b, Trace* trace) {
    bool ge = equiv_groups(a.group(), b.group());
    Verdict ie = equiv_canonical(a.inner(), b.inner(), trace);
    // equivalent components give equivalent Hahn fields for any regular
    // groups (classical AKE over henselian complete fields)
    if (ge && ie == Verdict::yes) return Verdict::yes;

    if (!a.group().is_dense() || !b.group().is_dense()) {
        // the dense-group case analysis does not apply to discrete
        // layers, which offer no sound refutation here
        note(trace, "discrete Hahn layer: beyond the dense-case analysis");
        return Verdict::unknown;
    }

    bool a_div = is_divisible(a.group());
    bool b_div = is_divisible(b.group());
    if (!a_div && !b_div) {
        // both groups non-divisible: equivalence forces component-wise
        // matching
        if (!ge) {
            note(trace, "groups inequivalent and both non-divisible");
            return Verdict::no;
        }
        return ie;
    }
    if (!a_div && b_div) {
        // equivalence forces case (ii): inner' = whole left expression
        Verdict e = equiv_canonical(b.inner(), a, trace);
        note(trace, "mixed divisibility: reduces to " + b.inner().str() + " = " + a.str() + ": " +
                        verdict_str(e));
        return e;
    }
    if (a_div && !b_div) {
        Verdict e = equiv_canonical(a.inner(), b, trace);
        note(trace, "mixed divisibility: reduces to " + a.inner().str() + " = " + b.str() + ": " +
                        verdict_str(e));
        return e;
    }
    // both divisible: components match, or one side absorbs the other
    // as its residue theory
    Verdict e2 = equiv_canonical(b.inner(), a, trace);
    Verdict e3 = equiv_canonical(a.inner(), b, trace);
    return any_yes_all_no({ie, e2, e3});
}

Verdict equiv_canonical(const FieldTheory& a, const FieldTheory& b, Trace* trace) {
    if (a == b) return Verdict::yes;
    if (!a.is_hahn() && !b.is_hahn()) return equiv_base_base(a, b, trace);
    if (a.is_hahn() && b.is_hahn()) return equiv_hahn_hahn(a, b, trace);
    return a.is_hahn() ? equiv_base_hahn(b, a, trace) : equiv_base_hahn(a, b, trace);
}

}  // namespace

Verdict equiv_fields(const FieldTheory& a, const FieldTheory& b, Trace* trace) {
    return equiv_canonical(canonicalize(a, trace), canonicalize(b, trace), trace);
}

Verdict is_generating_pair(const GroupTheory& delta, const FieldTheory& l, Trace* trace) {
    if (!delta.is_dense())
        throw std::domain_error("generating pairs need a dense (non-trivial regular) group");
    if (!is_divisible(delta)) {
        note(trace, "generating: delta is not divisible (case i)");
        return Verdict::yes;
    }
    FieldTheory c = canonicalize(l, trace);
    if (c.is_hahn()) {
        const GroupTheory& inner_group = c.group();
        if (!inner_group.is_dense()) {
            // Laurent-type decomposition: only dense groups can witness a
            // violation of case (ii)
            note(trace, "generating: only a discrete-group decomposition exists");
            return Verdict::yes;
        }
        if (!is_divisible(inner_group)) {
            note(trace, "generating: no, " + l.str() + " decomposes with non-divisible group");
            return Verdict::no;
        }
        Verdict e = equiv_canonical(c.inner(), c, trace);
        if (e == Verdict::no) {
            note(trace, "generating: no, " + l.str() + " decomposes with divisible group and " +
                            c.inner().str() + " inequivalent to it");
            return Verdict::no;
        }
        return Verdict::unknown;
    }
    if (core_catalog(c.tag())) {
        note(trace, "generating: catalog base " + c.str() + " has no forbidden decomposition");
        return Verdict::yes;
    }
    if (c.flags().is_large == Verdict::no) {
        note(trace, "generating: " + c.str() + " is not large, so it is no Hahn-series field");
        return Verdict::yes;
    }
    return Verdict::unknown;
}

MVFDescriptor MVFDescriptor::dense(GroupTheory dense_group, FieldTheory residue) {
    if (!dense_group.is_dense())
        throw std::domain_error("dense descriptors need a dense group theory");
    return {std::move(dense_group), std::move(residue), std::nullopt};
}

MVFDescriptor MVFDescriptor::discrete(const Value& dg, FieldTheory residue) {
    if (Value::compare(dg, Value()) >= 0)
        throw std::domain_error("discreteness gap must lie in (0,1)");
    return {GroupTheory::discrete_regular(), std::move(residue), Norm(dg)};
}

MVFDescriptor MVFDescriptor::trivially_valued(FieldTheory residue) {
    return {GroupTheory::trivial(), std::move(residue), Norm::zero()};
}

std::string MVFDescriptor::str() const {
    std::string s = "(group: " + group.str() + ", residue: " + residue.str();
    if (dg) s += ", dg: " + dg->str();
    return s + ")";
}

std::string ClassDescriptor::str() const {
    return "C(" + delta.str() + ", " + l.str() + ")" + (shifted ? " shifted" : " unshifted") +
           (generating == Verdict::yes ? "" : " [generating: " + verdict_str(generating) + "]");
}

ClassDescriptor class_of(const MVFDescriptor& k, Trace* trace) {
    if (k.dg.has_value())
        throw std::domain_error("class_of handles dense descriptors; use `equivalent` for "
                                "discrete or trivially valued ones");
    if (!k.group.is_dense()) throw std::domain_error("class_of needs a dense value group");

    if (!is_divisible(k.group)) {
        FieldTheory l = canonicalize(k.residue, trace);
        note(trace, "unshifted: value group is non-divisible");
        return {k.group, l, false, Verdict::yes};
    }

    FieldTheory c = canonicalize(k.residue, trace);
    if (c.is_hahn() && c.group().is_dense()) {
        const GroupTheory& delta = c.group();
        FieldTheory l = c.inner();
        if (!is_divisible(delta)) {
            note(trace, "shifted: residue decomposes as hahn(" + l.str() +
                            ", non-divisible) (residue shift detected)");
            return {delta, l, true, Verdict::yes};
        }
        Verdict gp = is_generating_pair(delta, l, trace);
        Verdict e = equiv_canonical(l, c, trace);
        if (gp == Verdict::yes && e == Verdict::no) {
            note(trace, "shifted: residue decomposes with divisible group, inner theory "
                        "inequivalent to the whole");
            return {delta, l, true, Verdict::yes};
        }
        if (gp == Verdict::unknown || e == Verdict::unknown) {
            note(trace, "unshifted label with unknown generating verdict");
            return {k.group, c, false, Verdict::unknown};
        }
    }
    Verdict gp = is_generating_pair(k.group, c, trace);
    note(trace, "unshifted: divisible value group, no shifted decomposition");
    return {k.group, c, false, gp};
}

Verdict equivalent(const MVFDescriptor& k1, const MVFDescriptor& k2, Trace* trace) {
    if (k1.is_dense() != k2.is_dense())
        throw std::invalid_argument("cannot compare descriptors of mixed density");

    if (!k1.is_dense()) {
        // the discreteness gap is determined by the theory
        if (!(*k1.dg == *k2.dg)) {
            note(trace, "discrete: gaps differ (" + k1.dg->str() + " vs " + k2.dg->str() + ")");
            return Verdict::no;
        }
        if (k1.dg->is_zero()) {
            note(trace, "trivially valued fields reduce to classical structures: out of scope");
            return Verdict::unknown;
        }
        note(trace, "discrete: equal gaps, comparing residue theories");
        return equiv_fields(k1.residue, k2.residue, trace);
    }

    ClassDescriptor c1 = class_of(k1, trace), c2 = class_of(k2, trace);
    if (c1.generating != Verdict::yes || c2.generating != Verdict::yes) {
        note(trace, "class labels not certified as generating pairs");
        return Verdict::unknown;
    }
    if (!equiv_groups(c1.delta, c2.delta)) {
        note(trace, "classes differ: group components inequivalent");
        return Verdict::no;
    }
    Verdict fe = equiv_fields(c1.l, c2.l, trace);
    note(trace, "class field components: " + verdict_str(fe));
    return fe;
}

MVFDescriptor residue_shift(const ClassDescriptor& c) {
    return MVFDescriptor::dense(GroupTheory::divisible_dense(), FieldTheory::hahn(c.l, c.delta));
}

Verdict lring_equiv(const MVFDescriptor& k1, const MVFDescriptor& k2, Trace* trace) {
    if (!k1.is_dense() || !k2.is_dense())
        throw std::domain_error("lring_equiv handles dense descriptors");
    Verdict v = equiv_fields(FieldTheory::hahn(k1.residue, k1.group),
                             FieldTheory::hahn(k2.residue, k2.group), trace);
    Verdict w = equivalent(k1, k2, trace);
    if (v != Verdict::unknown && w != Verdict::unknown && v != w)
        throw std::logic_error("ring-language cross-check failed: L_ring route " + verdict_str(v) +
                               " vs class route " + verdict_str(w));
    note(trace, "L_ring route: " + verdict_str(v) + ", class route: " + verdict_str(w));
    return v;
}

}  // namespace mvf
