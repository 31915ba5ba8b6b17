#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvf/groups.hpp"
#include "mvf/value.hpp"

namespace mvf {

// Three-valued verdicts: the calculus answers yes/no only where its
// rules soundly decide, and never guesses.
enum class Verdict { yes, no, unknown };

std::string verdict_str(Verdict v);

// Theory-determined properties carried by the catalog.
struct TheoryFlags {
    Verdict is_large = Verdict::unknown;
    Verdict is_fixed_point = Verdict::unknown;  // l = l((t^{R+})) up to equivalence
    bool operator==(const TheoryFlags&) const = default;
};

enum class BaseTag { acf0, rcf, padic_closed, laurent_over, number_field, pseudo_finite, custom };

/**
 * Symbolic description of a field theory up to elementary equivalence:
 * a catalog base, or a Hahn layer l((t^Gamma)) over another expression,
 * with Gamma a non-trivial regular group theory.
 *
 * Catalog flags are pinned: ACF0, RCF, PadicClosed and LaurentOver are
 * fixed-point residue theories; number fields (non-large) and
 * pseudofinite fields (PAC, non-algebraically-closed) are not.
 */
class FieldTheory {
public:
    struct Node {
        bool hahn = false;
        BaseTag tag = BaseTag::custom;
        std::string param;  // p for padic, inner name for laurent, name otherwise
        TheoryFlags custom_flags;
        std::shared_ptr<const Node> inner;
        GroupTheory group;
    };

    static FieldTheory acf0();
    static FieldTheory rcf();
    static FieldTheory padic_closed(const Int& p);
    static FieldTheory laurent_over(const std::string& inner_name);
    static FieldTheory number_field(const std::string& name = "Q");
    static FieldTheory pseudo_finite();
    static FieldTheory custom(const std::string& name, TheoryFlags flags = {});
    static FieldTheory hahn(FieldTheory inner, GroupTheory group);

    bool is_hahn() const { return n_->hahn; }
    BaseTag tag() const { return n_->tag; }
    const std::string& param() const { return n_->param; }
    FieldTheory inner() const { return FieldTheory(n_->inner); }
    const GroupTheory& group() const { return n_->group; }

    TheoryFlags flags() const;  // catalog-pinned; Hahn layers are large fixed points

    bool operator==(const FieldTheory& o) const { return equal(*n_, *o.n_); }
    std::string str() const;

private:
    std::shared_ptr<const Node> n_;
    explicit FieldTheory(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static bool equal(const Node& a, const Node& b);
};

using Trace = std::vector<std::string>;

// Sound rewrites to fixpoint, innermost first:
//   R1: hahn(hahn(l, G), divisible) -> hahn(l, G)
//   R2: hahn(base with fixed-point flag, divisible) -> base
// Each rewrite strictly reduces nesting depth, so this terminates.
FieldTheory canonicalize(const FieldTheory& f, Trace* trace = nullptr);

Verdict equiv_fields(const FieldTheory& a, const FieldTheory& b, Trace* trace = nullptr);

// Admissibility of (Delta, l) as a class label: non-divisible Delta
// always qualifies; divisible Delta requires that l admits no forbidden
// decomposition l = l'((t^{Delta'})). Rejects non-dense Delta.
Verdict is_generating_pair(const GroupTheory& delta, const FieldTheory& l, Trace* trace = nullptr);

/** Class label C(Delta, l) with the shifted/unshifted dichotomy. */
struct ClassDescriptor {
    GroupTheory delta;
    FieldTheory l;
    bool shifted = false;
    Verdict generating = Verdict::unknown;

    std::string str() const;
};

/** A metric valued field up to the data the classifier consumes. */
struct MVFDescriptor {
    GroupTheory group;
    FieldTheory residue;
    std::optional<Norm> dg;  // absent: dense; 0: trivial; in (0,1): discrete

    static MVFDescriptor dense(GroupTheory dense_group, FieldTheory residue);
    static MVFDescriptor discrete(const Value& dg, FieldTheory residue);
    static MVFDescriptor trivially_valued(FieldTheory residue);

    bool is_dense() const { return !dg.has_value(); }
    std::string str() const;
};

// Class label of a dense descriptor, unique up to equivalence of its
// components. Rejects discrete and trivially valued descriptors (route
// those through `equivalent`).
ClassDescriptor class_of(const MVFDescriptor& k, Trace* trace = nullptr);

// Elementary equivalence: same class, compared component-wise. Discrete
// descriptors compare by discreteness gap and residue theory; trivially
// valued ones are out of scope and report unknown.
Verdict equivalent(const MVFDescriptor& k1, const MVFDescriptor& k2, Trace* trace = nullptr);

// Symbolic image of a countably incomplete metric ultrapower of any
// unshifted member: value group R^+, residue l((t^Delta)).
MVFDescriptor residue_shift(const ClassDescriptor& c);

// Ring-language route: equivalence of the L_ring theories k((t^Gamma)),
// cross-checked against `equivalent` whenever both are decisive.
Verdict lring_equiv(const MVFDescriptor& k1, const MVFDescriptor& k2, Trace* trace = nullptr);

}  // namespace mvf
