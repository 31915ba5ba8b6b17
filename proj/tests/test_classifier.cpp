#include <doctest.h>

#include "mvf/classifier.hpp"

using namespace mvf;

namespace {

GroupTheory th23() {
    return classify_group(ConcreteGroup({Value::parse("2"), Value::parse("3")}));
}
GroupTheory th235() {
    return classify_group(ConcreteGroup({Value::parse("2"), Value::parse("3"), Value::parse("5")}));
}
GroupTheory rplus() {
    return GroupTheory::divisible_dense();
}

}  // namespace

TEST_CASE("canonicalize: R1 collapses stacked Hahn layers over a divisible group") {
    FieldTheory inner = FieldTheory::hahn(FieldTheory::number_field(), th23());
    FieldTheory stacked = FieldTheory::hahn(inner, rplus());
    Trace tr;
    CHECK(canonicalize(stacked, &tr) == inner);
    CHECK(!tr.empty());
    // no rule fires on the normal form
    CHECK(canonicalize(inner) == inner);
    // R1 needs the outer group divisible
    FieldTheory nondiv_outer = FieldTheory::hahn(inner, th235());
    CHECK(canonicalize(nondiv_outer) == nondiv_outer);
}

TEST_CASE("canonicalize: R2 absorbs divisible layers over fixed-point bases") {
    for (FieldTheory base : {FieldTheory::acf0(), FieldTheory::rcf(), FieldTheory::padic_closed(5),
                             FieldTheory::laurent_over("Q")}) {
        CHECK(canonicalize(FieldTheory::hahn(base, rplus())) == base);
        // nested: hahn(hahn(base, R+), R+) -> base
        CHECK(canonicalize(FieldTheory::hahn(FieldTheory::hahn(base, rplus()), rplus())) == base);
    }
    // non-fixed-point residues stay decomposed
    for (FieldTheory base : {FieldTheory::number_field(), FieldTheory::pseudo_finite()}) {
        FieldTheory h = FieldTheory::hahn(base, rplus());
        CHECK(canonicalize(h) == h);
    }
}

TEST_CASE("canonicalization strictly reduces Hahn nesting depth") {
    FieldTheory f = FieldTheory::hahn(
        FieldTheory::hahn(FieldTheory::hahn(FieldTheory::acf0(), rplus()), th23()), rplus());
    // innermost R2, then R1: hahn(ACF0-layer...) -> hahn(ACF0, th23)
    FieldTheory c = canonicalize(f);
    CHECK(c == FieldTheory::hahn(FieldTheory::acf0(), th23()));
}

TEST_CASE("equiv_fields anchors") {
    // component-wise: groups of equal invariants
    GroupTheory t57 = classify_group(ConcreteGroup({Value::parse("5"), Value::parse("7")}));
    CHECK(equiv_fields(FieldTheory::hahn(FieldTheory::number_field(), th23()),
                       FieldTheory::hahn(FieldTheory::number_field(), t57)) == Verdict::yes);
    // Hahn fields are large; Q is not
    CHECK(equiv_fields(FieldTheory::hahn(FieldTheory::number_field(), rplus()),
                       FieldTheory::number_field()) == Verdict::no);
    // fixed-point example 1
    CHECK(equiv_fields(FieldTheory::hahn(FieldTheory::acf0(), rplus()), FieldTheory::acf0()) ==
          Verdict::yes);
    // distinct catalog bases
    CHECK(equiv_fields(FieldTheory::acf0(), FieldTheory::rcf()) == Verdict::no);
    CHECK(equiv_fields(FieldTheory::padic_closed(3), FieldTheory::padic_closed(5)) == Verdict::no);
    CHECK(equiv_fields(FieldTheory::pseudo_finite(), FieldTheory::hahn(FieldTheory::number_field(), th23())) ==
          Verdict::no);
    // groups with different invariants under non-divisible layers
    CHECK(equiv_fields(FieldTheory::hahn(FieldTheory::number_field(), th23()),
                       FieldTheory::hahn(FieldTheory::number_field(), th235())) == Verdict::no);
    // discrete Hahn layers: AKE sufficiency holds, refutations do not
    FieldTheory laurent_spelled =
        FieldTheory::hahn(FieldTheory::number_field(), GroupTheory::discrete_regular());
    CHECK(equiv_fields(laurent_spelled, laurent_spelled) == Verdict::yes);
    // laurent(Q) and hahn(Q, discrete) denote the same theory; the
    // catalog cannot see that, but it must not deny it either
    CHECK(equiv_fields(FieldTheory::laurent_over("Q"), laurent_spelled) == Verdict::unknown);
    CHECK(equiv_fields(laurent_spelled,
                       FieldTheory::hahn(FieldTheory::acf0(), GroupTheory::discrete_regular())) ==
          Verdict::unknown);
    CHECK(equiv_fields(FieldTheory::acf0(), laurent_spelled) == Verdict::no);
    CHECK(equiv_fields(FieldTheory::rcf(), laurent_spelled) == Verdict::no);
    // unknown where the catalog is silent
    CHECK(equiv_fields(FieldTheory::custom("k1"), FieldTheory::custom("k2")) == Verdict::unknown);
    CHECK(equiv_fields(FieldTheory::custom("k1"), FieldTheory::custom("k1")) == Verdict::yes);
    CHECK(equiv_fields(FieldTheory::custom("k1", {Verdict::no, Verdict::unknown}),
                       FieldTheory::hahn(FieldTheory::custom("k2"), th23())) == Verdict::no);
    CHECK(equiv_fields(FieldTheory::number_field("Q"), FieldTheory::number_field("Qi")) ==
          Verdict::unknown);
}

TEST_CASE("is_generating_pair") {
    CHECK(is_generating_pair(th23(), FieldTheory::number_field()) == Verdict::yes);
    CHECK(is_generating_pair(rplus(), FieldTheory::hahn(FieldTheory::number_field(), th23())) ==
          Verdict::no);
    CHECK(is_generating_pair(rplus(), FieldTheory::acf0()) == Verdict::yes);
    CHECK(is_generating_pair(rplus(), FieldTheory::number_field()) == Verdict::yes);
    CHECK(is_generating_pair(rplus(), FieldTheory::pseudo_finite()) == Verdict::yes);
    // Laurent-type residues: only a discrete-group decomposition exists
    CHECK(is_generating_pair(rplus(),
                             FieldTheory::hahn(FieldTheory::number_field(),
                                               GroupTheory::discrete_regular())) == Verdict::yes);
    // non-dense class groups are rejected
    CHECK_THROWS_AS(is_generating_pair(GroupTheory::discrete_regular(), FieldTheory::acf0()),
                    std::domain_error);
    CHECK_THROWS_AS(is_generating_pair(GroupTheory::trivial(), FieldTheory::acf0()),
                    std::domain_error);
    // custom theories stay unknown unless flags decide
    CHECK(is_generating_pair(rplus(), FieldTheory::custom("k")) == Verdict::unknown);
    CHECK(is_generating_pair(rplus(), FieldTheory::custom("k", {Verdict::no, Verdict::unknown})) ==
          Verdict::yes);
}

TEST_CASE("class_of: unshifted, shifted, fixed-point") {
    MVFDescriptor k1 = MVFDescriptor::dense(th23(), FieldTheory::number_field());
    ClassDescriptor c1 = class_of(k1);
    CHECK(!c1.shifted);
    CHECK(equiv_groups(c1.delta, th23()));
    CHECK(equiv_fields(c1.l, FieldTheory::number_field()) == Verdict::yes);
    CHECK(c1.generating == Verdict::yes);

    MVFDescriptor k2 = MVFDescriptor::dense(
        rplus(), FieldTheory::hahn(FieldTheory::number_field(), th23()));
    ClassDescriptor c2 = class_of(k2);
    CHECK(c2.shifted);
    CHECK(equiv_groups(c2.delta, th23()));
    CHECK(equiv_fields(c2.l, FieldTheory::number_field()) == Verdict::yes);

    MVFDescriptor k3 = MVFDescriptor::dense(rplus(), FieldTheory::acf0());
    ClassDescriptor c3 = class_of(k3);
    CHECK(!c3.shifted);
    CHECK(is_divisible(c3.delta));
    CHECK(equiv_fields(c3.l, FieldTheory::acf0()) == Verdict::yes);

    // shifted detection for a divisible inner group: residue = Q((t^{R+}))
    MVFDescriptor k4 = MVFDescriptor::dense(
        rplus(), FieldTheory::hahn(FieldTheory::number_field(), rplus()));
    ClassDescriptor c4 = class_of(k4);
    CHECK(c4.shifted);
    CHECK(is_divisible(c4.delta));
    CHECK(equiv_fields(c4.l, FieldTheory::number_field()) == Verdict::yes);

    CHECK_THROWS_AS(class_of(MVFDescriptor::discrete(Value::parse("1/2"),
                                                     FieldTheory::number_field())),
                    std::domain_error);
}

TEST_CASE("equivalent: class equivalence anchors") {
    MVFDescriptor unshifted = MVFDescriptor::dense(th23(), FieldTheory::number_field());
    MVFDescriptor shifted = MVFDescriptor::dense(
        rplus(), FieldTheory::hahn(FieldTheory::number_field(), th23()));
    CHECK(equivalent(unshifted, shifted) == Verdict::yes);

    CHECK(equivalent(MVFDescriptor::dense(rplus(), FieldTheory::number_field()),
                     MVFDescriptor::dense(rplus(), FieldTheory::pseudo_finite())) == Verdict::no);

    // discrete: gaps and residues
    MVFDescriptor d12 = MVFDescriptor::discrete(Value::parse("1/2"), FieldTheory::number_field());
    MVFDescriptor d13 = MVFDescriptor::discrete(Value::parse("1/3"), FieldTheory::number_field());
    CHECK(equivalent(d12, d13) == Verdict::no);
    CHECK(equivalent(d12, d12) == Verdict::yes);
    CHECK(equivalent(d12, MVFDescriptor::discrete(Value::parse("1/2"), FieldTheory::acf0())) ==
          Verdict::no);

    // trivially valued: out of scope
    CHECK(equivalent(MVFDescriptor::trivially_valued(FieldTheory::number_field()),
                     MVFDescriptor::trivially_valued(FieldTheory::number_field())) ==
          Verdict::unknown);
    CHECK(equivalent(MVFDescriptor::trivially_valued(FieldTheory::number_field()), d12) ==
          Verdict::no);  // the gap separates them

    CHECK_THROWS_AS(equivalent(unshifted, d12), std::invalid_argument);
}

TEST_CASE("residue_shift and shift stability over the catalog") {
    // Proposition: C(th23, Q) shifts to (R+, Q((t^th23)))
    ClassDescriptor c{th23(), FieldTheory::number_field(), false, Verdict::yes};
    MVFDescriptor shifted = residue_shift(c);
    CHECK(is_divisible(shifted.group));
    CHECK(equiv_fields(shifted.residue, FieldTheory::hahn(FieldTheory::number_field(), th23())) ==
          Verdict::yes);

    // fixed-point: C(R+, ACF0) shifts back to itself after canonicalization
    ClassDescriptor cf{rplus(), FieldTheory::acf0(), false, Verdict::yes};
    MVFDescriptor sh = residue_shift(cf);
    CHECK(equiv_fields(sh.residue, FieldTheory::acf0()) == Verdict::yes);

    std::vector<GroupTheory> deltas = {th23(), th235(), rplus()};
    std::vector<FieldTheory> residues = {
        FieldTheory::acf0(),          FieldTheory::rcf(),
        FieldTheory::padic_closed(5), FieldTheory::laurent_over("Q"),
        FieldTheory::number_field(),  FieldTheory::pseudo_finite()};
    for (const auto& delta : deltas) {
        for (const auto& l : residues) {
            if (is_generating_pair(delta, l) != Verdict::yes) continue;
            ClassDescriptor cls{delta, l, false, Verdict::yes};
            ClassDescriptor back = class_of(residue_shift(cls));
            CHECK(equiv_groups(back.delta, cls.delta));
            CHECK(equiv_fields(back.l, cls.l) == Verdict::yes);
            CHECK(back.generating == Verdict::yes);
        }
    }
}

TEST_CASE("lring_equiv agrees with equivalent on decisive pairs") {
    std::vector<MVFDescriptor> ks = {
        MVFDescriptor::dense(th23(), FieldTheory::number_field()),
        MVFDescriptor::dense(rplus(), FieldTheory::hahn(FieldTheory::number_field(), th23())),
        MVFDescriptor::dense(rplus(), FieldTheory::acf0()),
        MVFDescriptor::dense(rplus(), FieldTheory::rcf()),
        MVFDescriptor::dense(rplus(), FieldTheory::number_field()),
        MVFDescriptor::dense(rplus(), FieldTheory::pseudo_finite()),
        MVFDescriptor::dense(th235(), FieldTheory::number_field()),
        MVFDescriptor::dense(rplus(), FieldTheory::laurent_over("Q")),
    };
    size_t decisive = 0;
    for (const auto& a : ks) {
        for (const auto& b : ks) {
            Verdict via_classes = equivalent(a, b);
            Verdict via_lring = lring_equiv(a, b);  // throws on disagreement
            if (via_classes != Verdict::unknown && via_lring != Verdict::unknown) {
                ++decisive;
                CHECK(via_classes == via_lring);
            }
        }
    }
    CHECK(decisive >= 12);
    // reflexivity through the L_ring route
    for (const auto& a : ks) CHECK(lring_equiv(a, a) == Verdict::yes);

    // the unshifted/shifted pair agrees on yes
    CHECK(lring_equiv(ks[0], ks[1]) == Verdict::yes);
    CHECK(lring_equiv(ks[2], ks[3]) == Verdict::no);  // ACF0 vs RCF
}

TEST_CASE("is_generating_pair is invariant under equivalence-preserving substitutions") {
    // th23 and th57 are equivalent; Q-versus-Q via different spellings
    GroupTheory t57 = classify_group(ConcreteGroup({Value::parse("5"), Value::parse("7")}));
    std::vector<std::pair<GroupTheory, GroupTheory>> group_pairs = {{th23(), t57}};
    std::vector<std::pair<FieldTheory, FieldTheory>> field_pairs = {
        {FieldTheory::number_field(), FieldTheory::number_field("Q")},
        {FieldTheory::acf0(), FieldTheory::hahn(FieldTheory::acf0(), rplus())}};
    for (const auto& [g1, g2] : group_pairs)
        for (const auto& [f1, f2] : field_pairs) {
            REQUIRE(equiv_groups(g1, g2));
            REQUIRE(equiv_fields(f1, f2) == Verdict::yes);
            Verdict v1 = is_generating_pair(g1, f1);
            Verdict v2 = is_generating_pair(g2, f2);
            // never yes on one side and no on the other
            CHECK(!(v1 == Verdict::yes && v2 == Verdict::no));
            CHECK(!(v1 == Verdict::no && v2 == Verdict::yes));
        }
}

TEST_CASE("canonicalization and equivalence: generated-tree properties") {
    // deterministic pseudo-random theory trees over the catalog
    std::vector<FieldTheory> bases = {
        FieldTheory::acf0(),          FieldTheory::rcf(),
        FieldTheory::padic_closed(3), FieldTheory::laurent_over("Q"),
        FieldTheory::number_field(),  FieldTheory::pseudo_finite(),
        FieldTheory::custom("k1"),    FieldTheory::custom("k2", {Verdict::no, Verdict::no})};
    std::vector<GroupTheory> groups = {th23(), th235(), rplus(), GroupTheory::discrete_regular()};
    std::vector<FieldTheory> pool = bases;
    std::uint64_t state = 12345;
    auto next = [&state] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int i = 0; i < 60; ++i) {
        FieldTheory inner = pool[next() % pool.size()];
        GroupTheory g = groups[next() % groups.size()];
        pool.push_back(FieldTheory::hahn(inner, g));
    }
    for (const auto& x : pool) {
        FieldTheory c = canonicalize(x);
        CHECK(canonicalize(c) == c);                     // idempotent
        CHECK(equiv_fields(x, x) == Verdict::yes);       // reflexive
        CHECK(equiv_fields(x, c) == Verdict::yes);       // rewrites are sound
    }
    for (size_t i = 0; i < pool.size(); i += 3)
        for (size_t j = 0; j < pool.size(); j += 3)
            CHECK(equiv_fields(pool[i], pool[j]) == equiv_fields(pool[j], pool[i]));  // symmetric
    // no yes-yes-no triangles among a decisive sample
    for (size_t i = 0; i < pool.size(); i += 5)
        for (size_t j = 0; j < pool.size(); j += 5)
            for (size_t k = 0; k < pool.size(); k += 5) {
                if (equiv_fields(pool[i], pool[j]) == Verdict::yes &&
                    equiv_fields(pool[j], pool[k]) == Verdict::yes)
                    CHECK(equiv_fields(pool[i], pool[k]) != Verdict::no);
            }
}

TEST_CASE("rewrites preserve equivalence verdicts against the golden catalog facts") {
    // R2 on each fixed-point base, R1 on a stacked layer: rewriting one
    // side must not change any decisive verdict against catalog entries
    std::vector<FieldTheory> probes = {
        FieldTheory::acf0(), FieldTheory::rcf(), FieldTheory::number_field(),
        FieldTheory::pseudo_finite(), FieldTheory::hahn(FieldTheory::number_field(), th23())};
    std::vector<std::pair<FieldTheory, FieldTheory>> rewrites = {
        {FieldTheory::hahn(FieldTheory::acf0(), rplus()), FieldTheory::acf0()},
        {FieldTheory::hahn(FieldTheory::rcf(), rplus()), FieldTheory::rcf()},
        {FieldTheory::hahn(FieldTheory::hahn(FieldTheory::number_field(), th23()), rplus()),
         FieldTheory::hahn(FieldTheory::number_field(), th23())},
    };
    for (const auto& [before, after] : rewrites)
        for (const auto& probe : probes) CHECK(equiv_fields(before, probe) == equiv_fields(after, probe));
}
