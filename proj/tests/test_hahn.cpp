#include <doctest.h>

#include "mvf/errors.hpp"
#include "mvf/hahn.hpp"
#include "mvf/sampling.hpp"

using namespace mvf;

namespace {

FieldPtr q23(bool roots = false) {
    return Field::make(ConcreteGroup({Value::parse("2"), Value::parse("3")}), roots);
}

Value val(const char* s) {
    return Value::parse(s);
}

}  // namespace

// The single most error-prone convention in the codebase: exponents
// compose multiplicatively, t^gamma * t^delta = t^{gamma*delta}, and the
// unit monomial is t^1.
TEST_CASE("convention: multiplicative exponents and the unit monomial") {
    auto f = q23(true);
    HahnSeries t_half = HahnSeries::monomial(f, 1, val("1/2"));
    CHECK((t_half * t_half).terms().begin()->first == val("1/4"));

    // t^2 * t^(1/2) = t^1 = the constant slot
    HahnSeries a = HahnSeries::monomial(f, 1, val("2")) * HahnSeries::monomial(f, 1, val("1/2"));
    CHECK(a == HahnSeries::constant(f, 1));
    CHECK(a.residue() == 1);

    // (1 + t^(1/2)) * (1 - t^(1/2)) = 1 - t^(1/4)
    HahnSeries one = HahnSeries::constant(f, 1);
    CHECK((one + t_half) * (one - t_half) == one - t_half * t_half);
    CHECK(((one + t_half) * (one - t_half)).coefficient(val("1/4")) == Rat(-1));
}

TEST_CASE("add/mul/negate basics") {
    auto f = q23();
    HahnSeries a = HahnSeries::parse(f, "2 + 3*t^(1/2)");
    CHECK((a + (-a)).is_zero());
    CHECK(a - a == HahnSeries::zero(f));
    HahnSeries b = HahnSeries::parse(f, "1 - t^(1/2)");
    CHECK(a * b == HahnSeries::parse(f, "2 + t^(1/2) - 3*t^(1/4)"));
    // exponent outside the declared group
    CHECK_THROWS_AS(HahnSeries::monomial(q23(false), 1, val("5")), valuation_error);
    CHECK_NOTHROW(HahnSeries::monomial(q23(true), 1, val("2^1/2")));
    CHECK_THROWS_AS(HahnSeries::monomial(q23(true), 1, val("5^1/2")), valuation_error);
}

TEST_CASE("valuation: max exponent; zero maps to the bottom marker") {
    auto f = q23(true);
    HahnSeries s = HahnSeries::parse(f, "3*t^(1/2) + 5*t^(1/8)");
    CHECK(s.valuation() == Norm(val("1/2")));
    CHECK(HahnSeries::constant(f, 7).valuation() == Norm::one());
    CHECK(HahnSeries::zero(f).valuation().is_zero());
}

TEST_CASE("residue: constant slot; outside the valuation ring rejected") {
    auto f = q23();
    CHECK(HahnSeries::parse(f, "2 + t^(1/2)").residue() == Rat(2));
    CHECK(HahnSeries::parse(f, "t^(1/2)").residue() == Rat(0));
    CHECK_THROWS_AS(HahnSeries::parse(f, "t^(2)").residue(), valuation_error);
}

TEST_CASE("res2 is total: the guarded two-argument residue") {
    auto f = q23(true);
    HahnSeries t14 = HahnSeries::monomial(f, 1, val("1/4"));
    HahnSeries t12 = HahnSeries::monomial(f, 1, val("1/2"));
    CHECK(res2(t14, t14) == Rat(1));
    CHECK(res2(t12, t14) == Rat(0));  // v(x) = 1/2 > 1/4 = v(y)
    CHECK(res2(HahnSeries::zero(f), t14) == Rat(0));
    CHECK(res2(t14, HahnSeries::zero(f)) == Rat(0));
    CHECK(res2(t14, t12) == Rat(0));  // x/y = t^(1/2), residue 0
    // non-monomial denominator: t^(1/2) / (t^(1/2) + t^(1/4)) has residue 1
    CHECK(res2(t12, t12 + t14) == Rat(1));
    CHECK(res2(t12 * HahnSeries::constant(f, 3), t12) == Rat(3));
}

TEST_CASE("invert: geometric expansion, exact monomials, residual strictly below floor") {
    auto f = q23();
    HahnSeries one = HahnSeries::constant(f, 1);
    HahnSeries a = HahnSeries::parse(f, "1 - t^(1/2)");
    HahnSeries b = invert(a, val("1/16"));
    // strict contract: valuation(a*b - 1) < 1/16 forces five terms
    CHECK(b.term_count() == 5);
    CHECK(b.coefficient(val("1/16")) == Rat(1));
    CHECK(Norm::compare((a * b.with_floor(std::nullopt) - one).valuation(), Norm(val("1/16"))) < 0);
    CHECK(b.precision_floor().has_value());

    HahnSeries c = invert(HahnSeries::constant(f, 2), val("1/1000000"));
    CHECK(c == HahnSeries::constant(f, rat(1, 2)));
    CHECK(!c.precision_floor().has_value());

    CHECK(invert(HahnSeries::monomial(f, 1, val("1/2")), val("1/16")) ==
          HahnSeries::monomial(f, 1, val("2")));
    CHECK_THROWS_AS(invert(HahnSeries::zero(f), val("1/2")), std::domain_error);
}

TEST_CASE("invert residual property on random series") {
    auto f = q23();
    Sampler s(11);
    HahnSeries one = HahnSeries::constant(f, 1);
    Value floor = val("1/256");
    for (int i = 0; i < 200; ++i) {
        HahnSeries a = s.series(f, 3, 3, 5);
        if (a.is_zero()) continue;
        HahnSeries b = invert(a, floor);
        // the product of the stored coefficients is exact; floor metadata
        // would otherwise re-truncate the very terms under test
        CHECK(Norm::compare((a * b.with_floor(std::nullopt) - one).valuation(), Norm(floor)) < 0);
    }
}

TEST_CASE("ultrametric law and multiplicativity of the valuation") {
    auto f = q23();
    Sampler s(5);
    for (int i = 0; i < 10000; ++i) {
        HahnSeries a = s.series(f, 4, 3, 9), b = s.series(f, 4, 3, 9);
        Norm va = a.valuation(), vb = b.valuation();
        Norm vsum = (a + b).valuation();
        CHECK(Norm::compare(vsum, max_norm(va, vb)) <= 0);
        if (!(va == vb)) CHECK(vsum == max_norm(va, vb));
        if (!a.is_zero() && !b.is_zero()) CHECK((a * b).valuation() == va * vb);
    }
}

TEST_CASE("residue is a ring homomorphism on the valuation ring") {
    auto f = q23();
    Sampler s(13);
    int done = 0;
    for (int i = 0; i < 5000 && done < 2000; ++i) {
        HahnSeries a = s.series(f, 3, 3, 9), b = s.series(f, 3, 3, 9);
        if (Norm::compare(a.valuation(), Norm::one()) > 0) continue;
        if (Norm::compare(b.valuation(), Norm::one()) > 0) continue;
        CHECK((a + b).residue() == a.residue() + b.residue());
        CHECK((a * b).residue() == a.residue() * b.residue());
        ++done;
    }
    CHECK(done > 100);
}

TEST_CASE("newton_root: Hensel cube root of 1 + t^(1/2)") {
    auto f = q23();
    SeriesPolynomial p = {-HahnSeries::parse(f, "1 + t^(1/2)"), HahnSeries::zero(f),
                          HahnSeries::zero(f), HahnSeries::constant(f, 1)};  // X^3 - (1 + t^(1/2))
    Value floor = Value::from_rational(rat(1, 1000000));
    std::vector<HahnSeries> iterates;
    HahnSeries x = newton_root(p, HahnSeries::constant(f, 1), floor, &iterates);

    // first Newton step by hand: 1 + (1/3) t^(1/2)
    REQUIRE(iterates.size() >= 2);
    HahnSeries first_corr = iterates[1] - iterates[0];
    CHECK(first_corr.term_count() == 1);
    CHECK(first_corr.coefficient(val("1/2")) == rat(1, 3));

    CHECK(x.residue() == Rat(1));
    Norm resid = eval_polynomial(p, x).with_floor(std::nullopt).valuation();
    CHECK(Norm::compare(resid, Norm(floor)) <= 0);
}

TEST_CASE("newton_root: linear and exact-root cases") {
    auto f = q23();
    HahnSeries c = HahnSeries::parse(f, "2 + 3*t^(1/2)");
    SeriesPolynomial lin = {-c, HahnSeries::constant(f, 1)};  // X - c
    HahnSeries seed = HahnSeries::constant(f, 2);             // matching residue
    CHECK(newton_root(lin, seed, val("1/1000")) == c);

    SeriesPolynomial sq = {HahnSeries::constant(f, -1), HahnSeries::zero(f),
                           HahnSeries::constant(f, 1)};  // X^2 - 1
    HahnSeries one = HahnSeries::constant(f, 1);
    CHECK(newton_root(sq, one, val("1/1000")) == one);  // exact, no floor
}

TEST_CASE("newton_root error paths") {
    auto f = q23();
    SeriesPolynomial sq = {HahnSeries::constant(f, -1), HahnSeries::zero(f),
                           HahnSeries::constant(f, 1)};  // X^2 - 1
    // residue of P at residue(seed) nonzero
    CHECK_THROWS_AS(newton_root(sq, HahnSeries::constant(f, 3), val("1/4")), newton_error);
    // double root: residue derivative vanishes
    SeriesPolynomial dbl = {HahnSeries::zero(f), HahnSeries::zero(f),
                            HahnSeries::constant(f, 1)};  // X^2
    try {
        newton_root(dbl, HahnSeries::zero(f), val("1/4"));
        CHECK(false);
    } catch (const newton_error& e) {
        CHECK(e.reason == newton_error::kind::non_simple_root);
    }
    // coefficient outside the valuation ring
    SeriesPolynomial bad = {HahnSeries::monomial(f, 1, val("2")), HahnSeries::constant(f, 1)};
    CHECK_THROWS_AS(newton_root(bad, HahnSeries::zero(f), val("1/4")), newton_error);
}

TEST_CASE("discreteness gap: trivial 0, discrete in (0,1), dense 1") {
    CHECK(discreteness_gap(Field(ConcreteGroup({Value()}), false)).is_zero());
    CHECK(discreteness_gap(Field(ConcreteGroup({val("4"), val("8")}), false)) ==
          Norm(val("1/2")));
    CHECK(discreteness_gap(Field(ConcreteGroup({val("2"), val("3")}), false)) == Norm::one());
    // a generator below 1 already is the gap
    CHECK(discreteness_gap(Field(ConcreteGroup({val("2/3")}), false)) == Norm(val("2/3")));
}

TEST_CASE("precision floors: coarsest wins, truncation below the floor") {
    auto f = q23();
    HahnSeries a = HahnSeries::parse(f, "1 + t^(1/4)").with_floor(val("1/8"));
    HahnSeries b = HahnSeries::parse(f, "1 + t^(1/16)").with_floor(val("1/32"));
    HahnSeries sum = a + b;
    REQUIRE(sum.precision_floor().has_value());
    CHECK(*sum.precision_floor() == val("1/8"));  // coarsest
    CHECK(sum.coefficient(val("1/16")) == Rat(0));  // dropped below the coarse floor
    CHECK(sum.coefficient(Value()) == Rat(2));
    // residue refuses floors above the constant slot
    HahnSeries c = HahnSeries::parse(f, "t^(2)").with_floor(val("3/2"));
    CHECK_THROWS_AS(c.residue(), valuation_error);
}

TEST_CASE("series parser round-trips and rejects bare t") {
    auto f = q23(true);
    const char* examples[] = {"2 + 3*t^(1/2) - t^(2^1/2 * 3^-1)", "-1 - t^(1/2)", "0",
                              "1/3*t^(2/3) + 7"};
    for (const char* e : examples) {
        HahnSeries s = HahnSeries::parse(f, e);
        CHECK(HahnSeries::parse(f, s.str()) == s);
    }
    CHECK_THROWS_AS(HahnSeries::parse(f, "t + 1"), parse_error);
    CHECK_THROWS_AS(HahnSeries::parse(f, "2 +"), parse_error);
    CHECK_THROWS_AS(HahnSeries::parse(f, "t^1/2"), parse_error);  // parentheses required
}

TEST_CASE("series from different fields refuse to mix") {
    auto a = HahnSeries::constant(q23(), 1);
    auto b = HahnSeries::constant(Field::make(ConcreteGroup({val("5")}), false), 1);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    // equal field contents interoperate even across handles
    auto c = HahnSeries::constant(q23(), 2);
    CHECK(a + c == HahnSeries::constant(q23(), 3));
}
