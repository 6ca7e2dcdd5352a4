#include "doctest.h"
#include "gen.hpp"
#include "sgeom/parse.hpp"

using namespace sgeom;

namespace {

ChartPtr chart_xs() {
    return Chart::make("U", {{"x1", false, false}, {"x2", true, false}, {"t", true, false}}, {"s1", "s2", "s3"});
}

SuperElement g(const ChartPtr &c, const char *n) { return SuperElement::generator(c, n); }
SuperElement one(const ChartPtr &c) { return SuperElement::constant(c, 1); }

} // namespace

TEST_CASE("odd squares and anticommutation") {
    auto c = chart_xs();
    CHECK(( g(c, "s1") * g(c, "s1") ).is_zero());
    CHECK((g(c, "s1") * g(c, "s2") + g(c, "s2") * g(c, "s1")).is_zero());
    auto ss = g(c, "s1") * g(c, "s2");
    CHECK((one(c) + ss) * (one(c) - ss) == one(c));
    CHECK(gen::oracle_mul(one(c) + ss, one(c) - ss) == one(c));
}

TEST_CASE("parity_of") {
    auto c = chart_xs();
    CHECK((g(c, "s1") * g(c, "s2")).parity() == Parity::Even);
    CHECK((g(c, "x1") * g(c, "s1")).parity() == Parity::Odd);
    CHECK((g(c, "x1") + g(c, "s1")).parity() == Parity::Mixed);
    CHECK(SuperElement(c).parity() == Parity::Even);
}

TEST_CASE("body and point evaluation") {
    auto c = chart_xs();
    auto x = g(c, "x1");
    auto ss = g(c, "s1") * g(c, "s2");
    CHECK((x * x + x * ss).body() == x * x);
    Point p(c, {2, 1, 1});
    CHECK(evaluate(3 * x * x + x * ss, p) == 12);
    CHECK(evaluate(g(c, "s1"), p) == 0);
    Point q(c, {5, Rational(1, 2), -3});
    CHECK(evaluate(g(c, "x2").pow(-1), q) == 2);
    CHECK_THROWS(Point(c, {1, 0, 1}));
}

TEST_CASE("invert") {
    auto c = chart_xs();
    auto ss = g(c, "s1") * g(c, "s2");
    auto inv = invert(2 * one(c) + ss);
    CHECK(inv == Rational(1, 2) * one(c) - Rational(1, 4) * ss);
    CHECK(inv * (2 * one(c) + ss) == one(c));
    CHECK(invert(g(c, "t")) == g(c, "t").pow(-1));
    CHECK(invert(g(c, "t")).to_string() == "t^-1");
    CHECK_THROWS_AS(invert(g(c, "x1") + g(c, "s1")), NotAUnit);
    CHECK_THROWS_AS(invert(g(c, "s1")), NotAUnit);
    CHECK_THROWS_AS(invert(one(c) + g(c, "x2")), NotAUnit);
}

TEST_CASE("morphisms") {
    auto c = Chart::make("V", {{"x", false, false}}, {"s1", "s2"});
    auto x = g(c, "x"), s1 = g(c, "s1"), s2 = g(c, "s2");
    auto id = AlgebraMorphism::identity(c);
    CHECK(id(x * s1 + s2) == x * s1 + s2);
    AlgebraMorphism m(c, c, {x, s1 + s2, s2});
    CHECK(m(s1 * s2) == s1 * s2);
    AlgebraMorphism sq(c, c, {x * x, s1, s2});
    CHECK(sq(x + one(c)) == x * x + one(c));
    CHECK_THROWS(AlgebraMorphism(c, c, {s1, s1, s2}));
    CHECK_THROWS(AlgebraMorphism(c, c, {x, x, s2}));
    auto ct = Chart::make("T", {{"t", true, false}}, {"s"});
    CHECK_THROWS_AS(AlgebraMorphism(ct, ct, {g(ct, "t") - one(ct), g(ct, "s")}), NotAUnit);
    AlgebraMorphism tinv(ct, ct, {2 * g(ct, "t").pow(-1), g(ct, "s")});
    CHECK(tinv(g(ct, "t").pow(-2)) == Rational(1, 4) * g(ct, "t").pow(2));
}

TEST_CASE("tensor charts") {
    auto a = Chart::make("A", {{"x", false, false}}, {"s"});
    TensorProduct t({a, a});
    CHECK(t.chart()->generator_name(1) == "x'");
    CHECK(t.chart()->generator_name(3) == "s'");
    auto s = t.embed(0, g(a, "s")), sp = t.embed(1, g(a, "s"));
    CHECK(s * sp == -(sp * s));
    auto x = t.embed(0, g(a, "x")), y = t.embed(1, g(a, "x"));
    CHECK(x * y == y * x);
    // (1 (x) s')(s (x) 1) = (-1)^{|s'||s|} s (x) s'
    CHECK(sp * s == -(s * sp));
    CHECK(t.extract(1, sp * y) == g(a, "s") * g(a, "x"));
    CHECK_THROWS(t.extract(1, s * sp));
    TensorProduct t3({a, a, a});
    CHECK(t3.chart()->generator_name(2) == "x''");
}

TEST_CASE("rendering and parsing") {
    auto c = Chart::make("U", {{"x1", false, false}, {"x2", true, false}}, {"s1", "s2"});
    auto e = Rational(3, 2) * g(c, "x1").pow(2) * g(c, "s1") * g(c, "s2") - g(c, "x2").pow(-1);
    CHECK(e.to_string() == "3/2*x1^2*s1*s2 - x2^-1");
    CHECK(parse_element(e.to_string(), c) == e);
    CHECK(parse_element("(1 + s1*s2)*(1 - s1*s2)", c).to_string() == "1");
    CHECK(parse_element("s2*s1", c).to_string() == "-s1*s2");
    CHECK(parse_element("1/(2 + s1*s2)", c).to_string() == "1/2 - 1/4*s1*s2");
    CHECK(SuperElement(c).to_string() == "0");
    CHECK_THROWS_AS(parse_element("x1 + ", c), ParseError);
    CHECK_THROWS_AS(parse_element("1/x1", c), ParseError);
    CHECK_THROWS_AS(parse_element("y", c), ParseError);
    try {
        parse_element("x1 + q", c, 3, 5);
    } catch (const ParseError &err) {
        CHECK(err.line() == 3);
        CHECK(err.column() == 10);
    }
    gen::Rng r(7);
    for (int i = 0; i < 200; ++i) {
        auto a = gen::element(r, c);
        CHECK(parse_element(a.to_string(), c) == a);
    }
}

TEST_CASE("random laws") {
    auto c = chart_xs();
    gen::Rng r(11);
    Point p(c, {Rational(2, 3), -2, 5});
    for (int i = 0; i < 300; ++i) {
        int pa = r.uniform(0, 1), pb = r.uniform(0, 1);
        auto a = gen::element(r, c, pa), b = gen::element(r, c, pb), e = gen::element(r, c);
        auto ab = a * b;
        CHECK(ab == gen::oracle_mul(a, b));
        CHECK(ab == ((pa & pb) ? -(b * a) : b * a));
        CHECK((ab * e) == a * (b * e));
        CHECK((ab).body() == a.body() * b.body());
        CHECK(evaluate(ab, p) == evaluate(a, p) * evaluate(b, p));
        auto u = gen::unit(r, c);
        auto ui = invert(u);
        CHECK(u * ui == one(c));
        CHECK(ui * u == one(c));
        auto n = (a - a.body());
        CHECK(n.pow(static_cast<int>(c->odd_count()) + 1).is_zero());
    }
}
