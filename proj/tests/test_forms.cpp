#include "doctest.h"
#include "gen.hpp"
#include "sgeom/parse.hpp"

using namespace sgeom;

namespace {

ChartPtr chart() { return Chart::make("U", {{"x1", false, false}, {"x2", true, false}}, {"s1", "s2"}); }
SuperElement g(const ChartPtr &c, const char *n) { return SuperElement::generator(c, n); }
Form fn(const SuperElement &f) { return Form::function(f); }
Form dg(const ChartPtr &c, const char *n) { return Form::differential(c, n); }
Derivation dd(const ChartPtr &c, const char *n) { return Derivation::partial(c, n); }
int sgn(int e) { return (e & 1) ? -1 : 1; }

} // namespace

TEST_CASE("wedge signs") {
    auto c = chart();
    auto dx1 = dg(c, "x1"), dx2 = dg(c, "x2"), ds1 = dg(c, "s1"), ds2 = dg(c, "s2");
    CHECK(dx1 * dx2 == -(dx2 * dx1));
    CHECK((dx1 * dx1).is_zero());
    CHECK(ds1 * ds2 == ds2 * ds1);
    CHECK_FALSE((ds1 * ds1).is_zero());
    CHECK(dx1 * ds1 == -(ds1 * dx1));
    auto a = fn(g(c, "s1")) * dx1;
    // hand expansion: ds1*(s1 dx1) = -s1 ds1 dx1 = s1 dx1 ds1
    CHECK(a * ds1 == ds1 * a);
    CHECK((a * ds1).to_string() == "s1 * dx1 * ds1");
    CHECK((ds1 * ds1 * ds1 * fn(3 * g(c, "x1"))).to_string() == "3*x1 * ds1^3");
    CHECK((dx1 * dx2 * ds1 * ds1).to_string() == "dx1^dx2 * ds1^2");
    CHECK((fn(g(c, "s1")) * ds1 == -(ds1 * fn(g(c, "s1")))));
}

TEST_CASE("exterior derivative") {
    auto c = chart();
    auto x = g(c, "x1"), s1 = g(c, "s1"), s2 = g(c, "s2");
    CHECK(d(x * s1) == dg(c, "x1") * fn(s1) + dg(c, "s1") * fn(x));
    CHECK(d(d(fn(x * s1 * s2))).is_zero());
    CHECK(d(Form::constant(c, 7)).is_zero());
}

TEST_CASE("interior and evaluation examples") {
    auto c = chart();
    auto ds1 = dg(c, "s1");
    CHECK(interior(dd(c, "s1"), ds1) == Form::constant(c, 1));
    CHECK(interior(dd(c, "x1"), dg(c, "x2")).is_zero());
    CHECK(interior(dd(c, "s1"), ds1 * ds1) == 2 * ds1);
    CHECK(evaluate({dd(c, "x1"), dd(c, "x2")}, dg(c, "x1") * dg(c, "x2")) == SuperElement::constant(c, 1));
    CHECK(evaluate({dd(c, "s1"), dd(c, "s1")}, ds1 * ds1) == SuperElement::constant(c, -2));
    CHECK_THROWS(evaluate({dd(c, "s1")}, ds1 * ds1));
    CHECK_THROWS(interior(dd(c, "s1") + dd(c, "x1"), ds1));
    CHECK(lie_derivative(dd(c, "x1"), fn(g(c, "x1")) * dg(c, "x1")) == dg(c, "x1"));
}

TEST_CASE("pullback examples") {
    auto c = Chart::make("V", {{"x", false, false}}, {"s", "s1", "s2"});
    auto x = g(c, "x");
    AlgebraMorphism sq(c, c, {x * x, g(c, "s"), g(c, "s1"), g(c, "s2")});
    CHECK(pullback(sq, dg(c, "x")) == 2 * (fn(x) * dg(c, "x")));
    auto img = x * g(c, "s1") + g(c, "s2");
    AlgebraMorphism odd(c, c, {x, img, g(c, "s1"), g(c, "s2")});
    CHECK(pullback(odd, dg(c, "s")) == d(img));
    auto id = AlgebraMorphism::identity(c);
    auto a = fn(x) * dg(c, "s") * dg(c, "x");
    CHECK(pullback(id, a) == a);
}

TEST_CASE("form rendering round trip") {
    auto c = chart();
    gen::Rng r(17);
    for (int i = 0; i < 100; ++i) {
        auto a = gen::form(r, c, r.uniform(0, 3), r.uniform(0, 1));
        CHECK(parse_form(a.to_string(), c) == a);
    }
}

TEST_CASE("random Cartan calculus laws") {
    auto c = chart();
    gen::Rng r(23);
    for (int i = 0; i < 120; ++i) {
        int ia = r.uniform(0, 2), ja = r.uniform(0, 1), ib = r.uniform(0, 2), jb = r.uniform(0, 1);
        auto a = gen::form(r, c, ia, ja), b = gen::form(r, c, ib, jb);
        CHECK(a * b == sgn(ia * ib + ja * jb) * (b * a));
        CHECK(d(d(a)).is_zero());
        CHECK(d(a * b) == d(a) * b + sgn(ia) * (a * d(b)));
        int px = r.uniform(0, 1), py = r.uniform(0, 1);
        auto xi = gen::derivation(r, c, px), eta = gen::derivation(r, c, py);
        auto f = gen::element(r, c);
        CHECK(interior(xi, d(f)) == fn(xi(f)));
        CHECK((interior(xi, interior(eta, a)) + sgn(px * py) * interior(eta, interior(xi, a))).is_zero());
        // i(xi) is a derivation of bidegree (-1, |xi|)
        CHECK(interior(xi, a * b) == interior(xi, a) * b + sgn(ia + px * ja) * (a * interior(xi, b)));
        auto lx = [&](const Form &w) { return lie_derivative(xi, w); };
        auto ly = [&](const Form &w) { return lie_derivative(eta, w); };
        CHECK(lx(ly(a)) - sgn(px * py) * ly(lx(a)) == lie_derivative(bracket(xi, eta), a));
        CHECK(lx(d(a)) == d(lx(a)));
        // two-factor evaluation formula on products of 1-forms
        int p1 = r.uniform(0, 1), p2 = r.uniform(0, 1);
        auto b1 = gen::form(r, c, 1, p1), b2 = gen::form(r, c, 1, p2);
        auto e11 = evaluate({xi}, b1), e12 = evaluate({xi}, b2), e21 = evaluate({eta}, b1), e22 = evaluate({eta}, b2);
        auto lhs = evaluate({xi, eta}, b1 * b2);
        auto rhs = sgn(py * p1) * (e11 * e22) + sgn(1 + px * py + px * p1) * (e21 * e12);
        CHECK(lhs == rhs);
        CHECK((evaluate({xi, eta}, b1 * b2) + sgn(px * py) * evaluate({eta, xi}, b1 * b2)).is_zero());
    }
}

TEST_CASE("pullback commutes with d and respects related tuples") {
    auto n = Chart::make("N", {{"u", false, false}, {"v", true, false}}, {"t"});
    auto m = Chart::make("M", {{"x", false, false}, {"z", true, false}}, {"s", "q"});
    auto x = g(m, "x"), z = g(m, "z"), s = g(m, "s"), q = g(m, "q");
    AlgebraMorphism sigma(n, m, {x + z * s * q, z * z, s + x * q});
    gen::Rng r(29);
    for (int i = 0; i < 60; ++i) {
        auto a = gen::form(r, n, r.uniform(0, 2), r.uniform(0, 1));
        CHECK(pullback(sigma, d(a)) == d(pullback(sigma, a)));
        auto b = gen::form(r, n, r.uniform(0, 2), r.uniform(0, 1));
        CHECK(pullback(sigma, a * b) == pullback(sigma, a) * pullback(sigma, b));
    }
    // an invertible change of coordinates makes every derivation related to its pushforward
    AlgebraMorphism phi(m, m, {x + s * q, z, s + x * q, q});
    AlgebraMorphism phi_inv(m, m, {x - s * q, z, s - x * q, q});
    for (int i = 0; i < 40; ++i) {
        int p1 = r.uniform(0, 1), p2 = r.uniform(0, 1);
        auto xi1 = gen::derivation(r, m, p1), xi2 = gen::derivation(r, m, p2);
        auto eta1 = pushforward(phi, phi_inv, xi1), eta2 = pushforward(phi, phi_inv, xi2);
        REQUIRE(related(phi, xi1, eta1));
        auto a = gen::form(r, m, 2, r.uniform(0, 1));
        CHECK(evaluate({xi1, xi2}, pullback(phi, a)) == phi(evaluate({eta1, eta2}, a)));
    }
}
