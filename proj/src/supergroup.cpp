#include "sgeom/supergroup.hpp"

#include "sgeom/parse.hpp"

#include <random>
#include <regex>

namespace sgeom {

namespace {

int sgn(int e) { return (e & 1) ? -1 : 1; }

std::vector<std::string> default_basis(const Chart &c) {
    std::vector<std::string> out;
    auto label = [](const char *stem, std::size_t i, std::size_t n) {
        return n == 1 ? std::string(stem) : stem + std::to_string(i + 1);
    };
    for (std::size_t i = 0; i < c.even_count(); ++i)
        out.push_back(label("E", i, c.even_count()));
    for (std::size_t j = 0; j < c.odd_count(); ++j)
        out.push_back(label("F", j, c.odd_count()));
    return out;
}

// even generators map to their twins in `to`, odd ones to zero
AlgebraMorphism body_projection(const ChartPtr &from, const ChartPtr &to, std::size_t offset = 0) {
    std::vector<SuperElement> imgs;
    for (std::size_t g = 0; g < from->size(); ++g)
        imgs.push_back(from->is_odd(g) ? SuperElement(to) : SuperElement::generator(to, offset + g));
    return AlgebraMorphism(from, to, std::move(imgs));
}

} // namespace

GroupPtr HopfGroup::make(std::string name, ChartPtr chart, std::vector<SuperElement> coproduct,
                         std::vector<Rational> counit, std::vector<SuperElement> antipode,
                         std::vector<Rational> identity, std::vector<std::string> basis_names) {
    for (std::size_t i = 0; i < chart->even_count(); ++i)
        if (chart->even(i).parameter)
            throw std::invalid_argument("group chart may not contain parameters");
    if (counit.size() != chart->even_count())
        throw std::invalid_argument("counit: expected one value per even generator");
    for (std::size_t i = 0; i < counit.size(); ++i)
        if (chart->even(i).invertible && counit[i] == 0)
            throw std::invalid_argument("counit of invertible generator " + chart->even(i).name + " is 0");
    std::shared_ptr<HopfGroup> g(new HopfGroup());
    g->name_ = std::move(name);
    g->chart_ = chart;
    g->pair_ = std::make_shared<TensorProduct>(std::vector<ChartPtr>{chart, chart});
    g->triple_ = std::make_shared<TensorProduct>(std::vector<ChartPtr>{chart, chart, chart});
    g->delta_ = AlgebraMorphism(chart, g->pair_->chart(), std::move(coproduct));
    g->antipode_ = AlgebraMorphism(chart, chart, std::move(antipode));
    g->counit_ = std::move(counit);
    for (auto &x : g->counit_)
        x.canonicalize();
    g->identity_ = std::move(identity);
    (void)g->identity();
    if (basis_names.empty())
        basis_names = default_basis(*chart);
    if (basis_names.size() != chart->size())
        throw std::invalid_argument("basis: expected one name per coordinate");
    g->basis_ = std::move(basis_names);
    return g;
}

GroupPtr HopfGroup::parse(std::string name, ChartPtr chart, const std::vector<std::string> &coproduct,
                          std::vector<Rational> counit, const std::vector<std::string> &antipode,
                          std::vector<Rational> identity, std::vector<std::string> basis_names) {
    TensorProduct pair({chart, chart});
    std::vector<SuperElement> d, s;
    for (auto &t : coproduct)
        d.push_back(parse_element(t, pair.chart()));
    for (auto &t : antipode)
        s.push_back(parse_element(t, chart));
    return make(std::move(name), chart, std::move(d), std::move(counit), std::move(s), std::move(identity),
                std::move(basis_names));
}

Rational HopfGroup::counit(const SuperElement &f) const { return evaluate(f, Point(chart_, counit_)); }

AlgebraMorphism HopfGroup::counit_into(const ChartPtr &target) const {
    std::vector<SuperElement> imgs;
    for (std::size_t g = 0; g < chart_->size(); ++g)
        imgs.push_back(chart_->is_odd(g) ? SuperElement(target) : SuperElement::constant(target, counit_[g]));
    return AlgebraMorphism(chart_, target, std::move(imgs));
}

SuperElement HopfGroup::coproduct2(const SuperElement &f) const {
    const auto &t = *triple_;
    auto e01 = tensor_map(*pair_, t.chart(), {t.embedding(0), t.embedding(1)});
    auto d_id = tensor_map(*pair_, t.chart(), {compose(e01, delta_), t.embedding(2)});
    return d_id(delta_(f));
}

Report validate_hopf(const HopfGroup &g) {
    Report r;
    const auto &c = g.chart();
    const auto &pair = g.pair();
    const auto &t = g.triple();

    std::string bad;
    for (std::size_t i = 0; i < c->even_count(); ++i)
        if (g.identity().values()[i] != g.counit_values()[i])
            bad += (bad.empty() ? "" : ", ") + c->even(i).name;
    r.add("identity-is-counit", bad.empty(), bad.empty() ? "" : "differs on " + bad);

    auto e01 = tensor_map(pair, t.chart(), {t.embedding(0), t.embedding(1)});
    auto e12 = tensor_map(pair, t.chart(), {t.embedding(1), t.embedding(2)});
    auto d_id = tensor_map(pair, t.chart(), {compose(e01, g.coproduct()), t.embedding(2)});
    auto id_d = tensor_map(pair, t.chart(), {t.embedding(0), compose(e12, g.coproduct())});
    auto id = AlgebraMorphism::identity(c);
    auto eps = g.counit_into(c);
    auto id_eps = tensor_map(pair, c, {id, eps});
    auto eps_id = tensor_map(pair, c, {eps, id});
    auto s_id = tensor_map(pair, c, {g.antipode(), id});
    auto id_s = tensor_map(pair, c, {id, g.antipode()});

    auto suite = [&](const std::string &name, auto lhs, auto rhs) {
        std::string detail;
        for (std::size_t k = 0; k < c->size(); ++k) {
            SuperElement a = lhs(k), b = rhs(k);
            if (!(a == b))
                detail += std::string(detail.empty() ? "" : "; ") + "fails on " + c->generator_name(k) + ": " +
                          a.to_string() + " != " + b.to_string();
        }
        r.add(name, detail.empty(), detail);
    };
    auto gen = [&](std::size_t k) { return SuperElement::generator(c, k); };
    auto unit = [&](std::size_t k) { return SuperElement::constant(c, g.counit(gen(k))); };
    auto delta = [&](std::size_t k) { return g.coproduct()(gen(k)); };
    suite("coassociativity", [&](std::size_t k) { return d_id(delta(k)); },
          [&](std::size_t k) { return id_d(delta(k)); });
    suite("counit-right", [&](std::size_t k) { return id_eps(delta(k)); }, gen);
    suite("counit-left", [&](std::size_t k) { return eps_id(delta(k)); }, gen);
    suite("antipode-left", [&](std::size_t k) { return s_id(delta(k)); }, unit);
    suite("antipode-right", [&](std::size_t k) { return id_s(delta(k)); }, unit);
    return r;
}

GroupPtr translation_group(std::vector<std::string> even, std::vector<std::string> odd,
                           std::vector<std::string> basis) {
    std::vector<EvenGenerator> ev;
    for (auto &n : even)
        ev.push_back({n, false, false});
    auto c = Chart::make("G", std::move(ev), std::move(odd));
    TensorProduct pair({c, c});
    std::vector<SuperElement> d, s;
    for (std::size_t g = 0; g < c->size(); ++g) {
        d.push_back(SuperElement::generator(pair.chart(), pair.index(0, g)) +
                    SuperElement::generator(pair.chart(), pair.index(1, g)));
        s.push_back(-SuperElement::generator(c, g));
    }
    std::vector<Rational> zero(c->even_count(), Rational(0));
    std::string name = "r" + std::to_string(c->even_count()) + std::to_string(c->odd_count());
    return HopfGroup::make(name, c, std::move(d), zero, std::move(s), zero, std::move(basis));
}

GroupPtr translation_group(std::size_t p, std::size_t q) {
    std::vector<std::string> even, odd;
    for (std::size_t i = 0; i < p; ++i)
        even.push_back(p == 1 ? "x" : "x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < q; ++j)
        odd.push_back(q == 1 ? "s" : "s" + std::to_string(j + 1));
    return translation_group(std::move(even), std::move(odd), {});
}

GroupPtr triangular_group() {
    auto c = Chart::make("G", {{"t", true, false}}, {"tau"});
    return HopfGroup::parse("triangular", c, {"t*t'", "tau*t' + tau'"}, {Rational(1)}, {"t^-1", "-tau*t^-1"},
                            {Rational(1)}, {"E", "F"});
}

GroupPtr gl1_group() {
    auto c = Chart::make("G", {{"t", true, false}}, {});
    return HopfGroup::parse("gl1", c, {"t*t'"}, {Rational(1)}, {"t^-1"}, {Rational(1)}, {"E"});
}

GroupPtr builtin_group(const std::string &name) {
    static const std::regex rpq("r([0-9])([0-9])");
    std::smatch m;
    if (std::regex_match(name, m, rpq)) {
        std::size_t p = std::stoul(m[1]), q = std::stoul(m[2]);
        if (p + q == 0)
            throw std::invalid_argument("r00 is the trivial group and has no coordinates");
        return translation_group(p, q);
    }
    if (name == "triangular")
        return triangular_group();
    if (name == "gl1")
        return gl1_group();
    return nullptr;
}

std::vector<std::string> builtin_group_names() {
    std::vector<std::string> out;
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            if (p + q)
                out.push_back("r" + std::to_string(p) + std::to_string(q));
    out.push_back("triangular");
    out.push_back("gl1");
    return out;
}

GroupPtr body_group(const HopfGroup &g) {
    const auto &c = g.chart();
    std::vector<EvenGenerator> ev;
    for (std::size_t i = 0; i < c->even_count(); ++i)
        ev.push_back(c->even(i));
    auto c0 = Chart::make(c->name() + "0", std::move(ev), {});
    TensorProduct pair0({c0, c0});
    auto proj = body_projection(c, c0);
    auto pair_proj = tensor_map(g.pair(), pair0.chart(),
                                {body_projection(c, pair0.chart(), pair0.index(0, 0)),
                                 body_projection(c, pair0.chart(), pair0.index(1, 0))});
    std::vector<SuperElement> d, s;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c->even_count(); ++i) {
        auto x = SuperElement::generator(c, i);
        d.push_back(pair_proj(g.coproduct()(x)));
        s.push_back(proj(g.antipode()(x)));
        names.push_back(g.basis_names()[i]);
    }
    std::vector<Rational> id(g.identity().values());
    return HopfGroup::make(g.name() + "0", c0, std::move(d), g.counit_values(), std::move(s), std::move(id),
                           std::move(names));
}

TangentVector::TangentVector(GroupPtr g, std::vector<Rational> coeffs) : g_(std::move(g)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != g_->dim())
        throw std::invalid_argument("tangent vector: one coefficient per coordinate required");
}

TangentVector TangentVector::basis(GroupPtr g, std::size_t k) {
    std::vector<Rational> c(g->dim(), Rational(0));
    c.at(k) = 1;
    return TangentVector(std::move(g), std::move(c));
}

int TangentVector::parity() const {
    bool seen[2] = {false, false};
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
        if (coeffs_[g] != 0)
            seen[g_->chart()->is_odd(g) ? 1 : 0] = true;
    if (seen[0] && seen[1])
        return -1;
    return seen[1] ? 1 : 0;
}

Rational TangentVector::apply(const SuperElement &f) const {
    Rational out = 0;
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
        if (coeffs_[g] != 0)
            out += coeffs_[g] * g_->counit(partial_derivative(f, g));
    return out;
}

AlgebraMorphism identity_on_block(const TensorProduct &tp, std::size_t k, const HopfGroup &g) {
    std::vector<AlgebraMorphism> maps;
    for (std::size_t i = 0; i < tp.factor_count(); ++i)
        maps.push_back(i == k ? g.counit_into(tp.chart()) : tp.embedding(i));
    return tensor_map(tp, tp.chart(), maps);
}

SuperElement contract(const TensorProduct &tp, std::size_t k, const TangentVector &a, const SuperElement &f) {
    const auto &g = *a.group();
    require_same_chart(tp.factor(k), g.chart(), "contract");
    auto at_e = identity_on_block(tp, k, g);
    SuperElement out(tp.chart());
    for (std::size_t c = 0; c < g.dim(); ++c)
        if (a.coefficients()[c] != 0)
            out += a.coefficients()[c] * at_e(partial_derivative(f, tp.index(k, c)));
    return out;
}

SymbolicPoint symbolic_point(const ChartPtr &chart, int primes) {
    std::vector<EvenGenerator> ev;
    for (std::size_t i = 0; i < chart->even_count(); ++i) {
        auto e = chart->even(i);
        e.name += std::string(static_cast<std::size_t>(primes), '\'');
        e.parameter = true;
        ev.push_back(std::move(e));
    }
    auto p = Chart::make("P", std::move(ev), {});
    return {p, body_projection(chart, p)};
}

SymbolicPoint symbolic_point(const HopfGroup &g, int primes) { return symbolic_point(g.chart(), primes); }

std::pair<SymbolicPoint, SymbolicPoint> symbolic_pair(const HopfGroup &g) {
    const auto &c = g.chart();
    std::vector<EvenGenerator> ev;
    for (int copy = 1; copy <= 2; ++copy)
        for (std::size_t i = 0; i < c->even_count(); ++i) {
            auto e = c->even(i);
            e.name += std::string(static_cast<std::size_t>(copy), '\'');
            e.parameter = true;
            ev.push_back(std::move(e));
        }
    auto p = Chart::make("P", std::move(ev), {});
    return {{p, body_projection(c, p, 0)}, {p, body_projection(c, p, c->even_count())}};
}

AlgebraMorphism grouplike_inverse(const HopfGroup &g, const AlgebraMorphism &a) { return compose(a, g.antipode()); }

AlgebraMorphism convolve(const HopfGroup &g, const AlgebraMorphism &a, const AlgebraMorphism &b) {
    require_same_chart(a.target(), b.target(), "convolve");
    return compose(tensor_map(g.pair(), a.target(), {a, b}), g.coproduct());
}

AlgebraMorphism unit_grouplike(const HopfGroup &g, const ChartPtr &params) { return g.counit_into(params); }

Action::Action(ChartPtr space, GroupPtr group, std::vector<SuperElement> images, Side side)
    : space_(std::move(space)), g_(std::move(group)), side_(side) {
    std::vector<ChartPtr> f = side_ == Side::Right ? std::vector<ChartPtr>{space_, g_->chart()}
                                                   : std::vector<ChartPtr>{g_->chart(), space_};
    yg_ = std::make_shared<TensorProduct>(f);
    phi_ = AlgebraMorphism(space_, yg_->chart(), std::move(images));
}

Action Action::translation(GroupPtr group, Side side) {
    std::vector<SuperElement> imgs;
    const auto &c = group->chart();
    TensorProduct yg({c, c});
    for (std::size_t g = 0; g < c->size(); ++g)
        imgs.push_back(reinterpret(group->coproduct()(SuperElement::generator(c, g)), yg.chart()));
    return Action(c, std::move(group), std::move(imgs), side);
}

Action Action::product(const TensorProduct &y, GroupPtr group) {
    if (y.factor_count() != 2)
        throw std::invalid_argument("product action: total chart must have two factors");
    require_same_chart(y.factor(1), group->chart(), "product action");
    TensorProduct yg({y.chart(), group->chart()});
    const auto &gc = group->chart();
    std::vector<SuperElement> to_first, to_second;
    for (std::size_t c = 0; c < gc->size(); ++c) {
        to_first.push_back(SuperElement::generator(yg.chart(), yg.index(0, y.index(1, c))));
        to_second.push_back(SuperElement::generator(yg.chart(), yg.index(1, c)));
    }
    auto delta_into = tensor_map(group->pair(), yg.chart(),
                                 {AlgebraMorphism(gc, yg.chart(), to_first), AlgebraMorphism(gc, yg.chart(), to_second)});
    std::vector<SuperElement> imgs;
    const auto &x = y.factor(0);
    for (std::size_t g = 0; g < x->size(); ++g)
        imgs.push_back(SuperElement::generator(yg.chart(), yg.index(0, y.index(0, g))));
    for (std::size_t c = 0; c < gc->size(); ++c)
        imgs.push_back(delta_into(group->coproduct()(SuperElement::generator(gc, c))));
    // the images above follow the unified order of y: evens of X, evens of G, odds of X, odds of G
    std::vector<SuperElement> ordered(y.chart()->size());
    std::size_t n = 0;
    for (std::size_t g = 0; g < x->size(); ++g)
        ordered[y.index(0, g)] = imgs[n++];
    for (std::size_t c = 0; c < gc->size(); ++c)
        ordered[y.index(1, c)] = imgs[n++];
    return Action(y.chart(), std::move(group), std::move(ordered), Side::Right);
}

Report action_check(const Action &a) {
    Report r;
    const auto &y = a.space();
    const auto &g = *a.group();
    const auto &yg = a.product_chart();
    const auto &phi = a.morphism();
    auto id_y = AlgebraMorphism::identity(y);
    std::string assoc, unit;
    if (a.side() == Side::Right) {
        TensorProduct ygg({y, g.chart(), g.chart()});
        auto e01 = tensor_map(yg, ygg.chart(), {ygg.embedding(0), ygg.embedding(1)});
        auto e12 = tensor_map(g.pair(), ygg.chart(), {ygg.embedding(1), ygg.embedding(2)});
        auto id_d = tensor_map(yg, ygg.chart(), {ygg.embedding(0), compose(e12, g.coproduct())});
        auto phi_id = tensor_map(yg, ygg.chart(), {compose(e01, phi), ygg.embedding(2)});
        auto id_eps = tensor_map(yg, y, {id_y, g.counit_into(y)});
        for (std::size_t k = 0; k < y->size(); ++k) {
            auto img = phi.image(k);
            if (!(id_d(img) == phi_id(img)))
                assoc += (assoc.empty() ? "" : ", ") + y->generator_name(k);
            if (!(id_eps(img) == SuperElement::generator(y, k)))
                unit += (unit.empty() ? "" : ", ") + y->generator_name(k);
        }
    } else {
        TensorProduct ggy({g.chart(), g.chart(), y});
        auto e12 = tensor_map(yg, ggy.chart(), {ggy.embedding(1), ggy.embedding(2)});
        auto e01 = tensor_map(g.pair(), ggy.chart(), {ggy.embedding(0), ggy.embedding(1)});
        auto d_id = tensor_map(yg, ggy.chart(), {compose(e01, g.coproduct()), ggy.embedding(2)});
        auto id_psi = tensor_map(yg, ggy.chart(), {ggy.embedding(0), compose(e12, phi)});
        auto eps_id = tensor_map(yg, y, {g.counit_into(y), id_y});
        for (std::size_t k = 0; k < y->size(); ++k) {
            auto img = phi.image(k);
            if (!(d_id(img) == id_psi(img)))
                assoc += (assoc.empty() ? "" : ", ") + y->generator_name(k);
            if (!(eps_id(img) == SuperElement::generator(y, k)))
                unit += (unit.empty() ? "" : ", ") + y->generator_name(k);
        }
    }
    r.add("comodule-coassociativity", assoc.empty(), assoc.empty() ? "" : "fails on " + assoc);
    r.add("comodule-counit", unit.empty(), unit.empty() ? "" : "fails on " + unit);
    return r;
}

Derivation induced_derivation(const Action &phi, const TangentVector &a) {
    const auto &y = phi.space();
    const auto &yg = phi.product_chart();
    std::vector<SuperElement> coeffs;
    for (std::size_t k = 0; k < y->size(); ++k) {
        if (!y->is_odd(k) && y->even(k).parameter) {
            coeffs.emplace_back(y);
            continue;
        }
        auto v = contract(yg, phi.group_block(), a, phi.morphism().image(k));
        coeffs.push_back(yg.extract(phi.space_block(), v));
    }
    return Derivation(y, std::move(coeffs));
}

AlgebraMorphism induced_morphism(const Action &phi, const AlgebraMorphism &a, const TensorProduct &yq) {
    require_same_chart(yq.factor(0), phi.space(), "induced_morphism");
    auto to_q = compose(yq.embedding(1), a);
    auto m = phi.side() == Side::Right ? tensor_map(phi.product_chart(), yq.chart(), {yq.embedding(0), to_q})
                                       : tensor_map(phi.product_chart(), yq.chart(), {to_q, yq.embedding(0)});
    return compose(m, phi.morphism());
}

AlgebraMorphism induced_point_morphism(const Action &phi, const AlgebraMorphism &b, const TensorProduct &gq) {
    require_same_chart(gq.factor(0), phi.group()->chart(), "induced_point_morphism");
    auto to_q = compose(gq.embedding(1), b);
    auto m = phi.side() == Side::Right ? tensor_map(phi.product_chart(), gq.chart(), {to_q, gq.embedding(0)})
                                       : tensor_map(phi.product_chart(), gq.chart(), {gq.embedding(0), to_q});
    return compose(m, phi.morphism());
}

AlgebraMorphism extend_over_parameters(const AlgebraMorphism &m, const TensorProduct &yq) {
    return tensor_map(yq, yq.chart(), {m, yq.embedding(1)});
}

namespace {

Derivation translation_derivation(const GroupPtr &g, const TangentVector &a, std::size_t block) {
    const auto &c = g->chart();
    const auto &pair = g->pair();
    std::vector<SuperElement> coeffs;
    for (std::size_t k = 0; k < c->size(); ++k) {
        auto v = contract(pair, block, a, g->coproduct()(SuperElement::generator(c, k)));
        coeffs.push_back(pair.extract(1 - block, v));
    }
    return Derivation(c, std::move(coeffs));
}

} // namespace

Derivation right_derivation(const GroupPtr &g, const TangentVector &a) { return translation_derivation(g, a, 1); }
Derivation left_derivation(const GroupPtr &g, const TangentVector &a) { return translation_derivation(g, a, 0); }

std::vector<Derivation> right_basis(const GroupPtr &g) {
    std::vector<Derivation> out;
    for (std::size_t k = 0; k < g->dim(); ++k)
        out.push_back(right_derivation(g, TangentVector::basis(g, k)));
    return out;
}

std::vector<Derivation> left_basis(const GroupPtr &g) {
    std::vector<Derivation> out;
    for (std::size_t k = 0; k < g->dim(); ++k)
        out.push_back(left_derivation(g, TangentVector::basis(g, k)));
    return out;
}

AlgebraMorphism right_translation(const HopfGroup &g, const AlgebraMorphism &a, const TensorProduct &gq) {
    auto m = tensor_map(g.pair(), gq.chart(), {gq.embedding(0), compose(gq.embedding(1), a)});
    return compose(m, g.coproduct());
}

AlgebraMorphism left_translation(const HopfGroup &g, const AlgebraMorphism &a, const TensorProduct &gq) {
    auto m = tensor_map(g.pair(), gq.chart(), {compose(gq.embedding(1), a), gq.embedding(0)});
    return compose(m, g.coproduct());
}

LiePtr lie_algebra_of(const HopfGroup &g) {
    const auto &c = g.chart();
    const std::size_t n = g.dim();
    // shared_ptr aliasing keeps the functionals tied to a group pointer without copying
    GroupPtr gp(std::shared_ptr<const HopfGroup>(), &g);
    const auto &pair = g.pair();
    auto pairing = [&](const TangentVector &u, const TangentVector &v, const SuperElement &f) -> Rational {
        return contract(pair, 0, u, contract(pair, 1, v, g.coproduct()(f))).constant_term();
    };
    std::vector<int> par(n);
    for (std::size_t k = 0; k < n; ++k)
        par[k] = c->is_odd(k) ? 1 : 0;
    std::vector<Rational> cc(n * n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto ei = TangentVector::basis(gp, i), ej = TangentVector::basis(gp, j);
            auto br = [&](const SuperElement &f) -> Rational {
                return pairing(ei, ej, f) - sgn(par[i] * par[j]) * pairing(ej, ei, f);
            };
            std::vector<Rational> w(n);
            for (std::size_t k = 0; k < n; ++k) {
                w[k] = br(SuperElement::generator(c, k));
                cc[(i * n + j) * n + k] = w[k];
            }
            // a primitive is fixed by its values on generators; test it on products
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    auto fa = SuperElement::generator(c, a), fb = SuperElement::generator(c, b);
                    Rational expect = w[a] * g.counit(fb) + g.counit(fa) * w[b];
                    if (br(fa * fb) != expect)
                        throw std::runtime_error("lie_algebra_of: bracket of " + g.basis_names()[i] + " and " +
                                                 g.basis_names()[j] + " is not primitive");
                }
        }
    return std::make_shared<LieSuperalgebra>(g.basis_names(), par, std::move(cc));
}

SuperMatrix adjoint_matrix(const HopfGroup &g, const AlgebraMorphism &a) {
    const auto &q = a.target();
    const auto &c = g.chart();
    TensorProduct gq({c, q});
    auto to_q = compose(gq.embedding(1), a);
    auto to_q_inv = compose(gq.embedding(1), grouplike_inverse(g, a));
    auto conj = tensor_map(g.triple(), gq.chart(), {to_q, gq.embedding(0), to_q_inv});
    GroupPtr gp(std::shared_ptr<const HopfGroup>(), &g);
    const std::size_t n = g.dim();
    SuperMatrix m(n, n, SuperElement(q));
    for (std::size_t k = 0; k < n; ++k) {
        auto ck = conj(g.coproduct2(SuperElement::generator(c, k)));
        for (std::size_t j = 0; j < n; ++j)
            m(k, j) = gq.extract(1, contract(gq, 0, TangentVector::basis(gp, j), ck));
    }
    return m;
}

RationalMatrix adjoint_matrix(const LieSuperalgebra &g, const LieVector &v) { return g.ad(v); }

SuperMatrix right_coefficient_matrix(const GroupPtr &g) {
    auto rb = right_basis(g);
    const std::size_t n = g->dim();
    SuperMatrix m(n, n, SuperElement(g->chart()));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c)
            m(j, c) = rb[j].coefficient(c);
    return m;
}

Report parallelizability(const GroupPtr &g) {
    Report r;
    auto det = body_determinant(right_coefficient_matrix(g));
    bool ok = is_unit(det);
    r.add("parallelizable", ok, (ok ? "body determinant " : "body determinant not a unit: ") + det.to_string());
    return r;
}

GForm maurer_cartan(const GroupPtr &g, const LiePtr &lie) {
    const auto &c = g->chart();
    auto phi = inverse(right_coefficient_matrix(g));
    const std::size_t n = g->dim();
    std::vector<Form> comps(n, Form(c));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            if (!phi(a, k).is_zero())
                comps[k] += Form::differential(c, a) * Form::function(phi(a, k));
    return GForm(lie, c, std::move(comps));
}

GForm maurer_cartan(const GroupPtr &g) { return maurer_cartan(g, lie_algebra_of(*g)); }

Report check_maurer_cartan(const GroupPtr &g, const LiePtr &lie, const GForm &theta) {
    Report r;
    const auto &c = g->chart();
    const std::size_t n = g->dim();
    auto rb = right_basis(g);
    std::string bad;
    for (std::size_t j = 0; j < n; ++j) {
        auto v = evaluate({rb[j]}, theta);
        for (std::size_t k = 0; k < n; ++k)
            if (!(v[k] == SuperElement::constant(c, j == k ? 1 : 0)))
                bad += (bad.empty() ? "" : "; ") + ("(R*)_" + lie->name(j) + " gives " + render_gfunction(*lie, v));
    }
    r.add("mc-evaluation", bad.empty(), bad);

    auto flat = d(theta) + Rational(1, 2) * bracket(theta, theta);
    r.add("mc-flatness", flat.is_zero(), flat.is_zero() ? "" : "d theta + 1/2 [theta,theta] = " + flat.to_string());

    auto sp = symbolic_point(*g);
    TensorProduct gq({c, sp.params});
    auto rg = right_translation(*g, sp.delta, gq);
    auto ad_inv = adjoint_matrix(*g, grouplike_inverse(*g, sp.delta));
    SuperMatrix lifted(n, n, SuperElement(gq.chart()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lifted(i, j) = gq.embed(1, ad_inv(i, j));
    auto lhs = pullback(rg, theta);
    auto rhs = apply_matrix(lifted, pullback(gq.embedding(0), theta));
    r.add("mc-equivariance-grouplike", lhs == rhs,
          lhs == rhs ? "" : "R*_g theta = " + lhs.to_string() + " but Ad-twisted theta = " + rhs.to_string());

    bad.clear();
    for (std::size_t a = 0; a < n; ++a) {
        auto l = lie_derivative(rb[a], theta);
        auto rr = -ad_action(lie->basis(a), theta);
        if (!(l == rr))
            bad += (bad.empty() ? "" : "; ") + lie->name(a) + ": " + l.to_string() + " != " + rr.to_string();
    }
    r.add("mc-equivariance-primitive", bad.empty(), bad);
    return r;
}

DistributionReport action_distribution(const Action &phi, const LiePtr &lie, std::uint64_t seed, int samples) {
    DistributionReport out;
    const auto &g = phi.group();
    const std::size_t n = g->dim();
    for (std::size_t k = 0; k < n; ++k)
        out.generators.push_back(induced_derivation(phi, TangentVector::basis(g, k)));
    const int side = phi.side() == Side::Right ? 1 : -1;
    std::string bad;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Derivation expect(phi.space());
            for (std::size_t k = 0; k < n; ++k)
                if (lie->c(a, b, k) != 0)
                    expect += Rational(side * lie->c(a, b, k)) * out.generators[k];
            if (!(bracket(out.generators[a], out.generators[b]) == expect))
                bad += (bad.empty() ? "" : "; ") + ("[" + lie->name(a) + "," + lie->name(b) + "]");
        }
    out.report.add("induced-bracket-closure", bad.empty(), bad.empty() ? "" : "fails on " + bad);

    const auto &y = phi.space();
    std::mt19937_64 eng(seed);
    std::size_t need[2] = {0, 0};
    for (std::size_t k = 0; k < n; ++k)
        ++need[lie->parity(k)];
    std::string fail;
    for (int s = 0; s < samples && fail.empty(); ++s) {
        std::vector<Rational> vals;
        for (std::size_t i = 0; i < y->even_count(); ++i) {
            int num = 0;
            while (num == 0)
                num = std::uniform_int_distribution<int>(-9, 9)(eng);
            Rational q(num, std::uniform_int_distribution<int>(1, 5)(eng));
            q.canonicalize();
            vals.push_back(q);
        }
        Point p(y, vals);
        std::size_t rank_of[2];
        for (int par = 0; par < 2; ++par) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t k = 0; k < n; ++k)
                if (lie->parity(k) == par)
                    rows.push_back(k);
            for (std::size_t c = 0; c < y->size(); ++c)
                if ((y->is_odd(c) ? 1 : 0) == par && (y->is_odd(c) || !y->even(c).parameter))
                    cols.push_back(c);
            RationalMatrix m(rows.size(), cols.size(), Rational(0));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                auto t = tangent_at(out.generators[rows[i]], p);
                for (std::size_t j = 0; j < cols.size(); ++j)
                    m(i, j) = t.coefficients()[cols[j]];
            }
            rank_of[par] = rows.empty() ? 0 : rank(m);
        }
        if (rank_of[0] != need[0] || rank_of[1] != need[1]) {
            std::string pt;
            for (std::size_t i = 0; i < vals.size(); ++i)
                pt += (i ? ", " : "") + y->even(i).name + "=" + vals[i].get_str();
            fail = "rank (" + std::to_string(rank_of[0]) + "|" + std::to_string(rank_of[1]) + ") < (" +
                   std::to_string(need[0]) + "|" + std::to_string(need[1]) + ") at (" + pt + ")";
        }
    }
    out.report.add("regular", fail.empty(),
                   fail.empty() ? "rank (" + std::to_string(need[0]) + "|" + std::to_string(need[1]) + ") at " +
                                      std::to_string(samples) + " points"
                                : fail + ", action not free");
    return out;
}

} // namespace sgeom
