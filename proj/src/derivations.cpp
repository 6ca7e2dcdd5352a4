#include "sgeom/derivations.hpp"

#include <bit>

namespace sgeom {

SuperElement partial_derivative(const SuperElement &f, std::size_t g) {
    const auto &chart = f.chart();
    if (!chart || f.is_zero())
        return f;
    std::vector<Term> out;
    if (!chart->is_odd(g)) {
        for (auto &t : f.terms()) {
            int e = t.mono.exps[g];
            if (e == 0)
                continue;
            Term r = t;
            r.coef *= e;
            r.mono.exps[g] -= 1;
            out.push_back(std::move(r));
        }
    } else {
        std::uint64_t bit = std::uint64_t{1} << (g - chart->even_count());
        for (auto &t : f.terms()) {
            if (!(t.mono.odd & bit))
                continue;
            Term r = t;
            if (std::popcount(t.mono.odd & (bit - 1)) & 1)
                r.coef = -r.coef;
            r.mono.odd &= ~bit;
            out.push_back(std::move(r));
        }
    }
    return SuperElement::from_terms(chart, std::move(out));
}

Derivation::Derivation(ChartPtr chart) : chart_(std::move(chart)) {
    coeffs_.assign(chart_->size(), SuperElement(chart_));
}

Derivation::Derivation(ChartPtr chart, std::vector<SuperElement> coeffs)
    : chart_(std::move(chart)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != chart_->size())
        throw std::invalid_argument("derivation: expected one coefficient per generator");
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
        auto &c = coeffs_[g];
        if (!c.chart())
            c = SuperElement(chart_);
        require_same_chart(c.chart(), chart_, "derivation coefficient");
        if (!chart_->is_odd(g) && chart_->even(g).parameter && !c.is_zero())
            throw std::invalid_argument("derivation: parameter " + chart_->generator_name(g) +
                                        " cannot be differentiated");
    }
}

Derivation Derivation::partial(ChartPtr chart, std::size_t g) {
    Derivation d(chart);
    d.coeffs_.at(g) = SuperElement::constant(chart, 1);
    if (!chart->is_odd(g) && chart->even(g).parameter)
        throw std::invalid_argument("derivation: parameter " + chart->generator_name(g) +
                                    " cannot be differentiated");
    return d;
}

Derivation Derivation::partial(ChartPtr chart, std::string_view name) {
    auto g = chart->find(name);
    if (!g)
        throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return partial(std::move(chart), *g);
}

bool Derivation::is_zero() const {
    for (auto &c : coeffs_)
        if (!c.is_zero())
            return false;
    return true;
}

Parity Derivation::parity() const {
    bool seen[2] = {false, false};
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
        int shift = chart_->is_odd(g) ? 1 : 0;
        for (auto &t : coeffs_[g].terms())
            seen[(t.mono.parity() + shift) & 1] = true;
    }
    if (seen[0] && seen[1])
        return Parity::Mixed;
    return seen[1] ? Parity::Odd : Parity::Even;
}

Derivation Derivation::part(int parity) const {
    Derivation d(chart_);
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
        int shift = chart_->is_odd(g) ? 1 : 0;
        d.coeffs_[g] = coeffs_[g].part((parity + shift) & 1);
    }
    return d;
}

SuperElement Derivation::apply(const SuperElement &f) const {
    SuperElement out(chart_);
    if (f.is_zero())
        return out;
    require_same_chart(f.chart(), chart_, "derivation apply");
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
        if (!coeffs_[g].is_zero())
            out += coeffs_[g] * partial_derivative(f, g);
    return out;
}

Derivation Derivation::operator-() const {
    Derivation d(*this);
    for (auto &c : d.coeffs_)
        c = -c;
    return d;
}

Derivation &Derivation::operator+=(const Derivation &o) {
    if (!chart_) {
        *this = o;
        return *this;
    }
    require_same_chart(chart_, o.chart_, "derivation add");
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
        coeffs_[g] += o.coeffs_[g];
    return *this;
}

Derivation &Derivation::operator-=(const Derivation &o) { return *this += -o; }

Derivation operator*(const SuperElement &f, const Derivation &d) {
    require_same_chart(f.chart(), d.chart_, "derivation scale");
    Derivation out(d.chart_);
    for (std::size_t g = 0; g < d.coeffs_.size(); ++g)
        out.coeffs_[g] = f * d.coeffs_[g];
    return out;
}

Derivation operator*(const Rational &r, const Derivation &d) {
    Derivation out(d);
    for (auto &c : out.coeffs_)
        c *= r;
    return out;
}

bool operator==(const Derivation &a, const Derivation &b) {
    if (!same_chart(a.chart_, b.chart_))
        return false;
    for (std::size_t g = 0; g < a.coeffs_.size(); ++g)
        if (!(a.coeffs_[g] == b.coeffs_[g]))
            return false;
    return true;
}

std::string Derivation::to_string() const {
    std::vector<RenderItem> items;
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
        auto &c = coeffs_[g];
        if (c.is_zero())
            continue;
        items.push_back({c.to_string(), c.terms().size() > 1, "d/d" + chart_->generator_name(g)});
    }
    return render_linear(items, "*");
}

Derivation bracket(const Derivation &a, const Derivation &b) {
    require_same_chart(a.chart(), b.chart(), "bracket");
    Derivation out(a.chart());
    const std::size_t n = a.chart()->size();
    for (int pa = 0; pa < 2; ++pa) {
        Derivation ap = a.part(pa);
        if (ap.is_zero())
            continue;
        for (int pb = 0; pb < 2; ++pb) {
            Derivation bp = b.part(pb);
            if (bp.is_zero())
                continue;
            std::vector<SuperElement> c(n, SuperElement(a.chart()));
            for (std::size_t g = 0; g < n; ++g) {
                c[g] = ap.apply(bp.coefficient(g));
                auto back = bp.apply(ap.coefficient(g));
                if (pa & pb)
                    c[g] += back;
                else
                    c[g] -= back;
            }
            out += Derivation(a.chart(), std::move(c));
        }
    }
    return out;
}

PointDerivation::PointDerivation(Point p, std::vector<Rational> coeffs)
    : point_(std::move(p)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != point_.chart()->size())
        throw std::invalid_argument("point derivation: expected one coefficient per generator");
}

Rational PointDerivation::apply(const SuperElement &f) const {
    Rational out = 0;
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
        if (coeffs_[g] != 0)
            out += coeffs_[g] * evaluate(partial_derivative(f, g), point_);
    return out;
}

PointDerivation tangent_at(const Derivation &xi, const Point &p) {
    require_same_chart(xi.chart(), p.chart(), "tangent_at");
    std::vector<Rational> c;
    for (auto &coef : xi.coefficients())
        c.push_back(evaluate(coef, p));
    return PointDerivation(p, std::move(c));
}

Derivation pushforward(const AlgebraMorphism &sigma, const AlgebraMorphism &sigma_inv, const Derivation &xi) {
    require_same_chart(sigma.source(), sigma_inv.target(), "pushforward");
    require_same_chart(sigma.target(), sigma_inv.source(), "pushforward");
    require_same_chart(xi.chart(), sigma.target(), "pushforward");
    const auto &n = sigma.source();
    for (std::size_t g = 0; g < n->size(); ++g) {
        auto y = SuperElement::generator(n, g);
        if (!(sigma_inv.apply(sigma.apply(y)) == y))
            throw std::invalid_argument("pushforward: inverse fails on " + n->generator_name(g));
    }
    const auto &m = sigma.target();
    for (std::size_t g = 0; g < m->size(); ++g) {
        auto x = SuperElement::generator(m, g);
        if (!(sigma.apply(sigma_inv.apply(x)) == x))
            throw std::invalid_argument("pushforward: inverse fails on " + m->generator_name(g));
    }
    std::vector<SuperElement> c;
    for (std::size_t g = 0; g < n->size(); ++g)
        c.push_back(sigma_inv.apply(xi.apply(sigma.image(g))));
    return Derivation(n, std::move(c));
}

bool related(const AlgebraMorphism &sigma, const Derivation &xi, const Derivation &eta) {
    require_same_chart(xi.chart(), sigma.target(), "related");
    require_same_chart(eta.chart(), sigma.source(), "related");
    for (std::size_t g = 0; g < sigma.source()->size(); ++g) {
        if (!(sigma.apply(eta.coefficient(g)) == xi.apply(sigma.image(g))))
            return false;
    }
    return true;
}

bool is_vertical(const AlgebraMorphism &sigma, const Derivation &xi) {
    return related(sigma, xi, Derivation(sigma.source()));
}

} // namespace sgeom
