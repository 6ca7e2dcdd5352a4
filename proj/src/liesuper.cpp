#include "sgeom/liesuper.hpp"

#include <ostream>

namespace sgeom {

namespace {

int sgn(int e) { return (e & 1) ? -1 : 1; }

} // namespace

LieSuperalgebra::LieSuperalgebra(std::vector<std::string> names, std::vector<int> parities,
                                 std::vector<Rational> constants)
    : names_(std::move(names)), parities_(std::move(parities)), c_(std::move(constants)) {
    const std::size_t d = names_.size();
    if (parities_.size() != d || c_.size() != d * d * d)
        throw std::invalid_argument("lie superalgebra: inconsistent sizes");
    for (auto &p : parities_)
        if (p != 0 && p != 1)
            throw std::invalid_argument("lie superalgebra: parity must be 0 or 1");
    for (auto &x : c_)
        x.canonicalize();
}

LieSuperalgebra LieSuperalgebra::abelian(std::vector<std::string> names, std::vector<int> parities) {
    std::size_t d = names.size();
    return LieSuperalgebra(std::move(names), std::move(parities), std::vector<Rational>(d * d * d, Rational(0)));
}

LieVector LieSuperalgebra::basis(std::size_t i) const {
    LieVector v(dim(), Rational(0));
    v.at(i) = 1;
    return v;
}

LieVector LieSuperalgebra::bracket(const LieVector &u, const LieVector &v) const {
    if (u.size() != dim() || v.size() != dim())
        throw std::invalid_argument("bracket: vector size does not match algebra");
    LieVector out(dim(), Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) {
        if (u[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (v[j] == 0)
                continue;
            Rational uv = u[i] * v[j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (c(i, j, k) != 0)
                    out[k] += uv * c(i, j, k);
        }
    }
    return out;
}

RationalMatrix LieSuperalgebra::ad(const LieVector &u) const {
    RationalMatrix m(dim(), dim(), Rational(0));
    for (std::size_t j = 0; j < dim(); ++j) {
        auto w = bracket(u, basis(j));
        for (std::size_t k = 0; k < dim(); ++k)
            m(k, j) = w[k];
    }
    return m;
}

int LieSuperalgebra::parity_of(const LieVector &v) const {
    bool seen[2] = {false, false};
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            seen[parities_[i]] = true;
    if (seen[0] && seen[1])
        return -1;
    return seen[1] ? 1 : 0;
}

bool LieSuperalgebra::is_abelian() const {
    for (auto &x : c_)
        if (x != 0)
            return false;
    return true;
}

LieSuperalgebra LieSuperalgebra::changed_basis(const RationalMatrix &p, std::vector<std::string> names) const {
    const std::size_t n = dim();
    auto pinv = inverse(p);
    if (!pinv || p.rows() != n || names.size() != n)
        throw std::invalid_argument("changed_basis: matrix must be invertible of the algebra's size");
    std::vector<int> par(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        LieVector col(n);
        for (std::size_t i = 0; i < n; ++i)
            col[i] = p(i, a);
        int q = parity_of(col);
        if (q < 0)
            throw std::invalid_argument("changed_basis: new basis vector of mixed parity");
        par[a] = q;
    }
    std::vector<Rational> cc(n * n * n, Rational(0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            LieVector ua(n), ub(n);
            for (std::size_t i = 0; i < n; ++i) {
                ua[i] = p(i, a);
                ub[i] = p(i, b);
            }
            auto w = bracket(ua, ub);
            for (std::size_t k = 0; k < n; ++k) {
                Rational s = 0;
                for (std::size_t i = 0; i < n; ++i)
                    s += (*pinv)(k, i) * w[i];
                cc[(a * n + b) * n + k] = s;
            }
        }
    return LieSuperalgebra(std::move(names), std::move(par), std::move(cc));
}

std::string LieSuperalgebra::render_vector(const LieVector &v) const {
    std::vector<RenderItem> items;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            items.push_back({v[i].get_str(), false, names_[i]});
    return render_linear(items, "*");
}

std::vector<std::string> LieSuperalgebra::bracket_table() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i; j < dim(); ++j)
            out.push_back("[" + names_[i] + "," + names_[j] + "] = " + render_vector(bracket(basis(i), basis(j))));
    return out;
}

Report LieSuperalgebra::validate() const {
    Report r;
    const std::size_t n = dim();
    std::string closure, anti, jac;
    auto append = [](std::string &s, const std::string &x) { s += (s.empty() ? "" : "; ") + x; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (c(i, j, k) != 0 && parities_[k] != (parities_[i] ^ parities_[j]))
                    append(closure, "[" + names_[i] + "," + names_[j] + "] has " + names_[k] + "-component " +
                                        c(i, j, k).get_str());
                if (c(i, j, k) + sgn(parities_[i] * parities_[j]) * c(j, i, k) != 0)
                    append(anti, "(" + names_[i] + "," + names_[j] + ";" + names_[k] + ")");
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e) {
                int pa = parities_[a], pb = parities_[b], pc = parities_[e];
                auto ea = basis(a), eb = basis(b), ec = basis(e);
                auto t1 = bracket(ea, bracket(eb, ec));
                auto t2 = bracket(eb, bracket(ec, ea));
                auto t3 = bracket(ec, bracket(ea, eb));
                LieVector sum(n, Rational(0));
                for (std::size_t k = 0; k < n; ++k)
                    sum[k] = sgn(pa * pc) * t1[k] + sgn(pb * pa) * t2[k] + sgn(pc * pb) * t3[k];
                bool zero = true;
                for (auto &x : sum)
                    zero = zero && x == 0;
                if (!zero)
                    append(jac, "(" + names_[a] + "," + names_[b] + "," + names_[e] + ") -> " + render_vector(sum));
            }
    r.add("parity-closure", closure.empty(), closure);
    r.add("super-antisymmetry", anti.empty(), anti);
    r.add("jacobi", jac.empty(), jac);
    return r;
}

GForm::GForm(LiePtr g, ChartPtr chart) : g_(std::move(g)), chart_(std::move(chart)) {
    comps_.assign(g_->dim(), Form(chart_));
}

GForm::GForm(LiePtr g, ChartPtr chart, std::vector<Form> comps)
    : g_(std::move(g)), chart_(std::move(chart)), comps_(std::move(comps)) {
    if (comps_.size() != g_->dim())
        throw std::invalid_argument("gform: expected one component per basis element");
    for (auto &f : comps_) {
        if (!f.chart())
            f = Form(chart_);
        require_same_chart(f.chart(), chart_, "gform component");
    }
}

GForm GForm::single(LiePtr g, const Form &a, std::size_t k) {
    GForm out(std::move(g), a.chart());
    out.comps_.at(k) = a;
    return out;
}

bool GForm::is_zero() const {
    for (auto &f : comps_)
        if (!f.is_zero())
            return false;
    return true;
}

int GForm::max_degree() const {
    int m = -1;
    for (auto &f : comps_)
        m = std::max(m, f.max_degree());
    return m;
}

GForm GForm::degree_part(int r) const {
    GForm out(*this);
    for (auto &f : out.comps_)
        f = f.degree_part(r);
    return out;
}

Parity GForm::parity() const {
    bool seen[2] = {false, false};
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        for (int j = 0; j < 2; ++j)
            if (!comps_[k].part(j).is_zero())
                seen[j ^ g_->parity(k)] = true;
    }
    if (seen[0] && seen[1])
        return Parity::Mixed;
    return seen[1] ? Parity::Odd : Parity::Even;
}

GForm GForm::part(int total_parity) const {
    GForm out(*this);
    for (std::size_t k = 0; k < comps_.size(); ++k)
        out.comps_[k] = comps_[k].part(total_parity ^ g_->parity(k));
    return out;
}

GForm GForm::operator-() const {
    GForm out(*this);
    for (auto &f : out.comps_)
        f = -f;
    return out;
}

GForm &GForm::operator+=(const GForm &o) {
    if (!g_) {
        *this = o;
        return *this;
    }
    if (!(*g_ == *o.g_))
        throw std::invalid_argument("gform: algebra mismatch");
    require_same_chart(chart_, o.chart_, "gform add");
    for (std::size_t k = 0; k < comps_.size(); ++k)
        comps_[k] += o.comps_[k];
    return *this;
}

GForm &GForm::operator-=(const GForm &o) { return *this += -o; }

GForm operator*(const Rational &r, GForm a) {
    for (auto &f : a.comps_)
        f = r * f;
    return a;
}

GForm operator*(const Form &f, const GForm &a) {
    GForm out(a);
    for (auto &c : out.comps_)
        c = f * c;
    return out;
}

bool operator==(const GForm &a, const GForm &b) {
    if (!(*a.g_ == *b.g_))
        return false;
    for (std::size_t k = 0; k < a.comps_.size(); ++k)
        if (!(a.comps_[k] == b.comps_[k]))
            return false;
    return true;
}

std::string GForm::to_string() const {
    std::vector<RenderItem> items;
    for (std::size_t k = 0; k < comps_.size(); ++k)
        if (!comps_[k].is_zero())
            items.push_back({comps_[k].to_string(), comps_[k].terms().size() > 1, g_->name(k)});
    return render_linear(items, " (x) ");
}

std::ostream &operator<<(std::ostream &os, const GForm &a) { return os << a.to_string(); }

std::string render_gfunction(const LieSuperalgebra &g, const GFunction &f) {
    std::vector<RenderItem> items;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!f[k].is_zero())
            items.push_back({f[k].to_string(), f[k].terms().size() > 1, g.name(k)});
    return render_linear(items, " (x) ");
}

namespace {

void require_same_algebra(const GForm &a, const GForm &b) {
    if (!(*a.algebra() == *b.algebra()))
        throw std::invalid_argument("gform: algebra mismatch");
    require_same_chart(a.chart(), b.chart(), "gform");
}

} // namespace

GForm bracket(const GForm &a, const GForm &b) {
    require_same_algebra(a, b);
    const auto &g = *a.algebra();
    const std::size_t n = g.dim();
    std::vector<Form> out(n, Form(a.chart()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.component(i).is_zero())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.component(j).is_zero())
                continue;
            bool any = false;
            for (std::size_t k = 0; k < n; ++k)
                any = any || g.c(i, j, k) != 0;
            if (!any)
                continue;
            Form prod(a.chart());
            for (int jb = 0; jb < 2; ++jb) {
                Form bj = b.component(j).part(jb);
                if (bj.is_zero())
                    continue;
                Form p = a.component(i) * bj;
                prod += (jb * g.parity(i)) & 1 ? -p : p;
            }
            for (std::size_t k = 0; k < n; ++k)
                if (g.c(i, j, k) != 0)
                    out[k] += g.c(i, j, k) * prod;
        }
    }
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GForm d(const GForm &a) {
    std::vector<Form> out;
    for (auto &f : a.components())
        out.push_back(d(f));
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GForm interior(const Derivation &xi, const GForm &a) {
    std::vector<Form> out;
    for (auto &f : a.components())
        out.push_back(interior(xi, f));
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GForm lie_derivative(const Derivation &xi, const GForm &a) {
    std::vector<Form> out;
    for (auto &f : a.components())
        out.push_back(lie_derivative(xi, f));
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GFunction evaluate(const std::vector<Derivation> &xis, const GForm &a) {
    GFunction out;
    for (auto &f : a.components()) {
        auto v = evaluate(xis, f);
        out.push_back(v.chart() ? v : SuperElement(a.chart()));
    }
    return out;
}

GForm pullback(const AlgebraMorphism &sigma, const GForm &a) {
    std::vector<Form> out;
    for (auto &f : a.components())
        out.push_back(pullback(sigma, f));
    return GForm(a.algebra(), sigma.target(), std::move(out));
}

GForm ad_action(const LieVector &v, const GForm &a) {
    const auto &g = *a.algebra();
    int p = g.parity_of(v);
    if (p < 0)
        throw std::invalid_argument("ad_action: vector of mixed parity");
    const std::size_t n = g.dim();
    std::vector<Form> out(n, Form(a.chart()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.component(i).is_zero())
            continue;
        auto w = g.bracket(v, g.basis(i));
        for (int j = 0; j < 2; ++j) {
            Form part = a.component(i).part(j);
            if (part.is_zero())
                continue;
            if ((p * j) & 1)
                part = -part;
            for (std::size_t k = 0; k < n; ++k)
                if (w[k] != 0)
                    out[k] += w[k] * part;
        }
    }
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GForm apply_matrix(const SuperMatrix &m, const GForm &a) {
    const std::size_t n = a.algebra()->dim();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_matrix: size mismatch");
    std::vector<Form> out(n, Form(a.chart()));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.component(i).is_zero())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            const auto &e = m(j, i);
            if (e.is_zero())
                continue;
            if (e.parity() != Parity::Even)
                throw std::invalid_argument("apply_matrix: entries must be even");
            out[j] += Form::function(e) * a.component(i);
        }
    }
    return GForm(a.algebra(), a.chart(), std::move(out));
}

GForm change_basis(const GForm &a, const LiePtr &h, const RationalMatrix &p) {
    auto pinv = inverse(p);
    if (!pinv)
        throw std::invalid_argument("change_basis: singular matrix");
    const std::size_t n = h->dim();
    std::vector<Form> out(n, Form(a.chart()));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < n; ++i)
            if ((*pinv)(b, i) != 0)
                out[b] += (*pinv)(b, i) * a.component(i);
    return GForm(h, a.chart(), std::move(out));
}

} // namespace sgeom
