#include "sgeom/bundle.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace sgeom {

namespace {

bool is_zero(const GFunction &f) {
    for (auto &x : f)
        if (!x.is_zero())
            return false;
    return true;
}

bool equal(const GFunction &a, const GFunction &b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!((a[k] - b[k]).is_zero()))
            return false;
    return true;
}

std::string join(const std::vector<std::string> &items, std::size_t limit = 4) {
    std::string s;
    for (std::size_t i = 0; i < items.size() && i < limit; ++i)
        s += (i ? "; " : "") + items[i];
    if (items.size() > limit)
        s += "; ... (" + std::to_string(items.size()) + " total)";
    return s;
}

// runs fn(0..n-1) across workers; results keep index order
std::vector<std::string> fan_out(std::size_t n, unsigned threads, const std::function<std::string(std::size_t)> &fn) {
    std::vector<std::string> out(n);
    unsigned w = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(w);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;)
                    out[i] = fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto &th : pool)
        th.join();
    for (auto &e : errs)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::vector<std::string> nonempty(std::vector<std::string> v) {
    std::vector<std::string> out;
    for (auto &s : v)
        if (!s.empty())
            out.push_back(std::move(s));
    return out;
}

void add_suite(Report &r, const std::string &name, const std::vector<std::string> &results, const std::string &ok) {
    auto bad = nonempty(results);
    r.add(name, bad.empty(), bad.empty() ? ok : join(bad));
}

std::string dname(const ChartPtr &c, std::size_t g) { return "d/d" + c->generator_name(g); }

// group-like and primitive equivariance of an algebra-valued form on the total space
void equivariance(Report &r, const Bundle &b, const GForm &a, const std::string &prefix) {
    const auto &g = *b.group();
    const std::size_t n = g.dim();
    auto sp = symbolic_point(g);
    TensorProduct yq({b.chart(), sp.params});
    auto phig = induced_morphism(b.action(), sp.delta, yq);
    auto ad_inv = adjoint_matrix(g, grouplike_inverse(g, sp.delta));
    SuperMatrix lifted(n, n, SuperElement(yq.chart()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lifted(i, j) = yq.embed(1, ad_inv(i, j));
    auto lhs = pullback(phig, a);
    auto rhs = apply_matrix(lifted, pullback(yq.embedding(0), a));
    r.add(prefix + "equivariance-grouplike", lhs == rhs,
          lhs == rhs ? "" : "Phi*_g gives " + lhs.to_string() + " but Ad(g^-1) gives " + rhs.to_string());
    std::vector<std::string> bad;
    const auto &lie = *b.algebra();
    for (std::size_t k = 0; k < n; ++k) {
        auto l = lie_derivative(b.vertical()[k], a);
        auto rr = -ad_action(lie.basis(k), a);
        if (!(l == rr))
            bad.push_back("witness (Phi*)_" + lie.name(k) + ": " + l.to_string() + " != " + rr.to_string());
    }
    r.add(prefix + "equivariance-primitive", bad.empty(), join(bad));
}

// drops odd generators and ds, keeps the even body on a chart of even generators
Form body_form(const Form &f, const ChartPtr &y0) {
    std::vector<FormTerm> terms;
    for (auto &t : f.terms()) {
        bool has_ds = false;
        for (int e : t.diff.ds)
            has_ds = has_ds || e != 0;
        if (has_ds)
            continue;
        std::vector<Term> coef;
        for (auto &ct : t.coef.terms())
            if (!ct.mono.odd)
                coef.push_back({Monomial{ct.mono.exps, 0}, ct.coef});
        if (coef.empty())
            continue;
        terms.push_back({DiffMonomial{t.diff.dx, std::vector<int>(y0->odd_count(), 0)},
                         SuperElement::from_terms(y0, std::move(coef))});
    }
    return Form::from_terms(y0, std::move(terms));
}

GForm body_gform(const GForm &a, const LiePtr &lie0, const ChartPtr &y0) {
    std::vector<Form> comps;
    const auto &lie = *a.algebra();
    for (std::size_t k = 0; k < lie.dim(); ++k)
        if (lie.parity(k) == 0)
            comps.push_back(body_form(a.component(k), y0));
    return GForm(lie0, y0, std::move(comps));
}

} // namespace

BundlePtr Bundle::build(ChartPtr base, GroupPtr group, std::uint64_t seed) {
    for (std::size_t i = 0; i < base->even_count(); ++i)
        if (base->even(i).parameter)
            throw std::invalid_argument("base chart may not contain parameters");
    std::shared_ptr<Bundle> b(new Bundle());
    b->base_ = base;
    b->group_ = group;
    b->total_ = std::make_shared<TensorProduct>(std::vector<ChartPtr>{base, group->chart()});
    b->action_ = std::make_shared<Action>(Action::product(*b->total_, group));
    b->projection_ = b->total_->embedding(0);
    b->lie_ = lie_algebra_of(*group);

    Report &r = b->report_;
    r.merge(action_check(*b->action_));
    auto dist = action_distribution(*b->action_, b->lie_, seed);
    r.merge(dist.report);
    b->vertical_ = dist.generators;

    std::vector<std::string> bad;
    for (std::size_t k = 0; k < b->vertical_.size(); ++k)
        if (!is_vertical(b->projection_, b->vertical_[k]))
            bad.push_back("(Phi*)_" + b->lie_->name(k));
    r.add("vertical-induced", bad.empty(), bad.empty() ? "" : join(bad) + " not vertical");

    const std::size_t n = group->dim();
    SuperMatrix m(n, n, SuperElement(b->chart()));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c)
            m(k, c) = b->vertical_[k].coefficient(b->total_->index(1, c));
    auto det = n ? body_determinant(m) : SuperElement::constant(b->chart(), 1);
    // the module of vertical derivations is free on the fiber partials; the induced ones must span it
    r.add("vertical-span", is_unit(det), "rank " + std::to_string(n) + ", body determinant " + det.to_string());

    if (!r.passed())
        throw BundleError("bundle checks failed", r);
    b->theta_ = maurer_cartan(group, b->lie_);
    auto lb = left_basis(group);
    for (auto &l : lb)
        b->left_theta_.push_back(evaluate({l}, b->theta_));
    return b;
}

AlgebraMorphism Bundle::section(const AlgebraMorphism &sigma) const {
    require_same_chart(sigma.source(), group_->chart(), "section");
    require_same_chart(sigma.target(), base_, "section");
    return tensor_map(*total_, base_, {AlgebraMorphism::identity(base_), sigma});
}

AlgebraMorphism Bundle::identity_gauge() const { return group_->counit_into(base_); }

Form Bundle::lift_base(const Form &f) const { return pullback(projection_, f); }

GForm Bundle::lift_fiber(const GForm &f) const { return pullback(total_->embedding(1), f); }

Connection connection_from_beta(const BundlePtr &b, const GForm &beta) {
    const auto &lie = *b->algebra();
    if (!(*beta.algebra() == lie))
        throw std::invalid_argument("beta: algebra does not match the group");
    require_same_chart(beta.chart(), b->base(), "beta");
    for (std::size_t k = 0; k < lie.dim(); ++k) {
        const auto &f = beta.component(k);
        if (f.is_zero())
            continue;
        if (!f.is_degree(1))
            throw std::invalid_argument("beta component " + lie.name(k) + " is not a 1-form");
        Parity want = lie.parity(k) ? Parity::Odd : Parity::Even;
        if (f.parity() != want)
            throw std::invalid_argument("beta component " + lie.name(k) + " must be " + parity_name(want));
    }
    const auto &tp = b->total();
    std::vector<Form> comps(lie.dim(), Form(b->chart()));
    for (std::size_t k = 0; k < lie.dim(); ++k) {
        if (beta.component(k).is_zero())
            continue;
        Form lifted = b->lift_base(beta.component(k));
        for (std::size_t j = 0; j < lie.dim(); ++j) {
            const auto &m = b->left_theta()[k][j];
            if (!m.is_zero())
                comps[j] += lifted * Form::function(tp.embed(1, m));
        }
    }
    GForm omega = GForm(b->algebra(), b->chart(), std::move(comps)) + b->lift_fiber(b->theta());
    Connection c{b, beta, omega, {}, false};
    c.report = verify_connection(*b, omega);
    c.verified = c.report.passed();
    return c;
}

Connection connection_from_form(const BundlePtr &b, const GForm &omega) {
    require_same_chart(omega.chart(), b->chart(), "connection form");
    Connection c{b, std::nullopt, omega, {}, false};
    c.report = verify_connection(*b, omega);
    c.verified = c.report.passed();
    return c;
}

Report verify_connection(const Bundle &b, const GForm &omega) {
    Report r;
    const auto &lie = *b.algebra();
    std::vector<std::string> bad;
    for (std::size_t k = 0; k < lie.dim(); ++k) {
        const auto &f = omega.component(k);
        if (!f.is_zero() && !f.is_degree(1))
            bad.push_back(lie.name(k) + " component is not a 1-form");
    }
    if (omega.parity() == Parity::Odd || omega.parity() == Parity::Mixed)
        bad.push_back("total parity is not even");
    r.add("connection-degree", bad.empty(), join(bad));

    bad.clear();
    for (std::size_t i = 0; i < lie.dim(); ++i) {
        auto v = evaluate({b.vertical()[i]}, omega);
        GFunction want(lie.dim(), SuperElement(b.chart()));
        want[i] = SuperElement::constant(b.chart(), 1);
        if (!equal(v, want))
            bad.push_back("witness (Phi*)_" + lie.name(i) + ": gives " + render_gfunction(lie, v));
    }
    r.add("vertical-reproduction", bad.empty(), join(bad));
    equivariance(r, b, omega, "");
    return r;
}

Derivation horizontal_part(const Bundle &b, const GForm &omega, const Derivation &xi) {
    Derivation out(b.chart());
    for (int p = 0; p < 2; ++p) {
        auto part = xi.part(p);
        if (part.is_zero())
            continue;
        auto f = evaluate({part}, omega);
        out += part;
        for (std::size_t k = 0; k < f.size(); ++k)
            if (!f[k].is_zero())
                out -= f[k] * b.vertical()[k];
    }
    return out;
}

GForm curvature(const GForm &omega) { return d(omega) + Rational(1, 2) * bracket(omega, omega); }

Report curvature_identities(const Connection &c, const IdentityOptions &opt) {
    const Bundle &b = *c.bundle;
    const GForm &omega = c.omega;
    const auto &y = b.chart();
    const auto &lie = *b.algebra();
    Report r;
    const GForm F = curvature(omega);
    const GForm domega = d(omega);
    const GForm ww = bracket(omega, omega);
    const GForm dF = d(F);

    auto coords = y->coordinates();
    const std::size_t n = coords.size();
    std::vector<Derivation> D, H;
    std::vector<std::string> dn, hn;
    for (auto g : coords) {
        D.push_back(Derivation::partial(y, g));
        dn.push_back(dname(y, g));
        hn.push_back("h(" + dname(y, g) + ")");
    }
    H.resize(n);
    fan_out(n, opt.threads, [&](std::size_t i) {
        H[i] = horizontal_part(b, omega, D[i]);
        return std::string();
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            pairs.push_back({i, j});
    const std::size_t nv = b.vertical().size();
    std::vector<std::string> vn;
    for (std::size_t k = 0; k < nv; ++k)
        vn.push_back("(Phi*)_" + lie.name(k));

    // (a) structure equation, both sides evaluated independently
    add_suite(r, "structure-equation",
              fan_out(pairs.size(), opt.threads,
                      [&](std::size_t t) -> std::string {
                          auto [i, j] = pairs[t];
                          auto lhs = evaluate({H[i], H[j]}, domega);
                          auto rhs = evaluate({D[i], D[j]}, F);
                          if (equal(lhs, rhs))
                              return "";
                          return "(" + dn[i] + ", " + dn[j] + "): " + render_gfunction(lie, lhs) +
                                 " != " + render_gfunction(lie, rhs);
                      }),
              std::to_string(pairs.size()) + " pairs");
    add_suite(r, "structure-case-horizontal",
              fan_out(pairs.size(), opt.threads,
                      [&](std::size_t t) -> std::string {
                          auto [i, j] = pairs[t];
                          auto v = evaluate({H[i], H[j]}, ww);
                          return is_zero(v) ? "" : "(" + hn[i] + ", " + hn[j] + ") gives " + render_gfunction(lie, v);
                      }),
              "");
    add_suite(r, "structure-case-mixed",
              fan_out(n * nv, opt.threads,
                      [&](std::size_t t) -> std::string {
                          std::size_t i = t / nv, k = t % nv;
                          auto v1 = evaluate({H[i], b.vertical()[k]}, domega);
                          auto v2 = evaluate({H[i], b.vertical()[k]}, ww);
                          if (is_zero(v1) && is_zero(v2))
                              return "";
                          return "(" + hn[i] + ", " + vn[k] + ") gives " + render_gfunction(lie, v1) + " and " +
                                 render_gfunction(lie, v2);
                      }),
              "");
    add_suite(r, "structure-case-vertical",
              fan_out(nv * nv, opt.threads,
                      [&](std::size_t t) -> std::string {
                          std::size_t k = t / nv, l = t % nv;
                          if (l < k)
                              return "";
                          auto v = evaluate({b.vertical()[k], b.vertical()[l]}, F);
                          return is_zero(v) ? "" : "(" + vn[k] + ", " + vn[l] + ") gives " + render_gfunction(lie, v);
                      }),
              "");

    // (b) Bianchi
    auto fw = bracket(F, omega);
    r.add("bianchi-dF", dF == fw, dF == fw ? "" : "dF = " + dF.to_string() + " but [F,omega] = " + fw.to_string());
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k)
                triples.push_back({i, j, k});
    add_suite(r, "bianchi-horizontal",
              fan_out(triples.size(), opt.threads,
                      [&](std::size_t t) -> std::string {
                          auto [i, j, k] = triples[t];
                          auto v = evaluate({H[i], H[j], H[k]}, dF);
                          return is_zero(v) ? ""
                                            : "(" + hn[i] + ", " + hn[j] + ", " + hn[k] + ") gives " +
                                                  render_gfunction(lie, v);
                      }),
              std::to_string(triples.size()) + " triples");

    // (c) equivariance of F
    equivariance(r, b, F, "curvature-");

    // horizontal projection and the splitting Der = H + Ver
    add_suite(r, "horizontal-projection",
              fan_out(n, opt.threads,
                      [&](std::size_t i) -> std::string {
                          if (!(horizontal_part(b, omega, H[i]) == H[i]))
                              return hn[i] + " not idempotent";
                          if (!is_zero(evaluate({H[i].part(0)}, omega)) || !is_zero(evaluate({H[i].part(1)}, omega)))
                              return hn[i] + " not in ker omega";
                          return "";
                      }),
              "");

    const auto &tp = b.total();
    std::vector<std::size_t> base_idx;
    for (std::size_t g = 0; g < b.base()->size(); ++g)
        if (b.base()->is_odd(g) || !b.base()->even(g).parameter)
            base_idx.push_back(tp.index(0, g));
    std::vector<Derivation> basis;
    std::vector<std::string> basis_names;
    for (auto g : base_idx) {
        basis.push_back(horizontal_part(b, omega, Derivation::partial(y, g)));
        basis_names.push_back("h(" + dname(y, g) + ")");
    }
    const std::size_t nh = basis.size();
    for (std::size_t k = 0; k < nv; ++k)
        basis.push_back(b.vertical()[k]);
    const std::size_t nb = basis.size();
    SuperMatrix M(nb, n, SuperElement(y));
    for (std::size_t l = 0; l < nb; ++l)
        for (std::size_t g = 0; g < n; ++g)
            M(l, g) = basis[l].coefficient(coords[g]);
    if (nb != n) {
        r.add("splitting", false, "basis size " + std::to_string(nb) + " != " + std::to_string(n));
        return r;
    }
    auto det = body_determinant(M);
    r.add("splitting", is_unit(det), "H + Ver body determinant " + det.to_string());
    if (!is_unit(det))
        return r;
    SuperMatrix X = inverse(M);

    // (d) bracket closure of the horizontal basis by a linear solve over the total algebra
    std::vector<std::pair<std::size_t, std::size_t>> hp;
    for (std::size_t i = 0; i < nh; ++i)
        for (std::size_t j = i; j < nh; ++j)
            hp.push_back({i, j});
    std::vector<std::string> solve_errors(hp.size());
    auto witnesses = fan_out(hp.size(), opt.threads, [&](std::size_t t) -> std::string {
        auto [i, j] = hp[t];
        auto w = bracket(basis[i], basis[j]);
        std::vector<SuperElement> a(nb, SuperElement(y));
        for (std::size_t l = 0; l < nb; ++l)
            for (std::size_t g = 0; g < n; ++g)
                a[l] += w.coefficient(coords[g]) * X(g, l);
        Derivation back(y);
        for (std::size_t l = 0; l < nb; ++l)
            back += a[l] * basis[l];
        if (!(back == w)) {
            solve_errors[t] = "solve failed for [" + basis_names[i] + ", " + basis_names[j] + "]";
            return "";
        }
        std::vector<RenderItem> items;
        for (std::size_t k = 0; k < nv; ++k)
            if (!a[nh + k].is_zero())
                items.push_back({a[nh + k].to_string(), a[nh + k].terms().size() > 1, vn[k]});
        if (items.empty())
            return "";
        return "[" + basis_names[i] + ", " + basis_names[j] + "] has vertical part " + render_linear(items, "*");
    });
    auto errs = nonempty(solve_errors);
    auto wit = nonempty(witnesses);
    r.add("closure-solve", errs.empty(), join(errs));
    bool involutive = wit.empty();
    r.add("involutive", involutive, involutive ? std::to_string(hp.size()) + " horizontal pairs close" : join(wit));
    bool flat = F.is_zero();
    r.add("flatness-iff-involutivity", flat == involutive,
          std::string(flat ? "flat" : "curved") + ", " + (involutive ? "involutive" : "not involutive"));
    return r;
}

SectionPullback section_pullback(const Connection &c, const AlgebraMorphism &sigma) {
    if (!c.beta)
        throw std::invalid_argument("section_pullback: connection was not built from beta");
    const Bundle &b = *c.bundle;
    const auto &lie = *b.algebra();
    const auto &x = b.base();
    std::vector<Form> comps(lie.dim(), Form(x));
    for (std::size_t k = 0; k < lie.dim(); ++k) {
        const auto &bk = c.beta->component(k);
        if (bk.is_zero())
            continue;
        for (std::size_t j = 0; j < lie.dim(); ++j) {
            const auto &m = b.left_theta()[k][j];
            if (!m.is_zero())
                comps[j] += bk * Form::function(sigma(m));
        }
    }
    SectionPullback out;
    out.formula = GForm(b.algebra(), x, std::move(comps)) + pullback(sigma, b.theta());
    out.direct = pullback(b.section(sigma), c.omega);
    bool ok = out.formula == out.direct;
    out.report.add("section-pullback", ok,
                   ok ? "" : "formula " + out.formula.to_string() + " != direct " + out.direct.to_string());
    return out;
}

Kappa0 kappa0(const Connection &c) {
    const Bundle &b = *c.bundle;
    const auto &x = b.base();
    std::vector<EvenGenerator> ev;
    for (std::size_t i = 0; i < x->even_count(); ++i)
        ev.push_back(x->even(i));
    auto x0 = Chart::make(x->name() + "0", std::move(ev), {});
    Kappa0 out;
    out.body = Bundle::build(x0, body_group(*b.group()));
    const auto &lie = *b.algebra();
    const auto &lie0 = *out.body->algebra();
    const auto &y0 = out.body->chart();

    bool same = true;
    std::vector<std::size_t> even_idx;
    for (std::size_t k = 0; k < lie.dim(); ++k)
        if (lie.parity(k) == 0)
            even_idx.push_back(k);
    same = even_idx.size() == lie0.dim();
    for (std::size_t i = 0; same && i < even_idx.size(); ++i)
        for (std::size_t j = 0; same && j < even_idx.size(); ++j)
            for (std::size_t k = 0; same && k < even_idx.size(); ++k)
                same = lie.c(even_idx[i], even_idx[j], even_idx[k]) == lie0.c(i, j, k);
    out.report.add("kappa0-body-algebra", same, same ? "" : "Lie algebra of the body group is not the even part");

    out.omega = body_gform(c.omega, out.body->algebra(), y0);
    auto vr = verify_connection(*out.body, out.omega);
    out.report.merge(vr, "kappa0-");
    out.projected_curvature = body_gform(curvature(c.omega), out.body->algebra(), y0);
    out.classical_curvature = d(out.omega) + Rational(1, 2) * bracket(out.omega, out.omega);
    bool eq = out.projected_curvature == out.classical_curvature;
    out.report.add("kappa0-curvature", eq,
                   eq ? "" : out.projected_curvature.to_string() + " != " + out.classical_curvature.to_string());
    return out;
}

} // namespace sgeom
