#include "sgeom/forms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

namespace sgeom {

int DiffMonomial::dx_degree() const { return std::popcount(dx); }

int DiffMonomial::ds_degree() const { return std::accumulate(ds.begin(), ds.end(), 0); }

bool diff_less(const DiffMonomial &a, const DiffMonomial &b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    if (a.dx != b.dx)
        return odd_subset_less(a.dx, b.dx);
    for (std::size_t i = 0; i < a.ds.size(); ++i)
        if (a.ds[i] != b.ds[i])
            return a.ds[i] > b.ds[i];
    return false;
}

namespace {

DiffMonomial empty_diff(const ChartPtr &chart) { return DiffMonomial{0, std::vector<int>(chart->odd_count(), 0)}; }

// the generator sequence of a canonical differential monomial: dx ascending, then ds with multiplicity
std::vector<std::size_t> generator_sequence(const ChartPtr &chart, const DiffMonomial &m) {
    std::vector<std::size_t> seq;
    for (std::uint64_t r = m.dx; r; r &= r - 1)
        seq.push_back(static_cast<std::size_t>(std::countr_zero(r)));
    for (std::size_t j = 0; j < m.ds.size(); ++j)
        for (int k = 0; k < m.ds[j]; ++k)
            seq.push_back(chart->even_count() + j);
    return seq;
}

DiffMonomial from_sequence(const ChartPtr &chart, const std::vector<std::size_t> &seq, std::size_t skip) {
    DiffMonomial m = empty_diff(chart);
    for (std::size_t q = 0; q < seq.size(); ++q) {
        if (q == skip)
            continue;
        if (chart->is_odd(seq[q]))
            m.ds[seq[q] - chart->even_count()] += 1;
        else
            m.dx |= std::uint64_t{1} << seq[q];
    }
    return m;
}

} // namespace

Form Form::function(const SuperElement &f) {
    Form out(f.chart());
    if (!f.is_zero())
        out.terms_.push_back({empty_diff(f.chart()), f});
    return out;
}

Form Form::constant(ChartPtr chart, const Rational &c) { return function(SuperElement::constant(std::move(chart), c)); }

Form Form::differential(ChartPtr chart, std::size_t g) {
    Form out(chart);
    if (!chart->is_odd(g) && chart->even(g).parameter)
        return out;
    DiffMonomial m = empty_diff(chart);
    if (chart->is_odd(g))
        m.ds[g - chart->even_count()] = 1;
    else
        m.dx = std::uint64_t{1} << g;
    out.terms_.push_back({std::move(m), SuperElement::constant(chart, 1)});
    return out;
}

Form Form::differential(ChartPtr chart, std::string_view name) {
    auto g = chart->find(name);
    if (!g)
        throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return differential(std::move(chart), *g);
}

Form Form::from_terms(ChartPtr chart, std::vector<FormTerm> terms) {
    Form out(std::move(chart));
    out.terms_ = std::move(terms);
    for (auto &t : out.terms_)
        if (!t.coef.chart())
            t.coef = SuperElement(out.chart_);
    out.normalize();
    return out;
}

void Form::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const FormTerm &a, const FormTerm &b) { return diff_less(a.diff, b.diff); });
    std::vector<FormTerm> merged;
    for (auto &t : terms_) {
        if (!merged.empty() && merged.back().diff == t.diff)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const FormTerm &t) { return t.coef.is_zero(); });
    terms_ = std::move(merged);
}

int Form::max_degree() const {
    int m = -1;
    for (auto &t : terms_)
        m = std::max(m, t.diff.degree());
    return m;
}

bool Form::is_degree(int r) const {
    return std::all_of(terms_.begin(), terms_.end(), [r](const FormTerm &t) { return t.diff.degree() == r; });
}

Form Form::degree_part(int r) const {
    Form out(chart_);
    for (auto &t : terms_)
        if (t.diff.degree() == r)
            out.terms_.push_back(t);
    return out;
}

Parity Form::parity() const {
    bool seen[2] = {false, false};
    for (auto &t : terms_) {
        int shift = t.diff.ds_degree() & 1;
        for (auto &c : t.coef.terms())
            seen[(c.mono.parity() + shift) & 1] = true;
    }
    if (seen[0] && seen[1])
        return Parity::Mixed;
    return seen[1] ? Parity::Odd : Parity::Even;
}

Form Form::part(int parity) const {
    Form out(chart_);
    for (auto &t : terms_) {
        int shift = t.diff.ds_degree() & 1;
        auto c = t.coef.part((parity + shift) & 1);
        if (!c.is_zero())
            out.terms_.push_back({t.diff, std::move(c)});
    }
    return out;
}

SuperElement Form::function_part() const {
    for (auto &t : terms_)
        if (t.diff.degree() == 0)
            return t.coef;
    return SuperElement(chart_);
}

Form Form::operator-() const {
    Form out(*this);
    for (auto &t : out.terms_)
        t.coef = -t.coef;
    return out;
}

Form &Form::operator+=(const Form &o) {
    if (!chart_) {
        *this = o;
        return *this;
    }
    if (!o.chart_)
        return *this;
    require_same_chart(chart_, o.chart_, "form add");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Form &Form::operator-=(const Form &o) { return *this += -o; }

Form operator*(const Form &a, const Form &b) {
    require_same_chart(a.chart_, b.chart_, "wedge");
    Form out(a.chart_);
    for (auto &ta : a.terms_) {
        const int e1 = ta.diff.ds_degree();
        for (auto &tb : b.terms_) {
            int s = koszul_merge_sign(ta.diff.dx, tb.diff.dx);
            if (!s)
                continue;
            if ((tb.diff.dx_degree() * e1) & 1)
                s = -s;
            DiffMonomial m = ta.diff;
            m.dx |= tb.diff.dx;
            for (std::size_t j = 0; j < m.ds.size(); ++j)
                m.ds[j] += tb.diff.ds[j];
            SuperElement g = tb.coef;
            if (e1 & 1)
                g = g.even_part() - g.odd_part();
            SuperElement c = ta.coef * g;
            if (s < 0)
                c = -c;
            out.terms_.push_back({std::move(m), std::move(c)});
        }
    }
    out.normalize();
    return out;
}

Form operator*(const Rational &r, Form a) {
    for (auto &t : a.terms_)
        t.coef *= r;
    a.normalize();
    return a;
}

bool operator==(const Form &a, const Form &b) {
    if (a.is_zero() && b.is_zero())
        return true;
    if (!same_chart(a.chart_, b.chart_) || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].diff == b.terms_[i].diff) || !(a.terms_[i].coef == b.terms_[i].coef))
            return false;
    return true;
}

std::string Form::to_string() const {
    std::vector<RenderItem> items;
    for (auto &t : terms_) {
        std::vector<std::string> parts;
        std::string dx;
        for (std::uint64_t r = t.diff.dx; r; r &= r - 1) {
            if (!dx.empty())
                dx += "^";
            dx += "d" + chart_->even(static_cast<std::size_t>(std::countr_zero(r))).name;
        }
        if (!dx.empty())
            parts.push_back(dx);
        for (std::size_t j = 0; j < t.diff.ds.size(); ++j) {
            int e = t.diff.ds[j];
            if (e == 0)
                continue;
            std::string f = "d" + chart_->odd(j);
            if (e != 1)
                f += "^" + std::to_string(e);
            parts.push_back(f);
        }
        std::string basis;
        for (auto &p : parts)
            basis += (basis.empty() ? "" : " * ") + p;
        items.push_back({t.coef.to_string(), t.coef.terms().size() > 1, basis});
    }
    return render_linear(items, " * ");
}

std::ostream &operator<<(std::ostream &os, const Form &a) { return os << a.to_string(); }

Form wedge(const Form &a, const Form &b) { return a * b; }

Form d(const SuperElement &f) {
    Form out(f.chart());
    if (f.is_zero())
        return out;
    const auto &chart = f.chart();
    for (std::size_t g : chart->coordinates()) {
        auto p = partial_derivative(f, g);
        if (!p.is_zero())
            out += Form::differential(chart, g) * Form::function(p);
    }
    return out;
}

Form d(const Form &a) {
    Form out(a.chart());
    for (auto &t : a.terms())
        out += d(t.coef) * Form::from_terms(a.chart(), {{t.diff, SuperElement::constant(a.chart(), 1)}});
    return out;
}

Form interior(const Derivation &xi, const Form &a) {
    Form out(a.chart());
    if (a.is_zero())
        return out;
    require_same_chart(xi.chart(), a.chart(), "interior");
    Parity px = xi.parity();
    if (px == Parity::Mixed)
        throw std::invalid_argument("interior: derivation of mixed parity");
    const int p = parity_bit(px);
    const auto &chart = a.chart();
    auto one = SuperElement::constant(chart, 1);
    for (auto &t : a.terms()) {
        if (t.diff.degree() == 0)
            continue;
        auto seq = generator_sequence(chart, t.diff);
        Form inner(chart);
        int sign = 1;
        for (std::size_t q = 0; q < seq.size(); ++q) {
            const auto &val = xi.coefficient(seq[q]);
            if (!val.is_zero()) {
                DiffMonomial prefix = from_sequence(chart, std::vector<std::size_t>(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(q)), seq.size());
                DiffMonomial suffix = from_sequence(chart, std::vector<std::size_t>(seq.begin() + static_cast<std::ptrdiff_t>(q) + 1, seq.end()), seq.size());
                Form piece = Form::from_terms(chart, {{prefix, one}}) * Form::function(val) *
                             Form::from_terms(chart, {{suffix, one}});
                inner += sign > 0 ? piece : -piece;
            }
            int j = chart->is_odd(seq[q]) ? 1 : 0;
            if (((1 + p * j) & 1))
                sign = -sign;
        }
        auto f = t.coef;
        if (p)
            f = f.even_part() - f.odd_part();
        out += Form::function(f) * inner;
    }
    return out;
}

Form lie_derivative(const Derivation &xi, const Form &a) { return d(interior(xi, a)) + interior(xi, d(a)); }

SuperElement evaluate(const std::vector<Derivation> &xis, const Form &a) {
    const int r = static_cast<int>(xis.size());
    if (!a.is_degree(r))
        throw std::invalid_argument("evaluate: form degree does not match " + std::to_string(r) + " arguments");
    if (r == 0)
        return a.chart() ? a.function_part() : SuperElement();
    std::vector<Derivation> rest(xis.begin() + 1, xis.end());
    Parity p0 = xis[0].parity();
    int rest_parity = 0;
    for (auto &x : rest) {
        Parity p = x.parity();
        if (p == Parity::Mixed)
            throw std::invalid_argument("evaluate: derivation of mixed parity");
        rest_parity += parity_bit(p);
    }
    auto v = evaluate(rest, interior(xis[0], a));
    if ((parity_bit(p0) * rest_parity) & 1)
        v = -v;
    return v;
}

Form pullback(const AlgebraMorphism &sigma, const Form &a) {
    const auto &target = sigma.target();
    Form out(target);
    if (a.is_zero())
        return out;
    require_same_chart(a.chart(), sigma.source(), "pullback");
    const auto &src = sigma.source();
    std::vector<Form> dimg(src->size());
    std::vector<bool> have(src->size(), false);
    auto dg = [&](std::size_t g) -> const Form & {
        if (!have[g]) {
            dimg[g] = d(sigma.image(g));
            have[g] = true;
        }
        return dimg[g];
    };
    for (auto &t : a.terms()) {
        Form piece = Form::function(sigma.apply(t.coef));
        for (std::uint64_t r = t.diff.dx; r && !piece.is_zero(); r &= r - 1)
            piece = piece * dg(static_cast<std::size_t>(std::countr_zero(r)));
        for (std::size_t j = 0; j < t.diff.ds.size() && !piece.is_zero(); ++j)
            for (int k = 0; k < t.diff.ds[j]; ++k)
                piece = piece * dg(src->even_count() + j);
        out += piece;
    }
    return out;
}

} // namespace sgeom
