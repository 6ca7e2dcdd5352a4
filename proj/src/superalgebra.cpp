#include "sgeom/superalgebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace sgeom {

const char *parity_name(Parity p) {
    switch (p) {
    case Parity::Even:
        return "even";
    case Parity::Odd:
        return "odd";
    default:
        return "mixed";
    }
}

namespace {

bool valid_identifier(const std::string &s) {
    if (s.empty())
        return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(head) || s[0] == '_'))
        return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_' || c == '\''))
            return false;
    }
    return true;
}

std::uint64_t low_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

} // namespace

ChartPtr Chart::make(std::string name, std::vector<EvenGenerator> even,
                     std::vector<std::string> odd) {
    if (odd.size() > max_odd || even.size() > max_even)
        throw std::invalid_argument("chart '" + name + "': too many generators");
    std::set<std::string> seen;
    auto check = [&](const std::string &n) {
        if (!valid_identifier(n))
            throw std::invalid_argument("chart '" + name + "': bad generator name '" + n + "'");
        if (!seen.insert(n).second)
            throw std::invalid_argument("chart '" + name + "': duplicate generator '" + n + "'");
    };
    for (auto &g : even)
        check(g.name);
    for (auto &g : odd)
        check(g);
    auto *c = new Chart();
    c->name_ = std::move(name);
    c->even_ = std::move(even);
    c->odd_ = std::move(odd);
    return ChartPtr(c);
}

const std::string &Chart::generator_name(std::size_t g) const {
    return g < even_.size() ? even_.at(g).name : odd_.at(g - even_.size());
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
    for (std::size_t i = 0; i < even_.size(); ++i)
        if (even_[i].name == name)
            return i;
    for (std::size_t j = 0; j < odd_.size(); ++j)
        if (odd_[j] == name)
            return even_.size() + j;
    return std::nullopt;
}

std::vector<std::size_t> Chart::coordinates() const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < size(); ++g)
        if (is_odd(g) || !even_[g].parameter)
            out.push_back(g);
    return out;
}

bool Chart::same_shape(const Chart &o) const {
    if (even_.size() != o.even_.size() || odd_.size() != o.odd_.size())
        return false;
    for (std::size_t i = 0; i < even_.size(); ++i)
        if (even_[i].invertible != o.even_[i].invertible || even_[i].parameter != o.even_[i].parameter)
            return false;
    return true;
}

bool Chart::operator==(const Chart &o) const {
    if (!same_shape(o) || odd_ != o.odd_)
        return false;
    for (std::size_t i = 0; i < even_.size(); ++i)
        if (even_[i].name != o.even_[i].name)
            return false;
    return true;
}

bool same_chart(const ChartPtr &a, const ChartPtr &b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

void require_same_chart(const ChartPtr &a, const ChartPtr &b, const char *where) {
    if (!same_chart(a, b))
        throw ChartMismatch(std::string(where) + ": chart mismatch (" + (a ? a->name() : "null") +
                            " vs " + (b ? b->name() : "null") + ")");
}

int Monomial::odd_degree() const { return std::popcount(odd); }

bool odd_subset_less(std::uint64_t a, std::uint64_t b) {
    while (a && b) {
        int la = std::countr_zero(a), lb = std::countr_zero(b);
        if (la != lb)
            return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

bool canonical_less(const Monomial &a, const Monomial &b) {
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] != b.exps[i])
            return a.exps[i] > b.exps[i];
    return odd_subset_less(a.odd, b.odd);
}

int koszul_merge_sign(std::uint64_t a, std::uint64_t b) {
    if (a & b)
        return 0;
    int inversions = 0;
    for (std::uint64_t r = b; r; r &= r - 1) {
        int j = std::countr_zero(r);
        inversions += std::popcount(j >= 63 ? 0 : (a >> (j + 1)));
    }
    return (inversions & 1) ? -1 : 1;
}

SuperElement SuperElement::constant(ChartPtr chart, const Rational &c) {
    Monomial m{std::vector<int>(chart->even_count(), 0), 0};
    return monomial(std::move(chart), std::move(m), c);
}

SuperElement SuperElement::generator(ChartPtr chart, std::size_t g) {
    if (g >= chart->size())
        throw std::out_of_range("generator index out of range");
    Monomial m{std::vector<int>(chart->even_count(), 0), 0};
    if (chart->is_odd(g))
        m.odd = std::uint64_t{1} << (g - chart->even_count());
    else
        m.exps[g] = 1;
    return monomial(std::move(chart), std::move(m), 1);
}

SuperElement SuperElement::generator(ChartPtr chart, std::string_view name) {
    auto g = chart->find(name);
    if (!g)
        throw std::invalid_argument("unknown generator '" + std::string(name) + "' in chart " +
                                    chart->name());
    return generator(std::move(chart), *g);
}

SuperElement SuperElement::monomial(ChartPtr chart, Monomial m, const Rational &c) {
    SuperElement out(std::move(chart));
    Rational cc = c;
    cc.canonicalize();
    if (cc != 0) {
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] < 0 && !out.chart_->even(i).invertible)
                throw NotAUnit("negative power of non-invertible generator " + out.chart_->even(i).name);
        out.terms_.push_back({std::move(m), cc});
    }
    return out;
}

SuperElement SuperElement::from_terms(ChartPtr chart, std::vector<Term> terms) {
    SuperElement out(std::move(chart));
    out.terms_ = std::move(terms);
    out.normalize();
    return out;
}

void SuperElement::normalize() {
    for (auto &t : terms_)
        t.coef.canonicalize();
    std::sort(terms_.begin(), terms_.end(),
              [](const Term &a, const Term &b) { return canonical_less(a.mono, b.mono); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto &t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term &t) { return t.coef == 0; });
    terms_ = std::move(merged);
}

bool SuperElement::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].mono.odd == 0 &&
            std::all_of(terms_[0].mono.exps.begin(), terms_[0].mono.exps.end(), [](int e) { return e == 0; }));
}

Rational SuperElement::constant_term() const {
    for (auto &t : terms_)
        if (t.mono.odd == 0 && std::all_of(t.mono.exps.begin(), t.mono.exps.end(), [](int e) { return e == 0; }))
            return t.coef;
    return 0;
}

Parity SuperElement::parity() const {
    bool even = false, odd = false;
    for (auto &t : terms_)
        (t.mono.parity() ? odd : even) = true;
    if (even && odd)
        return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

SuperElement SuperElement::even_part() const {
    SuperElement out(chart_);
    for (auto &t : terms_)
        if (!t.mono.parity())
            out.terms_.push_back(t);
    return out;
}

SuperElement SuperElement::odd_part() const {
    SuperElement out(chart_);
    for (auto &t : terms_)
        if (t.mono.parity())
            out.terms_.push_back(t);
    return out;
}

SuperElement SuperElement::body() const {
    SuperElement out(chart_);
    for (auto &t : terms_)
        if (t.mono.odd == 0)
            out.terms_.push_back(t);
    return out;
}

SuperElement SuperElement::operator-() const {
    SuperElement out(*this);
    for (auto &t : out.terms_)
        t.coef = -t.coef;
    return out;
}

SuperElement &SuperElement::operator+=(const SuperElement &o) {
    if (!chart_) {
        *this = o;
        return *this;
    }
    if (!o.chart_)
        return *this;
    require_same_chart(chart_, o.chart_, "add");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

SuperElement &SuperElement::operator-=(const SuperElement &o) { return *this += -o; }

SuperElement &SuperElement::operator*=(const Rational &r) {
    if (r == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_)
        t.coef *= r;
    return *this;
}

SuperElement operator*(const SuperElement &a, const SuperElement &b) {
    require_same_chart(a.chart_, b.chart_, "mul");
    SuperElement out(a.chart_);
    if (a.is_zero() || b.is_zero())
        return out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto &ta : a.terms_) {
        for (auto &tb : b.terms_) {
            int s = koszul_merge_sign(ta.mono.odd, tb.mono.odd);
            if (!s)
                continue;
            Term t{ta.mono, ta.coef * tb.coef};
            for (std::size_t i = 0; i < t.mono.exps.size(); ++i)
                t.mono.exps[i] += tb.mono.exps[i];
            t.mono.odd |= tb.mono.odd;
            if (s < 0)
                t.coef = -t.coef;
            out.terms_.push_back(std::move(t));
        }
    }
    out.normalize();
    return out;
}

bool operator==(const SuperElement &a, const SuperElement &b) {
    if (a.is_zero() && b.is_zero())
        return true;
    if (!same_chart(a.chart_, b.chart_))
        return false;
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef)
            return false;
    return true;
}

SuperElement SuperElement::pow(int k) const {
    if (k < 0)
        return invert(*this).pow(-k);
    SuperElement out = constant(chart_, 1);
    SuperElement base = *this;
    while (k) {
        if (k & 1)
            out = out * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return out;
}

std::string SuperElement::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto &t : terms_) {
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
            int e = t.mono.exps[i];
            if (e == 0)
                continue;
            std::string f = chart_->even(i).name;
            if (e != 1)
                f += "^" + std::to_string(e);
            factors.push_back(std::move(f));
        }
        for (std::uint64_t r = t.mono.odd; r; r &= r - 1)
            factors.push_back(chart_->odd(static_cast<std::size_t>(std::countr_zero(r))));
        Rational mag = abs(t.coef);
        bool neg = t.coef < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string body;
        if (factors.empty() || mag != 1)
            body = mag.get_str();
        for (auto &f : factors) {
            if (!body.empty())
                body += "*";
            body += f;
        }
        out += body;
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const SuperElement &a) { return os << a.to_string(); }

bool is_unit(const SuperElement &a) {
    if (!a.chart())
        return false;
    auto b = a.body();
    if (b.terms().size() != 1)
        return false;
    auto &m = b.terms()[0].mono;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] != 0 && !a.chart()->even(i).invertible)
            return false;
    return true;
}

SuperElement invert(const SuperElement &a) {
    if (!is_unit(a))
        throw NotAUnit("invert: body of '" + a.to_string() + "' is not a unit monomial");
    const Term bt = a.body().terms()[0];
    Monomial inv_m = bt.mono;
    for (auto &e : inv_m.exps)
        e = -e;
    auto binv = SuperElement::monomial(a.chart(), inv_m, 1 / bt.coef);
    auto one = SuperElement::constant(a.chart(), 1);
    auto minus_n = one - binv * a;
    SuperElement sum = one, power = one;
    for (std::size_t k = 0; k <= a.chart()->odd_count(); ++k) {
        power = power * minus_n;
        if (power.is_zero())
            break;
        sum += power;
    }
    return sum * binv;
}

Point::Point(ChartPtr chart, std::vector<Rational> even_values)
    : chart_(std::move(chart)), values_(std::move(even_values)) {
    if (values_.size() != chart_->even_count())
        throw std::invalid_argument("point: expected one value per even generator");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (chart_->even(i).invertible && values_[i] == 0)
            throw std::invalid_argument("point: invertible generator " + chart_->even(i).name + " set to 0");
}

Rational evaluate(const SuperElement &a, const Point &p) {
    if (a.is_zero())
        return 0;
    require_same_chart(a.chart(), p.chart(), "evaluate");
    Rational sum = 0;
    for (auto &t : a.terms()) {
        if (t.mono.odd)
            continue;
        Rational v = t.coef;
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
            int e = t.mono.exps[i];
            Rational base = e < 0 ? Rational(1 / p.values()[i]) : p.values()[i];
            for (int k = 0; k < std::abs(e); ++k)
                v *= base;
        }
        sum += v;
    }
    return sum;
}

AlgebraMorphism::AlgebraMorphism(ChartPtr source, ChartPtr target, std::vector<SuperElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size())
        throw std::invalid_argument("morphism: expected one image per source generator");
    inverses_.resize(images_.size());
    for (std::size_t g = 0; g < images_.size(); ++g) {
        auto &img = images_[g];
        if (!img.chart())
            img = SuperElement(target_);
        if (!img.is_zero())
            require_same_chart(img.chart(), target_, "morphism image");
        img = SuperElement::from_terms(target_, img.terms());
        Parity want = source_->is_odd(g) ? Parity::Odd : Parity::Even;
        if (!img.is_zero() && img.parity() != want)
            throw std::invalid_argument("morphism: image of " + source_->generator_name(g) +
                                        " has wrong parity");
        if (!source_->is_odd(g) && source_->even(g).invertible) {
            if (!is_unit(img))
                throw NotAUnit("morphism: image of invertible " + source_->generator_name(g) +
                               " is not a unit");
            inverses_[g] = invert(img);
        }
    }
}

AlgebraMorphism AlgebraMorphism::identity(ChartPtr chart) {
    std::vector<SuperElement> imgs;
    for (std::size_t g = 0; g < chart->size(); ++g)
        imgs.push_back(SuperElement::generator(chart, g));
    return AlgebraMorphism(chart, chart, std::move(imgs));
}

SuperElement AlgebraMorphism::apply(const SuperElement &a) const {
    SuperElement out(target_);
    if (a.is_zero())
        return out;
    require_same_chart(a.chart(), source_, "apply_morphism");
    std::map<std::pair<std::size_t, int>, SuperElement> powers;
    auto power = [&](std::size_t g, int e) -> const SuperElement & {
        auto key = std::make_pair(g, e);
        auto it = powers.find(key);
        if (it != powers.end())
            return it->second;
        const SuperElement &base = e < 0 ? inverses_[g] : images_[g];
        return powers.emplace(key, base.pow(std::abs(e))).first->second;
    };
    const std::size_t m = source_->even_count();
    for (auto &t : a.terms()) {
        SuperElement prod = SuperElement::constant(target_, t.coef);
        for (std::size_t i = 0; i < m && !prod.is_zero(); ++i)
            if (t.mono.exps[i] != 0)
                prod = prod * power(i, t.mono.exps[i]);
        for (std::uint64_t r = t.mono.odd; r && !prod.is_zero(); r &= r - 1)
            prod = prod * images_[m + static_cast<std::size_t>(std::countr_zero(r))];
        out += prod;
    }
    return out;
}

AlgebraMorphism compose(const AlgebraMorphism &f, const AlgebraMorphism &g) {
    require_same_chart(g.target(), f.source(), "compose");
    std::vector<SuperElement> imgs;
    for (auto &img : g.images())
        imgs.push_back(f.apply(img));
    return AlgebraMorphism(g.source(), f.target(), std::move(imgs));
}

TensorProduct::TensorProduct(std::vector<ChartPtr> factors, std::string name)
    : factors_(std::move(factors)) {
    std::set<std::string> used;
    auto fresh = [&](std::string n) {
        while (used.count(n))
            n += "'";
        used.insert(n);
        return n;
    };
    std::vector<EvenGenerator> even;
    std::vector<std::string> odd;
    std::string joined;
    for (auto &f : factors_) {
        even_off_.push_back(even.size());
        odd_off_.push_back(odd.size());
        for (std::size_t i = 0; i < f->even_count(); ++i) {
            auto g = f->even(i);
            g.name = fresh(g.name);
            even.push_back(std::move(g));
        }
        for (std::size_t j = 0; j < f->odd_count(); ++j)
            odd.push_back(fresh(f->odd(j)));
        joined += (joined.empty() ? "" : "(x)") + f->name();
    }
    chart_ = Chart::make(name.empty() ? joined : std::move(name), std::move(even), std::move(odd));
}

std::size_t TensorProduct::index(std::size_t k, std::size_t g) const {
    auto &f = factors_.at(k);
    if (f->is_odd(g))
        return chart_->even_count() + odd_off_[k] + (g - f->even_count());
    return even_off_[k] + g;
}

std::size_t TensorProduct::block_of(std::size_t g) const {
    bool odd = chart_->is_odd(g);
    std::size_t local = odd ? g - chart_->even_count() : g;
    for (std::size_t k = factors_.size(); k-- > 0;) {
        std::size_t off = odd ? odd_off_[k] : even_off_[k];
        std::size_t cnt = odd ? factors_[k]->odd_count() : factors_[k]->even_count();
        if (local >= off && local < off + cnt)
            return k;
    }
    throw std::out_of_range("tensor: generator outside all factors");
}

AlgebraMorphism TensorProduct::embedding(std::size_t k) const {
    std::vector<SuperElement> imgs;
    auto &f = factors_.at(k);
    for (std::size_t g = 0; g < f->size(); ++g)
        imgs.push_back(SuperElement::generator(chart_, index(k, g)));
    return AlgebraMorphism(f, chart_, std::move(imgs));
}

SuperElement TensorProduct::embed(std::size_t k, const SuperElement &a) const {
    auto &f = factors_.at(k);
    SuperElement out(chart_);
    if (a.is_zero())
        return out;
    require_same_chart(a.chart(), f, "embed");
    std::vector<Term> terms;
    for (auto &t : a.terms()) {
        Monomial m{std::vector<int>(chart_->even_count(), 0), 0};
        std::copy(t.mono.exps.begin(), t.mono.exps.end(), m.exps.begin() + static_cast<std::ptrdiff_t>(even_off_[k]));
        m.odd = t.mono.odd << odd_off_[k];
        terms.push_back({std::move(m), t.coef});
    }
    return SuperElement::from_terms(chart_, std::move(terms));
}

Monomial TensorProduct::restrict(const Monomial &m, std::size_t k) const {
    auto &f = factors_.at(k);
    Monomial r;
    auto b = m.exps.begin() + static_cast<std::ptrdiff_t>(even_off_[k]);
    r.exps.assign(b, b + static_cast<std::ptrdiff_t>(f->even_count()));
    r.odd = (m.odd >> odd_off_[k]) & low_mask(f->odd_count());
    return r;
}

Monomial TensorProduct::without(const Monomial &m, std::size_t k) const {
    auto &f = factors_.at(k);
    Monomial r = m;
    for (std::size_t i = 0; i < f->even_count(); ++i)
        r.exps[even_off_[k] + i] = 0;
    r.odd &= ~(low_mask(f->odd_count()) << odd_off_[k]);
    return r;
}

int TensorProduct::odd_degree_before(const Monomial &m, std::size_t k) const {
    return std::popcount(m.odd & low_mask(odd_off_.at(k)));
}

SuperElement TensorProduct::extract(std::size_t k, const SuperElement &a) const {
    auto &f = factors_.at(k);
    SuperElement out(f);
    if (a.is_zero())
        return out;
    require_same_chart(a.chart(), chart_, "extract");
    std::vector<Term> terms;
    for (auto &t : a.terms()) {
        auto rest = without(t.mono, k);
        if (rest.odd || std::any_of(rest.exps.begin(), rest.exps.end(), [](int e) { return e != 0; }))
            throw std::logic_error("extract: element involves other tensor factors");
        terms.push_back({restrict(t.mono, k), t.coef});
    }
    return SuperElement::from_terms(f, std::move(terms));
}

SuperElement reinterpret(const SuperElement &a, const ChartPtr &chart) {
    if (a.is_zero())
        return SuperElement(chart);
    if (!a.chart()->same_shape(*chart))
        throw ChartMismatch("reinterpret: charts differ in shape");
    return SuperElement::from_terms(chart, a.terms());
}

std::string render_linear(const std::vector<RenderItem> &items, std::string_view sep) {
    std::string out;
    for (auto &it : items) {
        std::string coef = it.coef;
        bool neg = false;
        if (!it.compound && !coef.empty() && coef[0] == '-') {
            neg = true;
            coef.erase(0, 1);
        }
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (it.basis.empty())
            out += coef;
        else if (it.compound)
            out += "(" + coef + ")" + std::string(sep) + it.basis;
        else if (coef == "1")
            out += it.basis;
        else
            out += coef + std::string(sep) + it.basis;
    }
    return out.empty() ? "0" : out;
}

AlgebraMorphism tensor_map(const TensorProduct &src, const ChartPtr &target,
                           const std::vector<AlgebraMorphism> &maps) {
    if (maps.size() != src.factor_count())
        throw std::invalid_argument("tensor_map: one morphism per factor required");
    std::vector<SuperElement> imgs(src.chart()->size());
    for (std::size_t k = 0; k < maps.size(); ++k) {
        require_same_chart(maps[k].source(), src.factor(k), "tensor_map source");
        require_same_chart(maps[k].target(), target, "tensor_map target");
        for (std::size_t g = 0; g < src.factor(k)->size(); ++g)
            imgs[src.index(k, g)] = maps[k].image(g);
    }
    return AlgebraMorphism(src.chart(), target, std::move(imgs));
}

} // namespace sgeom
