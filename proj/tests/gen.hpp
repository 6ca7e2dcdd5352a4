#pragma once
// random inputs for the property tests

#include "sgeom/forms.hpp"

#include <bit>
#include <random>

namespace gen {

using namespace sgeom;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
    bool coin() { return uniform(0, 1) == 1; }
    Rational rational() {
        int n = 0;
        while (n == 0)
            n = uniform(-5, 5);
        Rational q(n, uniform(1, 3));
        q.canonicalize();
        return q;
    }
};

inline ChartPtr small_chart(std::size_t m = 3, std::size_t n = 3, bool last_invertible = true) {
    std::vector<EvenGenerator> even;
    for (std::size_t i = 0; i < m; ++i)
        even.push_back({"x" + std::to_string(i + 1), last_invertible && i + 1 == m, false});
    std::vector<std::string> odd;
    for (std::size_t j = 0; j < n; ++j)
        odd.push_back("s" + std::to_string(j + 1));
    return Chart::make("U", std::move(even), std::move(odd));
}

// parity < 0 means unconstrained
inline SuperElement element(Rng &r, const ChartPtr &c, int parity = -1, int max_terms = 4, int max_degree = 4) {
    std::vector<Term> terms;
    int k = r.uniform(1, max_terms);
    for (int t = 0; t < k; ++t) {
        Monomial m{std::vector<int>(c->even_count(), 0), 0};
        int budget = r.uniform(0, max_degree);
        for (std::size_t j = 0; j < c->odd_count() && budget > 0; ++j)
            if (r.uniform(0, 2) == 0) {
                m.odd |= std::uint64_t{1} << j;
                --budget;
            }
        if (parity >= 0 && (std::popcount(m.odd) & 1) != parity) {
            if (c->odd_count() == 0)
                continue;
            m.odd ^= std::uint64_t{1} << r.uniform(0, static_cast<int>(c->odd_count()) - 1);
        }
        for (std::size_t i = 0; i < c->even_count() && budget > 0; ++i) {
            int lo = c->even(i).invertible ? -1 : 0;
            int e = r.uniform(lo, std::min(2, budget));
            m.exps[i] = e;
            budget -= std::abs(e);
        }
        terms.push_back({std::move(m), r.rational()});
    }
    return SuperElement::from_terms(c, std::move(terms));
}

inline SuperElement unit(Rng &r, const ChartPtr &c) {
    SuperElement body = SuperElement::constant(c, r.rational());
    for (std::size_t i = 0; i < c->even_count(); ++i)
        if (c->even(i).invertible && r.coin())
            body = body * SuperElement::generator(c, i).pow(r.uniform(-2, 2));
    auto nil = element(r, c, 0, 3, 3).even_part() - element(r, c, 0, 3, 3).body();
    SuperElement n(c);
    for (auto &t : nil.terms())
        if (t.mono.odd)
            n += SuperElement::from_terms(c, {t});
    return body + n;
}

inline Derivation derivation(Rng &r, const ChartPtr &c, int parity, int max_degree = 2) {
    std::vector<SuperElement> coeffs;
    for (std::size_t g = 0; g < c->size(); ++g) {
        if (!c->is_odd(g) && c->even(g).parameter) {
            coeffs.emplace_back(c);
            continue;
        }
        int want = (parity + (c->is_odd(g) ? 1 : 0)) & 1;
        coeffs.push_back(r.uniform(0, 2) == 0 ? SuperElement(c) : element(r, c, want, 2, max_degree));
    }
    return Derivation(c, std::move(coeffs));
}

// homogeneous form of the given degree and parity
inline Form form(Rng &r, const ChartPtr &c, int degree, int parity, int max_terms = 3) {
    Form out(c);
    auto coords = c->coordinates();
    int k = r.uniform(1, max_terms);
    for (int t = 0; t < k; ++t) {
        Form piece = Form::constant(c, 1);
        int ds = 0;
        for (int q = 0; q < degree; ++q) {
            auto g = coords[static_cast<std::size_t>(r.uniform(0, static_cast<int>(coords.size()) - 1))];
            ds += c->is_odd(g) ? 1 : 0;
            piece = piece * Form::differential(c, g);
        }
        int want = (parity + ds) & 1;
        out += Form::function(element(r, c, want, 2, 2)) * piece;
    }
    return out;
}

// independent product: expand words of generators and bubble-sort the odd letters
inline SuperElement oracle_mul(const SuperElement &a, const SuperElement &b) {
    const auto &c = a.chart();
    std::vector<Term> out;
    for (auto &ta : a.terms())
        for (auto &tb : b.terms()) {
            std::vector<int> word;
            for (std::size_t j = 0; j < c->odd_count(); ++j)
                if (ta.mono.odd >> j & 1)
                    word.push_back(static_cast<int>(j));
            for (std::size_t j = 0; j < c->odd_count(); ++j)
                if (tb.mono.odd >> j & 1)
                    word.push_back(static_cast<int>(j));
            int sign = 1;
            bool dead = false;
            for (std::size_t i = 0; i < word.size(); ++i)
                for (std::size_t k = 0; k + 1 < word.size(); ++k) {
                    if (word[k] == word[k + 1])
                        dead = true;
                    if (word[k] > word[k + 1]) {
                        std::swap(word[k], word[k + 1]);
                        sign = -sign;
                    }
                }
            for (std::size_t k = 0; k + 1 < word.size(); ++k)
                if (word[k] == word[k + 1])
                    dead = true;
            if (dead)
                continue;
            Monomial m{ta.mono.exps, ta.mono.odd | tb.mono.odd};
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                m.exps[i] += tb.mono.exps[i];
            out.push_back({m, ta.coef * tb.coef * sign});
        }
    return SuperElement::from_terms(c, out);
}

} // namespace gen
