#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sgeom {

using Rational = mpq_class;

enum class Parity { Even, Odd, Mixed };

inline int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }
const char *parity_name(Parity p);

class ChartMismatch : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class NotAUnit : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct EvenGenerator {
    std::string name;
    bool invertible = false;
    // constants adjoined to the coefficient ring (symbolic group parameters);
    // never differentiated
    bool parameter = false;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// Generators are addressed by a unified index: [0, m) even, [m, m+n) odd.
class Chart {
  public:
    static constexpr std::size_t max_odd = 64;
    static constexpr std::size_t max_even = 64;

    static ChartPtr make(std::string name, std::vector<EvenGenerator> even,
                         std::vector<std::string> odd);

    const std::string &name() const { return name_; }
    std::size_t even_count() const { return even_.size(); }
    std::size_t odd_count() const { return odd_.size(); }
    std::size_t size() const { return even_.size() + odd_.size(); }
    const EvenGenerator &even(std::size_t i) const { return even_.at(i); }
    const std::string &odd(std::size_t j) const { return odd_.at(j); }
    const std::string &generator_name(std::size_t g) const;
    bool is_odd(std::size_t g) const { return g >= even_.size(); }
    std::optional<std::size_t> find(std::string_view name) const;
    // non-parameter generators, in chart order
    std::vector<std::size_t> coordinates() const;

    bool same_shape(const Chart &o) const;
    bool operator==(const Chart &o) const;

  private:
    Chart() = default;
    std::string name_;
    std::vector<EvenGenerator> even_;
    std::vector<std::string> odd_;
};

bool same_chart(const ChartPtr &a, const ChartPtr &b);
void require_same_chart(const ChartPtr &a, const ChartPtr &b, const char *where);

struct Monomial {
    std::vector<int> exps;
    std::uint64_t odd = 0;

    int odd_degree() const;
    int parity() const { return odd_degree() & 1; }
    bool operator==(const Monomial &o) const = default;
};

// canonical order used for storage and printing
bool canonical_less(const Monomial &a, const Monomial &b);
// compares ascending index lists lexicographically, empty first
bool odd_subset_less(std::uint64_t a, std::uint64_t b);
// sign of s_A * s_B = sign * s_{A u B}; 0 when A and B intersect
int koszul_merge_sign(std::uint64_t a, std::uint64_t b);

struct Term {
    Monomial mono;
    Rational coef;
};

class SuperElement {
  public:
    SuperElement() = default;
    explicit SuperElement(ChartPtr chart) : chart_(std::move(chart)) {}

    static SuperElement constant(ChartPtr chart, const Rational &c);
    static SuperElement generator(ChartPtr chart, std::size_t g);
    static SuperElement generator(ChartPtr chart, std::string_view name);
    static SuperElement monomial(ChartPtr chart, Monomial m, const Rational &c);
    // terms in any order, duplicates allowed
    static SuperElement from_terms(ChartPtr chart, std::vector<Term> terms);

    const ChartPtr &chart() const { return chart_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;

    Parity parity() const;
    SuperElement even_part() const;
    SuperElement odd_part() const;
    SuperElement part(int parity) const { return parity ? odd_part() : even_part(); }

    SuperElement body() const;
    SuperElement operator-() const;
    SuperElement &operator+=(const SuperElement &o);
    SuperElement &operator-=(const SuperElement &o);
    SuperElement &operator*=(const Rational &r);

    friend SuperElement operator+(SuperElement a, const SuperElement &b) { return a += b; }
    friend SuperElement operator-(SuperElement a, const SuperElement &b) { return a -= b; }
    friend SuperElement operator*(const SuperElement &a, const SuperElement &b);
    friend SuperElement operator*(const Rational &r, SuperElement a) { return a *= r; }
    friend SuperElement operator*(SuperElement a, const Rational &r) { return a *= r; }
    friend bool operator==(const SuperElement &a, const SuperElement &b);

    SuperElement pow(int k) const;
    std::string to_string() const;

  private:
    void normalize();
    ChartPtr chart_;
    std::vector<Term> terms_;
};

std::ostream &operator<<(std::ostream &os, const SuperElement &a);

bool is_unit(const SuperElement &a);
SuperElement invert(const SuperElement &a);

class Point {
  public:
    Point(ChartPtr chart, std::vector<Rational> even_values);
    const ChartPtr &chart() const { return chart_; }
    const std::vector<Rational> &values() const { return values_; }

  private:
    ChartPtr chart_;
    std::vector<Rational> values_;
};

Rational evaluate(const SuperElement &a, const Point &p);

class AlgebraMorphism {
  public:
    AlgebraMorphism() = default;
    AlgebraMorphism(ChartPtr source, ChartPtr target, std::vector<SuperElement> images);
    static AlgebraMorphism identity(ChartPtr chart);

    const ChartPtr &source() const { return source_; }
    const ChartPtr &target() const { return target_; }
    const std::vector<SuperElement> &images() const { return images_; }
    const SuperElement &image(std::size_t g) const { return images_.at(g); }

    SuperElement apply(const SuperElement &a) const;
    SuperElement operator()(const SuperElement &a) const { return apply(a); }

  private:
    ChartPtr source_;
    ChartPtr target_;
    std::vector<SuperElement> images_;
    std::vector<SuperElement> inverses_;
};

// f after g
AlgebraMorphism compose(const AlgebraMorphism &f, const AlgebraMorphism &g);

// Graded tensor product of charts: generators of all factors, factor order kept,
// so a monomial factors as m_0 m_1 ... with no sign.
class TensorProduct {
  public:
    explicit TensorProduct(std::vector<ChartPtr> factors, std::string name = "");

    const ChartPtr &chart() const { return chart_; }
    std::size_t factor_count() const { return factors_.size(); }
    const ChartPtr &factor(std::size_t k) const { return factors_.at(k); }
    std::size_t even_offset(std::size_t k) const { return even_off_.at(k); }
    std::size_t odd_offset(std::size_t k) const { return odd_off_.at(k); }
    // unified index in the product of generator g of factor k
    std::size_t index(std::size_t k, std::size_t g) const;
    // factor owning a product generator
    std::size_t block_of(std::size_t g) const;

    AlgebraMorphism embedding(std::size_t k) const;
    SuperElement embed(std::size_t k, const SuperElement &a) const;
    // the part of a monomial that lives in factor k, as a monomial of that factor
    Monomial restrict(const Monomial &m, std::size_t k) const;
    // a must only involve factor k
    SuperElement extract(std::size_t k, const SuperElement &a) const;
    // odd degree of the factors strictly before k
    int odd_degree_before(const Monomial &m, std::size_t k) const;
    Monomial without(const Monomial &m, std::size_t k) const;

  private:
    std::vector<ChartPtr> factors_;
    std::vector<std::size_t> even_off_, odd_off_;
    ChartPtr chart_;
};

// the morphism on a tensor product given factorwise, maps[k]: factor k -> target
AlgebraMorphism tensor_map(const TensorProduct &src, const ChartPtr &target,
                           const std::vector<AlgebraMorphism> &maps);

// copies terms between charts of the same shape
SuperElement reinterpret(const SuperElement &a, const ChartPtr &chart);

// "c1 <sep> b1 + c2 <sep> b2 - ..." with coefficient 1 elided and multi-term
// coefficients parenthesized
struct RenderItem {
    std::string coef;
    bool compound = false;
    std::string basis;
};
std::string render_linear(const std::vector<RenderItem> &items, std::string_view sep);

} // namespace sgeom
