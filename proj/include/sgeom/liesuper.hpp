#pragma once

#include "sgeom/forms.hpp"
#include "sgeom/linalg.hpp"
#include "sgeom/report.hpp"

namespace sgeom {

using LieVector = std::vector<Rational>;

class LieSuperalgebra {
  public:
    // constants[(i * d + j) * d + k] = c_ij^k
    LieSuperalgebra(std::vector<std::string> names, std::vector<int> parities, std::vector<Rational> constants);
    static LieSuperalgebra abelian(std::vector<std::string> names, std::vector<int> parities);

    std::size_t dim() const { return names_.size(); }
    const std::string &name(std::size_t i) const { return names_.at(i); }
    int parity(std::size_t i) const { return parities_.at(i); }
    const std::vector<std::string> &names() const { return names_; }
    const std::vector<int> &parities() const { return parities_; }
    const Rational &c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim() + j) * dim() + k]; }
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational &v) { c_[(i * dim() + j) * dim() + k] = v; }

    LieVector basis(std::size_t i) const;
    LieVector bracket(const LieVector &u, const LieVector &v) const;
    // column j holds [u, e_j]
    RationalMatrix ad(const LieVector &u) const;
    // parity of a vector, -1 when mixed; zero is even
    int parity_of(const LieVector &v) const;
    bool is_abelian() const;

    // new basis e'_a = sum_i p(i, a) e_i
    LieSuperalgebra changed_basis(const RationalMatrix &p, std::vector<std::string> names) const;

    Report validate() const;
    std::string render_vector(const LieVector &v) const;
    // "[E,F] = -F" per pair i <= j
    std::vector<std::string> bracket_table() const;

    friend bool operator==(const LieSuperalgebra &a, const LieSuperalgebra &b) {
        return a.names_ == b.names_ && a.parities_ == b.parities_ && a.c_ == b.c_;
    }

  private:
    std::vector<std::string> names_;
    std::vector<int> parities_;
    std::vector<Rational> c_;
};

using LiePtr = std::shared_ptr<const LieSuperalgebra>;

// sum_k alpha^k (x) e_k
class GForm {
  public:
    GForm() = default;
    GForm(LiePtr g, ChartPtr chart);
    GForm(LiePtr g, ChartPtr chart, std::vector<Form> comps);
    static GForm single(LiePtr g, const Form &a, std::size_t k);

    const LiePtr &algebra() const { return g_; }
    const ChartPtr &chart() const { return chart_; }
    const std::vector<Form> &components() const { return comps_; }
    const Form &component(std::size_t k) const { return comps_.at(k); }
    bool is_zero() const;
    int max_degree() const;
    GForm degree_part(int r) const;
    // parity of form part plus parity of the basis element
    Parity parity() const;
    GForm part(int total_parity) const;

    GForm operator-() const;
    GForm &operator+=(const GForm &o);
    GForm &operator-=(const GForm &o);
    friend GForm operator+(GForm a, const GForm &b) { return a += b; }
    friend GForm operator-(GForm a, const GForm &b) { return a -= b; }
    friend GForm operator*(const Rational &r, GForm a);
    // f alpha^k (x) e_k
    friend GForm operator*(const Form &f, const GForm &a);
    friend bool operator==(const GForm &a, const GForm &b);

    std::string to_string() const;

  private:
    LiePtr g_;
    ChartPtr chart_;
    std::vector<Form> comps_;
};

std::ostream &operator<<(std::ostream &os, const GForm &a);

using GFunction = std::vector<SuperElement>;
std::string render_gfunction(const LieSuperalgebra &g, const GFunction &f);

GForm bracket(const GForm &a, const GForm &b);
GForm d(const GForm &a);
GForm interior(const Derivation &xi, const GForm &a);
GForm lie_derivative(const Derivation &xi, const GForm &a);
GFunction evaluate(const std::vector<Derivation> &xis, const GForm &a);
GForm pullback(const AlgebraMorphism &sigma, const GForm &a);
// (id (x) ad v); v homogeneous
GForm ad_action(const LieVector &v, const GForm &a);
// (id (x) A) with A(e_i) = sum_j m(j, i) e_j, entries even functions on the form chart
GForm apply_matrix(const SuperMatrix &m, const GForm &a);
// express a in the basis of h, where h = g.changed_basis(p)
GForm change_basis(const GForm &a, const LiePtr &h, const RationalMatrix &p);

} // namespace sgeom
