#pragma once

#include "sgeom/derivations.hpp"

namespace sgeom {

// dx over even coordinates (a set), ds over odd coordinates (a multiset)
struct DiffMonomial {
    std::uint64_t dx = 0;
    std::vector<int> ds;

    int dx_degree() const;
    int ds_degree() const;
    int degree() const { return dx_degree() + ds_degree(); }
    bool operator==(const DiffMonomial &o) const = default;
};

bool diff_less(const DiffMonomial &a, const DiffMonomial &b);

struct FormTerm {
    DiffMonomial diff;
    SuperElement coef; // written on the left
};

class Form {
  public:
    Form() = default;
    explicit Form(ChartPtr chart) : chart_(std::move(chart)) {}

    static Form function(const SuperElement &f);
    static Form constant(ChartPtr chart, const Rational &c);
    // d of generator g (dx or ds)
    static Form differential(ChartPtr chart, std::size_t g);
    static Form differential(ChartPtr chart, std::string_view name);
    static Form from_terms(ChartPtr chart, std::vector<FormTerm> terms);

    const ChartPtr &chart() const { return chart_; }
    const std::vector<FormTerm> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero form; otherwise the top form degree present
    int max_degree() const;
    bool is_degree(int r) const;
    Form degree_part(int r) const;
    // parity is coefficient parity + ds degree
    Parity parity() const;
    Form part(int parity) const;
    // the degree-0 part as a function
    SuperElement function_part() const;

    Form operator-() const;
    Form &operator+=(const Form &o);
    Form &operator-=(const Form &o);
    friend Form operator+(Form a, const Form &b) { return a += b; }
    friend Form operator-(Form a, const Form &b) { return a -= b; }
    friend Form operator*(const Form &a, const Form &b);
    friend Form operator*(const Rational &r, Form a);
    friend bool operator==(const Form &a, const Form &b);

    std::string to_string() const;

  private:
    void normalize();
    ChartPtr chart_;
    std::vector<FormTerm> terms_;
};

std::ostream &operator<<(std::ostream &os, const Form &a);

Form wedge(const Form &a, const Form &b);
Form d(const Form &a);
Form d(const SuperElement &f);
Form interior(const Derivation &xi, const Form &a);
Form lie_derivative(const Derivation &xi, const Form &a);
// (xi_1, ..., xi_r | a); a must be homogeneous of degree r, xi homogeneous
SuperElement evaluate(const std::vector<Derivation> &xis, const Form &a);
// sigma: B(N) -> A(M); a on N, result on M
Form pullback(const AlgebraMorphism &sigma, const Form &a);

} // namespace sgeom
