#pragma once

#include "sgeom/superalgebra.hpp"

namespace sgeom {

// coordinate partial: ordinary Laurent derivative for even g, left odd derivative for odd g
SuperElement partial_derivative(const SuperElement &f, std::size_t g);

// Sum of coeff_g * d/dg over all generators; coefficients of parameter generators stay 0.
class Derivation {
  public:
    Derivation() = default;
    explicit Derivation(ChartPtr chart);
    Derivation(ChartPtr chart, std::vector<SuperElement> coeffs);
    static Derivation partial(ChartPtr chart, std::size_t g);
    static Derivation partial(ChartPtr chart, std::string_view name);

    const ChartPtr &chart() const { return chart_; }
    const std::vector<SuperElement> &coefficients() const { return coeffs_; }
    const SuperElement &coefficient(std::size_t g) const { return coeffs_.at(g); }
    bool is_zero() const;

    Parity parity() const;
    Derivation part(int parity) const;

    SuperElement apply(const SuperElement &f) const;
    SuperElement operator()(const SuperElement &f) const { return apply(f); }

    Derivation operator-() const;
    Derivation &operator+=(const Derivation &o);
    Derivation &operator-=(const Derivation &o);
    friend Derivation operator+(Derivation a, const Derivation &b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation &b) { return a -= b; }
    friend Derivation operator*(const SuperElement &f, const Derivation &d);
    friend Derivation operator*(const Rational &r, const Derivation &d);
    friend bool operator==(const Derivation &a, const Derivation &b);

    std::string to_string() const;

  private:
    ChartPtr chart_;
    std::vector<SuperElement> coeffs_;
};

Derivation bracket(const Derivation &a, const Derivation &b);

class PointDerivation {
  public:
    PointDerivation(Point p, std::vector<Rational> coeffs);
    const Point &point() const { return point_; }
    const std::vector<Rational> &coefficients() const { return coeffs_; }
    Rational apply(const SuperElement &f) const;

  private:
    Point point_;
    std::vector<Rational> coeffs_;
};

PointDerivation tangent_at(const Derivation &xi, const Point &p);

// sigma: B(N) -> A(M); xi lives on M, eta on N
Derivation pushforward(const AlgebraMorphism &sigma, const AlgebraMorphism &sigma_inv, const Derivation &xi);
bool related(const AlgebraMorphism &sigma, const Derivation &xi, const Derivation &eta);
bool is_vertical(const AlgebraMorphism &sigma, const Derivation &xi);

} // namespace sgeom
