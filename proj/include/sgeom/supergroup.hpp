#pragma once

#include "sgeom/liesuper.hpp"

#include <cstdint>

namespace sgeom {

class HopfGroup;
using GroupPtr = std::shared_ptr<const HopfGroup>;

// Finitely presented Hopf superalgebra on one chart.
class HopfGroup {
  public:
    // coproduct images live in pair()->chart(); counit values are given for even generators
    // (odd generators have counit 0); basis names label the coordinate tangents at e.
    static GroupPtr make(std::string name, ChartPtr chart, std::vector<SuperElement> coproduct,
                         std::vector<Rational> counit, std::vector<SuperElement> antipode,
                         std::vector<Rational> identity, std::vector<std::string> basis_names);
    // coproduct images given as texts over the pair chart, antipode texts over the chart
    static GroupPtr parse(std::string name, ChartPtr chart, const std::vector<std::string> &coproduct,
                          std::vector<Rational> counit, const std::vector<std::string> &antipode,
                          std::vector<Rational> identity, std::vector<std::string> basis_names);

    const std::string &name() const { return name_; }
    const ChartPtr &chart() const { return chart_; }
    const TensorProduct &pair() const { return *pair_; }
    const TensorProduct &triple() const { return *triple_; }
    const AlgebraMorphism &coproduct() const { return delta_; }
    const AlgebraMorphism &antipode() const { return antipode_; }
    const std::vector<Rational> &counit_values() const { return counit_; }
    Point identity() const { return Point(chart_, identity_); }
    const std::vector<std::string> &basis_names() const { return basis_; }
    std::size_t dim() const { return chart_->size(); }

    Rational counit(const SuperElement &f) const;
    // gen -> counit value, as a morphism into any chart
    AlgebraMorphism counit_into(const ChartPtr &target) const;
    // (Delta (x) id) o Delta, into triple()
    SuperElement coproduct2(const SuperElement &f) const;

  private:
    HopfGroup() = default;
    std::string name_;
    ChartPtr chart_;
    std::shared_ptr<TensorProduct> pair_, triple_;
    AlgebraMorphism delta_, antipode_;
    std::vector<Rational> counit_;
    std::vector<Rational> identity_;
    std::vector<std::string> basis_;
};

Report validate_hopf(const HopfGroup &g);

// Built-in groups: "r<p><q>" translations of R^{p|q}, "triangular", "gl1".
GroupPtr translation_group(std::size_t p, std::size_t q);
GroupPtr translation_group(std::vector<std::string> even, std::vector<std::string> odd,
                           std::vector<std::string> basis);
GroupPtr triangular_group();
GroupPtr gl1_group();
GroupPtr builtin_group(const std::string &name);
std::vector<std::string> builtin_group_names();
// ordinary Lie group underlying g: even coordinates with bodies of the structure maps
GroupPtr body_group(const HopfGroup &g);

// Point derivation at e: sum over coordinates of coeff * d/dc evaluated at e.
class TangentVector {
  public:
    TangentVector(GroupPtr g, std::vector<Rational> coeffs);
    static TangentVector basis(GroupPtr g, std::size_t k);
    const GroupPtr &group() const { return g_; }
    const std::vector<Rational> &coefficients() const { return coeffs_; }
    // -1 when mixed
    int parity() const;
    Rational apply(const SuperElement &f) const;
    LieVector as_vector() const { return coeffs_; }

  private:
    GroupPtr g_;
    std::vector<Rational> coeffs_;
};

// (id (x) a) on block k of a tensor product whose factor k is the group chart;
// the result lies in the same chart and no longer involves block k.
SuperElement contract(const TensorProduct &tp, std::size_t k, const TangentVector &a, const SuperElement &f);
// block k evaluated at the identity
AlgebraMorphism identity_on_block(const TensorProduct &tp, std::size_t k, const HopfGroup &g);

// Group-like at a symbolic point: even group coordinates become parameters, odd ones go to 0.
struct SymbolicPoint {
    ChartPtr params;
    AlgebraMorphism delta; // group chart -> params
};
// parameter names carry `primes` primes
SymbolicPoint symbolic_point(const ChartPtr &chart, int primes = 1);
SymbolicPoint symbolic_point(const HopfGroup &g, int primes = 1);
// two independent symbolic points on one parameter chart
std::pair<SymbolicPoint, SymbolicPoint> symbolic_pair(const HopfGroup &g);
// a o S
AlgebraMorphism grouplike_inverse(const HopfGroup &g, const AlgebraMorphism &a);
// (a (x) b) o Delta for group-likes into a common chart
AlgebraMorphism convolve(const HopfGroup &g, const AlgebraMorphism &a, const AlgebraMorphism &b);
// epsilon as a group-like into the given chart
AlgebraMorphism unit_grouplike(const HopfGroup &g, const ChartPtr &params);

enum class Side { Right, Left };

// Coaction Phi*: B(Y) -> B(Y) (x) A(G) (right) or A(G) (x) B(Y) (left).
class Action {
  public:
    Action(ChartPtr space, GroupPtr group, std::vector<SuperElement> images, Side side = Side::Right);
    // G acting on itself through Delta
    static Action translation(GroupPtr group, Side side = Side::Right);
    // y = X (x) G with Phi* = id (x) Delta
    static Action product(const TensorProduct &y, GroupPtr group);

    const ChartPtr &space() const { return space_; }
    const GroupPtr &group() const { return g_; }
    Side side() const { return side_; }
    const TensorProduct &product_chart() const { return *yg_; }
    std::size_t group_block() const { return side_ == Side::Right ? 1 : 0; }
    std::size_t space_block() const { return side_ == Side::Right ? 0 : 1; }
    const AlgebraMorphism &morphism() const { return phi_; }

  private:
    ChartPtr space_;
    GroupPtr g_;
    Side side_;
    std::shared_ptr<TensorProduct> yg_;
    AlgebraMorphism phi_;
};

Report action_check(const Action &a);

// (Phi*)_a for primitive a
Derivation induced_derivation(const Action &phi, const TangentVector &a);
// (Phi*)_a for a group-like a: G -> Q, as a morphism Y -> yq.chart() with yq = Y (x) Q
AlgebraMorphism induced_morphism(const Action &phi, const AlgebraMorphism &a, const TensorProduct &yq);
// (Phi*)_b = (b (x) id) o Phi* for a group-like b: Y -> Q, as a morphism G -> gq.chart() with gq = G (x) Q
AlgebraMorphism induced_point_morphism(const Action &phi, const AlgebraMorphism &b, const TensorProduct &gq);
// m: Y -> Y (x) Q extended to Y (x) Q by fixing Q
AlgebraMorphism extend_over_parameters(const AlgebraMorphism &m, const TensorProduct &yq);

// (R*)_a = (id (x) a) o Delta and (L*)_a = (a (x) id) o Delta
Derivation right_derivation(const GroupPtr &g, const TangentVector &a);
Derivation left_derivation(const GroupPtr &g, const TangentVector &a);
std::vector<Derivation> right_basis(const GroupPtr &g);
std::vector<Derivation> left_basis(const GroupPtr &g);
// r_a = (id (x) a) o Delta and l_a = (a (x) id) o Delta for group-likes a: G -> Q, into G (x) Q
AlgebraMorphism right_translation(const HopfGroup &g, const AlgebraMorphism &a, const TensorProduct &gq);
AlgebraMorphism left_translation(const HopfGroup &g, const AlgebraMorphism &a, const TensorProduct &gq);

LiePtr lie_algebra_of(const HopfGroup &g);

// Matrix of Ad_{a*} for a group-like a: G -> Q; entry (k, j) is the e_k coefficient of Ad(e_j).
SuperMatrix adjoint_matrix(const HopfGroup &g, const AlgebraMorphism &a);
RationalMatrix adjoint_matrix(const LieSuperalgebra &g, const LieVector &v);

// rows (R*)_{e_j}, columns coordinates
SuperMatrix right_coefficient_matrix(const GroupPtr &g);
Report parallelizability(const GroupPtr &g);

GForm maurer_cartan(const GroupPtr &g, const LiePtr &lie);
GForm maurer_cartan(const GroupPtr &g);
Report check_maurer_cartan(const GroupPtr &g, const LiePtr &lie, const GForm &theta);

struct DistributionReport {
    std::vector<Derivation> generators;
    Report report;
};
// involutivity on basis pairs and rank at `samples` seeded rational points
DistributionReport action_distribution(const Action &phi, const LiePtr &lie, std::uint64_t seed = 1,
                                       int samples = 10);

} // namespace sgeom
