#pragma once

#include "sgeom/supergroup.hpp"

namespace sgeom {

class Bundle;
using BundlePtr = std::shared_ptr<const Bundle>;

class BundleError : public std::runtime_error {
  public:
    BundleError(const std::string &msg, Report report) : std::runtime_error(msg), report_(std::move(report)) {}
    const Report &report() const { return report_; }

  private:
    Report report_;
};

// Product bundle Y = X (x) G with Phi* = id (x) Delta.
class Bundle {
  public:
    // runs the comodule, freeness and vertical checks; throws BundleError with the report on failure
    static BundlePtr build(ChartPtr base, GroupPtr group, std::uint64_t seed = 1);

    const ChartPtr &base() const { return base_; }
    const GroupPtr &group() const { return group_; }
    const LiePtr &algebra() const { return lie_; }
    const TensorProduct &total() const { return *total_; }
    const ChartPtr &chart() const { return total_->chart(); }
    const Action &action() const { return *action_; }
    // pi*: base functions into the total chart
    const AlgebraMorphism &projection() const { return projection_; }
    // (Phi*)_{e_k}
    const std::vector<Derivation> &vertical() const { return vertical_; }
    const GForm &theta() const { return theta_; }
    // ((L*)_{e_k} | theta)
    const std::vector<GFunction> &left_theta() const { return left_theta_; }
    const Report &report() const { return report_; }

    // sections from gauges sigma: G-chart -> X-chart; s* fixes X and applies sigma on G
    AlgebraMorphism section(const AlgebraMorphism &sigma) const;
    // G coordinates sent to their counit values
    AlgebraMorphism identity_gauge() const;
    Form lift_base(const Form &f) const;
    GForm lift_fiber(const GForm &f) const;

  private:
    Bundle() = default;
    ChartPtr base_;
    GroupPtr group_;
    LiePtr lie_;
    std::shared_ptr<TensorProduct> total_;
    std::shared_ptr<Action> action_;
    AlgebraMorphism projection_;
    std::vector<Derivation> vertical_;
    GForm theta_;
    std::vector<GFunction> left_theta_;
    Report report_;
};

struct Connection {
    BundlePtr bundle;
    std::optional<GForm> beta; // absent for hand-built forms
    GForm omega;
    Report report;
    bool verified = false;
};

// omega = sum_k pi*beta^k * ((L*)_{e_k}|theta) + theta; beta^k must be a 1-form of parity |e_k|
Connection connection_from_beta(const BundlePtr &b, const GForm &beta);
// wraps an arbitrary algebra-valued form and verifies it
Connection connection_from_form(const BundlePtr &b, const GForm &omega);
Report verify_connection(const Bundle &b, const GForm &omega);

Derivation horizontal_part(const Bundle &b, const GForm &omega, const Derivation &xi);
GForm curvature(const GForm &omega);

struct IdentityOptions {
    unsigned threads = 1;
};
Report curvature_identities(const Connection &c, const IdentityOptions &opt = {});

struct SectionPullback {
    GForm formula;
    GForm direct;
    Report report;
};
// requires c.beta
SectionPullback section_pullback(const Connection &c, const AlgebraMorphism &sigma);

struct Kappa0 {
    BundlePtr body;
    GForm omega;
    GForm projected_curvature;
    GForm classical_curvature;
    Report report;
};
Kappa0 kappa0(const Connection &c);

} // namespace sgeom
