#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvd/point.hpp"

namespace gvd {

enum class DomainTag { WholeSpace, PositiveOrthant, PsdInterior, SocInterior, ProductDomain };

// A recorded bound of the form  const * ||x-y||^{1+exponent}  (or, for the
// gradient bound, const * ||x-y||). `global` marks whether the bound is
// claimed on the whole domain or only on a neighborhood sampled by the
// validator.
struct BoundClaim {
    double constant = 0.0;
    double exponent = 1.0;
    bool global = false;
};

struct DistanceCertificate {
    bool local_lower_quadratic = true;
    std::optional<BoundClaim> lower_bound;   // alpha' ||x-y||^{1+nu} <= D(x,y)
    std::optional<BoundClaim> inverse_bound; // D(x,y) <= L' ||x-y||^{1+nu'}
    std::optional<BoundClaim> grad_bound;    // ||grad_x D(x,y)|| <= L'' ||x-y||
    bool subproblem_argmin_interior = true;
};

// Distance D(.,.) with domain set C, value, gradient in the first argument,
// and an assumption certificate. Immutable; value/grad are pure.
class ProxGradDistance {
  public:
    virtual ~ProxGradDistance() = default;

    virtual DomainTag domain() const = 0;
    virtual double value(const Point& x, const Point& y) const = 0;
    virtual Point grad_x(const Point& x, const Point& y) const = 0;
    virtual bool interior(const Point& x) const = 0;

    const DistanceCertificate& certificate() const { return cert_; }

    // Replaces the recorded certificate. Used to probe deliberately wrong
    // claims through validate_certificate; solve paths never read the
    // certificate.
    void override_certificate(DistanceCertificate c) { cert_ = std::move(c); }

  protected:
    DistanceCertificate cert_;
};

// D(x,y) = 1/2 ||x-y||^2 on the whole space.
class SqnormDistance final : public ProxGradDistance {
  public:
    SqnormDistance();
    DomainTag domain() const override { return DomainTag::WholeSpace; }
    double value(const Point& x, const Point& y) const override;
    Point grad_x(const Point& x, const Point& y) const override;
    bool interior(const Point&) const override { return true; }
};

// D(x,y) = 1/2 <x-y, H(x-y)> with H symmetric positive definite.
class MetricDistance final : public ProxGradDistance {
  public:
    explicit MetricDistance(Point H);
    DomainTag domain() const override { return DomainTag::WholeSpace; }
    double value(const Point& x, const Point& y) const override;
    Point grad_x(const Point& x, const Point& y) const override;
    bool interior(const Point&) const override { return true; }
    const Point& metric() const { return H_; }

  private:
    Point H_;
};

// D_exp(z,w) = gamma1 * sum_j (cosh(z_j - w_j) - 1).
class ExpDistance final : public ProxGradDistance {
  public:
    explicit ExpDistance(double gamma1);
    DomainTag domain() const override { return DomainTag::WholeSpace; }
    double value(const Point& z, const Point& w) const override;
    Point grad_x(const Point& z, const Point& w) const override;
    bool interior(const Point&) const override { return true; }
    double gamma1() const { return gamma1_; }

  private:
    double gamma1_;
};

// D_{e,2}((x,z),(y,w)) = gamma1 * D_exp(z,w) + gamma2/2 ||x-y||^2 on a
// two-block product point (x-block first, z-block second).
class De2Distance final : public ProxGradDistance {
  public:
    De2Distance(double gamma1, double gamma2);
    DomainTag domain() const override { return DomainTag::ProductDomain; }
    double value(const Point& xz, const Point& yw) const override;
    Point grad_x(const Point& xz, const Point& yw) const override;
    bool interior(const Point&) const override { return true; }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }

  private:
    double gamma1_;
    double gamma2_;
};

// Barrier distance on the positive orthant, eq-style
//   gamma1 sum_j y_j^r (-log(x_j/y_j) + x_j/y_j - 1) + gamma2/2 ||x-y||^2.
// Applies entrywise to vectors, matrices, and products of those.
class OrthantDistance final : public ProxGradDistance {
  public:
    OrthantDistance(double gamma1, double gamma2, double r);
    DomainTag domain() const override { return DomainTag::PositiveOrthant; }
    double value(const Point& x, const Point& y) const override;
    Point grad_x(const Point& x, const Point& y) const override;
    bool interior(const Point& x) const override;
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double r() const { return r_; }

  private:
    double gamma1_;
    double gamma2_;
    double r_;
};

// Barrier distance on the PSD cone:
//   gamma1 det(Y)^r (-log(det X / det Y) + <X, Y^{-1}> - n) + gamma2/2 ||X-Y||_F^2.
class PsdDistance final : public ProxGradDistance {
  public:
    PsdDistance(double gamma1, double gamma2, double r);
    DomainTag domain() const override { return DomainTag::PsdInterior; }
    double value(const Point& X, const Point& Y) const override;
    Point grad_x(const Point& X, const Point& Y) const override;
    bool interior(const Point& X) const override;
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double r() const { return r_; }

  private:
    double gamma1_;
    double gamma2_;
    double r_;
};

// Barrier distance on the second-order cone with J = diag(-1,...,-1,1):
//   gamma1 <y,Jy>^r (-log(<x,Jx>/<y,Jy>) + 2<x,Jy>/<y,Jy> - 2) + gamma2/2 ||x-y||^2.
class SocDistance final : public ProxGradDistance {
  public:
    SocDistance(double gamma1, double gamma2, double r);
    DomainTag domain() const override { return DomainTag::SocInterior; }
    double value(const Point& x, const Point& y) const override;
    Point grad_x(const Point& x, const Point& y) const override;
    bool interior(const Point& x) const override;
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double r() const { return r_; }

  private:
    double gamma1_;
    double gamma2_;
    double r_;
};

// Standalone closed-form evaluators (same formulas as the classes above).
double sqnorm_value(const Point& x, const Point& y);
double metric_value(const Point& x, const Point& y, const Point& H);
double exp_distance_value(const Point& z, const Point& w, double gamma1);
double de2_value(const Point& xz, const Point& yw, double gamma1, double gamma2);
double orthant_value(const Point& x, const Point& y, double gamma1, double gamma2, double r);
double psd_value(const Point& X, const Point& Y, double gamma1, double gamma2, double r);
double soc_value(const Point& x, const Point& y, double gamma1, double gamma2, double r);
Point distance_grad_x(const ProxGradDistance& d, const Point& x, const Point& y);

// SOC helpers shared with the prox solvers.
double soc_jform(const Point& x);               // <x, Jx>
bool soc_interior_point(const Point& x);

// Certificate validation ------------------------------------------------

struct SampleSpec {
    int count = 100;
    double radius = 1.0;
    unsigned long long seed = 0;
    double interior_margin = 0.1;
    // Representative point shape for sampling; defaults to a 3-vector (or
    // 3x3 symmetric for PSD domains) when unset.
    std::optional<Point> anchor;
};

struct CertificateCheck {
    std::string name;
    bool pass = true;
    double worst_violation = 0.0;
    std::string note;
};

struct CertificateReport {
    std::vector<CertificateCheck> checks;
    bool all_pass() const;
};

CertificateReport validate_certificate(const ProxGradDistance& d, const SampleSpec& spec);

} // namespace gvd
