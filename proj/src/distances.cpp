#include "gvd/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "eigen_util.hpp"

namespace gvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoshClamp = 700.0;

double clamp_arg(double xi) {
    return std::clamp(xi, -kCoshClamp, kCoshClamp);
}

// cosh(xi) - 1 = 2 sinh^2(xi/2), exact at 0
double psi(double xi) {
    double s = std::sinh(0.5 * clamp_arg(xi));
    return 2.0 * s * s;
}

double psi_deriv(double xi) {
    return std::sinh(clamp_arg(xi));
}

void require_same_space(const Point& x, const Point& y) {
    if (!x.same_space(y)) throw std::invalid_argument("distance: space mismatch");
}

// entrywise orthant barrier term sum_j y_j^r (-log(x_j/y_j) + x_j/y_j - 1)
double orthant_barrier(const Point& x, const Point& y, double r) {
    if (x.tag() == SpaceTag::Product) {
        double total = 0.0;
        for (std::size_t b = 0; b < x.blocks().size(); ++b) {
            total += orthant_barrier(x.blocks()[b], y.blocks()[b], r);
            if (total == kInf) return kInf;
        }
        return total;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < x.data().size(); ++j) {
        double xj = x.data()[j];
        double yj = y.data()[j];
        if (yj <= 0.0) throw std::domain_error("orthant distance: center not strictly positive");
        if (xj <= 0.0) return kInf;
        total += std::pow(yj, r) * (-std::log(xj / yj) + xj / yj - 1.0);
    }
    return total;
}

bool all_positive(const Point& x) {
    if (x.tag() == SpaceTag::Product) {
        for (const Point& b : x.blocks())
            if (!all_positive(b)) return false;
        return true;
    }
    for (double v : x.data())
        if (v <= 0.0) return false;
    return true;
}

} // namespace

double soc_jform(const Point& x) {
    const auto& d = x.data();
    std::size_t n = d.size();
    double q = d[n - 1] * d[n - 1];
    for (std::size_t j = 0; j + 1 < n; ++j) q -= d[j] * d[j];
    return q;
}

bool soc_interior_point(const Point& x) {
    return x.data().back() > 0.0 && soc_jform(x) > 0.0;
}

// SqnormDistance ---------------------------------------------------------

SqnormDistance::SqnormDistance() {
    cert_.lower_bound = BoundClaim{0.5, 1.0, true};
    cert_.inverse_bound = BoundClaim{0.5, 1.0, true};
    cert_.grad_bound = BoundClaim{1.0, 1.0, true};
}

double SqnormDistance::value(const Point& x, const Point& y) const {
    return sqnorm_value(x, y);
}

Point SqnormDistance::grad_x(const Point& x, const Point& y) const {
    return sub(x, y);
}

double sqnorm_value(const Point& x, const Point& y) {
    require_same_space(x, y);
    Point d = sub(x, y);
    return 0.5 * point_inner(d, d);
}

// MetricDistance ---------------------------------------------------------

MetricDistance::MetricDistance(Point H) : H_(std::move(H)) {
    if (H_.tag() != SpaceTag::Symmetric)
        throw std::invalid_argument("MetricDistance: H must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(H_));
    double lmin = es.eigenvalues().minCoeff();
    double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0) throw std::invalid_argument("MetricDistance: H must be positive definite");
    cert_.lower_bound = BoundClaim{0.5 * lmin, 1.0, true};
    cert_.inverse_bound = BoundClaim{0.5 * lmax, 1.0, true};
    cert_.grad_bound = BoundClaim{lmax, 1.0, true};
}

double MetricDistance::value(const Point& x, const Point& y) const {
    return metric_value(x, y, H_);
}

Point MetricDistance::grad_x(const Point& x, const Point& y) const {
    Point d = sub(x, y);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(d.data().data(), d.data().size());
    Eigen::VectorXd Hv = detail::to_eigen(H_) * v;
    return Point::vector(std::vector<double>(Hv.data(), Hv.data() + Hv.size()));
}

double metric_value(const Point& x, const Point& y, const Point& H) {
    require_same_space(x, y);
    if (H.tag() != SpaceTag::Symmetric || H.rows() != x.size())
        throw std::invalid_argument("metric_value: H shape mismatch");
    Point d = sub(x, y);
    double total = 0.0;
    for (std::size_t i = 0; i < d.data().size(); ++i)
        for (std::size_t j = 0; j < d.data().size(); ++j)
            total += d.data()[i] * H.at(i, j) * d.data()[j];
    return 0.5 * total;
}

// ExpDistance ------------------------------------------------------------

ExpDistance::ExpDistance(double gamma1) : gamma1_(gamma1) {
    if (gamma1 <= 0.0) throw std::invalid_argument("ExpDistance: gamma1 must be positive");
    double Lt = std::cosh(1.0);
    cert_.lower_bound = BoundClaim{0.5 * gamma1, 1.0, true};
    cert_.inverse_bound = BoundClaim{0.5 * gamma1 * Lt, 1.0, false};
    cert_.grad_bound = BoundClaim{gamma1 * Lt, 1.0, false};
}

double ExpDistance::value(const Point& z, const Point& w) const {
    return exp_distance_value(z, w, gamma1_);
}

Point ExpDistance::grad_x(const Point& z, const Point& w) const {
    require_same_space(z, w);
    std::vector<double> g(z.data().size());
    for (std::size_t j = 0; j < g.size(); ++j)
        g[j] = gamma1_ * psi_deriv(z.data()[j] - w.data()[j]);
    return Point::vector(std::move(g));
}

double exp_distance_value(const Point& z, const Point& w, double gamma1) {
    require_same_space(z, w);
    double total = 0.0;
    for (std::size_t j = 0; j < z.data().size(); ++j) total += psi(z.data()[j] - w.data()[j]);
    return gamma1 * total;
}

// De2Distance ------------------------------------------------------------

De2Distance::De2Distance(double gamma1, double gamma2) : gamma1_(gamma1), gamma2_(gamma2) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0)
        throw std::invalid_argument("De2Distance: gamma parameters must be positive");
    double Lt = std::cosh(1.0);
    cert_.lower_bound = BoundClaim{0.5 * std::min(gamma1, gamma2), 1.0, true};
    cert_.inverse_bound = BoundClaim{0.5 * std::max(Lt * gamma1, gamma2), 1.0, false};
    cert_.grad_bound = BoundClaim{std::max(Lt * gamma1, gamma2), 1.0, false};
}

double De2Distance::value(const Point& xz, const Point& yw) const {
    return de2_value(xz, yw, gamma1_, gamma2_);
}

Point De2Distance::grad_x(const Point& xz, const Point& yw) const {
    require_same_space(xz, yw);
    const Point& x = xz.blocks()[0];
    const Point& z = xz.blocks()[1];
    const Point& y = yw.blocks()[0];
    const Point& w = yw.blocks()[1];
    Point gx = scale(gamma2_, sub(x, y));
    std::vector<double> gz(z.data().size());
    for (std::size_t j = 0; j < gz.size(); ++j)
        gz[j] = gamma1_ * psi_deriv(z.data()[j] - w.data()[j]);
    return Point::product({gx, Point::vector(std::move(gz))});
}

double de2_value(const Point& xz, const Point& yw, double gamma1, double gamma2) {
    require_same_space(xz, yw);
    if (xz.tag() != SpaceTag::Product || xz.blocks().size() != 2)
        throw std::invalid_argument("de2_value: expects a two-block product point");
    double quad = sqnorm_value(xz.blocks()[0], yw.blocks()[0]);
    return exp_distance_value(xz.blocks()[1], yw.blocks()[1], gamma1) + gamma2 * quad;
}

// OrthantDistance --------------------------------------------------------

OrthantDistance::OrthantDistance(double gamma1, double gamma2, double r)
    : gamma1_(gamma1), gamma2_(gamma2), r_(r) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0)
        throw std::invalid_argument("OrthantDistance: gamma parameters must be positive");
    if (r < 0.0) throw std::invalid_argument("OrthantDistance: r must be nonnegative");
    // local constants valid on the canonical neighborhood sampled by the
    // validator (all coordinates in [0.5, 1.5])
    double w = std::pow(1.5, r);
    cert_.lower_bound = BoundClaim{0.5 * std::min(gamma1, gamma2), 1.0, true};
    cert_.inverse_bound = BoundClaim{1.2 * (18.0 * w * gamma1 + 0.5 * gamma2), 1.0, false};
    cert_.grad_bound = BoundClaim{1.2 * (4.0 * w * gamma1 + gamma2), 1.0, false};
}

double OrthantDistance::value(const Point& x, const Point& y) const {
    return orthant_value(x, y, gamma1_, gamma2_, r_);
}

Point OrthantDistance::grad_x(const Point& x, const Point& y) const {
    require_same_space(x, y);
    if (x.tag() == SpaceTag::Product) {
        std::vector<Point> blocks;
        for (std::size_t b = 0; b < x.blocks().size(); ++b)
            blocks.push_back(grad_x(x.blocks()[b], y.blocks()[b]));
        return Point::product(std::move(blocks));
    }
    std::vector<double> g(x.data().size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        double xj = x.data()[j];
        double yj = y.data()[j];
        if (xj <= 0.0) throw std::domain_error("orthant distance gradient: x not interior");
        g[j] = gamma1_ * std::pow(yj, r_) * (-1.0 / xj + 1.0 / yj) + gamma2_ * (xj - yj);
    }
    switch (x.tag()) {
        case SpaceTag::Vector: return Point::vector(std::move(g));
        case SpaceTag::Symmetric: return Point::symmetric(x.rows(), std::move(g));
        default: return Point::matrix(x.rows(), x.cols(), std::move(g));
    }
}

bool OrthantDistance::interior(const Point& x) const {
    return all_positive(x);
}

double orthant_value(const Point& x, const Point& y, double gamma1, double gamma2, double r) {
    require_same_space(x, y);
    double barrier = orthant_barrier(x, y, r);
    if (barrier == kInf) return kInf;
    return gamma1 * barrier + gamma2 * sqnorm_value(x, y);
}

// PsdDistance ------------------------------------------------------------

PsdDistance::PsdDistance(double gamma1, double gamma2, double r)
    : gamma1_(gamma1), gamma2_(gamma2), r_(r) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0)
        throw std::invalid_argument("PsdDistance: gamma parameters must be positive");
    if (r < 0.0) throw std::invalid_argument("PsdDistance: r must be nonnegative");
    // canonical validator neighborhood: 3x3 with eigenvalues in [0.5, 1.5]
    double w = std::pow(1.5, 3.0 * r);
    cert_.lower_bound = BoundClaim{0.5 * std::min(gamma1, gamma2), 1.0, true};
    cert_.inverse_bound = BoundClaim{1.2 * (2.0 * w * gamma1 + 0.5 * gamma2), 1.0, false};
    cert_.grad_bound = BoundClaim{1.2 * (4.0 * w * gamma1 + gamma2), 1.0, false};
}

double PsdDistance::value(const Point& X, const Point& Y) const {
    return psd_value(X, Y, gamma1_, gamma2_, r_);
}

Point PsdDistance::grad_x(const Point& X, const Point& Y) const {
    require_same_space(X, Y);
    Eigen::MatrixXd Xm = detail::to_eigen(X);
    Eigen::MatrixXd Ym = detail::to_eigen(Y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esx(Xm);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esy(Ym);
    if (esx.eigenvalues().minCoeff() <= 1e-300)
        throw std::domain_error("psd distance gradient: X not interior");
    if (esy.eigenvalues().minCoeff() <= 1e-300)
        throw std::domain_error("psd distance: center not positive definite");
    Eigen::MatrixXd Xinv =
        esx.eigenvectors() * esx.eigenvalues().cwiseInverse().asDiagonal() * esx.eigenvectors().transpose();
    Eigen::MatrixXd Yinv =
        esy.eigenvectors() * esy.eigenvalues().cwiseInverse().asDiagonal() * esy.eigenvectors().transpose();
    double c = gamma1_ * std::pow(esy.eigenvalues().prod(), r_);
    Eigen::MatrixXd G = c * (Yinv - Xinv) + gamma2_ * (Xm - Ym);
    return detail::sym_from_eigen(G);
}

bool PsdDistance::interior(const Point& X) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(X));
    return es.eigenvalues().minCoeff() > 1e-300;
}

double psd_value(const Point& X, const Point& Y, double gamma1, double gamma2, double r) {
    require_same_space(X, Y);
    if (X.tag() != SpaceTag::Symmetric)
        throw std::invalid_argument("psd_value: expects symmetric points");
    Eigen::MatrixXd Xm = detail::to_eigen(X);
    Eigen::MatrixXd Ym = detail::to_eigen(Y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esy(Ym);
    if (esy.eigenvalues().minCoeff() <= 1e-300)
        throw std::domain_error("psd_value: center not positive definite");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esx(Xm);
    if (esx.eigenvalues().minCoeff() <= 1e-300) return kInf;
    double n = static_cast<double>(X.rows());
    double logdet_x = esx.eigenvalues().array().log().sum();
    double logdet_y = esy.eigenvalues().array().log().sum();
    Eigen::MatrixXd Yinv =
        esy.eigenvectors() * esy.eigenvalues().cwiseInverse().asDiagonal() * esy.eigenvectors().transpose();
    double trace_term = (Xm.cwiseProduct(Yinv)).sum();
    double dety_r = std::pow(esy.eigenvalues().prod(), r);
    double barrier = -(logdet_x - logdet_y) + trace_term - n;
    return gamma1 * dety_r * barrier + gamma2 * 0.5 * (Xm - Ym).squaredNorm();
}

// SocDistance ------------------------------------------------------------

SocDistance::SocDistance(double gamma1, double gamma2, double r)
    : gamma1_(gamma1), gamma2_(gamma2), r_(r) {
    if (gamma1 <= 0.0 || gamma2 <= 0.0)
        throw std::invalid_argument("SocDistance: gamma parameters must be positive");
    if (r < 0.0) throw std::invalid_argument("SocDistance: r must be nonnegative");
    // canonical validator neighborhood around e_n (see validate_certificate)
    double w = std::pow(2.25, r);
    cert_.lower_bound = BoundClaim{0.5 * std::min(gamma1, gamma2), 1.0, true};
    cert_.inverse_bound = BoundClaim{1.2 * (17.0 * w * gamma1 + 0.5 * gamma2), 1.0, false};
    cert_.grad_bound = BoundClaim{1.2 * (34.0 * w * gamma1 + gamma2), 1.0, false};
}

double SocDistance::value(const Point& x, const Point& y) const {
    return soc_value(x, y, gamma1_, gamma2_, r_);
}

Point SocDistance::grad_x(const Point& x, const Point& y) const {
    require_same_space(x, y);
    if (!soc_interior_point(x)) throw std::domain_error("soc distance gradient: x not interior");
    if (!soc_interior_point(y)) throw std::domain_error("soc distance: center not interior");
    double qx = soc_jform(x);
    double theta = soc_jform(y);
    double c = gamma1_ * std::pow(theta, r_);
    std::size_t n = x.data().size();
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        double Jx = (j + 1 < n) ? -x.data()[j] : x.data()[j];
        double Jy = (j + 1 < n) ? -y.data()[j] : y.data()[j];
        g[j] = c * (-2.0 * Jx / qx + 2.0 * Jy / theta) + gamma2_ * (x.data()[j] - y.data()[j]);
    }
    return Point::vector(std::move(g));
}

bool SocDistance::interior(const Point& x) const {
    return soc_interior_point(x);
}

double soc_value(const Point& x, const Point& y, double gamma1, double gamma2, double r) {
    require_same_space(x, y);
    if (x.tag() != SpaceTag::Vector || x.data().size() < 2)
        throw std::invalid_argument("soc_value: expects a vector of dimension >= 2");
    if (!soc_interior_point(y)) throw std::domain_error("soc_value: center not interior");
    if (!soc_interior_point(x)) return kInf;
    double qx = soc_jform(x);
    double theta = soc_jform(y);
    std::size_t n = x.data().size();
    double xJy = x.data()[n - 1] * y.data()[n - 1];
    for (std::size_t j = 0; j + 1 < n; ++j) xJy -= x.data()[j] * y.data()[j];
    double barrier = -std::log(qx / theta) + 2.0 * xJy / theta - 2.0;
    return gamma1 * std::pow(theta, r) * barrier + gamma2 * sqnorm_value(x, y);
}

Point distance_grad_x(const ProxGradDistance& d, const Point& x, const Point& y) {
    return d.grad_x(x, y);
}

// Certificate validation -------------------------------------------------

namespace {

struct Sampler {
    std::mt19937_64 rng;
    double radius;
    double margin;

    double uni(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    }

    Point interior_point(DomainTag tag, const Point& anchor) {
        switch (tag) {
            case DomainTag::WholeSpace: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v += uni(-radius, radius);
                return with_data(anchor, flat);
            }
            case DomainTag::ProductDomain: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v += uni(-radius, radius);
                return with_data(anchor, flat);
            }
            case DomainTag::PositiveOrthant: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v = uni(margin, margin + radius);
                return with_data(anchor, flat);
            }
            case DomainTag::PsdInterior: {
                std::size_t n = anchor.rows();
                Eigen::MatrixXd R(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) R(i, j) = uni(-1.0, 1.0);
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(R);
                Eigen::MatrixXd Q = qr.householderQ();
                Eigen::VectorXd lam(n);
                for (std::size_t i = 0; i < n; ++i) lam(i) = uni(margin, margin + radius);
                return detail::sym_from_eigen(Q * lam.asDiagonal() * Q.transpose());
            }
            case DomainTag::SocInterior: {
                std::size_t n = anchor.data().size();
                std::vector<double> v(n);
                double s = 0.0;
                for (std::size_t j = 0; j + 1 < n; ++j) {
                    v[j] = uni(-radius, radius);
                    s += v[j] * v[j];
                }
                v[n - 1] = std::sqrt(s) + uni(margin, margin + radius);
                return Point::vector(std::move(v));
            }
        }
        throw std::logic_error("unreachable");
    }

    // pair in the canonical local neighborhood used by local certificate claims
    std::pair<Point, Point> local_pair(DomainTag tag, const Point& anchor) {
        switch (tag) {
            case DomainTag::WholeSpace:
            case DomainTag::ProductDomain: {
                std::vector<double> yf = flatten(anchor);
                for (double& v : yf) v += uni(-1.0, 1.0);
                Point y = with_data(anchor, yf);
                std::vector<double> dir(yf.size());
                double nrm = 0.0;
                for (double& v : dir) {
                    v = uni(-1.0, 1.0);
                    nrm += v * v;
                }
                nrm = std::sqrt(std::max(nrm, 1e-30));
                double len = uni(1e-4, 1.0);
                std::vector<double> xf = yf;
                for (std::size_t i = 0; i < xf.size(); ++i) xf[i] += len * dir[i] / nrm;
                return {with_data(anchor, xf), y};
            }
            case DomainTag::PositiveOrthant: {
                std::vector<double> xf = flatten(anchor);
                std::vector<double> yf = xf;
                for (double& v : xf) v = uni(0.5, 1.5);
                for (double& v : yf) v = uni(0.5, 1.5);
                return {with_data(anchor, xf), with_data(anchor, yf)};
            }
            case DomainTag::PsdInterior: {
                Sampler inner{std::mt19937_64(rng()), 1.0, 0.5};
                Point X = inner.interior_point(tag, anchor); // eigenvalues in [0.5, 1.5]
                Sampler inner2{std::mt19937_64(rng()), 1.0, 0.5};
                Point Y = inner2.interior_point(tag, anchor);
                return {X, Y};
            }
            case DomainTag::SocInterior: {
                std::size_t n = anchor.data().size();
                auto draw = [&]() {
                    std::vector<double> v(n);
                    for (std::size_t j = 0; j + 1 < n; ++j) v[j] = uni(-0.2, 0.2);
                    v[n - 1] = uni(0.8, 1.5);
                    return Point::vector(std::move(v));
                };
                return {draw(), draw()};
            }
        }
        throw std::logic_error("unreachable");
    }

    // x pushed toward the boundary; used when a bound is claimed globally
    // on a barrier domain
    Point boundary_probe(DomainTag tag, const Point& anchor) {
        switch (tag) {
            case DomainTag::PositiveOrthant: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v = uni(margin, margin + radius);
                flat[0] = 1e-6;
                return with_data(anchor, flat);
            }
            case DomainTag::PsdInterior: {
                Point X = interior_point(tag, anchor);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(X));
                Eigen::VectorXd lam = es.eigenvalues();
                lam(0) = 1e-6;
                return detail::sym_from_eigen(es.eigenvectors() * lam.asDiagonal() *
                                              es.eigenvectors().transpose());
            }
            case DomainTag::SocInterior: {
                Point x = interior_point(tag, anchor);
                std::vector<double> v = x.data();
                std::size_t n = v.size();
                double s = 0.0;
                for (std::size_t j = 0; j + 1 < n; ++j) s += v[j] * v[j];
                v[n - 1] = std::sqrt(s + 1e-6);
                return Point::vector(std::move(v));
            }
            default:
                return interior_point(tag, anchor);
        }
    }

    Point ray_direction(DomainTag tag, const Point& anchor) {
        switch (tag) {
            case DomainTag::WholeSpace:
            case DomainTag::ProductDomain: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v = uni(-1.0, 1.0);
                return with_data(anchor, flat);
            }
            case DomainTag::PositiveOrthant: {
                std::vector<double> flat = flatten(anchor);
                for (double& v : flat) v = uni(0.1, 1.0);
                return with_data(anchor, flat);
            }
            case DomainTag::PsdInterior: {
                Sampler inner{std::mt19937_64(rng()), 1.0, 0.1};
                return inner.interior_point(tag, anchor);
            }
            case DomainTag::SocInterior: {
                std::size_t n = anchor.data().size();
                std::vector<double> v(n);
                double s = 0.0;
                for (std::size_t j = 0; j + 1 < n; ++j) {
                    v[j] = uni(-0.5, 0.5);
                    s += v[j] * v[j];
                }
                v[n - 1] = std::sqrt(s) + uni(0.2, 1.0);
                return Point::vector(std::move(v));
            }
        }
        throw std::logic_error("unreachable");
    }
};

Point default_anchor(DomainTag tag) {
    switch (tag) {
        case DomainTag::PsdInterior: return Point::identity(3);
        case DomainTag::SocInterior: return Point::vector({0.0, 0.0, 1.0});
        case DomainTag::ProductDomain:
            return Point::product({Point::zeros_vector(2), Point::zeros_vector(2)});
        default: return Point::zeros_vector(3);
    }
}

} // namespace

bool CertificateReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

CertificateReport validate_certificate(const ProxGradDistance& d, const SampleSpec& spec) {
    CertificateReport report;
    DomainTag tag = d.domain();
    Point anchor = spec.anchor ? *spec.anchor : default_anchor(tag);
    Sampler sampler{std::mt19937_64(spec.seed), spec.radius, spec.interior_margin};

    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < spec.count; ++i)
        pairs.emplace_back(sampler.interior_point(tag, anchor), sampler.interior_point(tag, anchor));

    {
        CertificateCheck c{"nonnegativity", true, 0.0, ""};
        for (const auto& [x, y] : pairs) {
            double v = d.value(x, y);
            if (v < 0.0) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, -v);
            }
        }
        report.checks.push_back(c);
    }
    {
        CertificateCheck c{"zero_iff_equal", true, 0.0, ""};
        for (const auto& [x, y] : pairs) {
            double vy = d.value(y, y);
            if (std::abs(vy) > 1e-12) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, std::abs(vy));
            }
            if (point_norm(sub(x, y)) > 1e-6 && d.value(x, y) <= 1e-12) {
                c.pass = false;
                c.note = "zero value at distinct points";
            }
        }
        report.checks.push_back(c);
    }
    {
        CertificateCheck c{"grad_zero_at_center", true, 0.0, ""};
        for (const auto& [x, y] : pairs) {
            (void)x;
            double g = point_norm(d.grad_x(y, y));
            if (g > 1e-10) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, g);
            }
        }
        report.checks.push_back(c);
    }
    {
        CertificateCheck c{"supercoercive_along_rays", true, 0.0, ""};
        for (int ray = 0; ray < 5; ++ray) {
            Point y = sampler.interior_point(tag, anchor);
            Point dir = sampler.ray_direction(tag, anchor);
            double prev_ratio = -kInf;
            double first_ratio = 0.0;
            double last_ratio = 0.0;
            bool increasing = true;
            for (int s = 0; s < 7; ++s) {
                double t = std::ldexp(1.0, s); // 1, 2, 4, ..., 64
                double v = d.value(add(y, scale(t, dir)), y);
                double ratio = v / t;
                if (s == 0) first_ratio = ratio;
                if (ratio < prev_ratio) increasing = false;
                prev_ratio = ratio;
                last_ratio = ratio;
            }
            // a constant ratio (merely linear growth) must fail; a large
            // additive barrier contribution at t=1 dilutes the factor, so
            // require a 2x increase rather than proportional growth
            if (!increasing || last_ratio < 2.0 * std::max(first_ratio, 1e-12)) {
                c.pass = false;
                c.note = "ray growth not superlinear (ray " + std::to_string(ray) +
                         ": first ratio " + std::to_string(first_ratio) + ", last ratio " +
                         std::to_string(last_ratio) +
                         (increasing ? "" : ", ratio not monotone") + ")";
            }
        }
        report.checks.push_back(c);
    }

    const DistanceCertificate& cert = d.certificate();
    auto bound_pairs = [&](bool global_claim) {
        std::vector<std::pair<Point, Point>> out;
        if (global_claim) {
            out = pairs;
            if (tag == DomainTag::PositiveOrthant || tag == DomainTag::PsdInterior ||
                tag == DomainTag::SocInterior) {
                for (int i = 0; i < 10; ++i)
                    out.emplace_back(sampler.boundary_probe(tag, anchor),
                                     sampler.interior_point(tag, anchor));
            }
        } else {
            for (int i = 0; i < spec.count; ++i) out.push_back(sampler.local_pair(tag, anchor));
        }
        return out;
    };

    if (cert.lower_bound) {
        CertificateCheck c{"lower_bound", true, 0.0, ""};
        const BoundClaim& b = *cert.lower_bound;
        for (const auto& [x, y] : bound_pairs(b.global)) {
            double lhs = b.constant * std::pow(point_norm(sub(x, y)), 1.0 + b.exponent);
            double rhs = d.value(x, y);
            if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, lhs - rhs);
            }
        }
        report.checks.push_back(c);
    }
    if (cert.inverse_bound) {
        CertificateCheck c{"inverse_bound", true, 0.0, ""};
        const BoundClaim& b = *cert.inverse_bound;
        for (const auto& [x, y] : bound_pairs(b.global)) {
            double lhs = d.value(x, y);
            double rhs = b.constant * std::pow(point_norm(sub(x, y)), 1.0 + b.exponent);
            if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, lhs - rhs);
            }
        }
        report.checks.push_back(c);
    }
    if (cert.grad_bound) {
        CertificateCheck c{"grad_bound", true, 0.0, ""};
        const BoundClaim& b = *cert.grad_bound;
        for (const auto& [x, y] : bound_pairs(b.global)) {
            if (!d.interior(x)) continue; // gradient undefined at boundary probes
            double lhs = point_norm(d.grad_x(x, y));
            double rhs = b.constant * point_norm(sub(x, y));
            if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
                c.pass = false;
                c.worst_violation = std::max(c.worst_violation, lhs - rhs);
            }
        }
        report.checks.push_back(c);
    }
    return report;
}

} // namespace gvd
