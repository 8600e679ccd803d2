#include "gvd/compare.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include "gvd/distances.hpp"
#include "gvd/oracle.hpp"
#include "gvd/prox.hpp"

namespace gvd {
namespace {

struct Instance {
    Point a = Point::zeros_vector(0);
    Point y = Point::zeros_vector(0);
    double gamma = 1.0;
    std::shared_ptr<ProxGradDistance> d;
    OracleG g;
    Point closed = Point::zeros_vector(0);
    bool arg_check = true;
    int starts = 4;
};

Point rand_vector(std::mt19937_64& rng, std::size_t n, double scale) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    for (double& t : v) t = scale * gauss(rng);
    return Point::vector(std::move(v));
}

Point rand_sym(std::mt19937_64& rng, std::size_t n, double scale) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n * n);
    for (double& t : v) t = scale * gauss(rng);
    return Point::symmetric(n, std::move(v)); // symmetrized on construction
}

Point rand_pd(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> b(n * n);
    for (double& t : b) t = gauss(rng);
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) m[i * n + j] += b[i * n + k] * b[j * n + k];
            if (i == j) m[i * n + j] += 0.3;
        }
    return Point::symmetric(n, std::move(m));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Instance make_instance(const std::string& family, std::mt19937_64& rng, int max_dim) {
    Instance ins;
    if (family == "sqnorm_l1") {
        std::size_t n = 1 + rng() % static_cast<unsigned>(max_dim);
        ins.a = rand_vector(rng, n, 1.0);
        ins.y = rand_vector(rng, n, 1.0);
        ins.gamma = uniform(rng, 0.5, 4.0);
        double lambda = uniform(rng, 0.1, 2.0);
        ins.d = std::make_shared<SqnormDistance>();
        ins.g = {"l1", lambda, 0};
        ins.closed = prox_sqnorm_l1(ins.a, ins.y, ins.gamma, lambda);
    } else if (family == "trimmed_exp") {
        std::size_t m = 2 + rng() % 4; // 2..5
        int K = static_cast<int>(rng() % m);
        ins.a = rand_vector(rng, m, 0.7);
        ins.y = rand_vector(rng, m, 1.0);
        ins.gamma = uniform(rng, 0.5, 3.0);
        ins.d = std::make_shared<ExpDistance>(1.0);
        ins.g = {"trimmed_exp", 0.0, K};
        ins.closed = prox_exp_trimmed(ins.a, ins.y, ins.gamma, K);
        ins.arg_check = false;
    } else if (family == "orthant_smooth" || family == "orthant_trimmed_l1") {
        std::size_t n = 1 + rng() % static_cast<unsigned>(max_dim);
        std::vector<double> y(n);
        for (double& t : y) t = uniform(rng, 0.3, 2.0);
        ins.y = Point::vector(std::move(y));
        ins.a = rand_vector(rng, n, 1.0);
        double g1 = uniform(rng, 0.3, 2.0), g2 = uniform(rng, 0.3, 2.0);
        double r = (rng() % 2) ? 2.0 : 0.0;
        ins.gamma = 1.0;
        ins.d = std::make_shared<OrthantDistance>(g1, g2, r);
        if (family == "orthant_smooth") {
            ins.g = {"zero", 0.0, 0};
            ins.closed = prox_orthant_smooth(ins.a, ins.y, g1, g2, r);
        } else {
            double lambda = uniform(rng, 0.2, 1.5);
            int K = static_cast<int>(rng() % n);
            ins.g = {"trimmed_l1", lambda, K};
            ins.closed = prox_orthant_trimmed_l1(ins.a, ins.y, g1, g2, r, lambda, K);
            ins.arg_check = false;
        }
    } else if (family == "psd_smooth") {
        std::size_t n = 2 + rng() % 3; // 2..4
        ins.y = rand_pd(rng, n);
        ins.a = rand_sym(rng, n, 1.0);
        double g1 = uniform(rng, 0.3, 2.0), g2 = uniform(rng, 0.3, 2.0);
        double r = (rng() % 2) ? 2.0 : 0.0;
        ins.gamma = 1.0;
        ins.d = std::make_shared<PsdDistance>(g1, g2, r);
        ins.g = {"zero", 0.0, 0};
        ins.closed = prox_psd_smooth(ins.a, ins.y, g1, g2, r);
        ins.starts = 6;
    } else if (family == "soc_smooth") {
        std::size_t n = 2 + rng() % 3; // 2..4
        Point bar = rand_vector(rng, n - 1, 0.3);
        double nb = point_norm(bar);
        std::vector<double> y(n);
        for (std::size_t j = 0; j + 1 < n; ++j) y[j] = bar[j];
        y[n - 1] = nb + uniform(rng, 0.5, 1.5);
        ins.y = Point::vector(std::move(y));
        ins.a = rand_vector(rng, n, 0.7);
        double g1 = uniform(rng, 0.3, 2.0), g2 = uniform(rng, 0.3, 2.0);
        double r = (rng() % 2) ? 2.0 : 0.0;
        ins.gamma = 1.0;
        ins.d = std::make_shared<SocDistance>(g1, g2, r);
        ins.g = {"zero", 0.0, 0};
        ins.closed = prox_soc_smooth(ins.a, ins.y, g1, g2, r);
        ins.starts = 6;
    } else {
        throw std::invalid_argument("compare_family: unknown family " + family);
    }
    return ins;
}

} // namespace

bool CompareReport::pass(double obj_tol, double arg_tol) const {
    if (!failures.empty()) return false;
    if (max_obj_gap > obj_tol || max_oracle_advantage > obj_tol) return false;
    if (arg_checked && max_arg_gap > arg_tol) return false;
    return true;
}

CompareReport compare_family(const std::string& family, int instances, unsigned long long seed,
                             int max_dim, long long budget_per_instance) {
    CompareReport report;
    report.family = family;
    report.instances = instances;

    for (int i = 0; i < instances; ++i) {
        unsigned long long inst_seed = seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
        std::mt19937_64 rng(inst_seed);
        Instance ins = make_instance(family, rng, max_dim);

        auto objective = [&](const Point& x) {
            return point_inner(ins.a, x) + ins.gamma * ins.d->value(x, ins.y) + ins.g.value(x);
        };

        BruteForceResult oracle = brute_force_prox(ins.a, ins.y, ins.gamma, *ins.d, ins.g,
                                                   budget_per_instance, inst_seed, ins.starts);
        double obj_closed = objective(ins.closed);
        double gap = obj_closed - oracle.objective;        // >0: oracle beat the closed form
        double adv = oracle.objective - obj_closed;        // >0: closed form beat the oracle
        report.max_obj_gap = std::max(report.max_obj_gap, gap);
        report.max_oracle_advantage = std::max(report.max_oracle_advantage, adv);

        double arg_gap = 0.0;
        if (ins.arg_check) {
            report.arg_checked = true;
            arg_gap = point_norm(sub(ins.closed, oracle.x));
            report.max_arg_gap = std::max(report.max_arg_gap, arg_gap);
        }

        bool bad = oracle.budget_exhausted || gap > 1e-7 || adv > 1e-7 ||
                   (ins.arg_check && arg_gap > 1e-6);
        if (bad) {
            CompareFailure f;
            f.index = i;
            f.seed = inst_seed;
            f.obj_gap = gap;
            f.arg_gap = arg_gap;
            f.budget_exhausted = oracle.budget_exhausted;
            report.failures.push_back(f);
        }
    }
    return report;
}

} // namespace gvd
