#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "gvd/compare.hpp"
#include "gvd/distances.hpp"
#include "gvd/oracle.hpp"
#include "gvd/pairings.hpp"
#include "gvd/problems.hpp"
#include "gvd/solver.hpp"

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- datasets

[[noreturn]] void cell_error(const std::string& path, std::size_t row, std::size_t col,
                             const std::string& what) {
    throw std::runtime_error(path + ": row " + std::to_string(row + 1) + ", column " +
                             std::to_string(col + 1) + ": " + what);
}

double parse_cell(const std::string& path, std::size_t row, std::size_t col, std::string cell) {
    // trim surrounding whitespace, then require the full cell to parse
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    if (b == std::string::npos) cell_error(path, row, col, "empty cell");
    cell = cell.substr(b, e - b + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        cell_error(path, row, col, "malformed number '" + cell + "'");
    return v;
}

std::vector<std::vector<double>> load_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            ++row;
            continue;
        }
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) vals.push_back(parse_cell(path, row, col++, cell));
        if (!rows.empty() && vals.size() != rows.front().size())
            cell_error(path, row, vals.size(), "row has " + std::to_string(vals.size()) +
                                                   " cells, expected " +
                                                   std::to_string(rows.front().size()));
        rows.push_back(std::move(vals));
        ++row;
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    return rows;
}

gvd::ClassificationData load_classification(const std::string& path) {
    auto rows = load_csv_rows(path);
    if (rows.front().size() < 2) throw std::runtime_error(path + ": need label + features");
    gvd::ClassificationData data;
    data.m = rows.size();
    data.p = rows.front().size() - 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double label = rows[r][0];
        if (label != 1.0 && label != -1.0)
            cell_error(path, r, 0, "label must be +1 or -1");
        data.labels.push_back(label);
        for (std::size_t c = 1; c < rows[r].size(); ++c) data.features.push_back(rows[r][c]);
    }
    data.validate();
    return data;
}

std::vector<double> load_vector_file(const std::string& path) {
    auto rows = load_csv_rows(path);
    std::vector<double> v;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != 1) cell_error(path, r, 1, "expected one value per line");
        v.push_back(rows[r][0]);
    }
    return v;
}

// ------------------------------------------------------------ problem setup

struct BuiltExperiment {
    gvd::CompositeObjective objective;
    gvd::ProxPairing pairing;
    gvd::Point x0;
    std::optional<double> F_star_hint; // analytic optimum when known
};

double jd(const json& j, const std::string& key, double dflt) { return j.value(key, dflt); }

// dataset paths resolve against the working directory first, then the config
// file's directory and its parent (configs/ conventionally sits next to data/)
std::string resolve_data(const std::string& config_dir, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || std::filesystem::exists(p)) return path;
    std::filesystem::path beside = std::filesystem::path(config_dir) / p;
    if (std::filesystem::exists(beside)) return beside.string();
    return (std::filesystem::path(config_dir) / ".." / p).lexically_normal().string();
}

BuiltExperiment build_experiment(const json& cfg, unsigned long long seed,
                                 const std::string& config_dir) {
    const json& prob = cfg.at("problem");
    const json dist = cfg.value("distance", json::object());
    const std::string kind = prob.at("kind").get<std::string>();
    const std::string family = dist.value("family", std::string("sqnorm"));
    double g1 = jd(dist, "gamma1", 1.0);
    double g2 = jd(dist, "gamma2", 1.0);
    double r = jd(dist, "r", 0.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    BuiltExperiment built;
    if (kind == "quadratic") {
        std::size_t n = prob.value("n", 5);
        double cond = jd(prob, "condition", 100.0);
        double lambda = jd(prob, "lambda", 0.0);
        // spectrum geometrically spaced in [1, cond], conjugated by a random
        // orthogonal factor
        Eigen::MatrixXd B(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gauss(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
        Eigen::MatrixXd U = qr.householderQ();
        Eigen::VectorXd ev(n);
        for (std::size_t i = 0; i < n; ++i)
            ev(static_cast<Eigen::Index>(i)) =
                n == 1 ? 1.0 : std::pow(cond, double(i) / double(n - 1));
        Eigen::MatrixXd Q = U * ev.asDiagonal() * U.transpose();
        Eigen::VectorXd xs(n);
        for (std::size_t i = 0; i < n; ++i) xs(static_cast<Eigen::Index>(i)) = gauss(rng);
        Eigen::VectorXd c = -Q * xs;

        std::vector<double> qflat(n * n), cflat(n);
        for (std::size_t i = 0; i < n; ++i) {
            cflat[i] = c(static_cast<Eigen::Index>(i));
            for (std::size_t j = 0; j < n; ++j)
                qflat[i * n + j] = Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        gvd::Point Qp = gvd::Point::symmetric(n, qflat);
        gvd::Point cp = gvd::Point::vector(cflat);
        built.objective = gvd::build_quadratic(Qp, cp, lambda);
        if (lambda == 0.0) {
            // F* = -1/2 xs' Q xs at the stationary point xs
            built.F_star_hint = -0.5 * xs.dot(Q * xs);
            built.objective.lower_bound_hint = built.F_star_hint;
        } else {
            built.objective.lower_bound_hint = -0.5 * xs.dot(Q * xs); // still a valid floor
        }
        if (family != "sqnorm")
            throw std::runtime_error("quadratic runs pair with the sqnorm distance");
        built.pairing = gvd::make_sqnorm_l1_pairing(lambda);
        built.x0 = gvd::Point::vector(std::vector<double>(n, 1.0));
    } else if (kind == "trimmed_logistic") {
        gvd::TrimmedLogisticProblem p;
        if (prob.contains("data")) {
            p.data = load_classification(resolve_data(config_dir, prob.at("data").get<std::string>()));
        } else {
            std::size_t m = prob.value("m", 30), pp = prob.value("p", 5);
            p.data.m = m;
            p.data.p = pp;
            std::vector<double> w(pp);
            for (double& t : w) t = gauss(rng);
            for (std::size_t j = 0; j < m; ++j) {
                double dot = 0.0;
                for (std::size_t t = 0; t < pp; ++t) {
                    double v = gauss(rng);
                    p.data.features.push_back(v);
                    dot += w[t] * v;
                }
                double label = dot >= 0.0 ? 1.0 : -1.0;
                if (unif(rng) < prob.value("flip", 0.1)) label = -label; // label noise
                p.data.labels.push_back(label);
            }
        }
        p.K = prob.value("K", 0);
        p.lambda = jd(prob, "lambda", 0.0);
        if (family != "de2")
            throw std::runtime_error("trimmed_logistic runs pair with the de2 distance");
        auto tl = gvd::build_trimmed_logistic(p, g1, g2);
        built.objective = tl.objective;
        built.pairing = tl.pairing;
        built.x0 = gvd::Point::product({gvd::Point::zeros_vector(p.data.p),
                                        gvd::Point::zeros_vector(p.data.m)});
    } else if (kind == "poisson") {
        std::size_t m, n;
        std::vector<double> A, b;
        if (prob.contains("A_path")) {
            auto rows = load_csv_rows(resolve_data(config_dir, prob.at("A_path").get<std::string>()));
            m = rows.size();
            n = rows.front().size();
            for (const auto& row : rows) A.insert(A.end(), row.begin(), row.end());
            b = load_vector_file(resolve_data(config_dir, prob.at("b_path").get<std::string>()));
        } else {
            m = prob.value("m", 20);
            n = prob.value("n", 10);
            A.resize(m * n);
            for (double& t : A) t = 0.1 + std::abs(gauss(rng));
            std::vector<double> xt(n);
            for (double& t : xt) t = 0.5 + unif(rng);
            b.assign(m, 0.0);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t t = 0; t < n; ++t) b[j] += A[j * n + t] * xt[t];
        }
        built.objective = gvd::build_poisson_inverse(A, m, n, b);
        double floor = 0.0;
        for (double bj : b) floor += bj - bj * std::log(bj);
        built.objective.lower_bound_hint = floor;
        if (family != "orthant")
            throw std::runtime_error("poisson runs pair with the orthant distance");
        built.pairing = gvd::make_orthant_pairing(g1, g2, r);
        built.x0 = gvd::Point::vector(std::vector<double>(n, 1.0));
    } else if (kind == "klnmf") {
        std::size_t m, n;
        std::vector<double> V;
        std::size_t rank = prob.value("rank", 3);
        if (prob.contains("V_path")) {
            auto rows = load_csv_rows(resolve_data(config_dir, prob.at("V_path").get<std::string>()));
            m = rows.size();
            n = rows.front().size();
            for (const auto& row : rows) V.insert(V.end(), row.begin(), row.end());
        } else {
            m = prob.value("m", 20);
            n = prob.value("n", 15);
            std::vector<double> W(m * rank), H(rank * n);
            for (double& t : W) t = 0.5 + unif(rng);
            for (double& t : H) t = 0.5 + unif(rng);
            V.assign(m * n, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t t = 0; t < rank; ++t)
                        V[i * n + j] += W[i * rank + t] * H[t * n + j];
        }
        built.objective = gvd::build_klnmf(V, m, n, rank);
        double floor = 0.0;
        for (double v : V)
            if (v > 0.0) floor += v - v * std::log(v);
        built.objective.lower_bound_hint = floor;
        if (family != "orthant")
            throw std::runtime_error("klnmf runs pair with the orthant distance");
        built.pairing = gvd::make_orthant_pairing(g1, g2, r);
        built.x0 = gvd::Point::product(
            {gvd::Point::matrix(m, rank, std::vector<double>(m * rank, 1.0)),
             gvd::Point::matrix(rank, n, std::vector<double>(rank * n, 1.0))});
    } else if (kind == "conic_demo") {
        const std::string cone = prob.value("cone", std::string("psd"));
        std::size_t n = prob.value("n", 3);
        if (cone == "psd") {
            // f(X) = 1/2 ||X - M||_F^2 with M indefinite: the minimizer sits
            // against the cone boundary, the barrier keeps iterates interior
            std::vector<double> mdat(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i) mdat[i * n + i] = i + 1 < n ? 1.0 : -0.5;
            gvd::Point M = gvd::Point::symmetric(n, mdat);
            built.objective.f_value = [M](const gvd::Point& X) {
                return 0.5 * std::pow(gvd::point_norm(gvd::sub(X, M)), 2);
            };
            built.objective.f_gradient = [M](const gvd::Point& X) { return gvd::sub(X, M); };
            built.objective.g_value = [](const gvd::Point&) { return 0.0; };
            built.objective.g_tag = "zero";
            built.objective.lower_bound_hint = 0.0;
            if (family != "psd")
                throw std::runtime_error("psd demo pairs with the psd distance");
            built.pairing = gvd::make_psd_pairing(g1, g2, r);
            built.x0 = gvd::Point::identity(n);
        } else if (cone == "soc") {
            std::vector<double> mdat(n, 0.0);
            mdat[0] = 2.0;
            mdat[n - 1] = 1.0; // outside the cone: <m,Jm> = 1 - 4 < 0
            gvd::Point M = gvd::Point::vector(mdat);
            built.objective.f_value = [M](const gvd::Point& x) {
                return 0.5 * std::pow(gvd::point_norm(gvd::sub(x, M)), 2);
            };
            built.objective.f_gradient = [M](const gvd::Point& x) { return gvd::sub(x, M); };
            built.objective.g_value = [](const gvd::Point&) { return 0.0; };
            built.objective.g_tag = "zero";
            built.objective.lower_bound_hint = 0.0;
            if (family != "soc")
                throw std::runtime_error("soc demo pairs with the soc distance");
            built.pairing = gvd::make_soc_pairing(g1, g2, r);
            std::vector<double> x0(n, 0.0);
            x0[n - 1] = 1.0;
            built.x0 = gvd::Point::vector(x0);
        } else {
            throw std::runtime_error("conic_demo: cone must be psd or soc");
        }
    } else {
        throw std::runtime_error("unknown problem kind: " + kind);
    }
    return built;
}

gvd::SolverConfig parse_solver_config(const json& cfg) {
    const json s = cfg.value("solver", json::object());
    gvd::SolverConfig sc;
    sc.beta = jd(s, "beta", 2.0);
    sc.sigma = jd(s, "sigma", 0.5);
    sc.p_min = jd(s, "p_min", 1.0);
    sc.max_outer_iters = s.value("max_outer_iters", 10000);
    sc.max_inner_iters = s.value("max_inner_iters", 60);
    sc.tol_residual = jd(s, "tol_residual", 1e-6);
    sc.tol_step = jd(s, "tol_step", 1e-12);
    double p_const = jd(s, "p", 1.0);
    sc.p_schedule = [p_const](int) { return p_const; };
    sc.validate();
    return sc;
}

// ------------------------------------------------------------------ output

void ensure_parent(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace(const std::string& path, const gvd::Trace& trace) {
    ensure_parent(path);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace: " + path);
    out << "k,F_x,F_merit,i_k,beta_pow_ik,D_step,step_norm,residual_norm,wall_ms\n";
    for (const auto& rec : trace.records) {
        // wall_ms is written as 0 so that repeated runs of the same config
        // produce byte-identical files
        out << rec.k << ',' << fmt17(rec.F_x) << ',' << fmt17(rec.F_merit) << ',' << rec.i_k
            << ',' << fmt17(rec.beta_pow_ik) << ',' << fmt17(rec.D_step) << ','
            << fmt17(rec.step_norm) << ',' << fmt17(rec.residual_norm) << ",0\n";
    }
}

json rate_to_json(const gvd::RateEstimate& rate) {
    json j;
    j["regime"] = rate.regime;
    if (rate.fitted_theta) j["fitted_theta"] = *rate.fitted_theta;
    if (rate.linear_ratio) j["linear_ratio"] = *rate.linear_ratio;
    j["fit_window"] = rate.fit_window;
    j["fit_residual"] = rate.fit_residual;
    j["diagnostics"] = rate.diagnostics;
    return j;
}

// ------------------------------------------------------------------- verbs

unsigned long long resolve_seed(const json& cfg, std::optional<unsigned long long> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("GVDPGM_SEED")) return std::strtoull(env, nullptr, 10);
    return cfg.value("seed", 0ULL);
}

std::string resolve_out(const std::string& configured, const std::optional<std::string>& out_dir) {
    if (!out_dir) return configured;
    return (std::filesystem::path(*out_dir) / std::filesystem::path(configured).filename())
        .string();
}

int cmd_run(const std::string& config_path, std::optional<unsigned long long> flag_seed,
            const std::optional<std::string>& out_dir) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 1;
    }
    json cfg = json::parse(in);
    unsigned long long seed = resolve_seed(cfg, flag_seed);

    std::string config_dir = std::filesystem::path(config_path).parent_path().string();
    BuiltExperiment built = build_experiment(cfg, seed, config_dir);
    gvd::SolverConfig sc = parse_solver_config(cfg);
    gvd::DistanceSchedule schedule = gvd::DistanceSchedule::constant(built.pairing);

    gvd::Trace trace = gvd::gvdpgm_run(built.objective, schedule, sc, built.x0);

    const json out = cfg.value("output", json::object());
    std::string trace_path = resolve_out(out.value("trace_path", "trace.csv"), out_dir);
    std::string report_path = resolve_out(out.value("report_path", "report.json"), out_dir);
    write_trace(trace_path, trace);

    // invariant audit: F_x <= F_merit per row, F_merit nonincreasing
    bool ok = true;
    double prev_merit = trace.F0;
    for (const auto& rec : trace.records) {
        double slack = 1e-12 * (1.0 + std::abs(rec.F_merit));
        if (rec.F_x > rec.F_merit + slack) ok = false;
        if (rec.F_merit > prev_merit + slack) ok = false;
        prev_merit = rec.F_merit;
    }

    gvd::RateEstimate rate = gvd::estimate_rate(trace, built.F_star_hint);

    json report;
    report["config"] = config_path;
    report["seed"] = seed;
    report["termination"] = gvd::stop_rule_name(trace.stop);
    report["iterations"] = trace.records.size();
    report["F0"] = trace.F0;
    report["final_F"] = trace.records.empty() ? trace.F0 : trace.records.back().F_x;
    report["interior_ok"] = trace.interior_ok;
    report["invariants_ok"] = ok;
    report["rate"] = rate_to_json(rate);
    double F_star = built.F_star_hint
                        ? *built.F_star_hint
                        : (trace.records.empty() ? trace.F0 : trace.records.back().F_x - 1e-10);
    json series = json::array();
    for (const auto& rec : trace.records) series.push_back(rec.F_x - F_star);
    report["R_k"] = series;
    ensure_parent(report_path);
    std::ofstream rep(report_path);
    rep << report.dump(2) << "\n";

    if (!ok) {
        std::cerr << "invariant violation: see " << report_path << "\n";
        return 2;
    }
    std::cout << "run: " << gvd::stop_rule_name(trace.stop) << " after "
              << trace.records.size() << " iterations, final F = "
              << fmt17(report["final_F"].get<double>()) << "\n";
    return 0;
}

int cmd_compare(const std::string& config_path, std::optional<unsigned long long> flag_seed,
                const std::optional<std::string>& out_dir) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 1;
    }
    json cfg = json::parse(in);
    unsigned long long seed = resolve_seed(cfg, flag_seed);
    const json cmp = cfg.at("compare");
    std::string family = cmp.at("family").get<std::string>();
    int instances = cmp.value("instances", 100);
    int max_dim = cmp.value("max_dim", 5);
    long long budget = cmp.value("budget", 400000LL);

    gvd::CompareReport report = gvd::compare_family(family, instances, seed, max_dim, budget);

    json j;
    j["family"] = report.family;
    j["instances"] = report.instances;
    j["max_obj_gap"] = report.max_obj_gap;
    j["max_oracle_advantage"] = report.max_oracle_advantage;
    j["arg_checked"] = report.arg_checked;
    j["max_arg_gap"] = report.max_arg_gap;
    j["pass"] = report.pass();
    json fails = json::array();
    for (const auto& f : report.failures) {
        json jf;
        jf["index"] = f.index;
        jf["seed"] = f.seed;
        jf["obj_gap"] = f.obj_gap;
        jf["arg_gap"] = f.arg_gap;
        jf["budget_exhausted"] = f.budget_exhausted;
        fails.push_back(jf);
    }
    j["failures"] = fails;

    const json out = cfg.value("output", json::object());
    std::string report_path = resolve_out(out.value("report_path", "compare_report.json"), out_dir);
    ensure_parent(report_path);
    std::ofstream rep(report_path);
    rep << j.dump(2) << "\n";

    std::cout << "compare " << family << ": " << (report.pass() ? "pass" : "FAIL")
              << " (max obj gap " << report.max_obj_gap << ", " << report.failures.size()
              << " failures)\n";
    return report.pass() ? 0 : 1;
}

std::shared_ptr<gvd::ProxGradDistance> build_distance(const json& dist) {
    const std::string family = dist.at("family").get<std::string>();
    double g1 = jd(dist, "gamma1", 1.0);
    double g2 = jd(dist, "gamma2", 1.0);
    double r = jd(dist, "r", 0.0);
    if (family == "sqnorm") return std::make_shared<gvd::SqnormDistance>();
    if (family == "metric") {
        std::vector<double> diag = dist.value("h_diag", std::vector<double>{1.0, 2.0, 5.0});
        std::size_t n = diag.size();
        std::vector<double> h(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) h[i * n + i] = diag[i];
        return std::make_shared<gvd::MetricDistance>(gvd::Point::symmetric(n, h));
    }
    if (family == "de2") return std::make_shared<gvd::De2Distance>(g1, g2);
    if (family == "orthant") return std::make_shared<gvd::OrthantDistance>(g1, g2, r);
    if (family == "psd") return std::make_shared<gvd::PsdDistance>(g1, g2, r);
    if (family == "soc") return std::make_shared<gvd::SocDistance>(g1, g2, r);
    throw std::runtime_error("unknown distance family: " + family);
}

int cmd_validate(const std::string& config_path, std::optional<unsigned long long> flag_seed,
                 const std::optional<std::string>& out_dir) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 1;
    }
    json cfg = json::parse(in);
    unsigned long long seed = resolve_seed(cfg, flag_seed);
    auto d = build_distance(cfg.at("distance"));

    gvd::SampleSpec spec;
    spec.seed = seed;
    const json v = cfg.value("validate", json::object());
    spec.count = v.value("count", 100);
    spec.radius = jd(v, "radius", 1.0);
    spec.interior_margin = jd(v, "interior_margin", 0.1);

    gvd::CertificateReport report = gvd::validate_certificate(*d, spec);

    json j;
    j["family"] = cfg.at("distance").at("family");
    j["all_pass"] = report.all_pass();
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["worst_violation"] = c.worst_violation;
        jc["note"] = c.note;
        checks.push_back(jc);
    }
    j["checks"] = checks;

    const json out = cfg.value("output", json::object());
    std::string report_path = resolve_out(out.value("report_path", "validate_report.json"), out_dir);
    ensure_parent(report_path);
    std::ofstream rep(report_path);
    rep << j.dump(2) << "\n";

    std::cout << "validate-distance: " << (report.all_pass() ? "pass" : "FAIL") << "\n";
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GVDPGM experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<unsigned long long> flag_seed;
    std::optional<std::string> out_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "experiment config file")->required();
        sub->add_option("--seed", flag_seed, "override the config seed");
        sub->add_option("--out", out_dir, "redirect output files into this directory");
    };
    CLI::App* run = app.add_subcommand("run", "run an experiment");
    CLI::App* compare = app.add_subcommand("compare", "closed-form vs oracle cross-check");
    CLI::App* validate = app.add_subcommand("validate-distance", "check distance certificates");
    add_common(run);
    add_common(compare);
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, flag_seed, out_dir);
        if (compare->parsed()) return cmd_compare(config_path, flag_seed, out_dir);
        if (validate->parsed()) return cmd_validate(config_path, flag_seed, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
