#include "slab/normlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace slab {

void SearchBudget::validate() const {
    if (random_trials < 0 || ascent_iters < 0) throw std::invalid_argument("SearchBudget: counts must be non-negative");
    if (!extremizers && random_trials == 0)
        throw std::invalid_argument("SearchBudget: need at least one trial (extremizers or random)");
    if (!(tol >= 0.0)) throw std::invalid_argument("SearchBudget: tol must be non-negative");
}

namespace {

std::vector<cplx> step_toward(const std::vector<cplx>& a, const std::vector<cplx>& b, double tau) {
    std::vector<cplx> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + tau * (b[k] - a[k]);
    return out;
}

bool all_finite(const std::vector<cplx>& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void check_window(const FrequencyWindow& band, const BandOperator& op) {
    band.validate();
    const double lo = op.kappa() - op.half_width(), hi = op.kappa() + op.half_width();
    for (int i = 0; i <= 16; ++i) {
        const double xi = lo + (hi - lo) * i / 16.0;
        if (band(xi) != 1.0)
            throw std::invalid_argument("estimate_band_norm: sub-band [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "] leaves the plateau of " + band.describe());
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

AscentResult duality_ascent(const BandOperator& op, const std::vector<cplx>& f0, const ExponentTriple& t,
                            int max_iters, double tol) {
    if (max_iters < 0) throw std::invalid_argument("duality_ascent: max_iters must be non-negative");
    AscentResult res;
    res.coeffs = op.normalized(f0, t.p);
    double value = op.ratio(res.coeffs, t);
    if (!std::isfinite(value)) throw std::runtime_error("duality_ascent: non-finite ratio at iterate 0");
    res.ratios.push_back(value);
    for (int it = 1; it <= max_iters; ++it) {
        const auto G = op.dual_pullback(res.coeffs, t.q, t.r);
        if (!all_finite(G)) throw std::runtime_error("duality_ascent: non-finite duality weight at iterate " + std::to_string(it));
        auto cand = op.duality_map(G, t.p);
        if (!all_finite(cand)) throw std::runtime_error("duality_ascent: non-finite duality map at iterate " + std::to_string(it));
        res.iterations = it;
        if (!(op.data_norm(cand, t.p) > 0.0)) {
            res.converged = true;
            break;
        }
        cand = op.normalized(cand, t.p);
        bool accepted = false;
        double next = value;
        std::vector<cplx> trial = cand;
        for (int half = 0; half <= 3; ++half) {
            if (half > 0) trial = op.normalized(step_toward(res.coeffs, cand, std::ldexp(1.0, -half)), t.p);
            const double v = op.ratio(trial, t);
            if (std::isfinite(v) && v >= value) {
                next = v;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.converged = true;
            break;
        }
        const double gain = value > 0.0 ? (next - value) / value : 1.0;
        res.coeffs = std::move(trial);
        value = next;
        res.ratios.push_back(value);
        if (gain <= tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

NormEstimate estimate_band_norm(const FrequencyWindow& band, double lambda, const ExponentTriple& t,
                                const Interval& I, const SearchBudget& budget, const BandOptions& opt) {
    budget.validate();
    t.validate();
    if (t.d != 1) throw std::invalid_argument("estimate_band_norm: band norms are one-dimensional");
    const BandOperator op(lambda, I, opt);
    check_window(band, op);

    NormEstimate est;
    bool found = false;
    auto consider = [&](const std::string& name, const std::vector<cplx>& c, double v) {
        if (!std::isfinite(v)) return;
        auto it = est.strategy_breakdown.find(name);
        if (it == est.strategy_breakdown.end()) est.strategy_breakdown[name] = v;
        else it->second = std::max(it->second, v);
        if (!found || v > est.value) {
            found = true;
            est.value = v;
            est.witness.strategy = name;
            est.witness.coeffs = c;
        }
    };

    std::vector<std::vector<cplx>> starts;
    if (budget.extremizers) {
        const double mid = I.lo + 0.5 * I.length();
        std::vector<std::pair<std::string, std::vector<cplx>>> family;
        family.emplace_back("focusing", band_focusing(op, mid));
        family.emplace_back("knapp", band_knapp(op, std::max(1.0, 4.0 * pi / op.extent())));
        family.emplace_back("plate", band_plate(op, 0.5 * lambda));
        family.emplace_back("plate", band_plate(op, lambda));
        double best = -1.0;
        std::vector<cplx> best_c;
        for (auto& [name, c] : family) {
            c = op.normalized(c, t.p);
            const double v = op.ratio(c, t);
            consider(name, c, v);
            if (std::isfinite(v) && v > best) {
                best = v;
                best_c = c;
            }
        }
        if (best >= 0.0) starts.push_back(best_c);
    }
    std::mt19937_64 rng(budget.seed);
    double record = -1.0;
    for (int k = 0; k < budget.random_trials; ++k) {
        auto c = op.normalized(band_random(op, rng), t.p);
        const double v = op.ratio(c, t);
        consider("random", c, v);
        if (std::isfinite(v) && v > record) {
            record = v;
            starts.push_back(c);
        }
    }
    if (!found) throw std::runtime_error("estimate_band_norm: no finite evaluation within the budget");

    est.converged = true;
    if (budget.ascent_iters > 0) {
        for (const auto& s : starts) {
            auto r = duality_ascent(op, s, t, budget.ascent_iters, budget.tol);
            est.iterations += r.iterations;
            est.converged = est.converged && r.converged;
            consider("ascent", r.coeffs, r.ratios.back());
        }
    }
    est.witness.lambda = lambda;
    est.witness.interval = I;
    est.witness.options = opt;
    est.witness.triple = t;
    return est;
}

double evaluate_witness(const Witness& w) {
    const BandOperator op(w.lambda, w.interval, w.options);
    return op.ratio(w.coeffs, w.triple);
}

std::string serialize_witness(const Witness& w) {
    std::ostringstream os;
    os << "strategy " << w.strategy << "\n";
    os << "lambda " << fmt(w.lambda) << "\n";
    os << "interval " << fmt(w.interval.lo) << " " << fmt(w.interval.hi) << "\n";
    os << "options " << fmt(w.options.carrier) << " " << fmt(w.options.half_width) << " " << fmt(w.options.margin)
       << " " << w.options.points << " " << w.options.time_cap << "\n";
    os << "triple " << w.triple.p.str() << " " << w.triple.q.str() << " " << w.triple.r.str() << " " << w.triple.d
       << "\n";
    os << "coeffs " << w.coeffs.size() << "\n";
    for (const auto& z : w.coeffs) os << fmt(z.real()) << " " << fmt(z.imag()) << "\n";
    return os.str();
}

Witness parse_witness(const std::string& text) {
    std::istringstream is(text);
    Witness w;
    std::string key;
    std::size_t count = 0;
    std::set<std::string> seen;
    auto fail = [](const std::string& what) { throw std::invalid_argument("parse_witness: " + what); };
    while (is >> key) {
        seen.insert(key);
        if (key == "strategy") {
            is >> w.strategy;
        } else if (key == "lambda") {
            is >> w.lambda;
        } else if (key == "interval") {
            is >> w.interval.lo >> w.interval.hi;
        } else if (key == "options") {
            is >> w.options.carrier >> w.options.half_width >> w.options.margin >> w.options.points >> w.options.time_cap;
        } else if (key == "triple") {
            std::string p, q, r;
            is >> p >> q >> r >> w.triple.d;
            w.triple.p = Exponent::parse(p);
            w.triple.q = Exponent::parse(q);
            w.triple.r = Exponent::parse(r);
        } else if (key == "coeffs") {
            is >> count;
            w.coeffs.resize(count);
            for (auto& z : w.coeffs) {
                double a = 0.0, b = 0.0;
                if (!(is >> a >> b)) fail("truncated coefficient list");
                z = cplx(a, b);
            }
        } else {
            fail("unknown key '" + key + "'");
        }
        if (!is) fail("malformed value for '" + key + "'");
    }
    for (const char* k : {"strategy", "lambda", "interval", "options", "triple", "coeffs"})
        if (!seen.count(k)) fail(std::string("missing key '") + k + "'");
    return w;
}

PowerLogFit fit_power_log(const std::vector<std::pair<double, double>>& points, std::optional<double> fixed_b) {
    std::set<double> distinct;
    for (const auto& [l, v] : points) {
        if (!(l > 1.0) || !std::isfinite(l)) throw std::invalid_argument("fit_power_log: lambda must exceed 1");
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("fit_power_log: values must be positive and finite");
        distinct.insert(l);
    }
    if (distinct.size() < 3) throw std::invalid_argument("fit_power_log: need at least 3 distinct lambda values");
    const int n = static_cast<int>(points.size());
    const int cols = fixed_b ? 2 : 3;
    Eigen::MatrixXd X(n, cols);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double ll = std::log(points[i].first);
        X(i, 0) = ll;
        if (fixed_b) {
            X(i, 1) = 1.0;
            y(i) = std::log(points[i].second) - *fixed_b * std::log(ll);
        } else {
            X(i, 1) = std::log(ll);
            X(i, 2) = 1.0;
            y(i) = std::log(points[i].second);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-10 * sv(0)))
        throw std::invalid_argument("fit_power_log: degenerate design matrix (lambda values too few or clustered)");
    const Eigen::VectorXd beta = svd.solve(y);
    PowerLogFit f;
    f.a = beta(0);
    if (fixed_b) {
        f.b = *fixed_b;
        f.c = beta(1);
    } else {
        f.b = beta(1);
        f.c = beta(2);
    }
    const Eigen::VectorXd res = X * beta - y;
    f.residual = std::sqrt(res.squaredNorm() / n);
    return f;
}

void ScalingRun::validate() const {
    if (points.size() < 2) throw std::invalid_argument("ScalingRun: need at least 2 lambda values");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double l = points[i].first;
        const double e = std::log2(l);
        if (std::abs(e - std::round(e)) > 1e-12) throw std::invalid_argument("ScalingRun: lambda values must be dyadic");
        if (i > 0 && !(l > points[i - 1].first)) throw std::invalid_argument("ScalingRun: lambda values must increase");
    }
    if (!std::isfinite(fitted.residual)) throw std::invalid_argument("ScalingRun: residual is not finite");
}

FrequencyWindow standard_band(double lambda) { return FrequencyWindow::sharp_annulus(lambda / 5.0, 15.0 * lambda); }

ScalingRun sweep_band_norms(const ExponentTriple& t, const std::vector<double>& lambdas, const Interval& I,
                            const SearchBudget& budget, std::optional<double> fixed_b, Exec exec,
                            const BandOptions& opt) {
    ScalingRun run;
    run.triple = t;
    const long long n = static_cast<long long>(lambdas.size());
    std::vector<NormEstimate> est(lambdas.size());
    std::vector<std::string> errors(lambdas.size());
    auto cell = [&](long long i) {
        try {
            est[i] = estimate_band_norm(standard_band(lambdas[i]), lambdas[i], t, I, budget, opt);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < n; ++i) cell(i);
    } else {
        for (long long i = 0; i < n; ++i) cell(i);
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        run.points.emplace_back(lambdas[i], est[i]);
        pts.emplace_back(lambdas[i], est[i].value);
    }
    run.fitted = fit_power_log(pts, fixed_b);
    run.validate();
    return run;
}

}  // namespace slab
