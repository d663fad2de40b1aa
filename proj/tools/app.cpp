#include "app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slab/band.hpp"
#include "slab/bilinear.hpp"
#include "slab/equivalence.hpp"
#include "slab/extremizers.hpp"
#include "slab/normlab.hpp"
#include "slab/propagator.hpp"

namespace slab::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void say(const RunContext& ctx, const std::string& line) {
    if (ctx.log) *ctx.log << line << '\n';
}

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw InvariantError(what + " is not finite");
}

void check_cells(const RunContext& ctx, const std::string& section, double cells) {
    if (cells > ctx.max_cells)
        throw BudgetError(section + ": operator needs " + fmt17(cells) + " samples, above run.max_cells = " +
                          fmt17(ctx.max_cells));
}

SearchBudget budget_from(const Section& s, const RunContext& ctx, int trials, int iters) {
    SearchBudget b;
    b.extremizers = s.flag("extremizers", true);
    b.random_trials = static_cast<int>(s.integer("random_trials", trials));
    b.ascent_iters = static_cast<int>(s.integer("ascent_iters", iters));
    b.tol = s.real("tol", 1e-4);
    b.seed = static_cast<std::uint64_t>(s.integer("seed", static_cast<long long>(ctx.seed)));
    try {
        b.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(s.name, e.what());
    }
    return b;
}

ExponentTriple triple_from(const Section& s, int d, const char* p, const char* q, const char* r) {
    ExponentTriple t;
    t.p = s.exponent("p", p);
    t.q = s.exponent("q", q);
    t.r = s.exponent("r", r);
    t.d = d;
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(s.name, e.what());
    }
    return t;
}

std::optional<double> optional_real(const Section& s, const std::string& key) {
    if (!s.has(key)) return std::nullopt;
    return s.real(key, 0.0);
}

json fit_record(const ExponentTriple& t, const std::vector<std::pair<double, double>>& points,
                std::optional<double> fixed_b) {
    const auto fit = fit_power_log(points, fixed_b);
    const auto pred = predicted_exponents_1d(t);
    json j;
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["c"] = fit.c;
    j["residual"] = fit.residual;
    j["predicted_a"] = to_double(pred.a);
    j["predicted_b"] = to_double(pred.b);
    j["dim"] = t.d;
    j["p"] = t.p.str();
    j["q"] = t.q.str();
    j["r"] = t.r.str();
    j["fixed_b"] = fixed_b ? json(*fixed_b) : json(nullptr);
    return j;
}

// Minimal CSV reader for files this tool writes: header row, comma-separated, no quoting.
std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("csv", "cannot open '" + path + "'");
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("csv", "empty file '" + path + "'");
    const auto header = split(line);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw SchemaError("csv", "row width differs from the header in '" + path + "'");
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* sweep_header = "dim,p,q,r,lambda,value,strategy,seed,witness_id\n";

std::string lambda_tag(double lambda) {
    std::ostringstream s;
    s << lambda;
    return s.str();
}

// ---- experiments ----

json run_propagate(const Section& s, const RunContext& ctx) {
    const int d = static_cast<int>(s.integer("d", 1));
    if (d != 1 && d != 2) throw SchemaError(s.name + ".d", "must be 1 or 2");
    const int n = static_cast<int>(s.integer("n", 256));
    const double extent = s.real("extent", 16.0), width = s.real("width", 1.0), k = s.real("frequency", 0.0);
    if (n < 2 || !(extent > 0.0) || !(width > 0.0)) throw SchemaError(s.name, "n >= 2, extent > 0 and width > 0 required");
    const std::string datum = s.str("datum", "gaussian");
    const auto times = s.reals("times", "0");
    for (std::size_t m = 1; m < times.size(); ++m)
        if (!(times[m] > times[m - 1])) throw SchemaError(s.name + ".times", "must be strictly increasing");
    check_cells(ctx, s.name, std::pow(static_cast<double>(n), d) * static_cast<double>(times.size()));

    const GridSpec g(d, n, extent);
    auto f = SampledField::zeros(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x1 = g.coord(static_cast<int>(d == 1 ? i : i / n));
        const double x2 = d == 2 ? g.coord(static_cast<int>(i % n)) : 0.0;
        const double r = std::hypot(x1, x2) / width;
        const double amp = datum == "gaussian" ? std::exp(-0.5 * r * r) : bump(r);
        f.values[i] = amp * std::polar(1.0, k * x1);
    }
    const double l2_in = lebesgue_norm(f, Exponent(2));

    json rec;
    rec["kind"] = "propagate";
    rec["l2_input"] = l2_in;
    std::ostringstream csv;
    csv << (d == 1 ? "t,x,re,im\n" : "t,x1,x2,re,im\n");
    for (double t : times) {
        const auto u = evolve_spectral_at(f, t);
        double change = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) change = std::max(change, std::abs(u.values[i] - f.values[i]));
        const double l2 = lebesgue_norm(u, Exponent(2));
        require_finite(l2, s.name + ": L2 norm at t = " + fmt17(t));
        if (std::abs(l2 - l2_in) > 1e-10 * l2_in)
            throw InvariantError(s.name + ": L2 norm not conserved at t = " + fmt17(t));
        rec["times"].push_back({{"t", t}, {"l2", l2}, {"max_abs_change", change}});
        for (std::size_t i = 0; i < g.size(); ++i) {
            csv << fmt17(t) << ',' << fmt17(g.coord(static_cast<int>(d == 1 ? i : i / n)));
            if (d == 2) csv << ',' << fmt17(g.coord(static_cast<int>(i % n)));
            csv << ',' << fmt17(u.values[i].real()) << ',' << fmt17(u.values[i].imag()) << '\n';
        }
    }
    if (times.size() >= 2) {
        const Interval I{times.front(), times.back()};
        MixedNormSpec spec;
        spec.q = s.exponent("q", "2");
        spec.r = s.exponent("r", "2");
        spec.interval = I;
        const double mn = mixed_norm(evolve_spectral(f, times, I), spec);
        require_finite(mn, s.name + ": mixed norm");
        rec["mixed_norm"] = {{"q", spec.q.str()}, {"r", spec.r.str()}, {"value", mn}};
    }
    write_atomic(ctx.out / (s.name + "_field.csv"), csv.str());
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": propagated " + std::to_string(times.size()) + " time(s)");
    return {{"kind", "propagate"},
            {"grid", {{"d", d}, {"n", n}, {"extent", extent}}},
            {"files", {s.name + "_field.csv", s.name + ".json"}}};
}

json run_sweep(const Section& s, const RunContext& ctx) {
    if (s.integer("d", 1) != 1) throw SchemaError(s.name + ".d", "band sweeps are implemented for d = 1");
    const auto t = triple_from(s, 1, "", "", "");
    const auto lambdas = s.reals("lambdas", "8 16 32 64 128");
    const Interval I = s.interval("interval", "0 1");
    const auto budget = budget_from(s, ctx, 2, 10);
    const auto fixed_b = optional_real(s, "fixed_b");

    json grid = json::array();
    for (double lam : lambdas) {
        const BandOperator op(lam, I);
        check_cells(ctx, s.name, static_cast<double>(op.n()) * op.samples());
        grid.push_back({{"lambda", lam}, {"n", op.n()}, {"samples", op.samples()}, {"spacing", op.spacing()}});
    }
    const auto run = sweep_band_norms(t, lambdas, I, budget, fixed_b, Exec::parallel);

    std::ostringstream csv;
    csv << sweep_header;
    fs::create_directories(ctx.out / "witnesses");
    json files = {s.name + ".csv", s.name + ".json"};
    for (const auto& [lam, est] : run.points) {
        require_finite(est.value, s.name + ": value at lambda " + fmt17(lam));
        const std::string id = s.name + "_lambda" + lambda_tag(lam);
        write_atomic(ctx.out / "witnesses" / (id + ".txt"), serialize_witness(est.witness));
        files.push_back("witnesses/" + id + ".txt");
        csv << "1," << t.p.str() << ',' << t.q.str() << ',' << t.r.str() << ',' << fmt17(lam) << ','
            << fmt17(est.value) << ',' << est.best_strategy() << ',' << budget.seed << ',' << id << '\n';
    }
    write_atomic(ctx.out / (s.name + ".csv"), csv.str());
    const auto rec = fit_csv((ctx.out / (s.name + ".csv")).string(), fixed_b);
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": a = " + fmt17(rec["a"].get<double>()) + ", b = " + fmt17(rec["b"].get<double>()) +
                 " (predicted " + fmt17(rec["predicted_a"].get<double>()) + ", " +
                 fmt17(rec["predicted_b"].get<double>()) + ")");
    return {{"kind", "sweep"}, {"grid", grid}, {"seed", budget.seed}, {"files", files}};
}

json run_extremizer(const Section& s, const RunContext& ctx) {
    const std::string family = s.str("family", "");
    const auto lambdas = s.reals("lambdas", "8 16 32");
    const double eps = s.real("eps", 1.0);
    const Exponent q = s.exponent("q", "4"), r = s.exponent("r", "2");
    if (!(eps > 0.0)) throw SchemaError(s.name + ".eps", "must be positive");

    std::ostringstream csv;
    csv << "family,lambda,data_norm,observable,normalized\n";
    std::vector<std::pair<double, double>> obs_pts, mixed_pts;
    json grid = json::array(), rows = json::array();
    for (double lam : lambdas) {
        if (!(lam > 1.0)) throw SchemaError(s.name + ".lambdas", "values must exceed 1");
        GridSpec g;
        double data_norm = 0.0, observable = 0.0, normalized = 0.0;
        json row = {{"lambda", lam}};
        if (family == "focusing") {
            g = focusing_grid(lam, 1);
            data_norm = lebesgue_norm(focusing(lam, g), Exponent(2));
            observable = focusing_peak(lam, 1);
            normalized = observable / lam;
        } else if (family == "knapp") {
            g = knapp_grid(lam, eps);
            data_norm = lebesgue_norm(knapp_traveling(lam, eps, g), Exponent(2));
            observable = knapp_tube_floor(lam, eps);
            normalized = observable;
            const double mr = knapp_mixed_ratio(lam, eps, q, r);
            require_finite(mr, s.name + ": mixed ratio");
            mixed_pts.emplace_back(lam, mr);
            row["mixed_ratio"] = mr;
        } else {
            g = plate_grid(lam);
            data_norm = lebesgue_norm(plate(lam, g), Exponent(4));
            observable = plate_floor(lam);
            normalized = observable;
        }
        check_cells(ctx, s.name, static_cast<double>(g.size()));
        require_finite(observable, s.name + ": observable");
        if (!(observable > 0.0)) throw InvariantError(s.name + ": lower bound vanished at lambda " + fmt17(lam));
        obs_pts.emplace_back(lam, normalized);
        row["data_norm"] = data_norm;
        row["observable"] = observable;
        row["normalized"] = normalized;
        rows.push_back(row);
        grid.push_back({{"lambda", lam}, {"n", g.n()}, {"extent", g.extent()}});
        csv << family << ',' << fmt17(lam) << ',' << fmt17(data_norm) << ',' << fmt17(observable) << ','
            << fmt17(normalized) << '\n';
    }
    double lo = obs_pts.front().second, hi = lo;
    for (const auto& pt : obs_pts) {
        lo = std::min(lo, pt.second);
        hi = std::max(hi, pt.second);
    }
    json rec = {{"family", family}, {"rows", rows}, {"normalized_spread", hi / lo}};
    if (!mixed_pts.empty() && mixed_pts.size() >= 3) {
        const auto fit = fit_power_log(mixed_pts, 0.0);
        rec["mixed_slope"] = fit.a;
        rec["predicted_mixed_slope"] = q.reciprocal_d() - r.reciprocal_d();
    }
    write_atomic(ctx.out / (s.name + ".csv"), csv.str());
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": " + family + " normalized spread " + fmt17(hi / lo));
    return {{"kind", "extremizer"}, {"grid", grid}, {"files", {s.name + ".csv", s.name + ".json"}}};
}

json run_packing(const Section& s, const RunContext& ctx) {
    const long long lam = s.integer("lambda", 16);
    const int d = static_cast<int>(s.integer("d", 1));
    const int res = static_cast<int>(s.integer("resolution", 256));
    if (d != 1 && d != 2) throw SchemaError(s.name + ".d", "must be 1 or 2");
    if (lam < 11) throw SchemaError(s.name + ".lambda", "must be at least 11 so that the packing is nonempty");
    const auto p = keich_translations(lam, d);
    if (!check_containment_exact(p, Rational(lam * lam), Rational(2 * lam * lam)))
        throw InvariantError(s.name + ": a translated shape leaves lambda^2 <= s <= 2 lambda^2");
    const std::string text = serialize_packing(p);
    const auto replay = parse_packing(text);
    const double L2 = static_cast<double>(lam) * static_cast<double>(lam);
    if (!check_containment(replay, L2, 2.0 * L2)) throw InvariantError(s.name + ": serialized packing fails containment");
    const double keich = union_measure(p, res);
    const double plain = union_measure(untranslated_packing(lam, d), res);
    require_finite(keich, s.name + ": union measure");
    const double scaled = keich * std::log(static_cast<double>(lam)) / std::pow(static_cast<double>(lam), d + 3);
    json rec = {{"lambda", lam},       {"dim", d},
                {"shapes", p.size()},  {"union_measure", keich},
                {"untranslated_measure", plain}, {"scaled_union", scaled},
                {"untranslated_over_keich", plain / keich}, {"containment", true}};
    write_atomic(ctx.out / (s.name + "_packing.txt"), text);
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": " + std::to_string(p.size()) + " shapes, union " + fmt17(keich) + ", scaled " + fmt17(scaled));
    return {{"kind", "packing"},
            {"grid", {{"lambda", lam}, {"d", d}, {"resolution", res}}},
            {"files", {s.name + "_packing.txt", s.name + ".json"}}};
}

json run_equivalence(const Section& s, const RunContext& ctx) {
    const Exponent p = s.exponent("p", "4"), q = s.exponent("q", "4");
    const double beta = s.real("beta", 0.0);
    const auto lambdas = s.reals("lambdas", "8 16 32 64");
    const auto budget = budget_from(s, ctx, 0, 8);
    std::ostringstream csv;
    csv << "lambda,gamma,extension,schrodinger,ratio\n";
    json grid = json::array(), rows = json::array();
    double lo = 0.0, hi = 0.0;
    for (double lam : lambdas) {
        const BandOperator op(lam, Interval{-1.0, 1.0});
        check_cells(ctx, s.name, static_cast<double>(op.n()) * op.samples());
        const ScaledExtensionOperator ext(lam, q);
        grid.push_back({{"lambda", lam}, {"band_n", op.n()}, {"band_samples", op.samples()},
                        {"extension_samples", ext.size()}});
        const auto r = equivalence_ratio(lam, p, q, beta, budget);
        require_finite(r.ratio, s.name + ": ratio");
        rows.push_back({{"lambda", lam}, {"gamma", r.gamma}, {"extension", r.extension},
                        {"schrodinger", r.schrodinger}, {"ratio", r.ratio}});
        csv << fmt17(lam) << ',' << fmt17(r.gamma) << ',' << fmt17(r.extension) << ',' << fmt17(r.schrodinger) << ','
            << fmt17(r.ratio) << '\n';
        lo = rows.size() == 1 ? r.ratio : std::min(lo, r.ratio);
        hi = rows.size() == 1 ? r.ratio : std::max(hi, r.ratio);
    }
    json rec = {{"p", p.str()}, {"q", q.str()}, {"beta", beta}, {"rows", rows}, {"spread", hi / lo}};
    write_atomic(ctx.out / (s.name + ".csv"), csv.str());
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": ratio spread " + fmt17(hi / lo));
    return {{"kind", "equivalence"}, {"grid", grid}, {"seed", budget.seed}, {"files", {s.name + ".csv", s.name + ".json"}}};
}

json run_exponents(const Section& s, const RunContext& ctx) {
    const int d = static_cast<int>(s.integer("d", 1));
    if (d < 1) throw SchemaError(s.name + ".d", "must be positive");
    const auto t = triple_from(s, d, "2", "inf", "2");
    json rec = {{"d", d}, {"p", t.p.str()}, {"q", t.q.str()}, {"r", t.r.str()}};
    std::ostringstream table;
    const auto ac = alpha_critical(t);
    rec["alpha_critical"] = to_string(ac);
    table << "alpha_cr = " << to_string(ac) << '\n';
    const auto ap = alpha_planar(t.p, t.r);
    rec["alpha_planar"] = to_string(ap);
    table << "alpha_planar = " << to_string(ap) << '\n';
    rec["tao_exponent"] = to_string(tao_exponent(d));
    table << "tao_exponent = " << to_string(tao_exponent(d)) << '\n';
    if (s.has("q0")) {
        Rational q0;
        try {
            q0 = parse_rational(s.str("q0", ""));
        } catch (const std::exception& e) {
            throw SchemaError(s.name + ".q0", e.what());
        }
        const auto qs = q_star(d, q0);
        rec["q0"] = to_string(q0);
        rec["q_star"] = to_string(qs);
        table << "q* = " << to_string(qs) << '\n';
    }
    if (d == 1) {
        const auto pr = predicted_exponents_1d(t);
        rec["predicted_a"] = to_string(pr.a);
        rec["predicted_b"] = to_string(pr.b);
        rec["regime"] = pr.regime;
        table << "predicted lambda exponent = " << to_string(pr.a) << '\n'
              << "predicted log exponent = " << to_string(pr.b) << '\n'
              << "regime = " << pr.regime << '\n';
    }
    write_atomic(ctx.out / (s.name + ".txt"), table.str());
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    if (ctx.log) *ctx.log << table.str();
    return {{"kind", "exponents"}, {"grid", nullptr}, {"files", {s.name + ".txt", s.name + ".json"}}};
}

json run_bilinear(const Section& s, const RunContext& ctx) {
    const auto t = triple_from(s, 2, "2", "4", "4");
    const auto Ns = s.reals("frequencies", "8 16 32 64");
    const double rho = s.real("rho", 2.0);
    const double fixed_b = s.real("fixed_b", 0.0);
    BilinearOptions opt;
    opt.spacing = s.real("spacing", 0.25);
    opt.margin = s.real("margin", 8.0);
    const auto budget = budget_from(s, ctx, 0, 4);
    std::ostringstream csv;
    csv << "N,rho,value,strategy\n";
    json grid = json::array();
    std::vector<std::pair<double, double>> pts;
    for (double N : Ns) {
        const BilinearOperator op(N, rho, opt);
        check_cells(ctx, s.name, static_cast<double>(op.n()) * op.n() * op.samples());
        grid.push_back({{"N", N}, {"n", op.n()}, {"samples", op.samples()}, {"spacing", op.spacing()}});
        const auto est = lambda_bilinear(N, rho, t, budget, opt);
        require_finite(est.value, s.name + ": value");
        pts.emplace_back(N, est.value);
        csv << fmt17(N) << ',' << fmt17(rho) << ',' << fmt17(est.value) << ',' << est.best_strategy() << '\n';
    }
    json rec = {{"p", t.p.str()}, {"q", t.q.str()}, {"r", t.r.str()}, {"rho", rho},
                {"predicted_slope", 2.0 * t.q.reciprocal_d() - 2.0 * t.r.reciprocal_d()}};
    if (pts.size() >= 3) {
        const auto fit = fit_power_log(pts, fixed_b);
        rec["slope"] = fit.a;
        rec["residual"] = fit.residual;
    }
    write_atomic(ctx.out / (s.name + ".csv"), csv.str());
    write_atomic(ctx.out / (s.name + ".json"), rec.dump(2) + "\n");
    say(ctx, s.name + ": bilinear values for " + std::to_string(pts.size()) + " frequencies");
    return {{"kind", "bilinear"}, {"grid", grid}, {"seed", budget.seed}, {"files", {s.name + ".csv", s.name + ".json"}}};
}

std::string section_text(const Section& s) {
    std::ostringstream out;
    out << '[' << s.name << "]\n";
    for (const auto& [k, v] : s.keys) out << k << " = " << v << '\n';
    return out.str();
}

int execute(const std::string& text, const std::vector<Section>& sections, const RunContext& ctx,
            const std::string& started, std::ostream& err) {
    fs::create_directories(ctx.out);
    json manifest;
    manifest["config_hash"] = config_hash(text);
    manifest["seed"] = ctx.seed;
    manifest["version"] = version_string();
    manifest["started_at"] = started;
    manifest["grid"] = json::object();
    manifest["sections"] = json::object();
    int code = static_cast<int>(ExitCode::ok);
    for (const auto& s : sections) {
        json entry;
        try {
            entry = run_experiment(s, ctx);
            entry["status"] = "ok";
        } catch (const std::exception& e) {
            const int c = report_error(e, err);
            code = code == static_cast<int>(ExitCode::ok) ? c : code;
            entry = {{"kind", s.keys.count("kind") ? s.keys.at("kind") : ""}, {"status", "error"}, {"error", e.what()}};
        }
        manifest["grid"][s.name] = entry.value("grid", json(nullptr));
        entry.erase("grid");
        manifest["sections"][s.name] = entry;
    }
    manifest["finished_at"] = utc_now();
    write_atomic(ctx.out / "manifest.json", manifest.dump(2) + "\n");
    return code;
}

}  // namespace

std::string schema_markdown() {
    std::ostringstream out;
    auto table = [&](const std::vector<KeySpec>& keys) {
        out << "| key | type | default | meaning |\n|---|---|---|---|\n";
        for (const auto& k : keys)
            out << "| `" << k.name << "` | " << k.type << " | " << (k.fallback.empty() ? "required" : k.fallback) << " | "
                << k.help << " |\n";
        out << '\n';
    };
    out << "## [run]\n\n";
    table(run_schema());
    for (const auto& [kind, keys] : schema()) {
        out << "## kind = " << kind << "\n\n";
        table(keys);
    }
    return out.str();
}

std::string version_string() { return std::string("slab ") + SLAB_VERSION; }

fs::path resolve_output_dir(const std::string& configured) {
    if (const char* env = std::getenv("SLAB_OUTPUT_DIR"); env && *env) return fs::path(env);
    return fs::path(configured);
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

json run_experiment(const Section& s, const RunContext& ctx) {
    validate_section(s);
    const std::string kind = s.keys.at("kind");
    if (kind == "propagate") return run_propagate(s, ctx);
    if (kind == "sweep") return run_sweep(s, ctx);
    if (kind == "extremizer") return run_extremizer(s, ctx);
    if (kind == "packing") return run_packing(s, ctx);
    if (kind == "equivalence") return run_equivalence(s, ctx);
    if (kind == "exponents") return run_exponents(s, ctx);
    return run_bilinear(s, ctx);
}

int run_config(const std::string& path, std::ostream& out, std::ostream& err) {
    const std::string started = utc_now();
    try {
        const auto cfg = load_config(path);
        validate_config(cfg);
        RunContext ctx;
        ctx.out = resolve_output_dir(cfg.run.str("output_dir", "slab_out"));
        ctx.seed = static_cast<std::uint64_t>(cfg.run.integer("seed", 1234567));
        ctx.max_cells = cfg.run.real("max_cells", 4e9);
        ctx.log = &out;
        return execute(cfg.text, cfg.experiments, ctx, started, err);
    } catch (const std::exception& e) {
        return report_error(e, err);
    }
}

int run_single(const Section& s, const std::string& out_dir, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
    const std::string started = utc_now();
    try {
        validate_section(s);
        RunContext ctx;
        ctx.out = resolve_output_dir(out_dir);
        ctx.seed = seed;
        ctx.log = &out;
        return execute(section_text(s), {s}, ctx, started, err);
    } catch (const std::exception& e) {
        return report_error(e, err);
    }
}

json fit_csv(const std::string& path, std::optional<double> fixed_b) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw SchemaError("csv", "no data rows in '" + path + "'");
    for (const char* col : {"dim", "p", "q", "r", "lambda", "value"})
        if (!rows.front().count(col)) throw SchemaError("csv", std::string("missing column '") + col + "'");
    const auto& first = rows.front();
    ExponentTriple t;
    t.d = std::stoi(first.at("dim"));
    t.p = Exponent::parse(first.at("p"));
    t.q = Exponent::parse(first.at("q"));
    t.r = Exponent::parse(first.at("r"));
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows) {
        for (const char* col : {"dim", "p", "q", "r"})
            if (row.at(col) != first.at(col)) throw SchemaError("csv", "rows mix several exponent triples");
        pts.emplace_back(std::strtod(row.at("lambda").c_str(), nullptr), std::strtod(row.at("value").c_str(), nullptr));
    }
    return fit_record(t, pts, fixed_b);
}

int report_error(const std::exception& e, std::ostream& err) {
    if (const auto* se = dynamic_cast<const SchemaError*>(&e)) {
        err << "schema error: " << se->what() << '\n';
        return static_cast<int>(ExitCode::schema);
    }
    if (dynamic_cast<const InvariantError*>(&e)) {
        err << "invariant violation: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invariant);
    }
    if (dynamic_cast<const BudgetError*>(&e)) {
        err << "resource budget exceeded: " << e.what() << '\n';
        return static_cast<int>(ExitCode::budget);
    }
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
        err << "invalid argument: " << e.what() << '\n';
        return static_cast<int>(ExitCode::schema);
    }
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::failure);
}

}  // namespace slab::cli
