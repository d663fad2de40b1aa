#include "doctest.h"
#include "app.hpp"
#include "slab/extremizers.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace slab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("slab_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "config.ini";
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json load_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

}  // namespace

TEST_CASE("config parsing and schema validation") {
    const auto cfg = parse_config("[run]\nseed = 7\n\n[a]\nkind = exponents\nd = 2\nq0 = 56/17\n");
    CHECK(cfg.run.integer("seed", 0) == 7);
    REQUIRE(cfg.experiments.size() == 1);
    CHECK(cfg.experiments[0].name == "a");
    CHECK_NOTHROW(validate_config(cfg));

    auto key_of = [](const std::string& text) {
        try {
            validate_config(parse_config(text));
        } catch (const SchemaError& e) {
            return e.key();
        }
        return std::string("none");
    };
    CHECK(key_of("[x]\nkind = spiral\n") == "x.kind");
    CHECK(key_of("[x]\nd = 1\n") == "x.kind");
    CHECK(key_of("[x]\nkind = packing\nlamda = 16\n") == "x.lamda");
    CHECK(key_of("[x]\nkind = sweep\np = 2\nq = inf\n") == "x.r");
    CHECK(key_of("[x]\nkind = sweep\np = 2\nq = inf\nr = two\n") == "x.r");
    CHECK(key_of("[x]\nkind = propagate\ndatum = sinc\n") == "x.datum");
    CHECK(key_of("[run]\noutput = here\n[x]\nkind = exponents\n") == "run.output");
    CHECK(key_of("[run]\nseed = 1\n") == "config");
    CHECK(key_of("[x]\nkind = sweep\np = 2\nq = inf\nr = 2\ninterval = 1 0\n") == "x.interval");
}

TEST_CASE("config hash is deterministic and content-sensitive") {
    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
    CHECK(config_hash("abc").size() == 64);
}

TEST_CASE("minimal propagate config at t = 0 returns the input field") {
    const auto dir = scratch("minimal");
    const auto cfg = write_config(dir, "[run]\noutput_dir = " + (dir / "out").string() +
                                           "\n\n[identity]\nkind = propagate\nn = 64\nextent = 16\ntimes = 0\n");
    std::ostringstream out, err;
    CHECK(run_config(cfg.string(), out, err) == 0);
    const auto rec = load_json(dir / "out" / "identity.json");
    CHECK(rec["times"][0]["max_abs_change"].get<double>() == 0.0);
    CHECK(rec["times"][0]["l2"].get<double>() == rec["l2_input"].get<double>());
    const auto field = slurp(dir / "out" / "identity_field.csv");
    CHECK(field.rfind("t,x,re,im\n", 0) == 0);

    const auto m = load_json(dir / "out" / "manifest.json");
    for (const char* k : {"config_hash", "seed", "grid", "version", "started_at", "finished_at"}) CHECK(m.contains(k));
    CHECK(m["config_hash"] == config_hash(slurp(cfg)));
    CHECK(m["grid"]["identity"]["n"] == 64);
    CHECK(m["sections"]["identity"]["status"] == "ok");
}

TEST_CASE("an undefined experiment kind exits nonzero naming the key") {
    const auto dir = scratch("undefined");
    const auto cfg = write_config(dir, "[run]\noutput_dir = " + (dir / "out").string() + "\n\n[mystery]\nkind = teleport\n");
    std::ostringstream out, err;
    CHECK(run_config(cfg.string(), out, err) == static_cast<int>(ExitCode::schema));
    CHECK(err.str().find("mystery.kind") != std::string::npos);
    CHECK(!fs::exists(dir / "out" / "manifest.json"));
}

TEST_CASE("resource budget breach exits with the budget code") {
    const auto dir = scratch("budget");
    const auto cfg = write_config(dir, "[run]\noutput_dir = " + (dir / "out").string() +
                                           "\nmax_cells = 1000\n\n[s]\nkind = sweep\np = 2\nq = 2\nr = 2\nlambdas = 8 16 32\n");
    std::ostringstream out, err;
    CHECK(run_config(cfg.string(), out, err) == static_cast<int>(ExitCode::budget));
    CHECK(err.str().find("max_cells") != std::string::npos);
    const auto m = load_json(dir / "out" / "manifest.json");
    CHECK(m["sections"]["s"]["status"] == "error");
}

TEST_CASE("sweep CSV and JSON round-trip through fit; reruns are bit-for-bit") {
    const auto dir = scratch("sweep");
    const std::string body =
        "\n\n[s]\nkind = sweep\np = 2\nq = inf\nr = 2\nlambdas = 8 16 32\nrandom_trials = 1\nascent_iters = 3\n";
    const auto cfg = write_config(dir, "[run]\noutput_dir = " + (dir / "out").string() + body);
    std::ostringstream out, err;
    REQUIRE(run_config(cfg.string(), out, err) == 0);
    const auto csv = slurp(dir / "out" / "s.csv");
    CHECK(csv.rfind("dim,p,q,r,lambda,value,strategy,seed,witness_id\n", 0) == 0);
    const auto rec = load_json(dir / "out" / "s.json");
    for (const char* k : {"a", "b", "c", "residual", "predicted_a", "predicted_b"}) CHECK(rec.contains(k));
    CHECK(rec["predicted_a"].get<double>() == -0.5);
    CHECK(fit_csv((dir / "out" / "s.csv").string(), std::nullopt) == rec);
    CHECK(fs::exists(dir / "out" / "witnesses" / "s_lambda16.txt"));

    const auto cfg2 = write_config(dir, "[run]\noutput_dir = " + (dir / "again").string() + body);
    REQUIRE(run_config(cfg2.string(), out, err) == 0);
    CHECK(slurp(dir / "again" / "s.csv") == csv);
    CHECK(slurp(dir / "again" / "witnesses" / "s_lambda32.txt") == slurp(dir / "out" / "witnesses" / "s_lambda32.txt"));
}

TEST_CASE("fit on the synthetic fixture recovers (1/2, 1/4)") {
    const auto rec = fit_csv(std::string(SLAB_FIXTURES) + "/synthetic_fit.csv", std::nullopt);
    CHECK(std::abs(rec["a"].get<double>() - 0.5) < 0.05);
    CHECK(std::abs(rec["b"].get<double>() - 0.25) < 0.05);
    const auto held = fit_csv(std::string(SLAB_FIXTURES) + "/synthetic_fit.csv", 0.25);
    CHECK(std::abs(held["a"].get<double>() - 0.5) < 1e-8);
    CHECK(held["fixed_b"].get<double>() == 0.25);
}

TEST_CASE("output directory override by environment") {
    const auto dir = scratch("env");
    const auto cfg = write_config(dir, "[run]\noutput_dir = " + (dir / "configured").string() +
                                           "\n\n[e]\nkind = exponents\nd = 2\nq0 = 56/17\n");
    ::setenv("SLAB_OUTPUT_DIR", (dir / "override").string().c_str(), 1);
    std::ostringstream out, err;
    const int code = run_config(cfg.string(), out, err);
    ::unsetenv("SLAB_OUTPUT_DIR");
    CHECK(code == 0);
    CHECK(fs::exists(dir / "override" / "manifest.json"));
    CHECK(!fs::exists(dir / "configured"));
    CHECK(out.str().find("q* = 13/4") != std::string::npos);
    CHECK(load_json(dir / "override" / "e.json")["q_star"] == "13/4");
}

TEST_CASE("single-section runs: packing replay and exponents") {
    const auto dir = scratch("single");
    Section s;
    s.name = "packing";
    s.keys = {{"kind", "packing"}, {"lambda", "32"}, {"d", "1"}};
    std::ostringstream out, err;
    REQUIRE(run_single(s, (dir / "p").string(), 1, out, err) == 0);
    const auto rec = load_json(dir / "p" / "packing.json");
    CHECK(rec["containment"] == true);
    CHECK(rec["shapes"] == 3);
    const auto replay = slab::parse_packing(slurp(dir / "p" / "packing_packing.txt"));
    CHECK(slab::check_containment(replay, 1024.0, 2048.0));

    Section bad;
    bad.name = "exponents";
    bad.keys = {{"kind", "exponents"}, {"q0", "seven"}};
    CHECK(run_single(bad, (dir / "x").string(), 1, out, err) == static_cast<int>(ExitCode::schema));
    CHECK(err.str().find("exponents.q0") != std::string::npos);
}

TEST_CASE("schema markdown lists every kind") {
    const auto md = schema_markdown();
    for (const auto& [kind, keys] : schema()) CHECK(md.find("## kind = " + kind) != std::string::npos);
    const auto doc = slurp(fs::path(SLAB_DOCS) / "config_schema.md");
    CHECK(doc.find(md) != std::string::npos);
}
