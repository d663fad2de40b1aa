#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "app.hpp"

using namespace slab::cli;

int main(int argc, char** argv) {
    CLI::App app{"Frequency-localized Schroedinger and extension norm laboratory"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    std::string out_dir = "slab_out";
    long long seed = 1234567;

    auto* run = app.add_subcommand("run", "execute every experiment section of a config file");
    std::string config_path;
    run->add_option("config", config_path, "config file (see docs/config_schema.md)")->required()->check(CLI::ExistingFile);

    auto* fit = app.add_subcommand("fit", "re-fit lambda^a (log lambda)^b to a sweep CSV");
    std::string csv_path, json_ref, fit_out;
    double fixed_b = 0.0;
    fit->add_option("csv", csv_path, "sweep CSV")->required()->check(CLI::ExistingFile);
    auto* fb = fit->add_option("--fixed-b,--fixed_b", fixed_b, "hold the log exponent at this value");
    auto* jr = fit->add_option("--json", json_ref, "take fixed_b from an emitted fit record")->check(CLI::ExistingFile);
    fb->excludes(jr);
    jr->excludes(fb);
    fit->add_option("--output", fit_out, "write the record to this file instead of stdout");

    auto* schema_cmd = app.add_subcommand("schema", "print the config schema as markdown tables");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    std::map<std::string, CLI::App*> kinds;
    const std::map<std::string, std::string> blurbs = {
        {"propagate", "evolve one datum and dump the field with its norms"},
        {"sweep", "band norm estimates over dyadic lambda with a power-log fit"},
        {"extremizer", "construct one extremizer family and verify its lower bound"},
        {"packing", "Keich packing with containment checks and union measures"},
        {"equivalence", "extension versus Schroedinger ratio table"},
        {"exponents", "critical exponents, q* and predicted 1D exponents"},
        {"bilinear", "bilinear separated-pair quantity over N"},
    };
    for (const auto& [kind, keys] : schema()) {
        auto* sub = app.add_subcommand(kind, blurbs.at(kind));
        kinds[kind] = sub;
        sub->add_option("--out", out_dir, "output directory (SLAB_OUTPUT_DIR overrides)");
        sub->add_option("--run-seed", seed, "default seed when the section sets none");
        for (const auto& k : keys) {
            std::string names = "--" + k.name;
            if (k.name.find('_') != std::string::npos) {
                std::string dashed = k.name;
                for (auto& ch : dashed)
                    if (ch == '_') ch = '-';
                names += ",--" + dashed;
            }
            const std::string help = k.help + " [" + k.type + (k.fallback.empty() ? ", required" : ", default " + k.fallback) + "]";
            options[kind][k.name] = sub->add_option(names, values[kind][k.name], help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (run->parsed()) return run_config(config_path, std::cout, std::cerr);
    if (schema_cmd->parsed()) {
        std::cout << schema_markdown();
        return static_cast<int>(ExitCode::ok);
    }

    if (fit->parsed()) {
        try {
            std::optional<double> b;
            if (fb->count()) b = fixed_b;
            if (jr->count()) {
                std::ifstream in(json_ref);
                const auto ref = json::parse(in);
                if (!ref.at("fixed_b").is_null()) b = ref.at("fixed_b").get<double>();
            }
            const auto rec = fit_csv(csv_path, b);
            if (fit_out.empty()) std::cout << rec.dump(2) << '\n';
            else write_atomic(fit_out, rec.dump(2) + "\n");
            return static_cast<int>(ExitCode::ok);
        } catch (const std::exception& e) {
            return report_error(e, std::cerr);
        }
    }

    for (const auto& [kind, sub] : kinds) {
        if (!sub->parsed()) continue;
        Section s;
        s.name = kind;
        s.keys["kind"] = kind;
        for (const auto& [key, opt] : options[kind])
            if (opt->count()) s.keys[key] = values[kind][key];
        return run_single(s, out_dir, static_cast<std::uint64_t>(seed), std::cout, std::cerr);
    }
    return static_cast<int>(ExitCode::failure);
}
