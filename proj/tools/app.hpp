#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "json.hpp"

namespace slab::cli {

using json = nlohmann::json;

enum class ExitCode : int { ok = 0, failure = 1, schema = 2, invariant = 3, budget = 4 };

struct RunContext {
    std::filesystem::path out;
    std::uint64_t seed = 1234567;
    double max_cells = 4e9;
    std::ostream* log = nullptr;
};

// SLAB_OUTPUT_DIR when set, otherwise the configured directory.
std::filesystem::path resolve_output_dir(const std::string& configured);

// Writes through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Runs one validated experiment section, writes its artifacts into ctx.out
// and returns its manifest entry (grid parameters and output files).
json run_experiment(const Section& s, const RunContext& ctx);

// Executes every section of a config file and writes manifest.json last.
// Returns an ExitCode; diagnostics go to err.
int run_config(const std::string& path, std::ostream& out, std::ostream& err);

// Runs a single section built from command-line flags, with a manifest.
int run_single(const Section& s, const std::string& out_dir, std::uint64_t seed, std::ostream& out,
               std::ostream& err);

// Fit record for the (lambda, value) rows of a sweep CSV; rows must share
// one (dim, p, q, r).
json fit_csv(const std::string& path, std::optional<double> fixed_b);

// Classifies an exception into an ExitCode and prints it.
int report_error(const std::exception& e, std::ostream& err);

// Markdown tables of the run keys and every experiment kind.
std::string schema_markdown();

std::string version_string();

}  // namespace slab::cli
