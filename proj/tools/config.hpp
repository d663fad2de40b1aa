#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slab/norms.hpp"

namespace slab::cli {

// Config or flag set that fails the schema; key names the offending entry as
// "section.key".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Invariant violation detected while running an experiment.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested work exceeds the configured resource budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Section {
    std::string name;
    std::map<std::string, std::string> keys;

    bool has(const std::string& key) const { return keys.count(key) != 0; }
    std::string str(const std::string& key, const std::string& fallback) const;
    double real(const std::string& key, double fallback) const;
    long long integer(const std::string& key, long long fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    Exponent exponent(const std::string& key, const std::string& fallback) const;
    std::vector<double> reals(const std::string& key, const std::string& fallback) const;
    Interval interval(const std::string& key, const std::string& fallback) const;
};

struct Config {
    std::string text;               // raw bytes, hashed into the manifest
    Section run;                    // [run]
    std::vector<Section> experiments;  // every other section, in file order
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Checks every section against the schema: known kind, known keys, parsable
// values. Throws SchemaError naming the first offending key.
void validate_config(const Config& cfg);
void validate_section(const Section& s);

// Kinds with their keys and one-line descriptions, for docs and --help.
struct KeySpec {
    std::string name;
    std::string type;  // real, integer, bool, exponent, reals, interval, string, choice:a|b
    std::string fallback;  // empty when required
    std::string help;
};
const std::map<std::string, std::vector<KeySpec>>& schema();
const std::vector<KeySpec>& run_schema();

// SHA-256 of the raw config text, hex.
std::string config_hash(const std::string& text);

}  // namespace slab::cli
