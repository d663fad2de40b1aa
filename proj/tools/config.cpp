#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

namespace slab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) throw SchemaError(key, "expected a real number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size()) throw SchemaError(key, "expected an integer, got '" + v + "'");
    return x;
}

bool to_flag(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw SchemaError(key, "expected true or false, got '" + v + "'");
}

Exponent to_exponent(const std::string& key, const std::string& v) {
    try {
        return Exponent::parse(v);
    } catch (const std::exception&) {
        throw SchemaError(key, "expected an exponent such as 2, 7/2 or inf, got '" + v + "'");
    }
}

std::vector<double> to_reals(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& w : words(v)) out.push_back(to_real(key, w));
    if (out.empty()) throw SchemaError(key, "expected a list of reals");
    return out;
}

Interval to_interval(const std::string& key, const std::string& v) {
    const auto xs = to_reals(key, v);
    if (xs.size() != 2 || !(xs[1] >= xs[0])) throw SchemaError(key, "expected 'lo hi' with lo <= hi");
    return Interval{xs[0], xs[1]};
}

std::string qualified(const Section& s, const std::string& key) { return s.name + "." + key; }

const std::string* lookup(const Section& s, const std::string& key, const std::string& fallback) {
    auto it = s.keys.find(key);
    if (it != s.keys.end()) return &it->second;
    if (fallback.empty()) throw SchemaError(qualified(s, key), "required key is missing");
    return &fallback;
}

void check_value(const std::string& key, const KeySpec& spec, const std::string& v) {
    const auto& t = spec.type;
    if (t == "real") to_real(key, v);
    else if (t == "integer") to_integer(key, v);
    else if (t == "bool") to_flag(key, v);
    else if (t == "exponent") to_exponent(key, v);
    else if (t == "reals") to_reals(key, v);
    else if (t == "interval") to_interval(key, v);
    else if (t.rfind("choice:", 0) == 0) {
        std::stringstream ss(t.substr(7));
        std::string opt;
        while (std::getline(ss, opt, '|'))
            if (opt == v) return;
        throw SchemaError(key, "expected one of " + t.substr(7) + ", got '" + v + "'");
    }
}

void check_section(const Section& s, const std::vector<KeySpec>& keys, const std::string& skip) {
    for (const auto& [k, v] : s.keys) {
        if (k == skip) continue;
        const KeySpec* spec = nullptr;
        for (const auto& ks : keys)
            if (ks.name == k) spec = &ks;
        if (!spec) throw SchemaError(qualified(s, k), "unknown key");
        check_value(qualified(s, k), *spec, v);
    }
    for (const auto& ks : keys)
        if (ks.fallback.empty() && !s.has(ks.name)) throw SchemaError(qualified(s, ks.name), "required key is missing");
}

std::vector<KeySpec> budget_keys(const std::string& trials, const std::string& iters) {
    return {
        {"extremizers", "bool", "true", "include the extremizer families"},
        {"random_trials", "integer", trials, "seeded random trials"},
        {"ascent_iters", "integer", iters, "duality ascent iterations"},
        {"tol", "real", "1e-4", "relative ascent stopping tolerance"},
        {"seed", "integer", "none", "trial seed (defaults to run.seed)"},
    };
}

template <class... Vs>
std::vector<KeySpec> join(std::vector<KeySpec> a, const Vs&... rest) {
    (a.insert(a.end(), rest.begin(), rest.end()), ...);
    return a;
}

}  // namespace

std::string Section::str(const std::string& key, const std::string& fallback) const {
    return *lookup(*this, key, fallback);
}

double Section::real(const std::string& key, double fallback) const {
    auto it = keys.find(key);
    return it == keys.end() ? fallback : to_real(qualified(*this, key), it->second);
}

long long Section::integer(const std::string& key, long long fallback) const {
    auto it = keys.find(key);
    return it == keys.end() ? fallback : to_integer(qualified(*this, key), it->second);
}

bool Section::flag(const std::string& key, bool fallback) const {
    auto it = keys.find(key);
    return it == keys.end() ? fallback : to_flag(qualified(*this, key), it->second);
}

Exponent Section::exponent(const std::string& key, const std::string& fallback) const {
    return to_exponent(qualified(*this, key), *lookup(*this, key, fallback));
}

std::vector<double> Section::reals(const std::string& key, const std::string& fallback) const {
    return to_reals(qualified(*this, key), *lookup(*this, key, fallback));
}

Interval Section::interval(const std::string& key, const std::string& fallback) const {
    return to_interval(qualified(*this, key), *lookup(*this, key, fallback));
}

const std::vector<KeySpec>& run_schema() {
    static const std::vector<KeySpec> keys = {
        {"output_dir", "string", "slab_out", "output directory (overridden by SLAB_OUTPUT_DIR)"},
        {"seed", "integer", "1234567", "default seed for every experiment"},
        {"max_cells", "real", "4e9", "largest space-time sample count one operator may allocate"},
    };
    return keys;
}

const std::map<std::string, std::vector<KeySpec>>& schema() {
    static const std::map<std::string, std::vector<KeySpec>> s = {
        {"propagate",
         {
             {"d", "integer", "1", "1 or 2"},
             {"n", "integer", "256", "points per axis"},
             {"extent", "real", "16", "periodic cube side"},
             {"datum", "choice:gaussian|bump", "gaussian", "initial datum"},
             {"width", "real", "1", "datum width"},
             {"frequency", "real", "0", "modulation along the first axis"},
             {"times", "reals", "0", "output times"},
             {"q", "exponent", "2", "outer mixed-norm exponent"},
             {"r", "exponent", "2", "inner mixed-norm exponent"},
         }},
        {"sweep", join(std::vector<KeySpec>{
                           {"d", "integer", "1", "spatial dimension (1)"},
                           {"p", "exponent", "", "data exponent"},
                           {"q", "exponent", "", "outer exponent"},
                           {"r", "exponent", "", "inner exponent"},
                           {"lambdas", "reals", "8 16 32 64 128", "dyadic frequency scales"},
                           {"interval", "interval", "0 1", "time interval"},
                           {"fixed_b", "real", "none", "hold the log exponent at this value"},
                       },
                       budget_keys("2", "10"))},
        {"extremizer",
         {
             {"family", "choice:focusing|knapp|plate", "", "extremizer family"},
             {"lambdas", "reals", "8 16 32", "frequency scales"},
             {"eps", "real", "1", "Knapp cap radius"},
             {"q", "exponent", "4", "Knapp mixed-norm outer exponent"},
             {"r", "exponent", "2", "Knapp mixed-norm inner exponent"},
         }},
        {"packing",
         {
             {"lambda", "integer", "16", "scale (integer)"},
             {"d", "integer", "1", "1 or 2"},
             {"resolution", "integer", "256", "scanline rows per shortest altitude"},
         }},
        {"equivalence", join(std::vector<KeySpec>{
                                 {"p", "exponent", "4", "data exponent"},
                                 {"q", "exponent", "4", "space-time exponent (r = q)"},
                                 {"beta", "real", "0", "regularity shift"},
                                 {"lambdas", "reals", "8 16 32 64", "frequency scales"},
                             },
                             budget_keys("0", "8"))},
        {"exponents",
         {
             {"d", "integer", "1", "spatial dimension"},
             {"p", "exponent", "2", "data exponent"},
             {"q", "exponent", "inf", "outer exponent"},
             {"r", "exponent", "2", "inner exponent"},
             {"q0", "string", "none", "restriction exponent for q*, as a/b"},
         }},
        {"bilinear", join(std::vector<KeySpec>{
                              {"p", "exponent", "2", "data exponent"},
                              {"q", "exponent", "4", "outer exponent"},
                              {"r", "exponent", "4", "inner exponent"},
                              {"frequencies", "reals", "8 16 32 64", "values of N"},
                              {"rho", "real", "2", "time interval length"},
                              {"fixed_b", "real", "0", "log exponent held in the slope fit"},
                              {"spacing", "real", "0.25", "comoving grid spacing bound"},
                              {"margin", "real", "8", "cube length beyond the dispersive spread"},
                          },
                          budget_keys("0", "4"))},
    };
    return s;
}

void validate_section(const Section& s) {
    auto it = s.keys.find("kind");
    if (it == s.keys.end()) throw SchemaError(s.name + ".kind", "required key is missing");
    auto k = schema().find(it->second);
    if (k == schema().end()) throw SchemaError(s.name + ".kind", "unknown experiment kind '" + it->second + "'");
    check_section(s, k->second, "kind");
}

void validate_config(const Config& cfg) {
    check_section(cfg.run, run_schema(), "");
    if (cfg.experiments.empty()) throw SchemaError("config", "no experiment sections");
    for (const auto& s : cfg.experiments) validate_section(s);
}

Config parse_config(const std::string& text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw SchemaError("config", std::string("line ") + std::to_string(e.line()) + ": " + e.message());
    }
    Config cfg;
    cfg.text = text;
    cfg.run.name = "run";
    for (const auto& [name, node] : tree) {
        if (node.empty() && !node.data().empty()) throw SchemaError(name, "key outside any section");
        Section s;
        s.name = name;
        for (const auto& [k, v] : node) {
            if (!v.empty()) throw SchemaError(name + "." + k, "nested keys are not supported");
            s.keys[k] = trim(v.data());
        }
        if (name == "run") cfg.run = s;
        else cfg.experiments.push_back(std::move(s));
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("config_hash: digest failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

}  // namespace slab::cli
