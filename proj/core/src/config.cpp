#include "ehlink/config.hpp"

#include "ehlink/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ehlink {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return std::string(s.substr(begin, end - begin));
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "harvest.tx.prob",
        "harvest.rx.prob",
        "harvest.amount",
        "battery.tx.capacity",
        "battery.rx.capacity",
        "battery.tx.initial_fraction",
        "battery.rx.initial_fraction",
        "link.rx_cost",
        "policy.kind",
        "policy.beta_t",
        "policy.dilation_f",
        "policy.pattern.n_plus",
        "policy.pattern.n_minus",
        "sim.horizon",
        "sim.seed",
        "sim.trials",
        "sim.record",
        "sweep.axis",
        "sweep.values",
    };
    return keys;
}

bool parse_double(const std::string& raw, double& out) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

bool parse_unsigned(const std::string& raw, std::uint64_t& out) {
    if (raw.empty() || raw[0] == '-') {
        return false;
    }
    const char* begin = raw.c_str();
    char* end = nullptr;
    out = std::strtoull(begin, &end, 10);
    return end != begin && *end == '\0';
}

std::optional<std::string> lookup(const ConfigMap& map, const std::string& key) {
    auto it = map.find(key);
    if (it == map.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<PolicyKind> parse_policy_kind(const std::string& raw) {
    if (raw == "unconstrained") return PolicyKind::Unconstrained;
    if (raw == "coordinated") return PolicyKind::Coordinated;
    if (raw == "dilated") return PolicyKind::Dilated;
    if (raw == "uncoordinated") return PolicyKind::Uncoordinated;
    return std::nullopt;
}

/// Collects type-level violations and, when none, fills the LoadedConfig.
std::vector<std::string> load_into(const ConfigMap& map, LoadedConfig& out) {
    std::vector<std::string> v;
    for (const auto& [key, _] : map) {
        if (!known_keys().contains(key)) {
            v.push_back(key + ": unknown key");
        }
    }

    auto want_double = [&](const std::string& key, double fallback) {
        if (auto raw = lookup(map, key)) {
            double value;
            if (!parse_double(*raw, value)) {
                v.push_back(key + ": not a number (got '" + *raw + "')");
                return fallback;
            }
            return value;
        }
        return fallback;
    };
    auto want_unsigned = [&](const std::string& key, std::uint64_t fallback) {
        if (auto raw = lookup(map, key)) {
            std::uint64_t value;
            if (!parse_unsigned(*raw, value)) {
                v.push_back(key + ": must be a non-negative integer (got '" + *raw + "')");
                return fallback;
            }
            return value;
        }
        return fallback;
    };

    double tx_prob = want_double("harvest.tx.prob", 0.4);
    double rx_prob = want_double("harvest.rx.prob", 0.3);
    double amount = want_double("harvest.amount", 1.0);
    if (tx_prob >= 0.0 && tx_prob <= 1.0 && rx_prob >= 0.0 && rx_prob <= 1.0 && amount > 0.0) {
        out.sim.tx_harvest = HarvestProcess::bernoulli(tx_prob, amount);
        out.sim.rx_harvest = HarvestProcess::bernoulli(rx_prob, amount);
    } else {
        if (!(tx_prob >= 0.0 && tx_prob <= 1.0)) {
            v.push_back("harvest.tx.prob: must be in [0,1]");
        }
        if (!(rx_prob >= 0.0 && rx_prob <= 1.0)) {
            v.push_back("harvest.rx.prob: must be in [0,1]");
        }
        if (!(amount > 0.0)) {
            v.push_back("harvest.amount: must be > 0");
        }
    }

    out.sim.tx_capacity = want_double("battery.tx.capacity", 50.0);
    out.sim.rx_capacity = want_double("battery.rx.capacity", 50.0);
    out.sim.tx_initial_fraction = want_double("battery.tx.initial_fraction", 0.5);
    out.sim.rx_initial_fraction = want_double("battery.rx.initial_fraction", 0.5);
    out.sim.rx_cost = want_double("link.rx_cost", 0.5);

    if (auto raw = lookup(map, "policy.kind")) {
        if (auto kind = parse_policy_kind(*raw)) {
            out.sim.policy.kind = *kind;
        } else {
            v.push_back("policy.kind: expected one of "
                        "unconstrained|coordinated|dilated|uncoordinated (got '" +
                        *raw + "')");
        }
    } else {
        v.push_back("policy.kind: missing");
    }
    out.sim.policy.beta_t = want_double("policy.beta_t", 2.0);
    if (auto raw = lookup(map, "policy.dilation_f")) {
        std::uint64_t f;
        if (!parse_unsigned(*raw, f) || f < 1) {
            v.push_back("policy.dilation_f: must be an integer >= 1 (got '" + *raw + "')");
        } else {
            out.sim.policy.dilation_f = f;
        }
    }
    auto n_plus_raw = lookup(map, "policy.pattern.n_plus");
    auto n_minus_raw = lookup(map, "policy.pattern.n_minus");
    if (n_plus_raw.has_value() != n_minus_raw.has_value()) {
        v.push_back("policy.pattern.n_plus: n_plus and n_minus must be given together");
    } else if (n_plus_raw) {
        std::uint64_t p = 0;
        std::uint64_t q = 0;
        bool ok = true;
        if (!parse_unsigned(*n_plus_raw, p)) {
            v.push_back("policy.pattern.n_plus: must be a non-negative integer");
            ok = false;
        }
        if (!parse_unsigned(*n_minus_raw, q)) {
            v.push_back("policy.pattern.n_minus: must be a non-negative integer");
            ok = false;
        }
        if (ok) {
            out.sim.policy.pattern =
                BatchPattern{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)};
        }
    }

    out.sim.horizon = want_unsigned("sim.horizon", 10'000'000);
    out.sim.seed = want_unsigned("sim.seed", 1);
    out.trials = static_cast<std::uint32_t>(want_unsigned("sim.trials", 1));
    if (auto raw = lookup(map, "sim.record")) {
        if (*raw == "summary") {
            out.sim.record_mode = RecordMode::SummaryOnly;
        } else if (*raw == "trace") {
            out.sim.record_mode = RecordMode::FullTrace;
        } else {
            v.push_back("sim.record: expected summary|trace (got '" + *raw + "')");
        }
    }

    if (auto raw = lookup(map, "sweep.axis")) {
        if (auto axis = sweep_axis_from_key(*raw)) {
            out.sweep_axis = axis;
        } else {
            v.push_back("sweep.axis: unknown axis '" + *raw + "'");
        }
    }
    if (auto raw = lookup(map, "sweep.values")) {
        std::stringstream ss(*raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                continue;
            }
            double value;
            if (!parse_double(item, value)) {
                v.push_back("sweep.values: not a number (got '" + item + "')");
                break;
            }
            out.sweep_values.push_back(value);
        }
        if (!out.sweep_axis) {
            v.push_back("sweep.axis: required when sweep.values is set");
        }
    } else if (out.sweep_axis) {
        v.push_back("sweep.values: required when sweep.axis is set");
    }
    if (out.trials < 1) {
        v.push_back("sim.trials: must be >= 1");
    }
    return v;
}

} // namespace

ConfigMap parse_config_text(std::string_view text) {
    ConfigMap map;
    std::string section;
    std::size_t line_no = 0;
    std::stringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#' || entry[0] == ';') {
            continue;
        }
        if (entry.front() == '[') {
            if (entry.back() != ']' || entry.size() < 3) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header '" + entry + "'");
            }
            section = trim(entry.substr(1, entry.size() - 2));
            continue;
        }
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + entry + "'");
        }
        std::string key = trim(entry.substr(0, eq));
        std::string value = trim(entry.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        std::string full = section.empty() ? key : section + "." + key;
        if (map.contains(full)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                              full + "'");
        }
        map[full] = value;
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<std::string> validate_config_map(const ConfigMap& map) {
    LoadedConfig loaded;
    std::vector<std::string> v = load_into(map, loaded);
    if (v.empty()) {
        v = validate(loaded.sim);
    }
    return v;
}

LoadedConfig load_config(const ConfigMap& map) {
    LoadedConfig loaded;
    std::vector<std::string> v = load_into(map, loaded);
    if (v.empty()) {
        v = validate(loaded.sim);
    }
    if (!v.empty()) {
        std::ostringstream oss;
        oss << "invalid config:";
        for (const std::string& msg : v) {
            oss << "\n  - " << msg;
        }
        throw ConfigError(oss.str());
    }
    return loaded;
}

} // namespace ehlink
