#include "ilw/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace ilw {

namespace {

std::string join(const std::vector<std::string>& violations) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& v : violations) msg << "\n  - " << v;
    return msg.str();
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct KeyValue {
    std::string value;
    bool present = false;
};

using KeyMap = std::map<std::string, KeyValue>;

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "model.delta",           "grid.n_points",          "grid.length",
        "time.dt",               "time.t_end",             "time.checkpoint_stride",
        "time.integrator",       "initial.kind",           "initial.amplitude",
        "initial.width",         "initial.center",         "initial.soliton_speed",
        "initial.path",          "diagnostics.b",          "diagnostics.m",
        "diagnostics.q_exp",     "diagnostics.sigma",      "diagnostics.lambda",
        "diagnostics.alpha",     "diagnostics.c0",         "diagnostics.c1",
        "diagnostics.corollary_mode", "diagnostics.functionals", "diagnostics.inequalities",
        "output.directory",      "output.formats",         "run.seed",
        "run.threads"};
    return keys;
}

bool is_known(const std::string& key) {
    for (const auto& k : known_keys())
        if (k == key) return true;
    return false;
}

class Reader {
public:
    Reader(const KeyMap& map, std::vector<std::string>& violations)
        : map_(map), violations_(violations) {}

    void number(const std::string& key, double& out) {
        auto it = map_.find(key);
        if (it == map_.end()) return;
        const char* s = it->second.value.c_str();
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            violations_.push_back(key + ": not a number (got '" + it->second.value + "')");
        else
            out = v;
    }

    void integer(const std::string& key, long long& out) {
        auto it = map_.find(key);
        if (it == map_.end()) return;
        const char* s = it->second.value.c_str();
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end == s || *end != '\0')
            violations_.push_back(key + ": not an integer (got '" + it->second.value + "')");
        else
            out = v;
    }

    void unsigned64(const std::string& key, std::uint64_t& out) {
        auto it = map_.find(key);
        if (it == map_.end()) return;
        const char* s = it->second.value.c_str();
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0')
            violations_.push_back(key + ": not an unsigned integer (got '" +
                                  it->second.value + "')");
        else
            out = v;
    }

    void boolean(const std::string& key, bool& out) {
        auto it = map_.find(key);
        if (it == map_.end()) return;
        const std::string& v = it->second.value;
        if (v == "true" || v == "1")
            out = true;
        else if (v == "false" || v == "0")
            out = false;
        else
            violations_.push_back(key + ": not a boolean (got '" + v + "')");
    }

    void text(const std::string& key, std::string& out) {
        auto it = map_.find(key);
        if (it != map_.end()) out = it->second.value;
    }

private:
    const KeyMap& map_;
    std::vector<std::string>& violations_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::string>& overrides) {
    std::vector<std::string> violations;
    KeyMap map;

    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                violations.push_back("line " + std::to_string(line_no) + ", column " +
                                     std::to_string(line.size()) +
                                     ": unterminated section header");
                continue;
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            continue;
        }
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            violations.push_back("line " + std::to_string(line_no) + ", column 1" +
                                 ": expected 'key = value'");
            continue;
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            violations.push_back("line " + std::to_string(line_no) + ", column 1" +
                                 ": empty key");
            continue;
        }
        std::string full = section.empty() ? key : section + "." + key;
        if (!is_known(full)) {
            violations.push_back("line " + std::to_string(line_no) + ": unknown key '" +
                                 full + "'");
            continue;
        }
        map[full] = {value, true};
    }

    for (const auto& ov : overrides) {
        std::size_t eq = ov.find('=');
        if (eq == std::string::npos || ov.find('.') == std::string::npos ||
            ov.find('.') > eq) {
            violations.push_back("override '" + ov + "': expected section.key=value");
            continue;
        }
        std::string key = trim(ov.substr(0, eq));
        if (!is_known(key)) {
            violations.push_back("override: unknown key '" + key + "'");
            continue;
        }
        map[key] = {trim(ov.substr(eq + 1)), true};
    }

    ExperimentConfig c;
    Reader r(map, violations);
    r.number("model.delta", c.model.delta);
    long long n_points = c.grid_n_points, stride = c.checkpoint_stride,
              threads = c.threads;
    r.integer("grid.n_points", n_points);
    r.number("grid.length", c.grid_length);
    r.number("time.dt", c.dt);
    r.number("time.t_end", c.t_end);
    r.integer("time.checkpoint_stride", stride);
    std::string integrator = c.integrator == Integrator::etd_rk4 ? "etd_rk4" : "if_rk4";
    r.text("time.integrator", integrator);
    r.text("initial.kind", c.initial.kind);
    r.number("initial.amplitude", c.initial.amplitude);
    r.number("initial.width", c.initial.width);
    r.number("initial.center", c.initial.center);
    r.number("initial.soliton_speed", c.initial.soliton_speed);
    r.text("initial.path", c.initial.path);
    r.number("diagnostics.b", c.diagnostics.b);
    r.number("diagnostics.m", c.diagnostics.m);
    r.number("diagnostics.q_exp", c.diagnostics.q_exp);
    r.number("diagnostics.sigma", c.diagnostics.sigma);
    r.number("diagnostics.lambda", c.diagnostics.lambda);
    r.number("diagnostics.alpha", c.diagnostics.alpha);
    r.number("diagnostics.c0", c.diagnostics.c0);
    r.number("diagnostics.c1", c.diagnostics.c1);
    r.boolean("diagnostics.corollary_mode", c.diagnostics.corollary_mode);
    r.boolean("diagnostics.functionals", c.functionals_enabled);
    r.boolean("diagnostics.inequalities", c.inequalities_enabled);
    r.text("output.directory", c.output.directory);
    r.text("output.formats", c.output.formats);
    r.unsigned64("run.seed", c.seed);
    r.integer("run.threads", threads);

    c.grid_n_points = static_cast<int>(n_points);
    c.checkpoint_stride = static_cast<int>(stride);
    c.threads = static_cast<int>(threads);

    if (integrator == "if_rk4")
        c.integrator = Integrator::integrating_factor_rk4;
    else if (integrator == "etd_rk4")
        c.integrator = Integrator::etd_rk4;
    else
        violations.push_back("time.integrator: must be if_rk4 or etd_rk4 (got '" +
                             integrator + "')");

    if (!(c.model.delta > 0.0)) violations.push_back("model.delta must be positive");
    if (n_points < 16 || n_points % 2 != 0)
        violations.push_back("grid.n_points must be even and >= 16");
    if (!(c.grid_length > 0.0)) violations.push_back("grid.length must be positive");
    if (!(c.dt > 0.0)) violations.push_back("time.dt must be positive");
    if (!(c.t_end >= 0.0)) violations.push_back("time.t_end must be >= 0");
    if (stride < 1) violations.push_back("time.checkpoint_stride must be >= 1");
    if (c.initial.kind != "gaussian" && c.initial.kind != "soliton" &&
        c.initial.kind != "file")
        violations.push_back("initial.kind must be gaussian, soliton or file (got '" +
                             c.initial.kind + "')");
    if (c.initial.kind == "gaussian") {
        if (!(c.initial.amplitude != 0.0))
            violations.push_back("initial.amplitude must be nonzero");
        if (!(c.initial.width > 0.0)) violations.push_back("initial.width must be positive");
    }
    if (c.initial.kind == "soliton" && c.model.delta > 0.0 &&
        !(c.initial.soliton_speed > 1.0 / c.model.delta))
        violations.push_back(
            "initial.soliton_speed must exceed 1/delta (no solitary wave below the "
            "phase-speed edge)");
    if (c.initial.kind == "file" && c.initial.path.empty())
        violations.push_back("initial.path is required for initial.kind = file");
    if (c.threads < 1) violations.push_back("run.threads must be >= 1");
    for (const auto& v : virial_params_violations(c.diagnostics))
        violations.push_back("diagnostics: " + v);

    if (!violations.empty()) throw ConfigError(std::move(violations));
    return c;
}

std::string emit_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[model]\n";
    out << "delta = " << format_double(c.model.delta) << "\n";
    out << "\n[grid]\n";
    out << "n_points = " << c.grid_n_points << "\n";
    out << "length = " << format_double(c.grid_length) << "\n";
    out << "\n[time]\n";
    out << "dt = " << format_double(c.dt) << "\n";
    out << "t_end = " << format_double(c.t_end) << "\n";
    out << "checkpoint_stride = " << c.checkpoint_stride << "\n";
    out << "integrator = "
        << (c.integrator == Integrator::etd_rk4 ? "etd_rk4" : "if_rk4") << "\n";
    out << "\n[initial]\n";
    out << "kind = " << c.initial.kind << "\n";
    out << "amplitude = " << format_double(c.initial.amplitude) << "\n";
    out << "width = " << format_double(c.initial.width) << "\n";
    out << "center = " << format_double(c.initial.center) << "\n";
    out << "soliton_speed = " << format_double(c.initial.soliton_speed) << "\n";
    out << "path = " << c.initial.path << "\n";
    out << "\n[diagnostics]\n";
    out << "b = " << format_double(c.diagnostics.b) << "\n";
    out << "m = " << format_double(c.diagnostics.m) << "\n";
    out << "q_exp = " << format_double(c.diagnostics.q_exp) << "\n";
    out << "sigma = " << format_double(c.diagnostics.sigma) << "\n";
    out << "lambda = " << format_double(c.diagnostics.lambda) << "\n";
    out << "alpha = " << format_double(c.diagnostics.alpha) << "\n";
    out << "c0 = " << format_double(c.diagnostics.c0) << "\n";
    out << "c1 = " << format_double(c.diagnostics.c1) << "\n";
    out << "corollary_mode = " << (c.diagnostics.corollary_mode ? "true" : "false") << "\n";
    out << "functionals = " << (c.functionals_enabled ? "true" : "false") << "\n";
    out << "inequalities = " << (c.inequalities_enabled ? "true" : "false") << "\n";
    out << "\n[output]\n";
    out << "directory = " << c.output.directory << "\n";
    out << "formats = " << c.output.formats << "\n";
    out << "\n[run]\n";
    out << "seed = " << c.seed << "\n";
    out << "threads = " << c.threads << "\n";
    return out.str();
}

std::string config_content_hash(const ExperimentConfig& config) {
    const std::string text = emit_config(config);
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
    return buf;
}

}  // namespace ilw
