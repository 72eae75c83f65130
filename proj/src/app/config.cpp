#include "geoflow/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace geoflow {

namespace {

// ---------------------------------------------------------------- value parsing

class ValueParser {
public:
    ValueParser(std::string_view text, std::string key) : text_(text), key_(std::move(key)) {}

    ConfigValue parse_all() {
        ConfigValue v = parse_value();
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters after value");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(key_ + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    ConfigValue parse_value() {
        skip_space();
        if (pos_ >= text_.size()) fail("missing value");
        const char c = text_[pos_];
        if (c == '"') return parse_string();
        if (c == '[') return parse_list();
        return parse_number();
    }

    ConfigValue parse_string() {
        const auto end = text_.find('"', pos_ + 1);
        if (end == std::string_view::npos) fail("unterminated string");
        std::string s(text_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end + 1;
        return {std::move(s)};
    }

    ConfigValue parse_list() {
        ++pos_;  // '['
        std::vector<ConfigValue> items;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return {std::move(items)};
        }
        while (true) {
            items.push_back(parse_value());
            skip_space();
            if (pos_ >= text_.size()) fail("unterminated list");
            if (text_[pos_] == ',') {
                ++pos_;
                skip_space();
                if (pos_ < text_.size() && text_[pos_] == ']') {  // trailing comma
                    ++pos_;
                    break;
                }
                continue;
            }
            if (text_[pos_] == ']') {
                ++pos_;
                break;
            }
            fail("expected ',' or ']' in list");
        }
        return {std::move(items)};
    }

    ConfigValue parse_number() {
        std::size_t end = pos_;
        while (end < text_.size() && text_[end] != ',' && text_[end] != ']' &&
               !std::isspace(static_cast<unsigned char>(text_[end]))) {
            ++end;
        }
        const std::string token(text_.substr(pos_, end - pos_));
        char* stop = nullptr;
        const double v = std::strtod(token.c_str(), &stop);
        if (token.empty() || stop != token.c_str() + token.size()) {
            fail("'" + token + "' is not a number (strings must be quoted)");
        }
        pos_ = end;
        return {v};
    }

    std::string_view text_;
    std::string key_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int bracket_balance(const std::string& s) {
    int depth = 0;
    bool quoted = false;
    for (char c : s) {
        if (c == '"') quoted = !quoted;
        if (quoted) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

// ---------------------------------------------------------------- typed access

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "grid.n",
        "symbol.kind", "symbol.s", "symbol.power", "symbol.table", "symbol.order", "symbol.invertible_on",
        "solver.dt", "solver.t_end", "solver.scheme", "solver.dealias", "solver.record_every",
        "solver.frame", "solver.q_work",
        "stop.min_slope_floor", "stop.norm_ceiling", "stop.jacobian_floor",
        "initial.modes",
        "output.dir", "output.label",
    };
    return keys;
}

class Entries {
public:
    explicit Entries(std::map<std::string, ConfigValue> e) : entries_(std::move(e)) {
        for (const auto& [k, v] : entries_) {
            if (!known_keys().count(k)) throw ConfigError(k + ": unknown configuration key");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    double number(const std::string& key) const {
        const auto& v = get(key);
        if (const auto* d = std::get_if<double>(&v.data)) return *d;
        throw ConfigError(key + ": expected a number");
    }
    double number(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) const {
        const double d = number(key);
        if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError(key + ": expected an integer");
        return static_cast<int>(d);
    }
    int integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

    std::string string(const std::string& key) const {
        const auto& v = get(key);
        if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
        throw ConfigError(key + ": expected a quoted string");
    }
    std::string string(const std::string& key, const std::string& fallback) const {
        return has(key) ? string(key) : fallback;
    }

    const std::vector<ConfigValue>& list(const std::string& key) const {
        const auto& v = get(key);
        if (const auto* l = std::get_if<std::vector<ConfigValue>>(&v.data)) return *l;
        throw ConfigError(key + ": expected a list");
    }

private:
    const ConfigValue& get(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError(key + ": required field is missing");
        return it->second;
    }

    std::map<std::string, ConfigValue> entries_;
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view to_string(DealiasRule r) { return r == DealiasRule::two_thirds ? "two_thirds" : "none"; }

std::string kind_name(SymbolKind k) {
    switch (k) {
        case SymbolKind::bessel: return "bessel";
        case SymbolKind::helmholtz_power: return "helmholtz_power";
        case SymbolKind::clm: return "clm";
        case SymbolKind::derivative: return "derivative";
        case SymbolKind::hilbert: return "hilbert";
        case SymbolKind::identity: return "identity";
        case SymbolKind::custom: return "custom";
    }
    return "unknown";
}

SymbolSpec parse_symbol(const Entries& e) {
    const std::string kind = e.string("symbol.kind");
    if (kind == "bessel") {
        if (!e.has("symbol.s")) throw ConfigError("symbol.s: required for kind \"bessel\"");
        const double s = e.number("symbol.s");
        if (!(s >= 0.5)) throw ConfigError("symbol.s: must be >= 0.5");
        return SymbolSpec::bessel(s);
    }
    if (kind == "helmholtz_power") {
        if (!e.has("symbol.power")) throw ConfigError("symbol.power: required for kind \"helmholtz_power\"");
        const int p = e.integer("symbol.power");
        if (p < 1) throw ConfigError("symbol.power: must be an integer >= 1");
        return SymbolSpec::helmholtz_power(p);
    }
    if (kind == "custom") {
        std::vector<double> table;
        for (const auto& v : e.list("symbol.table")) {
            const auto* d = std::get_if<double>(&v.data);
            if (!d) throw ConfigError("symbol.table: entries must be numbers");
            table.push_back(*d);
        }
        if (table.empty()) throw ConfigError("symbol.table: must not be empty");
        if (!e.has("symbol.order")) throw ConfigError("symbol.order: required for kind \"custom\"");
        const std::string inv = e.string("symbol.invertible_on", "all_modes");
        Invertibility invertible;
        if (inv == "all_modes") invertible = Invertibility::all_modes;
        else if (inv == "mean_zero_only") invertible = Invertibility::mean_zero_only;
        else throw ConfigError("symbol.invertible_on: must be \"all_modes\" or \"mean_zero_only\"");
        return SymbolSpec::custom(std::move(table), e.number("symbol.order"), invertible);
    }
    return make_symbol(kind, 0.0);
}

std::vector<InitialMode> parse_modes(const Entries& e) {
    std::vector<InitialMode> modes;
    const auto& list = e.list("initial.modes");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "initial.modes[" + std::to_string(i) + "]";
        const auto* triple = std::get_if<std::vector<ConfigValue>>(&list[i].data);
        if (!triple || triple->size() != 3) {
            throw ConfigError(where + ": expected [mode, cos_amplitude, sin_amplitude]");
        }
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            const auto* d = std::get_if<double>(&(*triple)[static_cast<std::size_t>(k)].data);
            if (!d) throw ConfigError(where + ": entries must be numbers");
            vals[k] = *d;
        }
        if (vals[0] != std::floor(vals[0]) || vals[0] < 0) {
            throw ConfigError(where + ": mode must be a non-negative integer");
        }
        modes.push_back({static_cast<int>(vals[0]), vals[1], vals[2]});
    }
    return modes;
}

}  // namespace

// ---------------------------------------------------------------- public

std::string_view to_string(Frame frame) {
    switch (frame) {
        case Frame::eulerian: return "eulerian";
        case Frame::lagrangian: return "lagrangian";
        case Frame::both: return "both";
    }
    return "unknown";
}

SymbolSpec make_symbol(const std::string& kind, double parameter) {
    if (kind == "bessel") return SymbolSpec::bessel(parameter);
    if (kind == "helmholtz_power") return SymbolSpec::helmholtz_power(static_cast<int>(parameter));
    if (kind == "clm") return SymbolSpec::clm();
    if (kind == "identity") return SymbolSpec::identity();
    if (kind == "derivative") return SymbolSpec::derivative();
    if (kind == "hilbert") return SymbolSpec::hilbert();
    throw ConfigError("symbol.kind: unknown symbol \"" + kind +
                      "\" (expected bessel, helmholtz_power, clm, identity or custom)");
}

std::map<std::string, ConfigValue> parse_config_entries(const std::string& text) {
    std::map<std::string, ConfigValue> out;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[' && line.find('=') == std::string::npos) {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        // lists may continue over several lines
        while (bracket_balance(value) > 0 && std::getline(in, raw)) {
            ++line_no;
            value += " " + trim(strip_comment(raw));
        }
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full)) throw ConfigError(full + ": duplicate key");
        out.emplace(full, ValueParser(value, full).parse_all());
    }
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    const Entries e(parse_config_entries(text));
    RunConfig cfg;
    cfg.n = e.integer("grid.n");
    cfg.solver.symbol = parse_symbol(e);
    cfg.solver.dt = e.number("solver.dt");
    cfg.solver.t_end = e.number("solver.t_end");
    if (e.string("solver.scheme", "rk4") != "rk4") throw ConfigError("solver.scheme: only \"rk4\" is supported");
    const std::string dealias = e.string("solver.dealias", "two_thirds");
    if (dealias == "two_thirds") cfg.solver.dealias = DealiasRule::two_thirds;
    else if (dealias == "none") cfg.solver.dealias = DealiasRule::none;
    else throw ConfigError("solver.dealias: must be \"two_thirds\" or \"none\"");
    cfg.solver.record_every = e.integer("solver.record_every", 1);
    const std::string frame = e.string("solver.frame", "eulerian");
    if (frame == "eulerian") cfg.frame = Frame::eulerian;
    else if (frame == "lagrangian") cfg.frame = Frame::lagrangian;
    else if (frame == "both") cfg.frame = Frame::both;
    else throw ConfigError("solver.frame: must be \"eulerian\", \"lagrangian\" or \"both\"");
    if (e.has("solver.q_work")) cfg.solver.q_work = e.number("solver.q_work");
    cfg.solver.stop.min_slope_floor = e.number("stop.min_slope_floor", cfg.solver.stop.min_slope_floor);
    cfg.solver.stop.norm_ceiling = e.number("stop.norm_ceiling", cfg.solver.stop.norm_ceiling);
    cfg.solver.stop.jacobian_floor = e.number("stop.jacobian_floor", cfg.solver.stop.jacobian_floor);
    cfg.initial = parse_modes(e);
    cfg.output_dir = e.string("output.dir", cfg.output_dir);
    cfg.label = e.string("output.label", cfg.label);
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void RunConfig::validate() const {
    if (n < 8 || n % 2 != 0) throw ConfigError("grid.n: must be an even integer >= 8");
    solver.validate();
    if (initial.empty()) throw ConfigError("initial.modes: at least one mode is required");
    const int band = n / 3;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const auto& m = initial[i];
        const std::string where = "initial.modes[" + std::to_string(i) + "]";
        if (m.mode > band) {
            throw ConfigError(where + ": mode exceeds dealias band (" + std::to_string(m.mode) +
                              " > n/3 = " + std::to_string(band) + ")");
        }
        if (!std::isfinite(m.cos_amplitude) || !std::isfinite(m.sin_amplitude)) {
            throw ConfigError(where + ": amplitudes must be finite");
        }
        if (m.mode == 0 && m.cos_amplitude != 0.0 &&
            solver.symbol.invertible_on() == Invertibility::mean_zero_only) {
            throw ConfigError(where + ": zero mode not invertible for symbol " + solver.symbol.name() +
                              " (initial velocity must have zero mean)");
        }
    }
    if (solver.symbol.kind() == SymbolKind::custom) {
        // table must cover every resolved mode
        try {
            (void)solver.symbol.table(Grid(n));
        } catch (const Error& err) {
            throw ConfigError(std::string("symbol.table: ") + err.what());
        }
    }
    if (label.empty()) throw ConfigError("output.label: must not be empty");
}

PeriodicField RunConfig::initial_velocity() const {
    return PeriodicField::sample(Grid(n), [&](double x) {
        double u = 0.0;
        for (const auto& m : initial) {
            u += m.cos_amplitude * std::cos(m.mode * x) + m.sin_amplitude * std::sin(m.mode * x);
        }
        return u;
    });
}

std::filesystem::path RunConfig::resolved_output_dir() const {
    std::filesystem::path dir(output_dir);
    if (const char* root = std::getenv(kOutputRootEnv); root && *root) {
        return std::filesystem::path(root) / dir.relative_path();
    }
    return dir;
}

std::string RunConfig::echo() const {
    std::ostringstream os;
    os << "[grid]\n" << "n = " << n << "\n\n";
    os << "[symbol]\n" << "kind = \"" << kind_name(solver.symbol.kind()) << "\"\n";
    switch (solver.symbol.kind()) {
        case SymbolKind::bessel: os << "s = " << format_number(solver.symbol.parameter()) << "\n"; break;
        case SymbolKind::helmholtz_power:
            os << "power = " << static_cast<int>(solver.symbol.parameter()) << "\n";
            break;
        case SymbolKind::custom: {
            const Grid g(n);
            os << "table = [";
            for (int k = 0; k <= g.max_resolved_mode(); ++k) {
                os << (k ? ", " : "") << format_number(solver.symbol(k).real());
            }
            os << "]\n" << "order = " << format_number(solver.symbol.order()) << "\n";
            os << "invertible_on = \""
               << (solver.symbol.invertible_on() == Invertibility::all_modes ? "all_modes" : "mean_zero_only")
               << "\"\n";
            break;
        }
        default: break;
    }
    os << "\n[solver]\n";
    os << "dt = " << format_number(solver.dt) << "\n";
    os << "t_end = " << format_number(solver.t_end) << "\n";
    os << "scheme = \"rk4\"\n";
    os << "dealias = \"" << to_string(solver.dealias) << "\"\n";
    os << "record_every = " << solver.record_every << "\n";
    os << "frame = \"" << to_string(frame) << "\"\n";
    os << "q_work = " << format_number(solver.working_q()) << "\n";
    os << "\n[stop]\n";
    os << "min_slope_floor = " << format_number(solver.stop.min_slope_floor) << "\n";
    os << "norm_ceiling = " << format_number(solver.stop.norm_ceiling) << "\n";
    os << "jacobian_floor = " << format_number(solver.stop.jacobian_floor) << "\n";
    os << "\n[initial]\n" << "modes = [";
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const auto& m = initial[i];
        os << (i ? ", " : "") << "[" << m.mode << ", " << format_number(m.cos_amplitude) << ", "
           << format_number(m.sin_amplitude) << "]";
    }
    os << "]\n";
    os << "\n[output]\n" << "dir = \"" << output_dir << "\"\n" << "label = \"" << label << "\"\n";
    return os.str();
}

}  // namespace geoflow
