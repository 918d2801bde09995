#include "tqg/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tqg/random_field.hpp"
#include "tqg/snapshot.hpp"
#include "tqg/text.hpp"

namespace tqg {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

struct Parser {
    SimConfig cfg;
    std::vector<std::string> errors;
    bool have_n = false;
    bool have_t_end = false;

    void error(const std::string& msg) { errors.push_back(msg); }

    void set_field_spec(FieldSpec& spec, std::string_view key,
                        std::string_view value) {
        auto tokens = split_ws(value);
        if (tokens.empty()) {
            error(std::string(key) + ": empty field specification");
            return;
        }
        if (tokens[0] == "zero") {
            if (tokens.size() != 1) error(std::string(key) + ": zero takes no arguments");
            spec = FieldSpec{};
        } else if (tokens[0] == "single_mode") {
            if (tokens.size() != 5) {
                error(std::string(key) +
                      ": single_mode needs <kx> <ky> <amplitude> <phase>");
                return;
            }
            auto kx = parse_int(tokens[1]);
            auto ky = parse_int(tokens[2]);
            auto amp = parse_double(tokens[3]);
            auto ph = parse_double(tokens[4]);
            if (!kx || !ky || !amp || !ph) {
                error(std::string(key) + ": malformed single_mode arguments");
                return;
            }
            spec.kind = FieldSpec::Kind::kSingleMode;
            spec.kx = static_cast<int>(*kx);
            spec.ky = static_cast<int>(*ky);
            spec.amplitude = *amp;
            spec.phase = *ph;
        } else if (tokens[0] == "file") {
            if (tokens.size() != 2) {
                error(std::string(key) + ": file needs exactly one path");
                return;
            }
            spec.kind = FieldSpec::Kind::kFromFile;
            spec.path = std::string(tokens[1]);
        } else {
            error(std::string(key) + ": unknown field kind '" +
                  std::string(tokens[0]) + "' (zero | single_mode | file)");
        }
    }

    void handle(const std::string& section, std::string_view key,
                std::string_view value) {
        const std::string where = "[" + section + "] " + std::string(key);
        auto want_double = [&](double& out) {
            if (auto v = parse_double(value)) out = *v;
            else error(where + ": not a number: '" + std::string(value) + "'");
        };
        auto want_int = [&](int& out) {
            if (auto v = parse_int(value)) out = static_cast<int>(*v);
            else error(where + ": not an integer: '" + std::string(value) + "'");
        };
        auto want_flag = [&](bool& out) {
            if (value == "on") out = true;
            else if (value == "off") out = false;
            else error(where + ": expected on|off");
        };

        if (section == "grid") {
            if (key == "n") { want_int(cfg.n); have_n = true; }
            else if (key == "length") want_double(cfg.length);
            else error(where + ": unknown key");
        } else if (section == "time") {
            if (key == "t_end") { want_double(cfg.t_end); have_t_end = true; }
            else if (key == "dt") {
                if (value == "auto") cfg.dt = std::nullopt;
                else if (auto v = parse_double(value)) cfg.dt = *v;
                else error(where + ": expected a number or 'auto'");
            }
            else if (key == "cfl_target") want_double(cfg.cfl_target);
            else if (key == "max_dt") want_double(cfg.max_dt);
            else error(where + ": unknown key");
        } else if (section == "model") {
            if (key == "dealias") want_flag(cfg.dealias_on);
            else if (key == "f") set_field_spec(cfg.f_spec, where, value);
            else if (key == "h") set_field_spec(cfg.h_spec, where, value);
            else error(where + ": unknown key");
        } else if (section == "ic") {
            if (key == "kind") {
                if (value == "shear") cfg.ic_kind = IcKind::kShear;
                else if (value == "random_bandlimited")
                    cfg.ic_kind = IcKind::kRandomBandlimited;
                else if (value == "from_file") cfg.ic_kind = IcKind::kFromFile;
                else error(where + ": unknown ic kind '" + std::string(value) + "'");
            }
            else if (key == "seed") {
                if (auto v = parse_uint(value)) cfg.ic_seed = *v;
                else error(where + ": not an unsigned integer");
            }
            else if (key == "spectrum_slope") want_double(cfg.ic_spectrum_slope);
            else if (key == "file") cfg.ic_file = std::string(value);
            else error(where + ": unknown key");
        } else if (section == "output") {
            if (key == "dir") cfg.output_dir = std::string(value);
            else if (key == "diag_cadence") want_int(cfg.diag_cadence);
            else if (key == "snapshot_cadence") want_int(cfg.snapshot_cadence);
            else if (key == "norm_ceiling_factor") want_double(cfg.norm_ceiling_factor);
            else error(where + ": unknown key");
        } else {
            error("unknown section [" + section + "]");
        }
    }

    void validate() {
        if (!have_n) error("[grid] n: required key missing");
        else if (cfg.n < 16 || cfg.n % 2 != 0)
            error("[grid] n: n must be even and >= 16 (got " + std::to_string(cfg.n) + ")");
        if (!(cfg.length > 0)) error("[grid] length: must be > 0");
        if (!have_t_end) error("[time] t_end: required key missing");
        else if (!(cfg.t_end >= 0)) error("[time] t_end: must be >= 0");
        if (cfg.dt && !(*cfg.dt > 0)) error("[time] dt: must be > 0 or 'auto'");
        if (!(cfg.cfl_target > 0 && cfg.cfl_target < 1))
            error("[time] cfl_target: must lie in (0,1)");
        if (!(cfg.max_dt > 0)) error("[time] max_dt: must be > 0");
        if (cfg.diag_cadence < 1) error("[output] diag_cadence: must be >= 1");
        if (cfg.snapshot_cadence < 1) error("[output] snapshot_cadence: must be >= 1");
        if (!(cfg.norm_ceiling_factor > 1))
            error("[output] norm_ceiling_factor: must be > 1");
        if (cfg.ic_kind == IcKind::kFromFile && cfg.ic_file.empty())
            error("[ic] file: required when kind = from_file");
        if (cfg.output_dir.empty()) error("[output] dir: must not be empty");
        for (const auto* spec : {&cfg.f_spec, &cfg.h_spec}) {
            if (spec->kind == FieldSpec::Kind::kSingleMode && have_n && cfg.n >= 16 &&
                (std::abs(spec->kx) >= cfg.n / 2 || std::abs(spec->ky) >= cfg.n / 2))
                error("[model] single_mode wavenumbers must satisfy |k| < n/2");
        }
    }
};

std::string emit_field_spec(const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldSpec::Kind::kZero:
            return "zero";
        case FieldSpec::Kind::kSingleMode: {
            std::ostringstream out;
            out << "single_mode " << spec.kx << " " << spec.ky << " "
                << format_double(spec.amplitude) << " " << format_double(spec.phase);
            return out.str();
        }
        case FieldSpec::Kind::kFromFile:
            return "file " + spec.path;
    }
    return "zero";
}

}  // namespace

ConfigParseResult parse_config(const std::string& text) {
    Parser p;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#' || sv.front() == ';') continue;
        if (sv.front() == '[') {
            if (sv.back() != ']') {
                p.error("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = std::string(trim(sv.substr(1, sv.size() - 2)));
            continue;
        }
        const size_t eq = sv.find('=');
        if (eq == std::string_view::npos) {
            p.error("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string_view key = trim(sv.substr(0, eq));
        std::string_view value = trim(sv.substr(eq + 1));
        if (section.empty()) {
            p.error("line " + std::to_string(lineno) + ": key outside any section");
            continue;
        }
        p.handle(section, key, value);
    }
    p.validate();

    ConfigParseResult result;
    result.errors = std::move(p.errors);
    if (result.errors.empty()) result.config = std::move(p.cfg);
    return result;
}

std::string emit_config(const SimConfig& c) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "n = " << c.n << "\n";
    out << "length = " << format_double(c.length) << "\n";
    out << "\n[time]\n";
    out << "t_end = " << format_double(c.t_end) << "\n";
    out << "dt = " << (c.dt ? format_double(*c.dt) : std::string("auto")) << "\n";
    out << "cfl_target = " << format_double(c.cfl_target) << "\n";
    out << "max_dt = " << format_double(c.max_dt) << "\n";
    out << "\n[model]\n";
    out << "dealias = " << (c.dealias_on ? "on" : "off") << "\n";
    out << "f = " << emit_field_spec(c.f_spec) << "\n";
    out << "h = " << emit_field_spec(c.h_spec) << "\n";
    out << "\n[ic]\n";
    out << "kind = "
        << (c.ic_kind == IcKind::kShear ? "shear"
            : c.ic_kind == IcKind::kRandomBandlimited ? "random_bandlimited"
                                                      : "from_file")
        << "\n";
    out << "seed = " << c.ic_seed << "\n";
    out << "spectrum_slope = " << format_double(c.ic_spectrum_slope) << "\n";
    if (!c.ic_file.empty()) out << "file = " << c.ic_file << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.output_dir << "\n";
    out << "diag_cadence = " << c.diag_cadence << "\n";
    out << "snapshot_cadence = " << c.snapshot_cadence << "\n";
    out << "norm_ceiling_factor = " << format_double(c.norm_ceiling_factor) << "\n";
    return out.str();
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ConfigParseResult result = parse_config(buf.str());
    if (!result.config) {
        std::ostringstream msg;
        msg << "invalid config " << path << ":";
        for (const auto& e : result.errors) msg << "\n  " << e;
        throw std::runtime_error(msg.str());
    }
    return *result.config;
}

ScalarField build_field(const FieldSpec& spec, const Grid& grid) {
    switch (spec.kind) {
        case FieldSpec::Kind::kZero:
            return ScalarField(grid);
        case FieldSpec::Kind::kSingleMode: {
            ScalarField f(grid);
            const double k1 = 2.0 * M_PI / grid.length;
            const double dx = grid.dx();
            for (int i = 0; i < grid.n; ++i)
                for (int j = 0; j < grid.n; ++j)
                    f.at(i, j) = spec.amplitude *
                                 std::cos(k1 * (spec.kx * i * dx + spec.ky * j * dx) +
                                          spec.phase);
            return f;
        }
        case FieldSpec::Kind::kFromFile: {
            Snapshot snap = read_snapshot(spec.path);
            if (snap.fields.size() != 1)
                throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                                    "build_field: expected a 1-field snapshot in " +
                                        spec.path);
            if (!(snap.grid == grid))
                throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                                    "build_field: snapshot grid mismatch in " + spec.path);
            return std::move(snap.fields[0]);
        }
    }
    return ScalarField(grid);
}

TqgState initial_state(const SimConfig& config, const Grid& grid) {
    TqgState state;
    state.t = 0;
    switch (config.ic_kind) {
        case IcKind::kShear: {
            state.b = ScalarField(grid);
            state.q = ScalarField(grid);
            const double k1 = 2.0 * M_PI / grid.length;
            const double dx = grid.dx();
            for (int i = 0; i < grid.n; ++i)
                for (int j = 0; j < grid.n; ++j) {
                    state.b.at(i, j) = std::sin(k1 * j * dx);
                    state.q.at(i, j) = std::sin(k1 * j * dx) * std::cos(k1 * i * dx);
                }
            break;
        }
        case IcKind::kRandomBandlimited: {
            const int band = std::max(2, grid.n / 6);
            state.b = random_bandlimited(grid, config.ic_seed,
                                         config.ic_spectrum_slope, band, 1.0);
            state.q = random_bandlimited(grid, config.ic_seed + 1,
                                         config.ic_spectrum_slope, band, 1.0);
            break;
        }
        case IcKind::kFromFile: {
            TqgState loaded = read_state_snapshot(config.ic_file);
            if (!(loaded.b.grid == grid))
                throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                                    "initial_state: snapshot grid mismatch in " +
                                        config.ic_file);
            state = std::move(loaded);
            state.t = 0;
            break;
        }
    }
    return state;
}

}  // namespace tqg
