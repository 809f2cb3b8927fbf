#include "tcsim/config.hpp"

#include <nlohmann/json.hpp>

namespace tcsim {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

void check_keys(const json& obj, const std::string& scope,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) fail("unknown key '" + (scope.empty() ? key : scope + "." + key) + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(std::string("'") + key + "' must be a number");
    return obj[key].get<double>();
}

void parse_params(const json& obj, SystemParams& p) {
    check_keys(obj, "params",
               {"omega_c", "omega_e", "omega_d", "gamma_c", "gamma_c_rad", "gamma_e", "g_col",
                "n_emitters", "omega_drive_amp"});
    p.omega_c = get_number(obj, "omega_c", p.omega_c);
    p.omega_e = get_number(obj, "omega_e", p.omega_e);
    p.omega_d = get_number(obj, "omega_d", p.omega_d);
    p.gamma_c = get_number(obj, "gamma_c", p.gamma_c);
    // Radiative decay defaults to the total decay unless given explicitly.
    p.gamma_c_rad = get_number(obj, "gamma_c_rad", obj.contains("gamma_c") ? p.gamma_c : p.gamma_c_rad);
    p.gamma_e = get_number(obj, "gamma_e", p.gamma_e);
    p.g_col = get_number(obj, "g_col", p.g_col);
    if (obj.contains("n_emitters")) {
        if (!obj["n_emitters"].is_number_integer()) fail("'n_emitters' must be an integer");
        p.n_emitters = obj["n_emitters"].get<int>();
    }
    p.omega_drive_amp = get_number(obj, "omega_drive_amp", p.omega_drive_amp);

    auto check_rate = [](double v, const char* name) {
        if (v < 0.0) fail(std::string("negative rate '") + name + "'");
    };
    check_rate(p.gamma_c, "gamma_c");
    check_rate(p.gamma_c_rad, "gamma_c_rad");
    check_rate(p.gamma_e, "gamma_e");
    check_rate(p.g_col, "g_col");
    check_rate(p.omega_drive_amp, "omega_drive_amp");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

GridSpec parse_grid(const json& obj) {
    check_keys(obj, "grid", {"start", "stop", "count", "spacing"});
    GridSpec grid;
    if (!obj.contains("start") || !obj.contains("stop")) fail("grid needs 'start' and 'stop'");
    grid.start = get_number(obj, "start", 0.0);
    grid.stop = get_number(obj, "stop", 0.0);
    if (obj.contains("count")) {
        if (!obj["count"].is_number_integer()) fail("'grid.count' must be an integer");
        grid.count = obj["count"].get<int>();
    } else {
        grid.count = 60;
    }
    if (obj.contains("spacing")) {
        const std::string s = obj["spacing"].get<std::string>();
        if (s == "linear") {
            grid.spacing = GridSpacing::linear;
        } else if (s == "log") {
            grid.spacing = GridSpacing::log;
        } else {
            fail("'grid.spacing' must be 'linear' or 'log'");
        }
    } else {
        grid.spacing = GridSpacing::log;
    }
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return grid;
}

RunMode parse_mode(const std::string& s) {
    if (s == "spectrum") return RunMode::spectrum;
    if (s == "drive-sweep" || s == "drive") return RunMode::drive;
    if (s == "diagonals") return RunMode::diagonals;
    if (s == "critical-table") return RunMode::critical_table;
    if (s == "classical") return RunMode::classical_only;
    fail("unknown mode '" + s + "'");
}

}  // namespace

GridSpec RunConfig::effective_grid() const {
    if (grid_set) return grid;
    if (mode == RunMode::spectrum ||
        (mode == RunMode::classical_only && classical_axis == ClassicalAxis::omega_d)) {
        return GridSpec{params.omega_c - 2.0 * params.g_col, params.omega_c + 2.0 * params.g_col,
                        121, GridSpacing::linear};
    }
    return GridSpec{1e-3 * params.g_col, 10.0 * params.g_col, 60, GridSpacing::log};
}

SweepSpec RunConfig::to_sweep_spec() const {
    SweepSpec spec;
    switch (mode) {
        case RunMode::spectrum: spec.mode = SweepMode::spectrum; break;
        case RunMode::drive: spec.mode = SweepMode::drive; break;
        case RunMode::diagonals: spec.mode = SweepMode::diagonals; break;
        default: throw std::logic_error("to_sweep_spec: not a sweep mode");
    }
    spec.params = params;
    spec.grid = effective_grid();
    spec.n_list = n_list;
    spec.truncation = truncation;
    spec.include_classical = include_classical;
    spec.frame = frame;
    return spec;
}

CriticalTableSpec RunConfig::to_critical_spec() const {
    CriticalTableSpec spec;
    spec.params = params;
    spec.n_list = n_list;
    spec.scan = scan;
    spec.scan_values = scan_values;
    spec.truncation = truncation;
    return spec;
}

RunConfig parse_config(const std::string& text) {
    json doc;
    const std::string trimmed = text.find_first_not_of(" \t\r\n") == std::string::npos ? "{}" : text;
    try {
        doc = json::parse(trimmed);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) fail("document root must be an object");

    check_keys(doc, "",
               {"mode", "params", "grid", "n_list", "truncation", "tail_tol", "hard_cap",
                "include_classical", "frame", "scan", "classical_axis", "out", "threads"});

    RunConfig cfg;
    cfg.params.omega_drive_amp = 0.25 * cfg.params.g_col;

    if (doc.contains("mode")) cfg.mode = parse_mode(doc["mode"].get<std::string>());
    if (doc.contains("params")) parse_params(doc["params"], cfg.params);
    if (doc.contains("grid")) {
        cfg.grid = parse_grid(doc["grid"]);
        cfg.grid_set = true;
    }
    if (doc.contains("n_list")) {
        if (!doc["n_list"].is_array() || doc["n_list"].empty()) {
            fail("'n_list' must be a non-empty array of integers");
        }
        cfg.n_list.clear();
        for (const auto& v : doc["n_list"]) {
            if (!v.is_number_integer() || v.get<int>() < 1) {
                fail("'n_list' entries must be integers >= 1");
            }
            cfg.n_list.push_back(v.get<int>());
        }
    }
    if (doc.contains("truncation")) {
        const auto& t = doc["truncation"];
        if (t.is_string() && t.get<std::string>() == "auto") {
            cfg.truncation.automatic = true;
        } else if (t.is_number_integer() && t.get<int>() >= 1) {
            cfg.truncation.automatic = false;
            cfg.truncation.fixed_n_max = t.get<int>();
        } else {
            fail("'truncation' must be \"auto\" or an integer >= 1");
        }
    }
    if (doc.contains("tail_tol")) {
        cfg.truncation.tail_tol = get_number(doc, "tail_tol", cfg.truncation.tail_tol);
        if (!(cfg.truncation.tail_tol > 0.0 && cfg.truncation.tail_tol < 1.0)) {
            fail("'tail_tol' must lie in (0, 1)");
        }
    }
    if (doc.contains("hard_cap")) {
        if (!doc["hard_cap"].is_number_integer() || doc["hard_cap"].get<int>() < 1) {
            fail("'hard_cap' must be a positive integer");
        }
        cfg.truncation.hard_cap = doc["hard_cap"].get<int>();
    }
    if (doc.contains("include_classical")) {
        if (!doc["include_classical"].is_boolean()) fail("'include_classical' must be a boolean");
        cfg.include_classical = doc["include_classical"].get<bool>();
    }
    if (doc.contains("frame")) {
        const std::string f = doc["frame"].get<std::string>();
        if (f == "automatic") {
            cfg.frame = SolveFrame::automatic;
        } else if (f == "direct") {
            cfg.frame = SolveFrame::direct;
        } else if (f == "displaced") {
            cfg.frame = SolveFrame::displaced;
        } else {
            fail("'frame' must be automatic, direct, or displaced");
        }
    }
    if (doc.contains("scan")) {
        const auto& s = doc["scan"];
        check_keys(s, "scan", {"parameter", "values"});
        if (!s.contains("parameter") || !s.contains("values")) {
            fail("'scan' needs 'parameter' and 'values'");
        }
        const std::string p = s["parameter"].get<std::string>();
        if (p == "gamma_e") {
            cfg.scan = CriticalScan::gamma_e;
        } else if (p == "g_col") {
            cfg.scan = CriticalScan::g_col;
        } else {
            fail("'scan.parameter' must be gamma_e or g_col");
        }
        for (const auto& v : s["values"]) {
            if (!v.is_number() || !(v.get<double>() > 0.0)) {
                fail("'scan.values' must be positive numbers");
            }
            cfg.scan_values.push_back(v.get<double>());
        }
    }
    if (doc.contains("classical_axis")) {
        const std::string a = doc["classical_axis"].get<std::string>();
        if (a == "omega_d") {
            cfg.classical_axis = ClassicalAxis::omega_d;
        } else if (a == "drive") {
            cfg.classical_axis = ClassicalAxis::drive;
        } else {
            fail("'classical_axis' must be omega_d or drive");
        }
    }
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("threads")) {
        if (!doc["threads"].is_number_integer() || doc["threads"].get<int>() < 0) {
            fail("'threads' must be a non-negative integer");
        }
        cfg.threads = doc["threads"].get<int>();
    }

    if (cfg.mode == RunMode::critical_table && cfg.scan_values.empty()) {
        fail("critical-table mode requires 'scan'");
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json doc;
    doc["mode"] = to_string(cfg.mode);
    doc["params"] = {{"omega_c", cfg.params.omega_c},
                     {"omega_e", cfg.params.omega_e},
                     {"omega_d", cfg.params.omega_d},
                     {"gamma_c", cfg.params.gamma_c},
                     {"gamma_c_rad", cfg.params.gamma_c_rad},
                     {"gamma_e", cfg.params.gamma_e},
                     {"g_col", cfg.params.g_col},
                     {"n_emitters", cfg.params.n_emitters},
                     {"omega_drive_amp", cfg.params.omega_drive_amp}};
    if (cfg.grid_set) {
        doc["grid"] = {{"start", cfg.grid.start},
                       {"stop", cfg.grid.stop},
                       {"count", cfg.grid.count},
                       {"spacing", to_string(cfg.grid.spacing)}};
    }
    doc["n_list"] = cfg.n_list;
    if (cfg.truncation.automatic) {
        doc["truncation"] = "auto";
    } else {
        doc["truncation"] = cfg.truncation.fixed_n_max;
    }
    doc["tail_tol"] = cfg.truncation.tail_tol;
    doc["hard_cap"] = cfg.truncation.hard_cap;
    doc["include_classical"] = cfg.include_classical;
    doc["frame"] = to_string(cfg.frame);
    if (!cfg.scan_values.empty()) {
        doc["scan"] = {{"parameter", to_string(cfg.scan)}, {"values", cfg.scan_values}};
    }
    doc["classical_axis"] = to_string(cfg.classical_axis);
    doc["out"] = cfg.out;
    doc["threads"] = cfg.threads;
    return doc.dump(2);
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const auto& pa = a.params;
    const auto& pb = b.params;
    const bool params_equal =
        pa.omega_c == pb.omega_c && pa.omega_e == pb.omega_e && pa.omega_d == pb.omega_d &&
        pa.gamma_c == pb.gamma_c && pa.gamma_c_rad == pb.gamma_c_rad &&
        pa.gamma_e == pb.gamma_e && pa.g_col == pb.g_col && pa.n_emitters == pb.n_emitters &&
        pa.omega_drive_amp == pb.omega_drive_amp;
    const bool grid_equal =
        a.grid_set == b.grid_set &&
        (!a.grid_set || (a.grid.start == b.grid.start && a.grid.stop == b.grid.stop &&
                         a.grid.count == b.grid.count && a.grid.spacing == b.grid.spacing));
    return a.mode == b.mode && params_equal && grid_equal && a.n_list == b.n_list &&
           a.truncation.automatic == b.truncation.automatic &&
           (a.truncation.automatic ||
            a.truncation.fixed_n_max == b.truncation.fixed_n_max) &&
           a.truncation.tail_tol == b.truncation.tail_tol &&
           a.truncation.hard_cap == b.truncation.hard_cap &&
           a.include_classical == b.include_classical && a.frame == b.frame &&
           a.scan == b.scan && a.scan_values == b.scan_values &&
           a.classical_axis == b.classical_axis && a.out == b.out && a.threads == b.threads;
}

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::spectrum: return "spectrum";
        case RunMode::drive: return "drive-sweep";
        case RunMode::diagonals: return "diagonals";
        case RunMode::critical_table: return "critical-table";
        case RunMode::classical_only: return "classical";
    }
    return "unknown";
}

const char* to_string(ClassicalAxis axis) {
    return axis == ClassicalAxis::omega_d ? "omega_d" : "drive";
}

}  // namespace tcsim
