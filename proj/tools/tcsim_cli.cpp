// tcsim_cli.cpp — Command-line front end: spectrum, drive-sweep, diagonals,
// critical-table, and classical subcommands over a JSON run configuration.
// Flags override config-file values.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tcsim/run.hpp"

namespace {

using nlohmann::json;

struct CliOverrides {
    std::string config_path;
    std::string out;
    int threads = -1;
    std::string n_list;   // "1,2,3"
    std::string nmax;     // "auto" or integer
    std::string grid;     // "start:stop:count:log|lin"
    std::string scan_parameter;
    std::string scan_values;  // "0.00015,0.0003"
    std::string frame;
    std::string axis;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

// Merges subcommand + flags into the (possibly empty) config document, then
// hands the result to the strict parser.
json merged_config(const std::string& mode, const CliOverrides& flags) {
    json doc = json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw tcsim::ConfigError("config: cannot read file " + flags.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const std::string text = buffer.str();
        if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
            doc = json::parse(text);  // parse errors surface with location info
            if (!doc.is_object()) throw tcsim::ConfigError("config: root must be an object");
        }
    }
    doc["mode"] = mode;
    if (!flags.out.empty()) doc["out"] = flags.out;
    if (flags.threads >= 0) doc["threads"] = flags.threads;
    if (!flags.n_list.empty()) {
        json arr = json::array();
        for (const auto& part : split(flags.n_list, ',')) arr.push_back(std::stoi(part));
        doc["n_list"] = arr;
    }
    if (!flags.nmax.empty()) {
        if (flags.nmax == "auto") {
            doc["truncation"] = "auto";
        } else {
            doc["truncation"] = std::stoi(flags.nmax);
        }
    }
    if (!flags.grid.empty()) {
        const auto parts = split(flags.grid, ':');
        if (parts.size() != 4 || (parts[3] != "log" && parts[3] != "lin")) {
            throw tcsim::ConfigError("config: --grid expects start:stop:count:log|lin");
        }
        doc["grid"] = {{"start", std::stod(parts[0])},
                       {"stop", std::stod(parts[1])},
                       {"count", std::stoi(parts[2])},
                       {"spacing", parts[3] == "log" ? "log" : "linear"}};
    }
    if (!flags.scan_parameter.empty() || !flags.scan_values.empty()) {
        if (flags.scan_parameter.empty() || flags.scan_values.empty()) {
            throw tcsim::ConfigError("config: --scan-parameter and --scan-values go together");
        }
        json values = json::array();
        for (const auto& part : split(flags.scan_values, ',')) values.push_back(std::stod(part));
        doc["scan"] = {{"parameter", flags.scan_parameter}, {"values", values}};
    }
    if (!flags.frame.empty()) doc["frame"] = flags.frame;
    if (!flags.axis.empty()) doc["classical_axis"] = flags.axis;
    return doc;
}

void add_common_flags(CLI::App* cmd, CliOverrides& flags) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration file");
    cmd->add_option("--out", flags.out, "Output base path (.csv and .json appended)");
    cmd->add_option("--threads", flags.threads, "Worker thread bound (0 = hardware)");
    cmd->add_option("--n", flags.n_list, "Emitter counts, comma separated (e.g. 1,2,3)");
    cmd->add_option("--nmax", flags.nmax, "Fock truncation: integer or 'auto'");
    cmd->add_option("--grid", flags.grid, "Sweep grid start:stop:count:log|lin");
    cmd->add_option("--frame", flags.frame, "Solve frame: automatic|direct|displaced");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state simulator for a coherently driven, lossy cavity "
                 "coupled to N two-level emitters"};
    app.require_subcommand(1);

    CliOverrides flags;
    std::string mode;

    auto* spectrum = app.add_subcommand("spectrum", "Cavity population vs drive frequency");
    auto* drive = app.add_subcommand("drive-sweep", "Steady-state response vs drive strength");
    auto* diagonals =
        app.add_subcommand("diagonals", "Drive sweep storing the rho_{n,G} populations");
    auto* critical = app.add_subcommand("critical-table",
                                        "Predicted vs detected nonlinear-onset drive strengths");
    auto* classical = app.add_subcommand("classical", "Analytic coupled-oscillator curves only");

    for (auto* cmd : {spectrum, drive, diagonals, critical, classical}) {
        add_common_flags(cmd, flags);
    }
    critical->add_option("--scan-parameter", flags.scan_parameter, "gamma_e or g_col");
    critical->add_option("--scan-values", flags.scan_values, "Scan values, comma separated");
    classical->add_option("--axis", flags.axis, "Sweep axis: omega_d or drive");

    spectrum->callback([&] { mode = "spectrum"; });
    drive->callback([&] { mode = "drive-sweep"; });
    diagonals->callback([&] { mode = "diagonals"; });
    critical->callback([&] { mode = "critical-table"; });
    classical->callback([&] { mode = "classical"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return tcsim::exit_config_error;
    }

    std::string text;
    try {
        text = merged_config(mode, flags).dump();
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return tcsim::exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: config: bad numeric flag value (" << e.what() << ")\n";
        return tcsim::exit_config_error;
    } catch (const tcsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tcsim::exit_config_error;
    }
    return tcsim::run_config_text(text);
}
