#include "nomacell/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace nomacell {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
    throw std::invalid_argument(path + ": " + why);
}

double require_finite(const json& v, const std::string& path) {
    if (!v.is_number()) bad_field(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad_field(path, "must be finite");
    return x;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known)
            if (key == k) { found = true; break; }
        if (!found) bad_field(path + "." + key, "unknown key");
    }
}

void parse_cell(const json& cell, ScenarioConfig& cfg) {
    reject_unknown_keys(cell, "cell",
                        {"radius_m", "min_distance_m", "pathloss_exponent",
                         "pathloss_constant", "noise_dbm", "users_per_cell",
                         "density_per_m2", "sinr_target_db", "se_target"});
    if (cell.contains("radius_m"))
        cfg.radius_m = require_finite(cell["radius_m"], "cell.radius_m");
    if (cell.contains("min_distance_m"))
        cfg.min_distance_m = require_finite(cell["min_distance_m"], "cell.min_distance_m");
    if (cell.contains("pathloss_exponent"))
        cfg.pathloss_exponent =
            require_finite(cell["pathloss_exponent"], "cell.pathloss_exponent");
    if (cell.contains("pathloss_constant"))
        cfg.pathloss_constant =
            require_finite(cell["pathloss_constant"], "cell.pathloss_constant");
    if (cell.contains("noise_dbm"))
        cfg.noise_dbm = require_finite(cell["noise_dbm"], "cell.noise_dbm");
    if (cell.contains("users_per_cell"))
        cfg.users_per_cell = require_finite(cell["users_per_cell"], "cell.users_per_cell");
    if (cell.contains("density_per_m2"))
        cfg.density_per_m2 = require_finite(cell["density_per_m2"], "cell.density_per_m2");
    if (cell.contains("sinr_target_db"))
        cfg.sinr_target_db = require_finite(cell["sinr_target_db"], "cell.sinr_target_db");
    if (cell.contains("se_target"))
        cfg.se_target = require_finite(cell["se_target"], "cell.se_target");
}

void parse_simulation(const json& sim, SimulationConfig& out) {
    reject_unknown_keys(sim, "simulation", {"n_users", "seed", "placement"});
    if (sim.contains("n_users")) {
        if (!sim["n_users"].is_number_unsigned() || sim["n_users"].get<std::uint64_t>() == 0)
            bad_field("simulation.n_users", "expected a positive integer");
        out.n_users = sim["n_users"].get<std::size_t>();
    }
    if (sim.contains("seed")) {
        if (!sim["seed"].is_number_unsigned())
            bad_field("simulation.seed", "expected an unsigned integer");
        out.seed = sim["seed"].get<std::uint64_t>();
    }
    if (sim.contains("placement")) {
        const std::string s = sim["placement"].is_string()
                                  ? sim["placement"].get<std::string>()
                                  : std::string();
        if (s == "uniform")
            out.placement = Placement::Uniform;
        else if (s == "rings")
            out.placement = Placement::Rings;
        else
            bad_field("simulation.placement", "expected \"uniform\" or \"rings\"");
    }
}

void parse_output(const json& output, OutputConfig& out) {
    reject_unknown_keys(output, "output", {"format", "path"});
    if (output.contains("format")) {
        const std::string s = output["format"].is_string()
                                  ? output["format"].get<std::string>()
                                  : std::string();
        if (s == "csv")
            out.format = OutputFormat::Csv;
        else if (s == "table")
            out.format = OutputFormat::Table;
        else
            bad_field("output.format", "expected \"csv\" or \"table\"");
    }
    if (output.contains("path")) {
        if (!output["path"].is_string())
            bad_field("output.path", "expected a string");
        out.path = output["path"].get<std::string>();
    }
}

}  // namespace

std::string to_string(Placement p) {
    return p == Placement::Uniform ? "uniform" : "rings";
}

std::string to_string(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "table";
}

void ScenarioConfig::validate() const {
    if (users_per_cell && density_per_m2)
        bad_field("cell", "give users_per_cell or density_per_m2, not both");
    if (sinr_target_db && se_target)
        bad_field("cell", "give sinr_target_db or se_target, not both");
    if (users_per_cell && *users_per_cell < 0.0)
        bad_field("cell.users_per_cell", "must be >= 0");
    if (density_per_m2 && *density_per_m2 < 0.0)
        bad_field("cell.density_per_m2", "must be >= 0");
    if (se_target && *se_target <= 0.0)
        bad_field("cell.se_target", "must be > 0");
    cell_params();  // remaining unit checks, field-named
}

CellParams ScenarioConfig::cell_params() const {
    CellParams p;
    p.cell_radius_m = radius_m;
    p.min_distance_m = min_distance_m;
    p.pathloss_exponent = pathloss_exponent;
    p.pathloss_constant = pathloss_constant;
    p.noise_w = dbm_to_watts(noise_dbm);
    p.user_density = density_per_m2 ? *density_per_m2 : 0.0;
    p.sinr_target = sinr_linear();
    p.check();  // geometry first: the density helper needs 0 <= R_0 < R_c
    if (!density_per_m2)
        p.user_density = density_from_users_per_cell(users_in_cell(), radius_m,
                                                     min_distance_m);
    return p;
}

double ScenarioConfig::users_in_cell() const {
    if (density_per_m2) {
        const double pi = 3.14159265358979323846;
        return *density_per_m2 * pi *
               (radius_m * radius_m - min_distance_m * min_distance_m);
    }
    return users_per_cell ? *users_per_cell : 8.0;
}

double ScenarioConfig::sinr_linear() const {
    if (sinr_target_db) return std::pow(10.0, *sinr_target_db / 10.0);
    return sinr_for_se(se_target ? *se_target : 5.0);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument(path + ": expected a JSON object");
    reject_unknown_keys(doc, path, {"cell", "simulation", "output"});

    ScenarioConfig cfg;
    if (doc.contains("cell")) parse_cell(doc["cell"], cfg);
    if (doc.contains("simulation")) parse_simulation(doc["simulation"], cfg.simulation);
    if (doc.contains("output")) parse_output(doc["output"], cfg.output);
    cfg.validate();
    return cfg;
}

ScenarioConfig default_scenario() { return ScenarioConfig{}; }

}  // namespace nomacell
