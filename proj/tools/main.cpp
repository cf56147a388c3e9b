// nomacell: downlink NOMA power dimensioning tool.
//
// Subcommands: power, sweep, coverage, qos, density, simulate, validate.
// A scenario comes from --config (JSON) with flag overrides on top; flags
// win over the file. All output is assembled in memory and written once,
// to --out if given, else stdout.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nomacell/cell_model.hpp"
#include "nomacell/discrete_oracle.hpp"
#include "nomacell/format.hpp"
#include "nomacell/planner.hpp"
#include "nomacell/scenario.hpp"
#include "nomacell/validation.hpp"

namespace {

using namespace nomacell;

struct CliArgs {
    std::string config_path;
    std::string out_path;
    std::string format;

    double radius_m = 0.0;
    double min_distance_m = 0.0;
    double pathloss_exponent = 0.0;
    double pathloss_constant = 0.0;
    double noise_dbm = 0.0;
    double users_per_cell = 0.0;
    double density_per_m2 = 0.0;
    double sinr_target_db = 0.0;
    double se_target = 0.0;

    std::uint64_t n_users = 0;
    std::uint64_t seed = 0;
    std::string placement;

    std::string mode = "sic";
    double budget_dbm = 0.0;
    double se_min = 1.0;
    double se_max = 15.0;
    std::uint64_t steps = 15;
};

/// dBm rendering that tolerates the 0 W and +inf W edge cases.
double dbm_or_limit(double p_w) {
    if (p_w == 0.0) return -std::numeric_limits<double>::infinity();
    if (std::isinf(p_w)) return std::numeric_limits<double>::infinity();
    return watts_to_dbm(p_w);
}

Mode parse_mode(const std::string& s) {
    if (s == "sic") return Mode::Sic;
    if (s == "nosic") return Mode::NoSic;
    throw std::invalid_argument("--mode: expected sic or nosic");
}

ScenarioConfig assemble_scenario(const CLI::App& app, const CliArgs& a) {
    ScenarioConfig cfg =
        a.config_path.empty() ? default_scenario() : load_scenario(a.config_path);

    if (app.count("--radius-m")) cfg.radius_m = a.radius_m;
    if (app.count("--min-distance-m")) cfg.min_distance_m = a.min_distance_m;
    if (app.count("--pathloss-exponent")) cfg.pathloss_exponent = a.pathloss_exponent;
    if (app.count("--pathloss-constant")) cfg.pathloss_constant = a.pathloss_constant;
    if (app.count("--noise-dbm")) cfg.noise_dbm = a.noise_dbm;

    if (app.count("--users-per-cell") && app.count("--density-per-m2"))
        throw std::invalid_argument(
            "give --users-per-cell or --density-per-m2, not both");
    if (app.count("--users-per-cell")) {
        cfg.users_per_cell = a.users_per_cell;
        cfg.density_per_m2.reset();
    }
    if (app.count("--density-per-m2")) {
        cfg.density_per_m2 = a.density_per_m2;
        cfg.users_per_cell.reset();
    }

    if (app.count("--sinr-target-db") && app.count("--se-target"))
        throw std::invalid_argument("give --sinr-target-db or --se-target, not both");
    if (app.count("--sinr-target-db")) {
        cfg.sinr_target_db = a.sinr_target_db;
        cfg.se_target.reset();
    }
    if (app.count("--se-target")) {
        cfg.se_target = a.se_target;
        cfg.sinr_target_db.reset();
    }

    if (app.count("--n-users")) cfg.simulation.n_users = a.n_users;
    if (app.count("--seed")) cfg.simulation.seed = a.seed;
    if (app.count("--placement")) {
        if (a.placement == "uniform")
            cfg.simulation.placement = Placement::Uniform;
        else if (a.placement == "rings")
            cfg.simulation.placement = Placement::Rings;
        else
            throw std::invalid_argument("--placement: expected uniform or rings");
    }

    if (app.count("--out")) cfg.output.path = a.out_path;
    if (app.count("--format"))
        cfg.output.format = a.format == "csv" ? OutputFormat::Csv : OutputFormat::Table;

    cfg.validate();
    return cfg;
}

int emit(const OutputConfig& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out.path << "\n";
        return 2;
    }
    f << text;
    return 0;
}

/// Rows of (label, watts, dBm) rendered as CSV or an aligned table.
class ReportWriter {
public:
    explicit ReportWriter(OutputFormat format) : format_(format) {}

    void header(std::initializer_list<const char*> cols) {
        if (format_ == OutputFormat::Csv) {
            bool first = true;
            for (const char* c : cols) {
                if (!first) os_ << ',';
                os_ << c;
                first = false;
            }
            os_ << '\n';
        } else {
            for (const char* c : cols) os_ << std::left << std::setw(22) << c;
            os_ << '\n';
        }
    }

    void row(const std::string& label, std::initializer_list<double> values,
             const std::string& note = "") {
        if (format_ == OutputFormat::Csv) {
            os_ << label;
            for (double v : values) os_ << ',' << csv_double(v);
            os_ << '\n';
        } else {
            os_ << std::left << std::setw(22) << label;
            for (double v : values) os_ << std::left << std::setw(22) << table_double(v);
            if (!note.empty()) os_ << note;
            os_ << '\n';
        }
    }

    void note(const std::string& text) {
        if (format_ == OutputFormat::Csv)
            os_ << "# " << text << '\n';
        else
            os_ << text << '\n';
    }

    std::string str() const { return os_.str(); }

private:
    OutputFormat format_;
    std::ostringstream os_;
};

int cmd_power(const ScenarioConfig& cfg) {
    const CellParams p = cfg.cell_params();

    ReportWriter w(cfg.output.format);
    w.header({"quantity", "power_w", "power_dbm"});

    const double sic = bs_power_sic(p);
    w.row("sic_quadrature", {sic, dbm_or_limit(sic)});
    if (p.min_distance_m == 0.0) {
        const double sic_gamma = bs_power_sic_gamma_form(p);
        w.row("sic_gamma_form", {sic_gamma, dbm_or_limit(sic_gamma)});
    }
    const double asym = bs_power_sic_asymptotic(p);
    w.row("sic_asymptote", {asym, dbm_or_limit(asym)});

    try {
        const double nosic = bs_power_no_sic(p);
        w.row("no_sic", {nosic, dbm_or_limit(nosic)});
    } catch (const infeasible_error& e) {
        const double inf = std::numeric_limits<double>::infinity();
        w.row("no_sic", {inf, inf}, "  infeasible");
        w.note(std::string("no_sic infeasible: ") + e.what());
    }
    return emit(cfg.output, w.str());
}

int cmd_sweep(const ScenarioConfig& cfg, double se_min, double se_max,
              std::uint64_t steps) {
    if (!(se_min < se_max)) throw std::invalid_argument("--se-min must be < --se-max");
    if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
    if (!(se_min > 0.0)) throw std::invalid_argument("--se-min must be > 0");

    CellParams p = cfg.cell_params();
    std::vector<double> grid(steps);
    for (std::uint64_t i = 0; i < steps; ++i)
        grid[i] = se_min + (se_max - se_min) * static_cast<double>(i) /
                               static_cast<double>(steps - 1);

    const PowerCurve sic = sweep_power_vs_se(p, grid, Mode::Sic);
    const PowerCurve nosic = sweep_power_vs_se(p, grid, Mode::NoSic);
    const double asym_dbm = dbm_or_limit(bs_power_sic_asymptotic(p));

    std::ostringstream os;
    const bool csv = cfg.output.format == OutputFormat::Csv;
    auto num = [&](double v) { return csv ? csv_double(v) : table_double(v); };

    os << "se_bits_s_hz,gamma_linear,p_sic_w,p_sic_dbm,p_asymptote_dbm,"
          "p_nosic_dbm_or_inf\n";
    for (std::uint64_t i = 0; i < steps; ++i) {
        const PowerCurvePoint& s = sic.points[i];
        const PowerCurvePoint& n = nosic.points[i];
        os << num(s.se) << ',' << num(sinr_for_se(s.se)) << ',' << num(s.power_w)
           << ',' << num(s.power_dbm) << ',' << num(asym_dbm) << ','
           << num(n.power_dbm) << '\n';
    }
    return emit(cfg.output, os.str());
}

int cmd_coverage(const ScenarioConfig& cfg, const std::string& mode_str,
                 double budget_dbm) {
    const CellParams p = cfg.cell_params();
    const Mode mode = parse_mode(mode_str);
    const double budget_w = dbm_to_watts(budget_dbm);
    const DensityConvention conv = cfg.density_per_m2
                                       ? DensityConvention::FixedDensity
                                       : DensityConvention::UsersPerCell;

    const PlanAnswer ans =
        max_coverage_radius(p, budget_w, mode, conv, cfg.users_in_cell());

    ReportWriter w(cfg.output.format);
    w.header({"quantity", "value", "residual_w"});
    w.row("coverage_radius_m", {ans.value, ans.residual});
    return emit(cfg.output, w.str());
}

int cmd_qos(const ScenarioConfig& cfg, const std::string& mode_str, double budget_dbm) {
    const CellParams p = cfg.cell_params();
    const PlanAnswer ans =
        max_spectral_efficiency(p, dbm_to_watts(budget_dbm), parse_mode(mode_str));

    std::ostringstream os;
    const bool csv = cfg.output.format == OutputFormat::Csv;
    os << (csv ? "quantity,value,residual_w\n"
               : "quantity              value                 residual_w\n");
    if (ans.unbounded) {
        os << (csv ? "max_se_bits_s_hz,UNBOUNDED,0"
                   : "max_se_bits_s_hz      UNBOUNDED             0")
           << '\n';
    } else {
        ReportWriter w(cfg.output.format);
        w.row("max_se_bits_s_hz", {ans.value, ans.residual});
        os << w.str();
    }
    return emit(cfg.output, os.str());
}

int cmd_density(const ScenarioConfig& cfg, const std::string& mode_str,
                double budget_dbm) {
    const CellParams p = cfg.cell_params();
    const PlanAnswer ans =
        max_density(p, dbm_to_watts(budget_dbm), parse_mode(mode_str));
    const double pi = 3.14159265358979323846;
    const double per_cell =
        ans.value * pi *
        (p.cell_radius_m * p.cell_radius_m - p.min_distance_m * p.min_distance_m);

    ReportWriter w(cfg.output.format);
    w.header({"quantity", "value", "residual_w"});
    w.row("max_density_per_m2", {ans.value, ans.residual});
    w.row("max_users_per_cell", {per_cell, ans.residual});
    return emit(cfg.output, w.str());
}

int cmd_simulate(const ScenarioConfig& cfg, const std::string& mode_str) {
    const CellParams base = cfg.cell_params();
    const Mode mode = parse_mode(mode_str);
    const SimulationConfig& sim = cfg.simulation;

    const UserSet users =
        sim.placement == Placement::Rings
            ? place_users_rings(sim.n_users, base.min_distance_m, base.cell_radius_m)
            : place_users_uniform(sim.n_users, base.min_distance_m,
                                  base.cell_radius_m, sim.seed);

    const AllocationResult alloc =
        mode == Mode::Sic
            ? solve_sic_allocation(users, base.sinr_target, base.pathloss_constant,
                                   base.noise_w, base.pathloss_exponent)
            : solve_no_sic_allocation(users, base.sinr_target, base.pathloss_constant,
                                      base.noise_w, base.pathloss_exponent);

    // Continuum counterpart at the density this placement discretizes.
    CellParams cont = base;
    cont.user_density = density_from_users_per_cell(
        static_cast<double>(sim.n_users), base.cell_radius_m, base.min_distance_m);

    std::ostringstream os;
    const bool csv = cfg.output.format == OutputFormat::Csv;
    auto num = [&](double v) { return csv ? csv_double(v) : table_double(v); };

    os << "index,distance_m,power_w,sinr_achieved\n";
    if (alloc.feasible) {
        const std::vector<double> sinr =
            verify_sinr(users, alloc, base.pathloss_constant, base.noise_w,
                        base.pathloss_exponent);
        for (std::size_t i = 0; i < users.size(); ++i)
            os << i << ',' << num(users.distances[i]) << ',' << num(alloc.powers[i])
               << ',' << num(sinr[i]) << '\n';
    }

    os << "# mode=" << to_string(alloc.mode) << " n_users=" << sim.n_users
       << " seed=" << sim.seed << " placement=" << to_string(sim.placement) << '\n';
    if (!alloc.feasible) {
        os << "# infeasible: no finite power reaches sinr_target="
           << num(base.sinr_target) << " for " << sim.n_users
           << " users without SIC (needs n < " << num(derive_coefficients(base).zeta)
           << ")\n";
        return emit(cfg.output, os.str());
    }

    double continuum = 0.0;
    bool continuum_feasible = true;
    try {
        continuum = total_power(cont, mode);
    } catch (const infeasible_error&) {
        continuum_feasible = false;
    }
    os << "# discrete_total_w=" << num(alloc.total_power);
    if (continuum_feasible) {
        const double gap =
            std::abs(alloc.total_power - continuum) / std::abs(continuum);
        os << " continuum_total_w=" << num(continuum)
           << " relative_gap=" << num(gap) << '\n';
    } else {
        os << " continuum_total_w=inf (infeasible at the matched density)\n";
    }
    return emit(cfg.output, os.str());
}

int cmd_validate(const ScenarioConfig& cfg) {
    const ValidationReport report = run_validation(cfg.cell_params());

    std::ostringstream os;
    if (cfg.output.format == OutputFormat::Csv) {
        os << "check,pass,measured,threshold,note\n";
        for (const CheckResult& c : report.checks)
            os << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ','
               << csv_double(c.measured) << ',' << csv_double(c.threshold) << ",\""
               << c.note << "\"\n";
        for (const std::string& n : report.notes) os << "# " << n << '\n';
    } else {
        for (const CheckResult& c : report.checks) {
            os << (c.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(34)
               << c.name << " measured " << std::setw(14) << table_double(c.measured)
               << " threshold " << table_double(c.threshold) << '\n';
            if (!c.note.empty()) os << "       " << c.note << '\n';
        }
        for (const std::string& n : report.notes) os << n << '\n';
        os << (report.all_pass() ? "all checks passed\n" : "some checks FAILED\n");
    }
    const int rc = emit(cfg.output, os.str());
    if (rc != 0) return rc;
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink NOMA base-station power dimensioning"};
    app.require_subcommand(1);
    app.fallthrough();

    CliArgs a;
    app.add_option("--config", a.config_path, "Scenario JSON file");
    app.add_option("--out", a.out_path, "Write output here instead of stdout");
    app.add_option("--format", a.format, "Output format")
        ->check(CLI::IsMember({"csv", "table"}));

    app.add_option("--radius-m", a.radius_m, "Cell radius R_c [m]");
    app.add_option("--min-distance-m", a.min_distance_m, "Minimum BS-user distance R_0 [m]");
    app.add_option("--pathloss-exponent", a.pathloss_exponent, "Pathloss exponent eta (> 2)");
    app.add_option("--pathloss-constant", a.pathloss_constant, "Pathloss gain K at 1 m");
    app.add_option("--noise-dbm", a.noise_dbm, "Thermal noise power [dBm]");
    app.add_option("--users-per-cell", a.users_per_cell, "Average users per cell");
    app.add_option("--density-per-m2", a.density_per_m2, "User density [users/m^2]");
    app.add_option("--sinr-target-db", a.sinr_target_db, "SINR target [dB]");
    app.add_option("--se-target", a.se_target, "Spectral-efficiency target [bits/s/Hz]");
    app.add_option("--n-users", a.n_users, "Simulated user count");
    app.add_option("--seed", a.seed, "Placement RNG seed");
    app.add_option("--placement", a.placement, "User placement")
        ->check(CLI::IsMember({"uniform", "rings"}));

    CLI::App* power = app.add_subcommand("power", "Total BS power for one scenario");
    CLI::App* sweep = app.add_subcommand("sweep", "Power vs spectral efficiency (CSV)");
    sweep->add_option("--se-min", a.se_min, "Grid start [bits/s/Hz]");
    sweep->add_option("--se-max", a.se_max, "Grid end [bits/s/Hz]");
    sweep->add_option("--steps", a.steps, "Grid points (>= 2)");

    CLI::App* coverage =
        app.add_subcommand("coverage", "Max cell radius under a power budget");
    CLI::App* qos =
        app.add_subcommand("qos", "Max spectral efficiency under a power budget");
    CLI::App* density =
        app.add_subcommand("density", "Max user density under a power budget");
    for (CLI::App* sub : {coverage, qos, density}) {
        sub->add_option("--budget-dbm", a.budget_dbm, "BS power budget [dBm]")
            ->required();
    }
    CLI::App* simulate =
        app.add_subcommand("simulate", "Discrete per-user allocation (CSV)");
    CLI::App* validate =
        app.add_subcommand("validate", "Model self-checks and anchor calibration");
    for (CLI::App* sub : {power, coverage, qos, density, simulate})
        sub->add_option("--mode", a.mode, "sic or nosic")
            ->check(CLI::IsMember({"sic", "nosic"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const ScenarioConfig cfg = assemble_scenario(app, a);
        if (power->parsed()) return cmd_power(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, a.se_min, a.se_max, a.steps);
        if (coverage->parsed()) return cmd_coverage(cfg, a.mode, a.budget_dbm);
        if (qos->parsed()) return cmd_qos(cfg, a.mode, a.budget_dbm);
        if (density->parsed()) return cmd_density(cfg, a.mode, a.budget_dbm);
        if (simulate->parsed()) return cmd_simulate(cfg, a.mode);
        if (validate->parsed()) return cmd_validate(cfg);
    } catch (const no_coverage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const infeasible_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
