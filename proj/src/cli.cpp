#include "efimov/cli.hpp"

#include "efimov/bo3body.hpp"
#include "efimov/errors.hpp"
#include "efimov/observables.hpp"
#include "efimov/semiclassical.hpp"
#include "efimov/specfun.hpp"
#include "efimov/spectrum.hpp"
#include "efimov/twobody.hpp"
#include "efimov/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace efimov::cli {

namespace {

// Raised for inputs that parse but fail a precondition; maps to exit_usage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Empty cells mark values that do not exist for a row (a failed point, the
// last ratio); they print as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::vector<std::string>>> inputs;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
};

Cell number(double x) { return std::isfinite(x) ? Cell{x} : Cell{}; }
Cell number(std::optional<double> x) { return x ? number(*x) : Cell{}; }

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return csv_field(s); }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json cell_json(const Cell& c) {
    struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        // Round-trip through the printed form so JSON carries the same 12 digits as CSV.
        nlohmann::json operator()(double x) const { return std::stod(format_double(x)); }
        nlohmann::json operator()(long long x) const { return x; }
        nlohmann::json operator()(bool x) const { return x; }
        nlohmann::json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json input_json(const std::string& raw) {
    double x = 0.0;
    std::istringstream in(raw);
    if (in >> x && in.peek() == std::char_traits<char>::eof()) return x;
    return raw;
}

void write_csv(const Report& r, std::ostream& os) {
    os << "# efimov " << version << '\n';
    os << "# command: " << r.command << '\n';
    for (const auto& [name, values] : r.inputs) {
        os << "# " << name << " =";
        for (const auto& v : values) os << ' ' << v;
        os << '\n';
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
    for (const auto& [key, value] : r.summary) os << "# " << key << " = " << cell_text(value) << '\n';
}

void write_json(const Report& r, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["program"] = "efimov";
    doc["version"] = version;
    doc["command"] = r.command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [name, values] : r.inputs) {
        if (values.size() == 1) {
            inputs[name] = input_json(values[0]);
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& v : values) arr.push_back(input_json(v));
            inputs[name] = arr;
        }
    }
    doc["inputs"] = inputs;
    doc["columns"] = r.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = cell_json(row[i]);
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.summary) summary[key] = cell_json(value);
    doc["summary"] = summary;
    os << doc.dump(2) << '\n';
}

// Options given on the command line, plus defaults, in declaration order.
std::vector<std::pair<std::string, std::vector<std::string>>> collect_inputs(const CLI::App& sub) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "format" || name == "output") continue;
        if (opt->count() > 0) out.emplace_back(name, opt->results());
        else if (!opt->get_default_str().empty()) out.emplace_back(name, std::vector<std::string>{opt->get_default_str()});
    }
    return out;
}

double relative_deviation(double x, double reference) { return std::abs(x / reference - 1.0); }

// ---------------------------------------------------------------------------

struct TwoBodyArgs {
    double beta = 0.0;
    std::optional<double> kappa0, lambda;
    std::vector<double> wavefunction_grid;
};

Report cmd_two_body(const TwoBodyArgs& a) {
    if (a.kappa0.has_value() == a.lambda.has_value()) throw UsageError("exactly one of --kappa0 and --lambda is required");
    twobody::DimerState dimer{};
    std::optional<twobody::YamaguchiPotential> pot;
    if (a.kappa0) {
        pot = twobody::coupling_from_binding(*a.kappa0, a.beta);
        dimer = twobody::make_dimer(*a.kappa0, a.beta);
    } else {
        pot.emplace(*a.lambda, a.beta);
        dimer = twobody::binding_from_coupling(*pot);
    }

    Report r;
    const std::vector<std::pair<std::string, double>> scalars{
        {"beta", a.beta},
        {"lambda", pot->lambda},
        {"critical_coupling", twobody::critical_coupling(a.beta)},
        {"kappa0", dimer.kappa0},
        {"binding_energy", dimer.binding_energy},
        {"inverse_scattering_length", dimer.kappa0},
        {"norm_const", dimer.norm_const},
    };
    if (a.wavefunction_grid.empty()) {
        std::vector<Cell> row;
        for (const auto& [name, value] : scalars) {
            r.columns.push_back(name);
            row.push_back(number(value));
        }
        r.rows.push_back(std::move(row));
        return r;
    }

    const double r_min = a.wavefunction_grid[0], r_max = a.wavefunction_grid[1];
    const double n_raw = a.wavefunction_grid[2];
    if (!(r_min > 0.0) || !(r_max > r_min)) throw UsageError("--wavefunction-grid needs 0 < r_min < r_max");
    if (!(n_raw >= 2.0) || n_raw != std::floor(n_raw) || n_raw > 1e6)
        throw UsageError("--wavefunction-grid point count must be an integer in [2, 1e6]");
    const int n = static_cast<int>(n_raw);
    r.columns = {"r", "psi"};
    for (int i = 0; i < n; ++i) {
        const double radius = i == n - 1 ? r_max : r_min + (r_max - r_min) * i / (n - 1);
        r.rows.push_back({number(radius), number(twobody::bound_wavefunction(dimer, *pot, radius))});
    }
    for (const auto& [name, value] : scalars) r.summary.emplace_back(name, number(value));
    return r;
}

struct BoScanArgs {
    double kappa0 = 0.0, beta = 0.0, mass_ratio = 0.0, r_min = 0.0, r_max = 0.0;
    int points = 0;
};

Report cmd_bo_scan(const BoScanArgs& a) {
    if (!(a.beta > a.kappa0)) throw UsageError("--beta must exceed --kappa0");
    if (!(a.r_max >= a.r_min)) throw UsageError("--r-max must not be below --r-min");
    const auto masses = bo3body::MassConfig::from_ratio(a.mass_ratio);
    const auto pot = twobody::coupling_from_binding(a.kappa0, a.beta);
    const auto dimer = twobody::make_dimer(a.kappa0, a.beta);
    const auto grid = bo3body::log_grid(a.r_min, a.r_max, a.points);
    const auto curve = bo3body::build_curve(dimer, pot, masses, grid);
    const double A = specfun::lambert_root();
    const bool finite_a = std::isfinite(dimer.scattering_length);

    Report r;
    r.columns = {"R", "kappa", "epsilon", "epsilon_relative", "xi_R", "lambert_deviation", "region"};
    if (finite_a) {
        r.columns.push_back("yukawa_reference");
        r.columns.push_back("yukawa_deviation");
    }
    r.columns.push_back("status");
    std::size_t ok = 0;
    for (const auto& p : curve.points) {
        const bool good = p.status == bo3body::PointStatus::ok;
        ok += good;
        std::vector<Cell> row{number(p.R), number(p.kappa), number(p.epsilon), number(p.epsilon_relative),
                              number(p.xi * p.R), number(p.xi * p.R / A - 1.0),
                              std::string(bo3body::region_name(p.region))};
        if (finite_a) {
            const double ref = bo3body::yukawa_tail(p.R, dimer.scattering_length, masses);
            row.push_back(number(ref));
            row.push_back(good && ref != 0.0 ? number(p.epsilon_relative / ref - 1.0) : Cell{});
        }
        row.push_back(std::string(good ? "ok" : "no_root"));
        r.rows.push_back(std::move(row));
    }
    r.summary = {{"lambda", number(pot.lambda)},
                 {"scattering_length", number(dimer.scattering_length)},
                 {"lambert_constant", number(A)},
                 {"R0", number(curve.R0)},
                 {"points_ok", static_cast<long long>(ok)},
                 {"points_failed", static_cast<long long>(curve.points.size() - ok)}};
    if (ok == 0) throw NoRoot("no grid point has an attractive adiabatic root");
    return r;
}

struct SpectrumArgs {
    std::optional<double> s0, mass_ratio;
    double rc = 1.0;
    int n = 3;
    std::string method = "bessel";
};

Report cmd_spectrum(const SpectrumArgs& a) {
    if (a.s0.has_value() == a.mass_ratio.has_value()) throw UsageError("exactly one of --s0 and --mass-ratio is required");
    const double s0 = a.s0 ? *a.s0 : bo3body::efimov_s0(bo3body::MassConfig::from_ratio(*a.mass_ratio));
    const spectrum::InverseSquareProblem prob(s0, a.rc);

    Report r;
    r.summary.emplace_back("s0", number(s0));
    r.summary.emplace_back("scaling_factor", number(std::exp(std::numbers::pi / s0)));

    auto solve = [&](const std::string& m) {
        if (m == "bessel") return spectrum::spectrum_bessel(prob, a.n);
        if (m == "shooting") return spectrum::spectrum_shooting(prob, a.n);
        return spectrum::spectrum_asymptotic(prob, a.n);
    };
    auto at = [](const spectrum::SpectrumResult& s, int i) -> std::optional<double> {
        if (i < s.n_found) return s.kappas[static_cast<std::size_t>(i)];
        return std::nullopt;
    };

    if (a.method != "all") {
        const auto s = solve(a.method);
        r.columns = {"n", "kappa", "energy", "ratio_to_next"};
        for (int i = 0; i < s.n_found; ++i) {
            const auto next = at(s, i + 1);
            r.rows.push_back({static_cast<long long>(i + 1), number(s.kappas[i]), number(s.energies[i]),
                              next ? number(s.kappas[i] / *next) : Cell{}});
        }
        r.summary.emplace_back("states_found", static_cast<long long>(s.n_found));
        r.summary.emplace_back("truncated", s.truncated);
        return r;
    }

    const auto bessel = solve("bessel"), shooting = solve("shooting"), asymptotic = solve("asymptotic");
    r.columns = {"n", "kappa_bessel", "kappa_shooting", "kappa_asymptotic", "energy_bessel",
                 "ratio_to_next", "deviation_shooting", "deviation_asymptotic"};
    double max_shoot = 0.0, max_asym = 0.0;
    const int rows = std::max({bessel.n_found, shooting.n_found, asymptotic.n_found});
    for (int i = 0; i < rows; ++i) {
        const auto kb = at(bessel, i), ks = at(shooting, i), ka = at(asymptotic, i), kb_next = at(bessel, i + 1);
        Cell dev_s, dev_a;
        if (kb && ks) {
            const double d = relative_deviation(*ks, *kb);
            max_shoot = std::max(max_shoot, d);
            dev_s = number(d);
        }
        if (kb && ka) {
            const double d = relative_deviation(*ka, *kb);
            max_asym = std::max(max_asym, d);
            dev_a = number(d);
        }
        r.rows.push_back({static_cast<long long>(i + 1), number(kb), number(ks), number(ka),
                          kb ? number(-*kb * *kb) : Cell{}, kb && kb_next ? number(*kb / *kb_next) : Cell{}, dev_s,
                          dev_a});
    }
    r.summary.emplace_back("max_relative_deviation", number(max_shoot));
    r.summary.emplace_back("max_relative_deviation_asymptotic", number(max_asym));
    r.summary.emplace_back("truncated", bessel.truncated || shooting.truncated);
    return r;
}

struct CountArgs {
    double s0 = 0.0, a_over_r0 = 0.0;
    std::string method = "all";
};

Report cmd_count(const CountArgs& a) {
    if (!(a.a_over_r0 > 1.0) || !std::isfinite(a.a_over_r0)) throw UsageError("--a-over-r0 must exceed 1");
    std::vector<std::pair<std::string, double>> counts;
    const bool all = a.method == "all";
    if (all || a.method == "formula")
        counts.emplace_back("formula", spectrum::count_states_formula(a.s0, a.a_over_r0, 1.0));
    if (all || a.method == "direct")
        counts.emplace_back("direct", spectrum::count_states_direct(spectrum::InverseSquareProblem(a.s0, 1.0, a.a_over_r0)));
    if (all || a.method == "semiclassical")
        counts.emplace_back("semiclassical", semiclassical::count_states_semiclassical(a.s0, 0.0, 1.0, a.a_over_r0));

    Report r;
    r.columns = {"method", "count"};
    for (const auto& [name, value] : counts) r.rows.push_back({name, number(value)});
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = i + 1; j < counts.size(); ++j)
            r.summary.emplace_back("difference_" + counts[i].first + "_" + counts[j].first,
                                   number(counts[i].second - counts[j].second));
    return r;
}

struct ObservablesArgs {
    std::optional<double> a, c, density, mass;
    std::optional<std::string> c_table;
};

Report cmd_observables(const ObservablesArgs& args) {
    if (!args.c && !args.c_table) throw UsageError("a C(a) source is required: --c or --c-table");
    if (args.c && !args.a) throw UsageError("--c requires --a");
    if (args.density.has_value() != args.mass.has_value())
        throw UsageError("--density and --mass must be given together");

    std::vector<observables::CTableRow> rows;
    if (args.c_table) {
        std::ifstream in(*args.c_table);
        if (!in) throw UsageError("cannot open C(a) table " + *args.c_table);
        try {
            rows = observables::read_c_table(in, *args.c_table);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    } else {
        rows.push_back({*args.a, *args.c});
    }

    Report r;
    r.columns = {"a_bohr", "c_of_a", "rho3_bohr"};
    if (args.density) r.columns.push_back("recombination_rate");
    for (const auto& row : rows) {
        std::vector<Cell> out{number(row.a), number(row.c_of_a), number(observables::recombination_length(row.c_of_a, row.a))};
        if (args.density) {
            const observables::GasParams gas{*args.density, *args.mass * observables::atomic_mass_unit_si,
                                             row.a * observables::bohr_radius_si, row.c_of_a};
            out.push_back(number(observables::recombination_rate(gas)));
        }
        r.rows.push_back(std::move(out));
    }
    return r;
}

void add_output_options(CLI::App* sub, std::string& format, std::string& output) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--output", output, "Write to this file instead of standard output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Efimov-physics toolkit: two-body binding, Born-Oppenheimer curves, spectra, counts, observables",
                 "efimov"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    std::string format = "csv", output;

    TwoBodyArgs tb;
    auto* two_body = app.add_subcommand("two-body", "Yamaguchi dimer: coupling <-> binding, optional psi(r) samples");
    two_body->add_option("--beta", tb.beta, "Form-factor inverse range")->required()->check(CLI::PositiveNumber);
    auto* k0_opt = two_body->add_option("--kappa0", tb.kappa0, "Dimer wavenumber")->check(CLI::NonNegativeNumber);
    auto* lam_opt = two_body->add_option("--lambda", tb.lambda, "Coupling strength")->check(CLI::PositiveNumber);
    k0_opt->excludes(lam_opt);
    two_body->add_option("--wavefunction-grid", tb.wavefunction_grid, "r_min r_max points (linear)")->expected(3);
    add_output_options(two_body, format, output);

    BoScanArgs bo;
    auto* bo_scan = app.add_subcommand("bo-scan", "Born-Oppenheimer potential on a logarithmic R grid");
    bo_scan->add_option("--kappa0", bo.kappa0, "Dimer wavenumber")->required()->check(CLI::NonNegativeNumber);
    bo_scan->add_option("--beta", bo.beta, "Form-factor inverse range")->required()->check(CLI::PositiveNumber);
    bo_scan->add_option("--mass-ratio", bo.mass_ratio, "Heavy / light mass ratio")->required()->check(CLI::PositiveNumber);
    bo_scan->add_option("--r-min", bo.r_min, "Smallest R")->required()->check(CLI::PositiveNumber);
    bo_scan->add_option("--r-max", bo.r_max, "Largest R")->required()->check(CLI::PositiveNumber);
    bo_scan->add_option("--points", bo.points, "Number of grid points")->required()->check(CLI::Range(1, 1000000));
    add_output_options(bo_scan, format, output);

    SpectrumArgs sp;
    auto* spec = app.add_subcommand("spectrum", "Bound states of the inverse-square potential with a hard core");
    auto* s0_opt = spec->add_option("--s0", sp.s0, "Efimov strength s0")->check(CLI::PositiveNumber);
    auto* mr_opt = spec->add_option("--mass-ratio", sp.mass_ratio, "Heavy / light mass ratio")->check(CLI::PositiveNumber);
    s0_opt->excludes(mr_opt);
    spec->add_option("--rc", sp.rc, "Hard-core radius")->check(CLI::PositiveNumber)->capture_default_str();
    spec->add_option("--n", sp.n, "Number of states")->check(CLI::Range(1, 200))->capture_default_str();
    spec->add_option("--method", sp.method, "Solver")
        ->check(CLI::IsMember({"bessel", "shooting", "asymptotic", "all"}))
        ->capture_default_str();
    add_output_options(spec, format, output);

    CountArgs ct;
    auto* count = app.add_subcommand("count", "Number of shallow Efimov states for a / r0");
    count->add_option("--s0", ct.s0, "Efimov strength s0")->required()->check(CLI::NonNegativeNumber);
    count->add_option("--a-over-r0", ct.a_over_r0, "Scattering length over short-distance cutoff")->required();
    count->add_option("--method", ct.method, "Counting method")
        ->check(CLI::IsMember({"formula", "direct", "semiclassical", "all"}))
        ->capture_default_str();
    add_output_options(count, format, output);

    ObservablesArgs ob;
    auto* obs = app.add_subcommand("observables", "Recombination length (and rate) from C(a)");
    auto* a_opt = obs->add_option("--a", ob.a, "Scattering length in Bohr radii");
    auto* c_opt = obs->add_option("--c", ob.c, "C(a), dimensionless")->check(CLI::NonNegativeNumber);
    auto* table_opt = obs->add_option("--c-table", ob.c_table, "Two-column CSV of a [Bohr], C(a)");
    c_opt->excludes(table_opt);
    a_opt->excludes(table_opt);
    obs->add_option("--density", ob.density, "Number density [m^-3]")->check(CLI::PositiveNumber);
    obs->add_option("--mass", ob.mass, "Atom mass [u]")->check(CLI::PositiveNumber);
    add_output_options(obs, format, output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        Report report;
        CLI::App* used = nullptr;
        if (two_body->parsed()) {
            report = cmd_two_body(tb);
            used = two_body;
        } else if (bo_scan->parsed()) {
            report = cmd_bo_scan(bo);
            used = bo_scan;
        } else if (spec->parsed()) {
            report = cmd_spectrum(sp);
            used = spec;
        } else if (count->parsed()) {
            report = cmd_count(ct);
            used = count;
        } else {
            report = cmd_observables(ob);
            used = obs;
        }
        report.command = used->get_name();
        report.inputs = collect_inputs(*used);

        std::ostringstream body;
        if (format == "json") write_json(report, body);
        else write_csv(report, body);
        if (output.empty()) {
            out << body.str();
        } else {
            std::ofstream file(output, std::ios::binary);
            if (!file) throw UsageError("cannot write " + output);
            file << body.str();
        }
        return exit_ok;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SubcriticalMassRatio& e) {
        err << "error: " << e.what() << " (critical mass ratio " << format_double(e.critical_ratio()) << ")\n";
        return exit_domain;
    } catch (const NoBoundState& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain;
    } catch (const NoRoot& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace efimov::cli
