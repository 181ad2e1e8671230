#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acmdm/error.hpp"
#include "acmdm/formfactor.hpp"
#include "acmdm/io.hpp"
#include "acmdm/phase.hpp"
#include "acmdm/quadrature.hpp"

namespace acmdm::cli {

namespace {

constexpr const char* kUnitsNote =
    "Units: natural units (hbar = c = 1). All physical inputs are dimensionless ratios:\n"
    "  mdm/ir-scan: q_hat2 = q^2/m^2, mcs_hat2 = M_cs^2/m^2 (m = fermion mass).\n"
    "  yukawa:      q_hat2 = q^2/m_phi^2, m1_hat = m1/m_phi, m2_hat = m2/m_phi.\n"
    "In 2+1 dimensions couplings have dimensions of (mass)^{1/2}; e1, e2 are given in\n"
    "those units. Reported integrals are dimensionless; g = prefactor * integral.\n"
    "Exit codes: 0 ok, 1 check failed, 2 usage, 3 domain/threshold, 4 IR-divergent,\n"
    "5 non-convergence, 6 parse.";

enum class OutFormat { csv, json };

std::string num(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    // Shortest text that parses back to the same double.
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

std::string jnum(double x) { return std::isfinite(x) ? num(x) : "null"; }
std::string jstr(const std::string& s) { return nlohmann::json(s).dump(); }

const char* species_name(Species s) { return s == Species::spinor ? "spinor" : "scalar"; }

struct Sweep {
    std::vector<double> q2;
    std::vector<double> range;  // start stop count

    void add_options(CLI::App* app) {
        app->add_option("--q2", q2, "q_hat2 values (repeat or comma-separate)")->delimiter(',');
        app->add_option("--q2-range", range, "linear sweep: START STOP COUNT")->expected(3)->excludes("--q2");
    }

    [[nodiscard]] std::vector<double> values() const {
        if (range.empty()) {
            if (q2.empty()) throw Error(ErrorCode::InvalidArgument, "empty sweep: give --q2 or --q2-range");
            return q2;
        }
        const double count = range[2];
        if (!(count >= 1.0) || count != std::floor(count))
            throw Error(ErrorCode::InvalidArgument, "--q2-range COUNT must be a positive integer");
        const auto n = static_cast<std::size_t>(count);
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k)
            v[k] = n == 1 ? range[0] : range[0] + (range[1] - range[0]) * double(k) / double(n - 1);
        return v;
    }
};

void add_common(CLI::App* app, double& tol, std::string& out_format) {
    app->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
    app->add_option("--out", out_format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_budget(CLI::App* app, TriangleQuadratureOptions& quad) {
    app->add_option("--max-evals", quad.max_evaluations, "integrand evaluation budget per integral");
}

OutFormat format_of(const std::string& s, OutFormat fallback) {
    if (s.empty()) return fallback;
    return s == "json" ? OutFormat::json : OutFormat::csv;
}

Species parse_species(const std::string& s) { return s == "scalar" ? Species::scalar : Species::spinor; }

// ---- mdm ------------------------------------------------------------------

struct MdmCommand {
    Sweep sweep;
    double mcs2 = 0.0;
    double tol = 1e-8;
    std::string out;
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 1;
    TriangleQuadratureOptions quad;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("mdm", "Supersymmetric anomalous magnetic moment integral sweep");
        sweep.add_options(app);
        app->add_option("--mcs2", mcs2, "Chern-Simons mass ratio M_cs^2/m^2 (>= 0)");
        app->add_option("--mc-samples", mc_samples, "add a Monte Carlo cross-check with this many samples");
        app->add_option("--seed", seed, "Monte Carlo seed");
        add_budget(app, quad);
        add_common(app, tol, out);
        app->footer(kUnitsNote);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        struct Row {
            double q2;
            FormFactorResult r;
            std::optional<QuadratureResult> mc;
        };
        std::vector<Row> rows;
        for (double q2 : sweep.values()) {
            const SusyParams p{q2, mcs2};
            Row row{q2, susy_form_factor(p, tol, quad), std::nullopt};
            if (mc_samples > 0)
                row.mc = mc_integrate_triangle([&p](double x, double y) { return susy_integrand(x, y, p); },
                                               mc_samples, seed);
            rows.push_back(std::move(row));
        }

        if (format_of(out, OutFormat::csv) == OutFormat::csv) {
            os << "q_hat2,mcs_hat2,integral,error_estimate,evaluations";
            if (mc_samples > 0) os << ",mc_integral,mc_error";
            os << '\n';
            for (const auto& row : rows) {
                os << num(row.q2) << ',' << num(mcs2) << ',' << num(row.r.integral) << ','
                   << num(row.r.error_estimate) << ',' << row.r.evaluations;
                if (row.mc) os << ',' << num(row.mc->value) << ',' << num(row.mc->error_estimate);
                os << '\n';
            }
        } else {
            os << "{\"prefactor\":" << jstr(kSusyPrefactor) << ",\"rows\":[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& row = rows[i];
                os << (i ? "," : "") << "{\"q_hat2\":" << jnum(row.q2) << ",\"mcs_hat2\":" << jnum(mcs2)
                   << ",\"integral\":" << jnum(row.r.integral) << ",\"error_estimate\":" << jnum(row.r.error_estimate)
                   << ",\"evaluations\":" << row.r.evaluations;
                if (row.mc) os << ",\"mc_integral\":" << jnum(row.mc->value) << ",\"mc_error\":" << jnum(row.mc->error_estimate);
                os << '}';
            }
            os << "]}\n";
        }
        return kOk;
    }

    CLI::App* selected = nullptr;
};

// ---- yukawa -----------------------------------------------------------------

struct YukawaCommand {
    Sweep sweep;
    double m1 = 1.0, m2 = 0.0, e1 = 1.0, e2 = 0.0, a2 = 1.0;
    double tol = 1e-8;
    std::string out;
    TriangleQuadratureOptions quad;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("yukawa", "Yukawa-model magnetic moment integral sweep");
        sweep.add_options(app);
        app->add_option("--m1", m1, "m1/m_phi (> 0)");
        app->add_option("--m2", m2, "m2/m_phi (>= 0)");
        app->add_option("--e1", e1, "charge of psi1");
        app->add_option("--e2", e2, "charge of psi2");
        app->add_option("--a2", a2, "|a|^2, enters the prefactor only");
        add_budget(app, quad);
        add_common(app, tol, out);
        app->footer(kUnitsNote);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        std::vector<std::pair<double, FormFactorResult>> rows;
        for (double q2 : sweep.values()) {
            const YukawaParams p{q2, m1, m2, e1, e2, a2};
            rows.emplace_back(q2, yukawa_form_factor(p, tol, quad));
        }
        if (format_of(out, OutFormat::csv) == OutFormat::csv) {
            os << "q_hat2,m1_hat,m2_hat,e1,e2,integral,error_estimate\n";
            for (const auto& [q2, r] : rows)
                os << num(q2) << ',' << num(m1) << ',' << num(m2) << ',' << num(e1) << ',' << num(e2) << ','
                   << num(r.integral) << ',' << num(r.error_estimate) << '\n';
        } else {
            os << "{\"prefactor\":" << jstr(kYukawaPrefactor) << ",\"a_abs2\":" << jnum(a2) << ",\"rows\":[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& [q2, r] = rows[i];
                os << (i ? "," : "") << "{\"q_hat2\":" << jnum(q2) << ",\"m1_hat\":" << jnum(m1)
                   << ",\"m2_hat\":" << jnum(m2) << ",\"e1\":" << jnum(e1) << ",\"e2\":" << jnum(e2)
                   << ",\"integral\":" << jnum(r.integral) << ",\"error_estimate\":" << jnum(r.error_estimate) << '}';
            }
            os << "]}\n";
        }
        return kOk;
    }

    CLI::App* selected = nullptr;
};

// ---- phase / fringe -----------------------------------------------------------

void add_phase_options(CLI::App* app, std::string& charges, double& g, std::string& species) {
    app->add_option("--charges", charges, "line-charge JSON file")->required();
    app->add_option("--g", g, "magnetic-moment coupling g")->required();
    app->add_option("--species", species, "particle species")->check(CLI::IsMember({"spinor", "scalar"}));
}

struct PhaseCommand {
    std::string charges, path, species = "spinor", out;
    double g = 0.0, tol = 1e-8;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("phase", "Aharonov-Casher phase of a closed path");
        add_phase_options(app, charges, g, species);
        app->add_option("--path", path, "closed path JSON file")->required();
        add_common(app, tol, out);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        const auto config = load_charges(charges);
        const auto loop = load_path(path);
        const auto r = ac_phase(loop, config, g, parse_species(species), tol);

        if (format_of(out, OutFormat::json) == OutFormat::json) {
            os << "{\"phase\":" << jnum(r.phase) << ",\"windings\":[";
            for (std::size_t i = 0; i < r.windings.size(); ++i) os << (i ? "," : "") << r.windings[i];
            os << "],\"error_estimate\":" << jnum(r.error_estimate) << ",\"species\":" << jstr(species_name(r.species))
               << ",\"g\":" << jnum(g) << ",\"convention_s\":" << r.convention_s << "}\n";
        } else {
            os << "phase,error_estimate,species,g,convention_s,windings\n"
               << num(r.phase) << ',' << num(r.error_estimate) << ',' << species_name(r.species) << ',' << num(g) << ','
               << r.convention_s << ',';
            for (std::size_t i = 0; i < r.windings.size(); ++i) os << (i ? ";" : "") << r.windings[i];
            os << '\n';
        }
        return kOk;
    }

    CLI::App* selected = nullptr;
};

struct FringeCommand {
    std::string charges, path_a, path_b, species = "spinor", out;
    double g = 0.0, tol = 1e-8;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("fringe", "Two-arm interferometer phase difference and contrast");
        add_phase_options(app, charges, g, species);
        app->add_option("--path", path_a, "open path JSON file for arm a")->required();
        app->add_option("--path-b", path_b, "open path JSON file for arm b")->required();
        add_common(app, tol, out);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        const auto config = load_charges(charges);
        const auto a = load_path(path_a);
        const auto b = load_path(path_b);
        const Species sp = parse_species(species);
        const auto r = fringe_shift(a, b, config, g, sp, tol);

        if (format_of(out, OutFormat::json) == OutFormat::json) {
            os << "{\"delta_phase\":" << jnum(r.delta_phase) << ",\"contrast\":" << jnum(r.contrast)
               << ",\"error_estimate\":" << jnum(r.error_estimate) << ",\"species\":" << jstr(species_name(sp))
               << ",\"g\":" << jnum(g) << ",\"convention_s\":" << kConventionS << "}\n";
        } else {
            os << "delta_phase,contrast,error_estimate,species,g,convention_s\n"
               << num(r.delta_phase) << ',' << num(r.contrast) << ',' << num(r.error_estimate) << ','
               << species_name(sp) << ',' << num(g) << ',' << kConventionS << '\n';
        }
        return kOk;
    }

    CLI::App* selected = nullptr;
};

// ---- ir-scan ------------------------------------------------------------------

struct IrScanCommand {
    std::vector<double> q2 = {-1e-2, -1e-3, -1e-4, -1e-5, -1e-6};
    double mcs2 = 0.0, tol = 1e-8;
    std::string out;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("ir-scan", "Sweep q^2 -> 0 and fit the integral against ln(1/|q^2|)");
        app->add_option("--q2", q2, "negative, increasing q_hat2 values (default -1e-2 ... -1e-6)")->delimiter(',');
        app->add_option("--mcs2", mcs2, "Chern-Simons mass ratio M_cs^2/m^2 (>= 0)");
        add_common(app, tol, out);
        app->footer(kUnitsNote);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        const auto scan = ir_scan(q2, mcs2, tol);
        const bool has_r2 = scan.fit && scan.fit->r_squared;
        if (format_of(out, OutFormat::csv) == OutFormat::csv) {
            os << "q_hat2,integral,error_estimate,evaluations\n";
            for (const auto& row : scan.rows)
                os << num(row.q_hat2) << ',' << num(row.result.integral) << ',' << num(row.result.error_estimate) << ','
                   << row.result.evaluations << '\n';
            os << "# fit: integral = slope * ln(1/|q_hat2|) + intercept\n";
            if (scan.fit) {
                os << "# slope=" << num(scan.fit->slope) << '\n' << "# intercept=" << num(scan.fit->intercept) << '\n';
            } else {
                os << "# slope=undefined\n# intercept=undefined\n";
            }
            os << "# r_squared=" << (has_r2 ? num(*scan.fit->r_squared) : std::string("undefined")) << '\n';
            os << "# limit=" << num(scan.rows.back().result.integral) << '\n';
        } else {
            os << "{\"mcs_hat2\":" << jnum(mcs2) << ",\"rows\":[";
            for (std::size_t i = 0; i < scan.rows.size(); ++i) {
                const auto& row = scan.rows[i];
                os << (i ? "," : "") << "{\"q_hat2\":" << jnum(row.q_hat2) << ",\"integral\":" << jnum(row.result.integral)
                   << ",\"error_estimate\":" << jnum(row.result.error_estimate)
                   << ",\"evaluations\":" << row.result.evaluations << '}';
            }
            os << "],\"fit\":";
            if (scan.fit)
                os << "{\"slope\":" << jnum(scan.fit->slope) << ",\"intercept\":" << jnum(scan.fit->intercept)
                   << ",\"r_squared\":" << (has_r2 ? jnum(*scan.fit->r_squared) : std::string("null")) << '}';
            else
                os << "null";
            os << ",\"limit\":" << jnum(scan.rows.back().result.integral) << "}\n";
        }
        return kOk;
    }

    CLI::App* selected = nullptr;
};

// ---- check-reduction -------------------------------------------------------------

constexpr double kPointwiseThreshold = 1e-12;

struct CheckReductionCommand {
    std::vector<double> q2 = {-0.5, -1.0, -2.0};
    double tol = 1e-8, m1 = 1.0;
    std::uint64_t samples = 10'000, seed = 1;
    std::string out;

    void attach(CLI::App& parent) {
        auto* app = parent.add_subcommand("check-reduction",
                                          "Check that the Yukawa integral reduces to the susy one (m1 = m_phi, m2 = e2 = 0)");
        app->add_option("--q2", q2, "negative q_hat2 grid (default -0.5,-1,-2)")->delimiter(',');
        app->add_option("--m1", m1, "m1/m_phi used on the Yukawa side (1 is the exact limit)");
        app->add_option("--samples", samples, "random points for the pointwise integrand check");
        app->add_option("--seed", seed, "seed for the pointwise check");
        add_common(app, tol, out);
        app->callback([this, app] { selected = app; });
    }

    int execute(std::ostream& os) const {
        if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
        const double pointwise = reduction_pointwise_deviation(q2, samples, seed, m1);
        const bool pointwise_pass = pointwise <= kPointwiseThreshold;
        // A pointwise mismatch already decides the check; the integrals are skipped.
        const double integral =
            pointwise_pass ? reduction_check(q2, tol, m1) : std::numeric_limits<double>::quiet_NaN();
        const double threshold = 2.0 * tol;
        const bool pass = pointwise_pass && integral <= threshold;
        const char* integral_status = !pointwise_pass ? "skipped" : (pass ? "pass" : "fail");
        if (format_of(out, OutFormat::csv) == OutFormat::csv) {
            os << "check,value,threshold,status\n"
               << "pointwise_max_deviation," << num(pointwise) << ',' << num(kPointwiseThreshold) << ','
               << (pointwise_pass ? "pass" : "fail") << '\n'
               << "integral_max_deviation," << num(integral) << ',' << num(threshold) << ',' << integral_status
               << '\n';
        } else {
            os << "{\"pointwise_max_deviation\":" << jnum(pointwise) << ",\"integral_max_deviation\":" << jnum(integral)
               << ",\"threshold\":" << jnum(threshold) << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
        }
        return pass ? kOk : kCheckFailed;
    }

    CLI::App* selected = nullptr;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return kUsage;
        case ErrorCode::DomainError:
        case ErrorCode::SingularPoint:
        case ErrorCode::SingularPath:
        case ErrorCode::PointOnPath:
        case ErrorCode::EndpointMismatch:
        case ErrorCode::NonFiniteIntegrand: return kDomain;
        case ErrorCode::InfraredDivergent: return kInfrared;
        case ErrorCode::NonConvergence: return kNonConvergence;
        case ErrorCode::Parse: return kParse;
    }
    return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"acmdm: 2+1-dimensional anomalous magnetic moment integrals and Aharonov-Casher phases", "acmdm"};
    app.require_subcommand(1);
    app.footer(kUnitsNote);

    MdmCommand mdm;
    YukawaCommand yukawa;
    PhaseCommand phase;
    FringeCommand fringe;
    IrScanCommand ir;
    CheckReductionCommand reduction;
    mdm.attach(app);
    yukawa.attach(app);
    phase.attach(app);
    fringe.attach(app);
    ir.attach(app);
    reduction.attach(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Subcommand help arrives here as CallForHelp on the subcommand.
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return kOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    std::ostringstream buffer;
    try {
        int code = kOk;
        if (mdm.selected) code = mdm.execute(buffer);
        else if (yukawa.selected) code = yukawa.execute(buffer);
        else if (phase.selected) code = phase.execute(buffer);
        else if (fringe.selected) code = fringe.execute(buffer);
        else if (ir.selected) code = ir.execute(buffer);
        else if (reduction.selected) code = reduction.execute(buffer);
        out << buffer.str();
        if (code == kCheckFailed) err << "check-reduction: deviation above threshold\n";
        return code;
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace acmdm::cli
