// Command-line front end: spectra, bounding curves, c-sweeps, zero-distance
// studies, and the verification suite, all as reproducible CSV/JSON data.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripencil/analytic_maps.hpp"
#include "tripencil/asymptotics.hpp"
#include "tripencil/format.hpp"
#include "tripencil/pencil.hpp"
#include "tripencil/rootfinder.hpp"
#include "tripencil/verify.hpp"

namespace {

using namespace tripencil;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitNoConvergence = 3;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text_file(out_path, content);
}

std::string spectrum_csv(const Spectrum& sp, bool scaled) {
    const int N = sp.spec.size();
    std::string text;
    std::vector<std::string> header = {"re", "im"};
    if (scaled) {
        header.push_back("re_scaled");
        header.push_back("im_scaled");
    }
    header.push_back("multiplicity");
    header.push_back("is_real");
    header.push_back("residual");
    text += csv_row(header);
    for (const Eigenvalue& ev : sp.eigenvalues) {
        std::vector<std::string> row = {fmt17(ev.value.real()), fmt17(ev.value.imag())};
        if (scaled) {
            const ScaledPoint pt = scale_eigenvalue(ev.value, N);
            row.push_back(fmt17(pt.u));
            row.push_back(fmt17(pt.v));
        }
        row.push_back(std::to_string(ev.algebraic_multiplicity));
        row.push_back(ev.is_real ? "1" : "0");
        row.push_back(fmt17(ev.residual));
        text += csv_row(row);
    }
    return text;
}

std::string spectrum_json(const Spectrum& sp) {
    nlohmann::json j;
    j["spec"] = {{"m", sp.spec.m}, {"n", sp.spec.n}, {"c", sp.spec.c}};
    j["converged"] = sp.converged;
    j["iterations"] = sp.iterations;
    j["eigenvalues"] = nlohmann::json::array();
    const int N = sp.spec.size();
    for (const Eigenvalue& ev : sp.eigenvalues) {
        const ScaledPoint pt = scale_eigenvalue(ev.value, N);
        j["eigenvalues"].push_back({{"re", ev.value.real()},
                                    {"im", ev.value.imag()},
                                    {"re_scaled", pt.u},
                                    {"im_scaled", pt.v},
                                    {"multiplicity", ev.algebraic_multiplicity},
                                    {"is_real", ev.is_real},
                                    {"residual", ev.residual}});
    }
    return j.dump(2) + "\n";
}

// "a:b" or "a:b:step"
bool parse_range(const std::string& text, double& from, double& to, double& step) {
    std::istringstream is(text);
    std::string part;
    std::vector<double> parts;
    while (std::getline(is, part, ':')) {
        try {
            parts.push_back(std::stod(part));
        } catch (...) {
            return false;
        }
    }
    if (parts.size() != 2 && parts.size() != 3) return false;
    from = parts[0];
    to = parts[1];
    step = parts.size() == 3 ? parts[2] : 1.0;
    return step > 0.0;
}

int cmd_spectrum(int m, int n, double c, bool scaled, const std::string& format,
                 const std::string& out, const SolverOptions& opts) {
    PencilSpec spec;
    spec.m = m;
    spec.n = n;
    spec.c = c;
    const Spectrum sp = compute_spectrum(spec, opts);
    emit(out, format == "json" ? spectrum_json(sp) : spectrum_csv(sp, scaled));
    return sp.converged ? kExitOk : kExitNoConvergence;
}

int cmd_curve(double c, int samples, const std::string& out) {
    if (c >= 2.0) {
        std::cerr << "curve: no non-real spectrum to bound for c >= 2\n";
        return kExitBadFlags;
    }
    const auto curve = sample_envelope(c, samples);
    std::string text = csv_row({"u", "lambda"});
    for (const CurveSample& s : curve)
        text += csv_row({fmt17(s.u), std::isfinite(s.value) ? fmt17(s.value) : "inf"});
    emit(out, text);
    return kExitOk;
}

int cmd_sweep(int m, double c_from, double c_to, int steps, const std::string& out_dir,
              const SolverOptions& base_opts) {
    if (steps < 1 || c_from < 0.0 || c_to < 0.0 || c_from > 2.05 || c_to > 2.05) {
        std::cerr << "sweep: need 1+ steps and a c range within [0, 2.05]\n";
        return kExitBadFlags;
    }
    std::filesystem::create_directories(out_dir);

    nlohmann::json manifest;
    manifest["m"] = m;
    manifest["n"] = m;
    manifest["c_from"] = c_from;
    manifest["c_to"] = c_to;
    manifest["steps"] = steps;
    manifest["frames"] = nlohmann::json::array();

    bool all_converged = true;
    for (int step = 0; step < steps; ++step) {
        const double c =
            (steps == 1) ? c_from : c_from + (c_to - c_from) * step / (steps - 1);
        PencilSpec spec;
        spec.m = spec.n = m;
        spec.c = c;
        // Cold start per frame keeps every frame byte-identical to the
        // stand-alone spectrum command at the same c.
        const Spectrum sp = compute_spectrum(spec, base_opts);
        all_converged = all_converged && sp.converged;

        const bool with_curve = c > 0.0 && c < 2.0;
        std::string text;
        std::vector<std::string> header = {"re",           "im",      "re_scaled",
                                           "im_scaled",    "multiplicity", "is_real",
                                           "residual"};
        if (with_curve) header.push_back("lambda_c");
        text += csv_row(header);
        for (const Eigenvalue& ev : sp.eigenvalues) {
            const ScaledPoint pt = scale_eigenvalue(ev.value, spec.size());
            std::vector<std::string> row = {fmt17(ev.value.real()),
                                            fmt17(ev.value.imag()),
                                            fmt17(pt.u),
                                            fmt17(pt.v),
                                            std::to_string(ev.algebraic_multiplicity),
                                            ev.is_real ? "1" : "0",
                                            fmt17(ev.residual)};
            if (with_curve) {
                const double u = std::abs(ev.value.real());
                if (u > 0.0 && u < 2.0 - c) {
                    const double bound = envelope_c(c, u);
                    row.push_back(std::isfinite(bound) ? fmt17(bound) : "inf");
                } else {
                    row.push_back("");
                }
            }
            text += csv_row(row);
        }
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04d.csv", step);
        const std::string path = out_dir + "/" + name;
        write_text_file(path, text);
        manifest["frames"].push_back({{"index", step},
                                      {"c", c},
                                      {"file", std::string(name)},
                                      {"converged", sp.converged},
                                      {"has_curve_column", with_curve}});
    }
    write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return all_converged ? kExitOk : kExitNoConvergence;
}

int cmd_zero_distance(int m, bool m_given, std::optional<int> n, const std::string& c_grid,
                      const std::string& m_range, std::optional<double> c,
                      const std::string& out, const SolverOptions& opts) {
    std::vector<ZeroDistanceRow> rows;
    std::string x_name;
    if (!c_grid.empty() && m_range.empty()) {
        if (!m_given) {
            std::cerr << "zero-distance: --c-grid mode needs --m\n";
            return kExitBadFlags;
        }
        double from = 0.0, to = 0.0, step = 0.0;
        if (!parse_range(c_grid, from, to, step) || to < from) {
            std::cerr << "zero-distance: bad --c-grid (want from:to:step)\n";
            return kExitBadFlags;
        }
        std::vector<double> grid;
        for (double cc = from; cc <= to + 1e-12; cc += step) grid.push_back(cc);
        rows = zero_distance_c_rows(m, n.value_or(m), grid, opts);
        x_name = "c";
    } else if (c_grid.empty() && !m_range.empty()) {
        if (!c.has_value()) {
            std::cerr << "zero-distance: --m-range needs --c\n";
            return kExitBadFlags;
        }
        double from = 0.0, to = 0.0, step = 0.0;
        if (!parse_range(m_range, from, to, step) || to < from || from < 1.0) {
            std::cerr << "zero-distance: bad --m-range (want from:to)\n";
            return kExitBadFlags;
        }
        rows = zero_distance_m_rows(static_cast<int>(from), static_cast<int>(to), *c, opts);
        x_name = "m";
    } else {
        std::cerr << "zero-distance: pass exactly one of --c-grid or --m-range\n";
        return kExitBadFlags;
    }

    std::string text = csv_row({x_name, "d", "delta"});
    bool all_converged = true;
    for (const ZeroDistanceRow& row : rows) {
        all_converged = all_converged && row.converged;
        text += csv_row({fmt17(row.x), fmt17(row.d), fmt17(row.delta)});
    }
    emit(out, text);
    return all_converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const std::string& suite, int m, std::optional<int> n, double c,
               const std::string& format, const std::string& out,
               const SolverOptions& opts) {
    VerificationReport report;
    try {
        report = run_suite(suite, m, n, c, opts);
    } catch (const std::invalid_argument& err) {
        std::cerr << "verify: " << err.what() << "\n";
        return kExitBadFlags;
    }
    emit(out, format == "table" ? report_table(report) : report_json(report));
    return report.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of the indefinite tridiagonal pencil H - lambda D"};
    app.require_subcommand(1);
    app.fallthrough();  // solver flags may follow the subcommand

    SolverOptions opts;
    app.add_option("--tol", opts.tol, "Aberth correction threshold");
    app.add_option("--max-iter", opts.max_iter, "Aberth sweep cap");
    app.add_option("--grid-points", opts.grid_points, "real-axis scan resolution");

    int m = 10;
    std::optional<int> n;
    double c = 0.0;

    auto* sp = app.add_subcommand("spectrum", "all eigenvalues of one pencil");
    bool scaled = false;
    std::string format = "csv";
    std::string out;
    sp->add_option("--m", m, "size of the +1 block")->required();
    sp->add_option("--n", n, "size of the -1 block (default m)");
    sp->add_option("--c", c, "diagonal shift");
    sp->add_flag("--scaled", scaled, "also emit (Re, N Im) columns");
    sp->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sp->add_option("--out", out, "output path (default stdout)");

    auto* cv = app.add_subcommand("curve", "bounding curve samples");
    double curve_c = 0.0;
    int samples = 2000;
    std::string curve_out;
    cv->add_option("--c", curve_c, "diagonal shift")->required();
    cv->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    cv->add_option("--out", curve_out, "output path (default stdout)");

    auto* sw = app.add_subcommand("sweep", "per-c spectrum frames plus manifest");
    double c_from = 2.05, c_to = 0.0;
    int steps = 42;
    std::string out_dir = "sweep_frames";
    sw->add_option("--m", m, "block size (m = n)")->required();
    sw->add_option("--c-from", c_from, "first c value")->required();
    sw->add_option("--c-to", c_to, "last c value")->required();
    sw->add_option("--steps", steps, "number of frames")->required();
    sw->add_option("--out-dir", out_dir, "frame directory");

    auto* zd = app.add_subcommand("zero-distance", "dist(spec, 0) vs the delta bound");
    std::string c_grid, m_range, zd_out;
    std::optional<double> zd_c;
    zd->add_option("--m", m, "size of the +1 block (c-grid mode)");
    zd->add_option("--n", n, "size of the -1 block (default m)");
    zd->add_option("--c-grid", c_grid, "c sweep as from:to:step");
    zd->add_option("--m-range", m_range, "m sweep as from:to (with --c)");
    zd->add_option("--c", zd_c, "fixed c for --m-range");
    zd->add_option("--out", zd_out, "output path (default stdout)");

    auto* vf = app.add_subcommand("verify", "machine-checkable theorem suite");
    std::string suite = "all";
    std::string vf_format = "json";
    std::string vf_out;
    vf->add_option("--suite", suite,
                   "all | localisation | det-identity | main1 | c0 | cne0 | nm1 | "
                   "zero-distance | n1");
    vf->add_option("--m", m, "size of the +1 block");
    vf->add_option("--n", n, "size of the -1 block");
    vf->add_option("--c", c, "diagonal shift");
    vf->add_option("--format", vf_format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    vf->add_option("--out", vf_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return kExitBadFlags;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(m, n.value_or(m), c, scaled, format, out, opts);
        if (cv->parsed()) return cmd_curve(curve_c, samples, curve_out);
        if (sw->parsed()) return cmd_sweep(m, c_from, c_to, steps, out_dir, opts);
        if (zd->parsed())
            return cmd_zero_distance(m, zd->count("--m") > 0, n, c_grid, m_range, zd_c,
                                     zd_out, opts);
        if (vf->parsed()) return cmd_verify(suite, m, n, c, vf_format, vf_out, opts);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadFlags;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBadFlags;
    }
    return kExitBadFlags;
}
