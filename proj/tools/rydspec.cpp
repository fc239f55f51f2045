// rydspec: microwave-dressed Rydberg EIT spectra and Autler-Townes
// electrometry from the command line.
//
// Exit codes: 0 success, 2 bad usage or invalid input, 3 solver failure.

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydspec/rydspec.hpp"
#include "rydspec/io/config_json.hpp"
#include "rydspec/io/csv.hpp"
#include "rydspec/io/format.hpp"
#include "rydspec/io/manifest.hpp"
#include "rydspec/io/svg.hpp"

namespace {

using nlohmann::json;
using namespace rydspec;

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DomainError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DomainError("cannot write file: " + path);
    out << contents;
}

std::string joined_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

std::vector<double> linspace(double start, double stop, int points, const char* what) {
    if (points < 2)
        throw DomainError(std::string(what) + ": need at least 2 points");
    if (!(stop > start))
        throw DomainError(std::string(what) + ": stop must exceed start");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
    return g;
}

struct GridOptions {
    double start_hz = -80e6;
    double stop_hz = 80e6;
    int points = 401;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-start-hz", start_hz, "First coupling detuning (Hz)")
            ->capture_default_str();
        cmd->add_option("--grid-stop-hz", stop_hz, "Last coupling detuning (Hz)")
            ->capture_default_str();
        cmd->add_option("--grid-points", points, "Number of detuning samples")
            ->capture_default_str();
    }
    std::vector<double> grid_rad() const {
        auto g = linspace(start_hz, stop_hz, points, "detuning grid");
        for (double& v : g)
            v *= two_pi;
        return g;
    }
};

struct DopplerOptions {
    std::string mode = "none";
    int points = 61;
    double span = 3.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--doppler", mode, "Velocity average: none or gaussian")
            ->check(CLI::IsMember({"none", "gaussian"}))
            ->capture_default_str();
        cmd->add_option("--doppler-points", points, "Velocity grid size")->capture_default_str();
        cmd->add_option("--doppler-span", span, "Velocity grid half-width in sigmas")
            ->capture_default_str();
    }
    DopplerSpec spec() const {
        return mode == "gaussian" ? DopplerSpec::gaussian(points, span) : DopplerSpec::none();
    }
};

LadderConfig load_config(const std::string& path, std::string* raw_out) {
    const std::string raw = read_file(path);
    if (raw_out)
        *raw_out = raw;
    return io::parse_ladder_config(raw);
}

void emit_manifest(const std::string& out_path, const std::string& command,
                   const std::string& config_bytes) {
    const io::RunManifest m = io::make_manifest(command, config_bytes);
    write_file(out_path + ".manifest.json", io::manifest_to_json(m).dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Microwave-dressed Rydberg EIT spectra and Autler-Townes electrometry"};
    app.set_version_flag("--version", io::kToolVersion);
    app.require_subcommand(1);
    const std::string command_line = joined_command(argc, argv);

    // ---- neig ------------------------------------------------------------
    auto* neig = app.add_subcommand("neig", "Count distinct dressed eigenvalues for J, J'");
    std::string neig_j, neig_jp;
    neig->add_option("--j", neig_j, "Lower-manifold J, e.g. 1/2")->required();
    neig->add_option("--jp", neig_jp, "Upper-manifold J'")->required();
    neig->callback([&] {
        const HalfInt j = HalfInt::parse(neig_j);
        const HalfInt jp = HalfInt::parse(neig_jp);
        json out = {{"j", j.str()}, {"jp", jp.str()}, {"neig", predict_neig(j, jp)}};
        std::cout << out.dump(2) << '\n';
    });

    // ---- eigs ------------------------------------------------------------
    auto* eigs = app.add_subcommand("eigs", "Dressed eigenvalues with multiplicities (CSV)");
    std::string eigs_j, eigs_jp, eigs_out;
    double eigs_rabi_hz = 0.0, eigs_theta_deg = 0.0;
    eigs->add_option("--j", eigs_j, "Lower-manifold J")->required();
    eigs->add_option("--jp", eigs_jp, "Upper-manifold J'")->required();
    eigs->add_option("--rabi-hz", eigs_rabi_hz, "Microwave Rabi frequency (Hz)")->required();
    eigs->add_option("--theta-deg", eigs_theta_deg, "Polarization tilt (degrees)")
        ->capture_default_str();
    eigs->add_option("--out", eigs_out, "Output CSV path (default: stdout)");
    eigs->callback([&] {
        const HalfInt j = HalfInt::parse(eigs_j);
        const HalfInt jp = HalfInt::parse(eigs_jp);
        if (!(eigs_rabi_hz >= 0.0))
            throw DomainError("eigs: --rabi-hz must be >= 0");
        const auto h = build_hamiltonian(j, jp, two_pi * eigs_rabi_hz, eigs_theta_deg * kDegToRad);
        const EigenReport rep = eigen_report(h);
        std::ostringstream csv;
        io::write_eigen_csv(csv, rep);
        if (eigs_out.empty())
            std::cout << csv.str();
        else
            write_file(eigs_out, csv.str());
        std::cerr << "distinct eigenvalues: " << rep.distinct_count() << " (predicted "
                  << predict_neig(j, jp) << ")\n";
    });

    // ---- spectrum ---------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "Probe transmission vs coupling detuning");
    std::string spec_config, spec_out, spec_plot;
    GridOptions spec_grid;
    DopplerOptions spec_doppler;
    spectrum->add_option("--config", spec_config, "Ladder config JSON")->required();
    spectrum->add_option("--out", spec_out, "Output CSV path")->required();
    spectrum->add_option("--plot", spec_plot, "Optional SVG line plot path");
    spec_grid.attach(spectrum);
    spec_doppler.attach(spectrum);
    spectrum->callback([&] {
        std::string raw;
        const LadderConfig cfg = load_config(spec_config, &raw);
        const SpectrumTrace trace = spectrum_scan(cfg, spec_grid.grid_rad(), spec_doppler.spec());
        std::ostringstream csv;
        io::write_spectrum_csv(csv, trace);
        write_file(spec_out, csv.str());
        emit_manifest(spec_out, command_line, raw);
        if (!spec_plot.empty()) {
            std::vector<double> hz = trace.coupling_detunings;
            for (double& v : hz)
                v /= two_pi;
            std::ostringstream svg;
            io::write_line_plot(svg, hz, trace.transmission, "coupling detuning (Hz)",
                                "normalized transmission");
            write_file(spec_plot, svg.str());
        }
        std::cerr << "wrote " << trace.coupling_detunings.size() << " samples to " << spec_out
                  << '\n';
    });

    // ---- angle-scan --------------------------------------------------------
    auto* ascan = app.add_subcommand("angle-scan", "Spectra over a microwave polarization sweep");
    std::string ascan_config, ascan_out, ascan_centers;
    double th_start = 0.0, th_stop = 90.0, th_step = 2.5;
    GridOptions ascan_grid;
    DopplerOptions ascan_doppler;
    ascan->add_option("--config", ascan_config, "Ladder config JSON")->required();
    ascan->add_option("--out", ascan_out, "Output CSV path (long format)")->required();
    ascan->add_option("--centers-out", ascan_centers,
                      "Per-angle fitted doublet centers CSV (default: <out>.centers.csv)");
    ascan->add_option("--theta-start-deg", th_start, "First angle")->capture_default_str();
    ascan->add_option("--theta-stop-deg", th_stop, "Last angle")->capture_default_str();
    ascan->add_option("--theta-step-deg", th_step, "Angle increment")->capture_default_str();
    ascan_grid.attach(ascan);
    ascan_doppler.attach(ascan);
    ascan->callback([&] {
        if (!(th_step > 0.0) || !(th_stop >= th_start))
            throw DomainError("angle-scan: need theta-stop >= theta-start and a positive step");
        std::vector<double> thetas;
        for (double t = th_start; t <= th_stop + 1e-9 * th_step; t += th_step)
            thetas.push_back(t * kDegToRad);

        std::string raw;
        const LadderConfig cfg = load_config(ascan_config, &raw);
        const AngleScanMap map = angle_scan(cfg, thetas, ascan_grid.grid_rad(),
                                            ascan_doppler.spec());

        std::ostringstream csv;
        io::write_angle_map_csv(csv, map);
        write_file(ascan_out, csv.str());
        emit_manifest(ascan_out, command_line, raw);

        std::vector<std::array<double, 3>> rows;
        for (std::size_t t = 0; t < map.thetas.size(); ++t) {
            const PeakFit fit = fit_two_gaussians(map.traces[t]);
            rows.push_back({map.thetas[t] / kDegToRad, fit.centers[0] / two_pi,
                            fit.centers[1] / two_pi});
        }
        std::ostringstream ccsv;
        io::write_centers_csv(ccsv, rows);
        const std::string centers_path =
            ascan_centers.empty() ? ascan_out + ".centers.csv" : ascan_centers;
        write_file(centers_path, ccsv.str());
        std::cerr << "wrote " << map.thetas.size() << " angles to " << ascan_out << '\n';
    });

    // ---- fit ----------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "Two-Gaussian doublet fit of a trace CSV");
    std::string fit_in, fit_out;
    fit_cmd->add_option("--in", fit_in, "Trace CSV (detuning_hz, transmission)")->required();
    fit_cmd->add_option("--out", fit_out, "Optional JSON output path");
    fit_cmd->callback([&] {
        const std::string raw = read_file(fit_in);
        std::istringstream is(raw);
        auto [x_hz, y] = io::read_xy_csv(is);
        std::vector<double> x = x_hz;
        for (double& v : x)
            v *= two_pi;
        const PeakFit fit = fit_two_gaussians(std::span<const double>(x),
                                              std::span<const double>(y));
        json out = {
            {"centers_hz", {fit.centers[0] / two_pi, fit.centers[1] / two_pi}},
            {"sigmas_hz", {fit.widths[0] / two_pi, fit.widths[1] / two_pi}},
            {"amplitudes", {fit.amplitudes[0], fit.amplitudes[1]}},
            {"offset", fit.offset},
            {"splitting_hz", fit.splitting / two_pi},
            {"residual_rms", fit.residual_rms},
        };
        const std::string text = out.dump(2) + "\n";
        std::cout << text;
        if (!fit_out.empty())
            write_file(fit_out, text);
    });

    // ---- field ----------------------------------------------------------------
    auto* field = app.add_subcommand("field", "Convert a splitting into a field amplitude");
    double field_split_hz = 0.0, dip_si = 0.0, dip_atomic = 0.0;
    std::string field_out;
    field->add_option("--splitting-hz", field_split_hz, "Measured doublet splitting (Hz)")
        ->required();
    auto* dip_si_opt = field->add_option("--dipole-si", dip_si, "Transition dipole moment (C m)");
    auto* dip_au_opt =
        field->add_option("--dipole-atomic", dip_atomic, "Transition dipole moment (e a0)");
    field->add_option("--out", field_out, "Optional JSON output path");
    field->callback([&] {
        const bool have_si = dip_si_opt->count() > 0;
        const bool have_au = dip_au_opt->count() > 0;
        if (have_si == have_au)
            throw DomainError("field: give exactly one of --dipole-si or --dipole-atomic");
        const double mu = have_si ? dip_si : dip_atomic * constants::ea0;
        const FieldEstimate est = splitting_to_field(field_split_hz, mu);
        json out = {
            {"splitting_hz", est.frequency_splitting},
            {"rabi_rad_per_s", est.rabi},
            {"dipole_moment_cm", est.dipole_moment},
            {"field_v_per_m", est.field_amplitude},
        };
        const std::string text = out.dump(2) + "\n";
        std::cout << text;
        if (!field_out.empty())
            write_file(field_out, text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
