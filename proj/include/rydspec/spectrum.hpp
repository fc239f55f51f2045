#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "rydspec/lindblad.hpp"
#include "rydspec/parallel.hpp"

namespace rydspec {

struct DopplerSpec {
    enum class Kind { None, Gaussian };
    Kind kind = Kind::None;
    int n_points = 61;      // velocity-grid size (odd keeps v = 0 on the grid)
    double sigma_span = 3.0; // half-width of the grid in units of sigma_v

    static DopplerSpec none() { return {}; }
    static DopplerSpec gaussian(int n_points = 61, double sigma_span = 3.0) {
        return {Kind::Gaussian, n_points, sigma_span};
    }
};

// Velocity classes and normalized Maxwell-Boltzmann weights on a uniform
// grid over [-span*sigma, +span*sigma]; weights sum to 1 exactly.
inline std::vector<std::pair<double, double>> velocity_grid(const LadderConfig& cfg,
                                                            const DopplerSpec& spec) {
    if (spec.kind == DopplerSpec::Kind::None)
        return {{0.0, 1.0}};
    if (spec.n_points < 3)
        throw DomainError("DopplerSpec: need at least 3 velocity points");
    if (!(spec.sigma_span > 0.0))
        throw DomainError("DopplerSpec: sigma_span must be > 0");
    const double sigma = std::sqrt(constants::boltzmann * cfg.temperature / cfg.atomic_mass);
    if (!(sigma > 0.0))
        throw DomainError("Doppler average requires temperature > 0");

    std::vector<std::pair<double, double>> grid;
    grid.reserve(static_cast<std::size_t>(spec.n_points));
    const double vmax = spec.sigma_span * sigma;
    const double dv = 2.0 * vmax / (spec.n_points - 1);
    double total = 0.0;
    for (int i = 0; i < spec.n_points; ++i) {
        const double v = -vmax + i * dv;
        const double w = std::exp(-0.5 * (v / sigma) * (v / sigma));
        grid.emplace_back(v, w);
        total += w;
    }
    for (auto& [v, w] : grid)
        w /= total;
    return grid;
}

struct SpectrumTrace {
    std::vector<double> coupling_detunings; // rad/s, ascending
    std::vector<double> transmission;       // normalized, clamped to >= 0
    LadderConfig config;                    // snapshot, coupling_detuning unset
};

struct AngleScanMap {
    std::vector<double> thetas; // radians
    std::vector<SpectrumTrace> traces;
};

struct DressedPeak {
    double position; // dressed-state detuning, rad/s
    double weight;   // summed coupling weight into the group, in [0, 1]
};

namespace detail {

// Velocity-averaged absorption at one coupling detuning.  Incoherent weight
// mode runs one coherent problem per populated Zeeman state and averages
// with |w|^2.
inline double absorption_at(const LadderConfig& cfg, double coupling_detuning,
                            const std::vector<std::pair<double, double>>& vgrid) {
    const auto solve_one = [&](const LadderConfig& c) {
        double acc = 0.0;
        for (const auto& [v, w] : vgrid)
            acc += w * probe_response(steady_state(liouvillian(c, v)), c);
        return acc;
    };

    LadderConfig c = cfg;
    c.coupling_detuning = coupling_detuning;
    if (cfg.weights_mode == WeightsMode::Coherent || cfg.coupling_weights.size() == 1)
        return solve_one(c);

    double norm = 0.0;
    for (const auto& [m, w] : cfg.coupling_weights)
        norm += std::norm(w);
    double acc = 0.0;
    for (const auto& [m, w] : cfg.coupling_weights) {
        if (std::norm(w) == 0.0)
            continue;
        LadderConfig sub = c;
        sub.coupling_weights = {{m, {1.0, 0.0}}};
        sub.weights_mode = WeightsMode::Coherent;
        acc += (std::norm(w) / norm) * solve_one(sub);
    }
    return acc;
}

struct ReferenceCurves {
    double bare;                 // absorption with coupling and microwave off
    std::vector<double> off;     // microwave-off absorption per grid point
    double off_peak_transmission; // max of the microwave-off raw transparency
};

inline ReferenceCurves reference_curves(const LadderConfig& cfg,
                                        const std::vector<double>& grid,
                                        const std::vector<std::pair<double, double>>& vgrid) {
    LadderConfig bare_cfg = cfg;
    bare_cfg.coupling_rabi = 0.0;
    bare_cfg.mw_rabi = 0.0;
    ReferenceCurves ref;
    ref.bare = absorption_at(bare_cfg, 0.0, vgrid);
    if (!(ref.bare > 0.0))
        throw SolverError("spectrum_scan: bare absorption is not positive; cannot normalize");

    LadderConfig off_cfg = cfg;
    off_cfg.mw_rabi = 0.0;
    ref.off.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        ref.off[i] = absorption_at(off_cfg, grid[i], vgrid);
    });
    double peak = 0.0;
    for (double a : ref.off)
        peak = std::max(peak, 1.0 - a / ref.bare);
    if (!(peak > 0.0))
        throw SolverError("spectrum_scan: microwave-off trace shows no transparency to normalize by");
    ref.off_peak_transmission = peak;
    return ref;
}

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty())
        throw DomainError("spectrum_scan: detuning grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("spectrum_scan: detuning grid must be strictly increasing");
    for (double d : grid)
        if (!std::isfinite(d))
            throw DomainError("spectrum_scan: detuning grid must be finite");
}

inline SpectrumTrace scan_with_reference(const LadderConfig& cfg, const std::vector<double>& grid,
                                         const std::vector<std::pair<double, double>>& vgrid,
                                         const ReferenceCurves& ref) {
    SpectrumTrace trace;
    trace.coupling_detunings = grid;
    trace.transmission.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double a = absorption_at(cfg, grid[i], vgrid);
        const double raw = 1.0 - a / ref.bare;
        trace.transmission[i] = std::max(0.0, raw / ref.off_peak_transmission);
    });
    trace.config = cfg;
    trace.config.coupling_detuning = 0.0;
    return trace;
}

} // namespace detail

// Probe transmission versus coupling-laser detuning.  The raw transparency
// 1 - a/a_bare is normalized by the peak of the microwave-off trace on the
// same grid, so an unsplit EIT line tops out at 1 and the dressed doublet
// heights read directly as fractions of it.
inline SpectrumTrace spectrum_scan(const LadderConfig& cfg, const std::vector<double>& grid,
                                   const DopplerSpec& doppler = DopplerSpec::none()) {
    cfg.validate();
    detail::check_grid(grid);
    const auto vgrid = velocity_grid(cfg, doppler);
    const auto ref = detail::reference_curves(cfg, grid, vgrid);
    return detail::scan_with_reference(cfg, grid, vgrid, ref);
}

// Spectra for a sweep of microwave polarization angles.  The microwave-off
// reference depends on neither the angle nor the microwave drive, so it is
// computed once and shared across the whole map.
inline AngleScanMap angle_scan(const LadderConfig& cfg, const std::vector<double>& thetas,
                               const std::vector<double>& grid,
                               const DopplerSpec& doppler = DopplerSpec::none()) {
    cfg.validate();
    detail::check_grid(grid);
    if (thetas.empty())
        throw DomainError("angle_scan: need at least one angle");
    const auto vgrid = velocity_grid(cfg, doppler);
    const auto ref = detail::reference_curves(cfg, grid, vgrid);

    AngleScanMap map;
    map.thetas = thetas;
    map.traces.reserve(thetas.size());
    for (double th : thetas) {
        LadderConfig c = cfg;
        c.mw_theta = th;
        map.traces.push_back(detail::scan_with_reference(c, grid, vgrid, ref));
    }
    return map;
}

// Positions and weights of the microwave-dressed resonances seen by the
// coupling laser: eigenvalues of the dressing Hamiltonian, each weighted by
// the overlap of the addressed nS superposition with the dressed states.
// Peaks whose weight vanishes (spectator states) are dropped.
inline std::vector<DressedPeak> dressed_peaks(const LadderConfig& cfg) {
    cfg.validate();
    if (cfg.mw_detuning != 0.0)
        throw DomainError("dressed_peaks: closed-form positions require mw_detuning = 0");

    const CouplingHamiltonian mw = build_hamiltonian(cfg.rydberg_lower, cfg.rydberg_upper,
                                                     cfg.mw_rabi, cfg.mw_theta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mw.matrix);
    if (solver.info() != Eigen::Success)
        throw SolverError("dressed_peaks: eigensolver failed to converge");

    const auto weights = cfg.normalized_weights();
    const int ns = cfg.rydberg_lower.twice() + 1;
    const int n = mw.basis.size();

    // Group eigenvalues exactly as eigen_report does, accumulating weight.
    const double scale = std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), cfg.mw_rabi);
    const double tol = std::max(1e-9 * scale, 1e-300);

    std::vector<std::pair<double, double>> raw; // (position, weight), ascending
    for (int i = 0; i < n; ++i) {
        double wsum = 0.0;
        for (int k = 0; k < ns; ++k)
            wsum += std::norm(weights[static_cast<std::size_t>(k)]) *
                    std::norm(solver.eigenvectors()(k, i));
        raw.emplace_back(solver.eigenvalues()(i), wsum);
    }
    std::sort(raw.begin(), raw.end());

    std::vector<DressedPeak> peaks;
    double anchor = 0.0;
    for (const auto& [pos, w] : raw) {
        if (peaks.empty() || pos - anchor > tol) {
            peaks.push_back({pos, w});
            anchor = pos;
        } else {
            peaks.back().weight += w;
        }
    }
    std::erase_if(peaks, [](const DressedPeak& p) { return p.weight <= 1e-12; });
    return peaks;
}

} // namespace rydspec
