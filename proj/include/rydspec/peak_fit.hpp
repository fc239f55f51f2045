#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rydspec/errors.hpp"
#include "rydspec/spectrum.hpp"

namespace rydspec {

struct PeakFit {
    std::array<double, 2> centers;    // ascending, same unit as the x axis
    std::array<double, 2> widths;     // Gaussian sigmas, > 0
    std::array<double, 2> amplitudes; // > 0
    double offset = 0.0;
    double splitting = 0.0;           // centers[1] - centers[0]
    double residual_rms = 0.0;
};

namespace detail {

inline double median_inplace(std::vector<double>& v) {
    if (v.empty())
        return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1)
        return hi;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid - 1), v.end());
    return 0.5 * (v[mid - 1] + hi);
}

// Robust per-sample noise estimate: the MAD of first differences, rescaled
// to a Gaussian sigma (1.4826) and divided by sqrt(2) because differencing
// doubles the variance.  Smooth traces give a value near zero.
inline double noise_floor(std::span<const double> y) {
    std::vector<double> d;
    d.reserve(y.size());
    for (std::size_t i = 1; i < y.size(); ++i)
        d.push_back(y[i] - y[i - 1]);
    std::vector<double> tmp = d;
    const double med = median_inplace(tmp);
    for (std::size_t i = 0; i < d.size(); ++i)
        tmp[i] = std::abs(d[i] - med);
    return 1.4826 * median_inplace(tmp) / std::sqrt(2.0);
}

struct Candidate {
    std::size_t index;
    double prominence;
};

// Plateau-aware local maxima with a classic prominence measure: descend on
// both sides until a higher sample appears; the prominence is the height
// above the higher of the two bracketing valleys.
inline std::vector<Candidate> local_maxima(std::span<const double> y) {
    std::vector<Candidate> out;
    const std::size_t n = y.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(y[i] > y[i - 1])) {
            ++i;
            continue;
        }
        std::size_t k = i;
        while (k + 1 < n && y[k + 1] == y[i])
            ++k; // ride the plateau
        if (k + 1 < n && y[k + 1] > y[i]) {
            i = k + 1;
            continue;
        }
        const std::size_t peak = (i + k) / 2;
        double left_valley = y[i];
        for (std::size_t a = i; a-- > 0;) {
            left_valley = std::min(left_valley, y[a]);
            if (y[a] > y[i])
                break;
        }
        double right_valley = y[k];
        for (std::size_t a = k + 1; a < n; ++a) {
            right_valley = std::min(right_valley, y[a]);
            if (y[a] > y[i])
                break;
        }
        out.push_back({peak, y[i] - std::max(left_valley, right_valley)});
        i = k + 1;
    }
    return out;
}

inline void gaussian_pair_model(const Eigen::Matrix<double, 7, 1>& p, std::span<const double> x,
                                Eigen::VectorXd& model, Eigen::MatrixXd* jac) {
    const double off = p(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double val = off;
        for (int g = 0; g < 2; ++g) {
            const double a = p(1 + 3 * g);
            const double c = p(2 + 3 * g);
            const double s = p(3 + 3 * g);
            const double z = (x[i] - c) / s;
            const double e = std::exp(-0.5 * z * z);
            val += a * e;
            if (jac) {
                (*jac)(static_cast<Eigen::Index>(i), 1 + 3 * g) = e;
                (*jac)(static_cast<Eigen::Index>(i), 2 + 3 * g) = a * e * z / s;
                (*jac)(static_cast<Eigen::Index>(i), 3 + 3 * g) = a * e * z * z / s;
            }
        }
        model(static_cast<Eigen::Index>(i)) = val;
        if (jac)
            (*jac)(static_cast<Eigen::Index>(i), 0) = 1.0;
    }
}

} // namespace detail

// Fit offset + two Gaussians to a doublet trace with Levenberg-Marquardt,
// seeded from the two most prominent local maxima.  Throws SinglePeakError
// when fewer than two maxima rise beyond three noise floors, SolverError
// when the optimizer fails to deliver a credible doublet.
inline PeakFit fit_two_gaussians(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size())
        throw DomainError("fit_two_gaussians: x and y must have equal length");
    if (n < 16)
        throw DomainError("fit_two_gaussians: need at least 16 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1]))
            throw DomainError("fit_two_gaussians: x must be strictly increasing");

    const double noise = detail::noise_floor(y);
    auto cands = detail::local_maxima(y);
    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    std::erase_if(cands, [&](const detail::Candidate& c) {
        return !(c.prominence > 3.0 * noise) || !(c.prominence > 1e-6 * (ymax - ymin));
    });
    if (cands.size() < 2)
        throw SinglePeakError("fit_two_gaussians: fewer than two resolvable peaks in trace");
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return a.prominence > b.prominence; });
    detail::Candidate c0 = cands[0], c1 = cands[1];
    if (x[c0.index] > x[c1.index])
        std::swap(c0, c1);

    const double step = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
    const double span = x[n - 1] - x[0];

    // Initial widths from the half-prominence crossing; HWHM = 1.1774 sigma.
    const auto initial_sigma = [&](const detail::Candidate& c) {
        const double half = y[c.index] - 0.5 * c.prominence;
        std::size_t l = c.index, r = c.index;
        while (l > 0 && y[l] > half)
            --l;
        while (r + 1 < n && y[r] > half)
            ++r;
        const double hwhm = 0.5 * (x[r] - x[l]);
        return std::max(hwhm / 1.1774, 1.5 * step);
    };

    Eigen::Matrix<double, 7, 1> p;
    p(0) = ymin;
    p(1) = std::max(y[c0.index] - ymin, 1e-12);
    p(2) = x[c0.index];
    p(3) = initial_sigma(c0);
    p(4) = std::max(y[c1.index] - ymin, 1e-12);
    p(5) = x[c1.index];
    p(6) = initial_sigma(c1);

    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
    Eigen::VectorXd model(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 7);

    const auto cost = [&](const Eigen::Matrix<double, 7, 1>& q) {
        detail::gaussian_pair_model(q, x, model, nullptr);
        return (model - yv).squaredNorm();
    };

    double lambda = 1e-3;
    double best = cost(p);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        detail::gaussian_pair_model(p, x, model, &jac);
        const Eigen::VectorXd r = yv - model;
        const Eigen::Matrix<double, 7, 7> jtj = jac.transpose() * jac;
        const Eigen::Matrix<double, 7, 1> jtr = jac.transpose() * r;

        bool stepped = false;
        for (int damp = 0; damp < 25; ++damp) {
            Eigen::Matrix<double, 7, 7> a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Eigen::Matrix<double, 7, 1> delta = a.ldlt().solve(jtr);
            if (!delta.allFinite())
                break;
            const Eigen::Matrix<double, 7, 1> trial = p + delta;
            const double trial_cost = cost(trial);
            if (trial_cost <= best) {
                // Relative step sizes against natural scales for each kind
                // of parameter: heights vs. data range, positions vs. span.
                double rel = 0.0;
                for (int k : {0, 1, 4})
                    rel = std::max(rel, std::abs(delta(k)) /
                                            std::max(std::abs(p(k)), 1e-3 * std::max(ymax - ymin, 1e-300)));
                for (int k : {2, 3, 5, 6})
                    rel = std::max(rel, std::abs(delta(k)) / std::max(std::abs(p(k)), 1e-3 * span));
                p = trial;
                best = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel < 1e-10)
                    converged = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!stepped)
            break; // damping exhausted: accept current parameters
    }

    PeakFit fit;
    int first = p(2) <= p(5) ? 0 : 1;
    const auto amp = [&](int g) { return p(1 + 3 * g); };
    const auto cen = [&](int g) { return p(2 + 3 * g); };
    const auto sig = [&](int g) { return std::abs(p(3 + 3 * g)); };
    fit.centers = {cen(first), cen(1 - first)};
    fit.widths = {sig(first), sig(1 - first)};
    fit.amplitudes = {amp(first), amp(1 - first)};
    fit.offset = p(0);
    fit.splitting = fit.centers[1] - fit.centers[0];
    fit.residual_rms = std::sqrt(best / static_cast<double>(n));

    if (!(fit.amplitudes[0] > 0.0) || !(fit.amplitudes[1] > 0.0))
        throw SolverError("fit_two_gaussians: fit collapsed to non-positive amplitude");
    if (!(fit.widths[0] > 0.0) || !(fit.widths[1] > 0.0))
        throw SolverError("fit_two_gaussians: fit collapsed to zero width");
    if (!(fit.splitting >= 0.0) || !std::isfinite(fit.splitting))
        throw SolverError("fit_two_gaussians: fit produced an invalid splitting");
    return fit;
}

inline PeakFit fit_two_gaussians(const SpectrumTrace& trace) {
    return fit_two_gaussians(std::span<const double>(trace.coupling_detunings),
                             std::span<const double>(trace.transmission));
}

} // namespace rydspec
