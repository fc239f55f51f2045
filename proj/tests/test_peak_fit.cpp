#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rydspec/peak_fit.hpp"

using namespace rydspec;

TEST_CASE("noiseless doublet is recovered to high precision") {
    const auto d = oracles::gaussian_doublet(-24.5, 24.5, 3.1, 3.4, 0.82, 0.91, 0.05,
                                             -80.0, 80.0, 401);
    const PeakFit fit = fit_two_gaussians(d.x, d.y);
    CHECK(fit.centers[0] == Catch::Approx(-24.5).margin(1e-4));
    CHECK(fit.centers[1] == Catch::Approx(+24.5).margin(1e-4));
    CHECK(fit.widths[0] == Catch::Approx(3.1).margin(1e-3));
    CHECK(fit.widths[1] == Catch::Approx(3.4).margin(1e-3));
    CHECK(fit.amplitudes[0] == Catch::Approx(0.82).margin(1e-4));
    CHECK(fit.amplitudes[1] == Catch::Approx(0.91).margin(1e-4));
    CHECK(fit.offset == Catch::Approx(0.05).margin(1e-4));
    CHECK(fit.splitting == Catch::Approx(49.0).margin(2e-4));
    CHECK(fit.residual_rms < 1e-8);
}

TEST_CASE("centers come out ascending regardless of peak prominence order") {
    // Make the right peak dominant so the seed order is reversed.
    const auto d = oracles::gaussian_doublet(-10.0, 14.0, 2.0, 2.5, 0.3, 1.0, 0.0,
                                             -40.0, 40.0, 201);
    const PeakFit fit = fit_two_gaussians(d.x, d.y);
    CHECK(fit.centers[0] < fit.centers[1]);
    CHECK(fit.centers[0] == Catch::Approx(-10.0).margin(1e-3));
    CHECK(fit.centers[1] == Catch::Approx(14.0).margin(1e-3));
    CHECK(fit.splitting == Catch::Approx(24.0).margin(2e-3));
}

TEST_CASE("noisy doublets: 200 seeds stay within tolerance") {
    int good = 0;
    for (unsigned seed = 1; seed <= 200; ++seed) {
        const auto d = oracles::gaussian_doublet(-24.5, 24.5, 3.2, 3.2, 0.85, 0.85, 0.02,
                                                 -80.0, 80.0, 401, 0.004, seed);
        const PeakFit fit = fit_two_gaussians(d.x, d.y);
        if (std::abs(fit.splitting - 49.0) < 0.02 * 49.0)
            ++good;
        // Even the stragglers must stay within 5%.
        REQUIRE(std::abs(fit.splitting - 49.0) < 0.05 * 49.0);
    }
    CHECK(good >= 196);
}

TEST_CASE("overlapping but distinct peaks still resolve") {
    const auto d = oracles::gaussian_doublet(-4.0, 4.0, 2.8, 2.8, 1.0, 1.0, 0.0,
                                             -30.0, 30.0, 301);
    const PeakFit fit = fit_two_gaussians(d.x, d.y);
    CHECK(fit.splitting == Catch::Approx(8.0).margin(0.05));
}

TEST_CASE("a single peak raises SinglePeakError") {
    std::vector<double> x, y;
    for (int i = 0; i < 101; ++i) {
        x.push_back(-10.0 + 0.2 * i);
        y.push_back(std::exp(-0.5 * x.back() * x.back()));
    }
    CHECK_THROWS_AS(fit_two_gaussians(std::span<const double>(x), std::span<const double>(y)),
                    SinglePeakError);
}

TEST_CASE("flat data raises SinglePeakError") {
    std::vector<double> x, y;
    for (int i = 0; i < 64; ++i) {
        x.push_back(i);
        y.push_back(1.0);
    }
    CHECK_THROWS_AS(fit_two_gaussians(std::span<const double>(x), std::span<const double>(y)),
                    SinglePeakError);
}

TEST_CASE("grid-point plateau at a peak apex is still detected") {
    // Symmetric sampling can put two equal samples astride each apex.
    std::vector<double> x, y;
    for (int i = 0; i <= 160; ++i) {
        const double xv = -40.25 + 0.5 * i;
        x.push_back(xv);
        y.push_back(std::exp(-0.5 * std::pow((xv + 20.0) / 3.0, 2)) +
                    std::exp(-0.5 * std::pow((xv - 20.0) / 3.0, 2)));
    }
    const PeakFit fit = fit_two_gaussians(std::span<const double>(x), std::span<const double>(y));
    CHECK(fit.splitting == Catch::Approx(40.0).margin(1e-3));
}

TEST_CASE("input validation") {
    std::vector<double> x = {0, 1, 2}, y = {0, 1, 0};
    CHECK_THROWS_AS(fit_two_gaussians(std::span<const double>(x), std::span<const double>(y)),
                    DomainError); // too short
    std::vector<double> x2(32), y2(32, 0.0);
    for (int i = 0; i < 32; ++i)
        x2[static_cast<std::size_t>(i)] = 31 - i; // decreasing
    CHECK_THROWS_AS(fit_two_gaussians(std::span<const double>(x2), std::span<const double>(y2)),
                    DomainError);
    std::vector<double> y3(31, 0.0);
    CHECK_THROWS_AS(fit_two_gaussians(std::span<const double>(x2), std::span<const double>(y3)),
                    DomainError); // length mismatch
}
