#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "rydspec/io/config_json.hpp"
#include "rydspec/io/csv.hpp"
#include "rydspec/io/format.hpp"
#include "rydspec/io/manifest.hpp"
#include "rydspec/io/svg.hpp"

using namespace rydspec;

TEST_CASE("fmt_double round-trips bit-exactly") {
    for (double v : {0.0, 1.0, -0.5, 1.0 / 3.0, 6.283185307179586, 2.5e-17, -4.9e7,
                     123456.789012345678, 1e308}) {
        const std::string s = io::fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("spectrum CSV writes Hz and reads back") {
    SpectrumTrace t;
    t.coupling_detunings = {-two_pi * 1e6, 0.0, two_pi * 2.5e6};
    t.transmission = {0.25, 1.0, 0.125};
    std::ostringstream os;
    io::write_spectrum_csv(os, t);
    const std::string text = os.str();
    CHECK(text.rfind("coupling_detuning_hz,transmission\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);

    std::istringstream is(text);
    const auto [x, y] = io::read_xy_csv(is);
    REQUIRE(x.size() == 3);
    CHECK(x[0] == Catch::Approx(-1e6).epsilon(1e-15));
    CHECK(x[2] == Catch::Approx(2.5e6).epsilon(1e-15));
    CHECK(y[1] == 1.0);
}

TEST_CASE("read_xy_csv rejects malformed input") {
    std::istringstream empty("x,y\n");
    CHECK_THROWS_AS(io::read_xy_csv(empty), DomainError);
    std::istringstream bad_cols("x,y\n1.0\n");
    CHECK_THROWS_AS(io::read_xy_csv(bad_cols), DomainError);
    std::istringstream extra("x,y\n1.0,2.0,3.0\n");
    CHECK_THROWS_AS(io::read_xy_csv(extra), DomainError);
    std::istringstream junk("x,y\n1.0,abc\n");
    CHECK_THROWS_AS(io::read_xy_csv(junk), DomainError);
    std::istringstream trailing("x,y\n1.0,2.0x\n");
    CHECK_THROWS_AS(io::read_xy_csv(trailing), DomainError);
}

TEST_CASE("angle map CSV is long-format with degree angles") {
    AngleScanMap map;
    map.thetas = {0.0, std::numbers::pi / 2};
    SpectrumTrace t;
    t.coupling_detunings = {0.0, two_pi * 1e6};
    t.transmission = {0.5, 0.75};
    map.traces = {t, t};
    std::ostringstream os;
    io::write_angle_map_csv(os, map);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "theta_deg,coupling_detuning_hz,transmission");
    std::getline(is, line);
    CHECK(line == "0,0,0.5");
    std::getline(is, line);
    std::getline(is, line);
    CHECK(line.rfind("90,", 0) == 0);
}

TEST_CASE("FNV-1a matches the published test vectors") {
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(io::fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(io::hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("manifest carries command, digest, version, timestamp") {
    const io::RunManifest m = io::make_manifest("rydspec spectrum --config c.json", "{}");
    const auto j = io::manifest_to_json(m);
    CHECK(j.at("command").get<std::string>() == "rydspec spectrum --config c.json");
    CHECK(j.at("config_digest").get<std::string>().size() == 16);
    CHECK(j.at("tool_version").get<std::string>() == io::kToolVersion);
    const std::string ts = j.at("timestamp").get<std::string>();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[19] == 'Z');
}

TEST_CASE("config parsing: presets, overrides, and validation") {
    SECTION("preset with field override") {
        const LadderConfig c = io::parse_ladder_config(std::string(
            R"({"preset": "rb87-36s-36p32", "mw_rabi_hz": 80e6, "mw_theta_deg": 90})"));
        CHECK(c.mw_rabi == Catch::Approx(two_pi * 80e6));
        CHECK(c.mw_theta == Catch::Approx(std::numbers::pi / 2));
        CHECK(c.rydberg_upper == HalfInt::from_twice(3));
        CHECK(c.coupling_rabi == Catch::Approx(two_pi * 0.67e6)); // untouched preset value
    }
    SECTION("bare config from scratch") {
        const LadderConfig c = io::parse_ladder_config(std::string(R"({
            "probe_rabi_hz": 1e6, "coupling_rabi_hz": 5e5, "mw_rabi_hz": 2e7,
            "decay_e_hz": 6e6, "rydberg_lower": "1/2", "rydberg_upper": "3/2",
            "coupling_weights": [{"m": "-1/2", "re": 0.5, "im": 0.1}, {"m": "1/2"}],
            "coupling_weights_mode": "incoherent"})"));
        CHECK(c.rydberg_upper == HalfInt::from_twice(3));
        CHECK(c.weights_mode == WeightsMode::Incoherent);
        REQUIRE(c.coupling_weights.size() == 2);
        CHECK(c.coupling_weights[0].second == std::complex<double>(0.5, 0.1));
        CHECK(c.coupling_weights[1].second == std::complex<double>(1.0, 0.0));
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(io::parse_ladder_config(std::string("not json")), DomainError);
        CHECK_THROWS_AS(io::parse_ladder_config(std::string(R"({"preset": "nope"})")),
                        DomainError);
        CHECK_THROWS_AS(io::parse_ladder_config(std::string(
                            R"({"preset": "rb87-36s-36p12", "probe_rabi_hz": "fast"})")),
                        DomainError);
        CHECK_THROWS_AS(io::parse_ladder_config(std::string(
                            R"({"preset": "rb87-36s-36p12", "typo_key": 1})")),
                        DomainError);
        CHECK_THROWS_AS(io::parse_ladder_config(std::string(
                            R"({"preset": "rb87-36s-36p12", "rydberg_upper": "5/2"})")),
                        DomainError); // |dJ| = 2
        CHECK_THROWS_AS(io::parse_ladder_config(std::string("[]")), DomainError);
    }
    SECTION("round trip through to_json") {
        const LadderConfig c = rb87_36s_36p32();
        const LadderConfig back = io::parse_ladder_config(io::ladder_config_to_json(c));
        CHECK(back.mw_rabi == Catch::Approx(c.mw_rabi).epsilon(1e-14));
        CHECK(back.rydberg_upper == c.rydberg_upper);
        CHECK(back.coupling_weights.size() == c.coupling_weights.size());
        CHECK(back.temperature == c.temperature);
    }
}

TEST_CASE("svg plot is deterministic and well-formed") {
    std::vector<double> x = {0, 1, 2, 3, 4};
    std::vector<double> y = {0.0, 1.0, 0.5, 0.25, 0.75};
    std::ostringstream a, b;
    io::write_line_plot(a, x, y, "detuning (Hz)", "transmission", "demo");
    io::write_line_plot(b, x, y, "detuning (Hz)", "transmission", "demo");
    CHECK(a.str() == b.str());
    CHECK(a.str().find("<svg") == 0);
    CHECK(a.str().find("<polyline") != std::string::npos);
    CHECK(a.str().find("demo") != std::string::npos);
    CHECK(a.str().rfind("</svg>\n") == a.str().size() - 7);

    std::ostringstream c;
    CHECK_THROWS_AS(io::write_line_plot(c, std::vector<double>{}, std::vector<double>{}, "x", "y"),
                    DomainError);
}
