#include "oracles.hpp"
#include "qnb/constants.hpp"
#include "qnb/errors.hpp"
#include "qnb/budget.hpp"
#include "qnb/config.hpp"

#include <doctest.h>

#include <sstream>

using namespace qnb;

TEST_CASE("minimal config") {
    const RunConfig c = load_config_text(R"({"topology": "fpmi"})");
    CHECK(c.topology == Topology::fpmi);
    CHECK(c.params.eta_d == 1.0);
    CHECK(c.grid.points == 200);
    const EffectiveIfo e = effective_ifo(c);
    CHECK(e.J == doctest::Approx(oracle::J_ref).epsilon(0.02));
}

TEST_CASE("config errors name the field") {
    try {
        load_config_text(R"({"topology": "fpmi", "params": {"eta_d": 1.2}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("eta_d") != std::string::npos);
    }
    try {
        load_config_text(R"({"topology": "fpmi", "params": {"etta_d": 0.9}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("etta_d") != std::string::npos);
    }
    try {
        load_config_text("{\n\"topology\": \"fpmi\",\n\"grid\": {\"points\": }\n}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config_text(R"({"topology": "fpmi", "grid": {"f_min": 0}})"), ConfigError);
    CHECK_THROWS_AS(load_config_text(R"({"topology": "fpmi", "grid": {"points": 1}})"), ConfigError);
    CHECK_THROWS_AS(load_config_text(R"({"topology": "warp-drive"})"), ConfigError);
}

TEST_CASE("config round trip") {
    for (const Preset& p : preset_catalog()) {
        const std::string a = to_json(p.config).dump();
        const RunConfig back = load_config_text(a);
        CHECK(to_json(back).dump() == a);
    }
}

TEST_CASE("presets") {
    const RunConfig o = find_preset("fig34-ordinary").config;
    const EffectiveIfo e = effective_ifo(o);
    CHECK(e.J == doctest::Approx(oracle::J_ref).epsilon(1e-12));
    CHECK(e.gamma() == doctest::Approx(2 * pi * 500).epsilon(1e-12));
    CHECK(o.params.eta_d == 0.95);
    const RunConfig s = find_preset("fig42-speedmeter-lossy").config;
    CHECK(s.topology == Topology::speedmeter);
    CHECK(s.params.J == doctest::Approx(2 * oracle::J_ref).epsilon(1e-12));
    CHECK(2 * pi * s.params.gamma_hz == doctest::Approx(2 * pi * 360).epsilon(1e-12));
    CHECK(2 * pi * s.params.gamma2_hz == doctest::Approx(1.875).epsilon(1e-12));
    CHECK(s.params.eta_d == 0.95);
    CHECK_THROWS_AS(find_preset("nope"), ConfigError);
    for (const Preset& p : preset_catalog()) CHECK_NOTHROW(run_budget(p.config));
}

TEST_CASE("budget output") {
    RunConfig c = find_preset("fig34-ordinary").config;
    c.grid = {10.0, 1000.0, 3, true};
    const NoiseBudget a = run_budget(c);
    c.grid.points = 5;
    const NoiseBudget b = run_budget(c);
    // Shared grid points are bit-identical.
    CHECK(a.rows[0] == b.rows[0]);
    CHECK(a.rows[1] == b.rows[2]);
    CHECK(a.rows[2] == b.rows[4]);
    for (const auto& row : b.rows) CHECK(row.size() == b.header.size());

    // Single-sided output: sqrt_S = sqrt(2 S_h) of the double-sided value.
    RunConfig s = c;
    s.sided = Sided::single;
    const NoiseBudget d = run_budget(s);
    std::size_t ih = 0, is = 0;
    for (std::size_t i = 0; i < b.header.size(); ++i) {
        if (b.header[i] == "S_h") ih = i;
        if (b.header[i] == "sqrt_S") is = i;
    }
    REQUIRE(ih > 0);
    REQUIRE(is > 0);
    for (std::size_t k = 0; k < b.rows.size(); ++k)
        CHECK(d.rows[k][is] == doctest::Approx(std::sqrt(2.0 * b.rows[k][ih])).epsilon(1e-15));

    // The minimum of the ordinary curve sits where the coupling is of order one.
    RunConfig m = find_preset("fig34-ordinary").config;
    const NoiseBudget full = run_budget(m);
    std::size_t best = 0;
    for (std::size_t k = 1; k < full.rows.size(); ++k)
        if (full.rows[k][is] < full.rows[best][is]) best = k;
    const double fbest = full.rows[best][0];
    CHECK(fbest > 50.0);
    CHECK(fbest < 300.0);

    std::ostringstream os1, os2;
    write_csv(os1, b);
    write_csv(os2, run_budget(c));
    CHECK(os1.str() == os2.str());
    CHECK(os1.str().rfind("# ", 0) == 0);
    CHECK(format_number(0.1) == "0.10000000000000001");

    RunConfig sel = c;
    sel.columns = {"S_h", "xi2"};
    const NoiseBudget cs = run_budget(sel);
    CHECK(cs.header == std::vector<std::string>{"f_Hz", "S_h", "xi2"});
    sel.columns = {"bogus"};
    CHECK_THROWS_AS(run_budget(sel), ConfigError);
}
