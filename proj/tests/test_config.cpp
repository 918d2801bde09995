#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tqg/config.hpp"
#include "tqg/rng.hpp"
#include "tqg/spectral.hpp"

using namespace tqg;
using namespace tqg::test;

namespace {

bool has_error_containing(const ConfigParseResult& r, const std::string& needle) {
    for (const auto& e : r.errors)
        if (e.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    ConfigParseResult r = parse_config("[grid]\nn = 64\n[time]\nt_end = 0\n");
    REQUIRE(r.errors.empty());
    REQUIRE(r.config.has_value());
    CHECK(r.config->n == 64);
    CHECK(r.config->t_end == 0.0);
    CHECK(r.config->length == doctest::Approx(2.0 * M_PI));
    CHECK_FALSE(r.config->dt.has_value());  // auto
    CHECK(r.config->dealias_on);
    CHECK(r.config->ic_kind == IcKind::kShear);
    CHECK(r.config->diag_cadence == 1);
    CHECK(r.config->norm_ceiling_factor == 1e6);
}

TEST_CASE("odd or small n is rejected by name") {
    ConfigParseResult r = parse_config("[grid]\nn = 15\n[time]\nt_end = 1\n");
    CHECK_FALSE(r.config.has_value());
    CHECK(has_error_containing(r, "n must be even and >= 16"));
}

TEST_CASE("unknown keys and sections are errors") {
    ConfigParseResult r =
        parse_config("[grid]\nn = 64\nwhatever = 3\n[time]\nt_end = 1\n[junk]\nx = 1\n");
    CHECK_FALSE(r.config.has_value());
    CHECK(has_error_containing(r, "whatever"));
    CHECK(has_error_containing(r, "unknown section [junk]"));
}

TEST_CASE("all violations are collected, not just the first") {
    ConfigParseResult r = parse_config(
        "[grid]\nn = 15\nlength = -1\n[time]\nt_end = -2\ncfl_target = 7\n"
        "[output]\ndiag_cadence = 0\n");
    CHECK_FALSE(r.config.has_value());
    CHECK(r.errors.size() >= 5);
    CHECK(has_error_containing(r, "n must be even"));
    CHECK(has_error_containing(r, "length"));
    CHECK(has_error_containing(r, "t_end"));
    CHECK(has_error_containing(r, "cfl_target"));
    CHECK(has_error_containing(r, "diag_cadence"));
}

TEST_CASE("dt accepts numbers and auto") {
    ConfigParseResult a =
        parse_config("[grid]\nn = 64\n[time]\nt_end = 1\ndt = 0.25\n");
    REQUIRE(a.config.has_value());
    CHECK(a.config->dt == 0.25);

    ConfigParseResult b =
        parse_config("[grid]\nn = 64\n[time]\nt_end = 1\ndt = auto\n");
    REQUIRE(b.config.has_value());
    CHECK_FALSE(b.config->dt.has_value());

    ConfigParseResult c =
        parse_config("[grid]\nn = 64\n[time]\nt_end = 1\ndt = -0.1\n");
    CHECK(has_error_containing(c, "dt"));
}

TEST_CASE("field specs parse and validate") {
    ConfigParseResult r = parse_config(
        "[grid]\nn = 64\n[time]\nt_end = 1\n[model]\nf = single_mode 1 0 0.5 0\n"
        "h = single_mode 0 2 1.5 1.5707963267948966\n");
    REQUIRE(r.config.has_value());
    CHECK(r.config->f_spec.kind == FieldSpec::Kind::kSingleMode);
    CHECK(r.config->f_spec.kx == 1);
    CHECK(r.config->f_spec.amplitude == 0.5);
    CHECK(r.config->h_spec.ky == 2);

    ConfigParseResult bad = parse_config(
        "[grid]\nn = 64\n[time]\nt_end = 1\n[model]\nf = single_mode 40 0 1 0\n");
    CHECK(has_error_containing(bad, "single_mode wavenumbers"));

    ConfigParseResult junk =
        parse_config("[grid]\nn = 64\n[time]\nt_end = 1\n[model]\nf = wobble\n");
    CHECK(has_error_containing(junk, "unknown field kind"));
}

TEST_CASE("from_file initial conditions require a path") {
    ConfigParseResult r =
        parse_config("[grid]\nn = 64\n[time]\nt_end = 1\n[ic]\nkind = from_file\n");
    CHECK(has_error_containing(r, "[ic] file"));
}

TEST_CASE("emit then parse reproduces random valid configs exactly") {
    Xoshiro256ss rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        SimConfig c;
        c.n = 16 + 2 * static_cast<int>(rng.next() % 120);
        c.length = 0.5 + 50.0 * rng.uniform();
        c.t_end = 10.0 * rng.uniform();
        if (rng.next() % 2) c.dt = 1e-4 + rng.uniform();
        c.cfl_target = 0.05 + 0.9 * rng.uniform();
        c.max_dt = 0.01 + rng.uniform();
        c.dealias_on = rng.next() % 2 == 0;
        c.ic_kind = static_cast<IcKind>(rng.next() % 3);
        c.ic_seed = rng.next();
        c.ic_spectrum_slope = -4.0 + 6.0 * rng.uniform();
        if (c.ic_kind == IcKind::kFromFile) c.ic_file = "state.tqg";
        c.diag_cadence = 1 + static_cast<int>(rng.next() % 50);
        c.snapshot_cadence = 1 + static_cast<int>(rng.next() % 500);
        c.norm_ceiling_factor = 10.0 + 1e7 * rng.uniform();
        c.output_dir = "out_" + std::to_string(trial);
        for (FieldSpec* spec : {&c.f_spec, &c.h_spec}) {
            switch (rng.next() % 3) {
                case 0: break;
                case 1:
                    spec->kind = FieldSpec::Kind::kSingleMode;
                    spec->kx = static_cast<int>(rng.next() % 5) - 2;
                    spec->ky = static_cast<int>(rng.next() % 5) - 2;
                    spec->amplitude = 2.0 * rng.uniform() - 1.0;
                    spec->phase = 6.28 * rng.uniform();
                    break;
                case 2:
                    spec->kind = FieldSpec::Kind::kFromFile;
                    spec->path = "field.tqg";
                    break;
            }
        }
        ConfigParseResult r = parse_config(emit_config(c));
        REQUIRE_MESSAGE(r.errors.empty(), "trial ", trial);
        CHECK(*r.config == c);
    }
}

TEST_CASE("build_field realizes single modes") {
    Grid g(64, 2.0 * M_PI);
    FieldSpec spec;
    spec.kind = FieldSpec::Kind::kSingleMode;
    spec.kx = 1;
    spec.ky = 0;
    spec.amplitude = 1.0;
    spec.phase = -M_PI / 2.0;  // cos(x - pi/2) = sin(x)
    ScalarField f = build_field(spec, g);
    CHECK(max_abs_diff(f, make_field(g, [](double x, double) {
              return std::sin(x);
          })) < 1e-12);
    CHECK(max_abs(build_field(FieldSpec{}, g)) == 0.0);
}

TEST_CASE("initial states") {
    Grid g(64, 2.0 * M_PI);
    SimConfig c;
    c.n = 64;
    c.ic_kind = IcKind::kShear;
    TqgState s = initial_state(c, g);
    CHECK(max_abs_diff(s.b, make_field(g, [](double, double y) {
              return std::sin(y);
          })) < 1e-12);
    CHECK(max_abs_diff(s.q, make_field(g, [](double x, double y) {
              return std::sin(y) * std::cos(x);
          })) < 1e-12);

    c.ic_kind = IcKind::kRandomBandlimited;
    c.ic_seed = 9001;
    TqgState r1 = initial_state(c, g);
    TqgState r2 = initial_state(c, g);
    CHECK(max_abs_diff(r1.b, r2.b) == 0.0);  // deterministic in the seed
    CHECK(sobolev_norm(r1.b, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    c.ic_seed = 9002;
    TqgState r3 = initial_state(c, g);
    CHECK(max_abs_diff(r1.b, r3.b) > 1e-3);  // and actually depends on it
}
