#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "ambc/analytic.hpp"
#include "ambc/config.hpp"

using namespace ambc;
using namespace ambc::experiment;

namespace
{

bool mentions(ConfigError const& e, std::string const& needle)
{
    for (auto const& msg : e.errors())
        if (msg.find(needle) != std::string::npos) return true;
    return false;
}

template <typename F>
ConfigError capture(F f)
{
    try
    {
        f();
    }
    catch (ConfigError const& e)
    {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError({});
}

}  // namespace

TEST_SUITE("config")
{
    TEST_CASE("empty sections give the defaults")
    {
        auto const cfg = parse_config("[system]\n[beta_geom]\n[sweep]\n");
        CHECK(cfg.system == SystemParams{});
        CHECK(cfg.geom == BetaGeomParams{});
        CHECK(cfg.sweep.figure == Figure::custom);
        CHECK(cfg.sweep.mc_trials == 50000);
        CHECK(parse_config("").system == SystemParams{});
    }

    TEST_CASE("decibel keys")
    {
        auto const cfg = parse_config("[system]\ngamma_thr_db = 3\n");
        CHECK(cfg.system.gamma_thr == doctest::Approx(1.99526).epsilon(1e-5));

        auto const noise = parse_config("[system]\ntsrnr_db = 51\np_tx = 2\n");
        CHECK(noise.system.sigma2 == doctest::Approx(2.0 * std::pow(10.0, -5.1)).epsilon(1e-14));

        auto const deducted = parse_config("[system]\ntsrnr_deducted_db = 10\nr0 = 20\n");
        CHECK(deducted.system.sigma2
              == doctest::Approx(0.1 * path_loss(20.0, 3.5)).epsilon(1e-14));

        auto const gain = parse_config("[system]\nmean_gain = 4\n");
        CHECK(gain.system.mu == 0.25);
    }

    TEST_CASE("comments and whitespace")
    {
        auto const cfg = parse_config(
            "# leading comment\n; another\n\n[system]\n  rho   =  12.5   # trailing\nbeta=0.4\r\n");
        CHECK(cfg.system.rho == 12.5);
        CHECK(cfg.system.beta == 0.4);
    }

    TEST_CASE("unknown keys and sections")
    {
        auto const e = capture([] { parse_config("[system]\nlambda_q = 1\n"); });
        CHECK(mentions(e, "unknown key: lambda_q"));
        CHECK(mentions(e, "line 2"));

        auto const s = capture([] { parse_config("[radio]\nx = 1\n"); });
        CHECK(mentions(s, "unknown section"));

        auto const g = capture([] { parse_config("[beta_geom]\nbandwidth = 1\n"); });
        CHECK(mentions(g, "unknown key: bandwidth"));
    }

    TEST_CASE("syntax errors carry line numbers")
    {
        auto const e = capture([] { parse_config("[system]\nrho 10\nbeta = abc\n"); });
        CHECK(mentions(e, "line 2"));
        CHECK(mentions(e, "line 3"));
        CHECK(e.errors().size() == 2);

        auto const outside = capture([] { parse_config("rho = 1\n"); });
        CHECK(mentions(outside, "line 1"));
    }

    TEST_CASE("validation errors are aggregated")
    {
        auto const e = capture([] { parse_config("[system]\nr0 = 100\nbeta = 1.2\n"); });
        CHECK(mentions(e, "r0 >= R"));
        CHECK(mentions(e, "beta out of [0,1]"));
    }

    TEST_CASE("overrides win over the file")
    {
        auto const cfg = parse_config("[system]\nrho = 5\n", {"rho=7", "k=2", "sweep.mc_trials=10"});
        CHECK(cfg.system.rho == 7.0);
        CHECK(cfg.geom.k == 2.0);
        CHECK(cfg.sweep.mc_trials == 10);
        auto const e = capture([] { parse_config("", {"rho"}); });
        CHECK(mentions(e, "expected key=value"));
    }

    TEST_CASE("sweep section")
    {
        auto const cfg = parse_config(
            "[sweep]\nparam = r0\nmin = 10\nmax = 20\nstep = 5\nscenarios = scenario1, benchmark\n"
            "metrics = sir\nengines = analytic, mc\nmc_trials = 1000\nmaster_seed = 77\n"
            "record_timing = true\n");
        CHECK(cfg.sweep.param_name == "r0");
        CHECK(cfg.sweep.grid == std::vector<double>{10.0, 15.0, 20.0});
        CHECK(cfg.sweep.scenarios == std::vector<Scenario>{Scenario::scenario1, Scenario::benchmark});
        CHECK(cfg.sweep.metrics == std::vector<Metric>{Metric::sir});
        CHECK(cfg.sweep.engines.size() == 2);
        CHECK(cfg.sweep.mc_trials == 1000);
        CHECK(cfg.sweep.master_seed == 77);
        CHECK(cfg.sweep.record_timing);

        auto const list = parse_config("[sweep]\nparam = beta\nvalues = 0, 0.5, 1\n");
        CHECK(list.sweep.grid == std::vector<double>{0.0, 0.5, 1.0});

        auto const logs = parse_config("[sweep]\nparam = mean_gain\nmin = 1\nmax = 100\npoints = 3\nspacing = log\n");
        REQUIRE(logs.sweep.grid.size() == 3);
        CHECK(logs.sweep.grid[1] == doctest::Approx(10.0).epsilon(1e-12));

        auto const bad = capture([] { parse_config("[sweep]\nparam = gain\n"); });
        CHECK(mentions(bad, "unknown sweep parameter"));
        auto const zero = capture([] { parse_config("[sweep]\nmc_trials = 0\n"); });
        CHECK(mentions(zero, "mc_trials"));
    }

    TEST_CASE("figure presets")
    {
        auto const fig4 = parse_config("[sweep]\nfigure = fig4\n");
        CHECK(fig4.sweep.param_name == "beta");
        CHECK(fig4.sweep.grid.size() == 11);

        auto const fig8a = parse_config("[sweep]\nfigure = fig8a\n");
        CHECK(fig8a.system.r0 == 25.0);
        CHECK(fig8a.sweep.param_name == "rho");

        // File keys still override the preset base.
        auto const moved = parse_config("[sweep]\nfigure = fig8a\n[system]\nr0 = 30\n");
        CHECK(moved.system.r0 == 30.0);

        auto const clash = capture([] { parse_config("[sweep]\nfigure = fig4\nparam = r0\n"); });
        CHECK(mentions(clash, "sweeps beta"));
        auto const unknown = capture([] { parse_config("[sweep]\nfigure = fig9\n"); });
        CHECK(mentions(unknown, "unknown figure"));
    }

    TEST_CASE("files")
    {
        auto const path = std::filesystem::temp_directory_path() / "ambc_config_test.ini";
        {
            std::ofstream out(path);
            out << "[system]\nbeta = 0.25\n[beta_geom]\ndelta_b_mhz = 20\n";
        }
        auto const cfg = load_config(path);
        CHECK(cfg.system.beta == 0.25);
        CHECK(cfg.geom.delta_b == 20e6);
        CHECK_THROWS_AS(load_config(path.string() + ".missing"), ConfigError);
    }

    TEST_CASE("sparse cluster density warns")
    {
        auto const cfg = parse_config("[system]\nlambda_b = 1e-4\n");
        CHECK(cfg.warnings.size() == 1);
    }
}
