#include <doctest.h>

#include <cmath>
#include <map>

#include "ambc/sweep.hpp"

using namespace ambc;
using namespace ambc::experiment;

namespace
{

std::vector<double> column(Table const& t, std::string const& scenario, std::string const& metric,
                           std::string const& engine = "analytic")
{
    std::vector<double> out;
    for (Row const& r : t)
        if (r.scenario == scenario && r.metric == metric && r.engine == engine)
            out.push_back(r.coverage.value_or(std::nan("")));
    return out;
}

}  // namespace

TEST_SUITE("sweep")
{
    TEST_CASE("grids")
    {
        auto const g = linear_grid(0.0, 1.0, 0.1);
        REQUIRE(g.size() == 11);
        CHECK(g[3] == 0.3);
        CHECK(g.back() == 1.0);
        CHECK(linear_grid(-10, 30, 2).size() == 21);
        CHECK_THROWS(linear_grid(1.0, 0.0, 0.1));

        auto const l = log_grid(0.25, 4.0, 10);
        REQUIRE(l.size() == 10);
        CHECK(l.front() == 0.25);
        CHECK(l.back() == 4.0);
        for (std::size_t i = 1; i + 1 < l.size(); ++i)
            CHECK(l[i] / l[i - 1] == doctest::Approx(l[i + 1] / l[i]).epsilon(1e-12));
    }

    TEST_CASE("presets pin the swept axis")
    {
        std::map<Figure, std::string> const axis = {
            {Figure::fig3, "tsrnr_deducted_db"}, {Figure::fig4, "beta"},
            {Figure::fig5, "mean_gain"},         {Figure::fig6, "r0"},
            {Figure::fig7, "gamma_thr_db"},      {Figure::fig8a, "rho"},
            {Figure::fig8b, "r0"},
        };
        for (auto const& [fig, name] : axis)
        {
            auto const spec = figure_preset(fig);
            CHECK(spec.param_name == name);
            CHECK_FALSE(spec.grid.empty());
            CHECK(parse_figure(to_string(fig)) == fig);
        }
        CHECK(figure_preset(Figure::fig3).grid.front() == -10.0);
        CHECK(figure_preset(Figure::fig3).grid.back() == 30.0);
        CHECK(is_beta_figure(Figure::fig8b));
        CHECK_FALSE(is_beta_figure(Figure::fig4));
    }

    TEST_CASE("named parameters")
    {
        SystemParams p;
        set_param(p, "gamma_thr_db", 0.0);
        CHECK(p.gamma_thr == 1.0);
        set_param(p, "mean_gain", 2.0);
        CHECK(p.mu == 0.5);
        set_param(p, "tsrnr_deducted_db", 0.0);
        CHECK(p.sigma2 == doctest::Approx(path_loss(p.r0, p.alpha)).epsilon(1e-15));
        CHECK_THROWS(set_param(p, "lambda_q", 1.0));
        CHECK_THROWS(set_param(p, "mean_gain", 0.0));
        CHECK(is_known_param("R"));
        CHECK_FALSE(is_known_param("gamma"));
    }

    TEST_CASE("fig4 analytic: one row per combination, nondecreasing in beta")
    {
        SweepSpec spec = figure_preset(Figure::fig4);
        spec.engines = {EngineKind::analytic};
        SystemParams base;
        apply_preset_base(Figure::fig4, base);
        auto const res = run_sweep(spec, base, {});
        CHECK(res.failed_points == 0);
        CHECK(res.rows.size() == 11 * 3 * 2);
        auto const s2 = column(res.rows, "scenario2", "sinr");
        REQUIRE(s2.size() == 11);
        for (std::size_t i = 1; i < s2.size(); ++i) CHECK(s2[i] >= s2[i - 1]);
        for (Row const& r : res.rows)
        {
            CHECK_FALSE(r.ci_low.has_value());
            CHECK_FALSE(r.n_trials.has_value());
            CHECK_FALSE(r.wall_ms.has_value());
        }
        // Grid order.
        CHECK(res.rows.front().param_value == 0.0);
        CHECK(res.rows.back().param_value == 1.0);
    }

    TEST_CASE("fig3: SIR does not depend on the noise level")
    {
        SweepSpec spec = figure_preset(Figure::fig3);
        spec.engines = {EngineKind::analytic};
        auto const res = run_sweep(spec, SystemParams{}, {});
        for (std::string s : {"scenario1", "scenario2", "benchmark"})
        {
            auto const sir = column(res.rows, s, "sir");
            for (double v : sir) CHECK(v == sir.front());
        }
    }

    TEST_CASE("fig8a: beta decreases with the cluster radius")
    {
        SweepSpec const spec = figure_preset(Figure::fig8a);
        SystemParams base;
        apply_preset_base(Figure::fig8a, base);
        CHECK(base.r0 == 25.0);
        auto const res = run_sweep(spec, base, {});
        CHECK(res.rows.size() == spec.grid.size() * spec.k_values.size());
        auto const k1 = column(res.rows, "k=1", "beta");
        REQUIRE(k1.size() == 10);
        for (std::size_t i = 1; i < k1.size(); ++i) CHECK(k1[i] < k1[i - 1]);
    }

    TEST_CASE("mc rows carry the interval and seed")
    {
        SweepSpec spec;
        spec.param_name = "beta";
        spec.grid = {0.8};
        spec.scenarios = {Scenario::scenario2};
        spec.metrics = {Metric::sinr, Metric::sir};
        spec.engines = {EngineKind::analytic, EngineKind::mc};
        spec.mc_trials = 4000;
        spec.master_seed = 123;
        spec.record_timing = true;
        auto const res = run_sweep(spec, SystemParams{}, {});
        REQUIRE(res.rows.size() == 4);
        for (Row const& r : res.rows)
        {
            CHECK(r.wall_ms.has_value());
            if (r.engine != "mc") continue;
            CHECK(*r.n_trials == 4000);
            CHECK(*r.seed == 123);
            CHECK(*r.ci_low <= *r.coverage);
            CHECK(*r.coverage <= *r.ci_high);
        }
        spec.record_timing = false;
        auto const a = run_sweep(spec, SystemParams{}, {});
        auto const b = run_sweep(spec, SystemParams{}, {});
        CHECK(to_csv(a.rows) == to_csv(b.rows));
    }

    TEST_CASE("a failing grid point leaves blank rows and the rest continue")
    {
        SweepSpec spec;
        spec.param_name = "r0";
        spec.grid = {15.0, 150.0, 20.0};
        spec.scenarios = {Scenario::benchmark};
        spec.metrics = {Metric::sir};
        auto const res = run_sweep(spec, SystemParams{}, {});
        CHECK(res.failed_points == 1);
        REQUIRE(res.rows.size() == 3);
        CHECK(res.rows[0].coverage.has_value());
        CHECK_FALSE(res.rows[1].coverage.has_value());
        CHECK(res.rows[2].coverage.has_value());
        REQUIRE(res.errors.size() == 1);
        CHECK(res.errors[0].find("r0 >= R") != std::string::npos);
    }

    TEST_CASE("resume reuses complete points only")
    {
        SweepSpec spec;
        spec.param_name = "beta";
        spec.grid = {0.1, 0.2, 0.3};
        spec.scenarios = {Scenario::scenario2};
        spec.metrics = {Metric::sir};
        auto const full = run_sweep(spec, SystemParams{}, {});

        Table partial(full.rows.begin(), full.rows.begin() + 1);
        partial[0].coverage = 0.123;  // marker: must be reused as-is
        std::vector<std::size_t> progress;
        SweepHooks hooks;
        hooks.completed = resume_from(partial, spec);
        hooks.on_progress = [&](Table const& rows) { progress.push_back(rows.size()); };
        auto const resumed = run_sweep(spec, SystemParams{}, {}, hooks);
        REQUIRE(resumed.rows.size() == 3);
        CHECK(*resumed.rows[0].coverage == 0.123);
        CHECK(*resumed.rows[1].coverage == *full.rows[1].coverage);
        CHECK(progress == std::vector<std::size_t>{1, 2, 3});

        // Monte Carlo rows from another seed are recomputed.
        spec.engines = {EngineKind::mc};
        spec.mc_trials = 500;
        auto const mc = run_sweep(spec, SystemParams{}, {});
        SweepSpec other = spec;
        other.master_seed = spec.master_seed + 1;
        auto const lookup = resume_from(mc.rows, other);
        CHECK(lookup(0).empty());
        CHECK(resume_from(mc.rows, spec)(0).size() == 1);
    }
}
