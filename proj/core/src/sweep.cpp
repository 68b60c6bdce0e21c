#include "ambc/sweep.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

#include "ambc/analytic.hpp"
#include "ambc/beta_estimator.hpp"
#include "ambc/montecarlo.hpp"

namespace ambc::experiment
{
namespace
{

using Clock = std::chrono::steady_clock;

constexpr std::array<std::string_view, 7> kFigureNames = {
    "fig3", "fig4", "fig5", "fig6", "fig7", "fig8a", "fig8b",
};

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string k_label(double k)
{
    return "k=" + format_number(k);
}

// Row scaffold for one (grid point, scenario, metric, engine) combination.
Row make_row(SweepSpec const& spec, double value, std::string_view scenario,
             std::string_view metric, std::string_view engine)
{
    Row r;
    r.param_name = spec.param_name;
    r.param_value = value;
    r.scenario = std::string(scenario);
    r.metric = std::string(metric);
    r.engine = std::string(engine);
    return r;
}

std::size_t rows_per_point(SweepSpec const& spec)
{
    if (is_beta_figure(spec.figure)) return spec.k_values.size();
    return spec.scenarios.size() * spec.metrics.size() * spec.engines.size();
}

Table beta_rows(SweepSpec const& spec, SystemParams const& params, BetaGeomParams const& geom,
                double value)
{
    Table rows;
    SystemParams point = params;
    set_param(point, spec.param_name, value);
    for (double k : spec.k_values)
    {
        auto const start = Clock::now();
        BetaGeomParams g = geom;
        g.k = k;
        auto const est = analytic::estimate_beta(point.r0, point.rho, point.alpha, g);
        Row r = make_row(spec, value, k_label(k), "beta", "analytic");
        r.coverage = est.beta;
        if (spec.record_timing) r.wall_ms = elapsed_ms(start);
        rows.push_back(std::move(r));
    }
    return rows;
}

struct AnalyticCell
{
    std::optional<double> value;
    double wall_ms = 0.0;
    std::string error;
    bool clamped = false;
};

// All analytic cells of one grid point, scenario-major then metric.
std::vector<AnalyticCell> analytic_cells(SweepSpec const& spec, SystemParams const& point)
{
    std::vector<AnalyticCell> cells(spec.scenarios.size() * spec.metrics.size());
    auto compute = [&](std::size_t idx) {
        Scenario const s = spec.scenarios[idx / spec.metrics.size()];
        Metric const m = spec.metrics[idx % spec.metrics.size()];
        auto const start = Clock::now();
        try
        {
            if (spec.marginal)
                cells[idx].value = analytic::marginal_coverage(point, s, m);
            else
            {
                auto const res = analytic::evaluate_coverage(point, s, m);
                cells[idx].value = res.probability;
                cells[idx].clamped = res.clamped;
            }
        }
        catch (std::exception const& e)
        {
            cells[idx].error = e.what();
        }
        cells[idx].wall_ms = elapsed_ms(start);
    };
    unsigned const hw = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    if (hw <= 1 || cells.size() <= 1)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) compute(i);
    }
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < cells.size(); ++i) pool.emplace_back(compute, i);
    }
    return cells;
}

}  // namespace

std::string_view to_string(Figure f)
{
    if (f == Figure::custom) return "custom";
    return kFigureNames[static_cast<std::size_t>(f)];
}

Figure parse_figure(std::string_view name)
{
    for (std::size_t i = 0; i < kFigureNames.size(); ++i)
        if (kFigureNames[i] == name) return static_cast<Figure>(i);
    if (name == "custom") return Figure::custom;
    throw std::invalid_argument("unknown figure: " + std::string(name));
}

std::string_view to_string(EngineKind e)
{
    return e == EngineKind::analytic ? "analytic" : "mc";
}

EngineKind parse_engine(std::string_view name)
{
    if (name == "analytic") return EngineKind::analytic;
    if (name == "mc") return EngineKind::mc;
    throw std::invalid_argument("unknown engine: " + std::string(name));
}

bool is_known_param(std::string_view name)
{
    static constexpr std::array<std::string_view, 16> known = {
        "lambda_p", "lambda_b", "rho", "r0", "R", "eta", "alpha", "mu",
        "beta", "gamma_thr", "p_tx", "sigma2", "gamma_thr_db", "tsrnr_db",
        "tsrnr_deducted_db", "mean_gain",
    };
    return std::find(known.begin(), known.end(), name) != known.end();
}

void set_param(SystemParams& p, std::string_view name, double v)
{
    if (name == "lambda_p") p.lambda_p = v;
    else if (name == "lambda_b") p.lambda_b = v;
    else if (name == "rho") p.rho = v;
    else if (name == "r0") p.r0 = v;
    else if (name == "R") p.R = v;
    else if (name == "eta") p.eta = v;
    else if (name == "alpha") p.alpha = v;
    else if (name == "mu") p.mu = v;
    else if (name == "beta") p.beta = v;
    else if (name == "gamma_thr") p.gamma_thr = v;
    else if (name == "p_tx") p.p_tx = v;
    else if (name == "sigma2") p.sigma2 = v;
    else if (name == "gamma_thr_db") p.gamma_thr = db_to_linear(v);
    else if (name == "tsrnr_db") p.sigma2 = noise_from_tsrnr(p.p_tx, v);
    else if (name == "tsrnr_deducted_db")
        p.sigma2 = noise_from_tsrnr(p.p_tx, v) * path_loss(p.r0, p.alpha);
    else if (name == "mean_gain")
    {
        if (!(v > 0.0)) throw std::invalid_argument("mean_gain must be > 0");
        p.mu = 1.0 / v;
    }
    else throw std::invalid_argument("unknown key: " + std::string(name));
}

std::vector<double> linear_grid(double min, double max, double step)
{
    if (!(step > 0.0) || !(max >= min)) throw std::invalid_argument("grid needs step > 0, max >= min");
    std::vector<double> grid;
    auto const n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
    {
        double v = min + static_cast<double>(i) * step;
        // Snap values like 0.30000000000000004 onto the decimal grid.
        v = std::stod(format_number(v));
        grid.push_back(v);
    }
    return grid;
}

std::vector<double> log_grid(double min, double max, std::size_t points)
{
    if (!(min > 0.0) || !(max >= min) || points < 1)
        throw std::invalid_argument("log grid needs 0 < min <= max and points >= 1");
    if (points == 1) return {min};
    std::vector<double> grid;
    double const ratio = std::log(max / min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid.push_back(i + 1 == points ? max : min * std::exp(ratio * static_cast<double>(i)));
    return grid;
}

bool is_beta_figure(Figure f)
{
    return f == Figure::fig8a || f == Figure::fig8b;
}

SweepSpec figure_preset(Figure figure)
{
    SweepSpec spec;
    spec.figure = figure;
    spec.engines = {EngineKind::analytic, EngineKind::mc};
    switch (figure)
    {
        case Figure::fig3:
            spec.param_name = "tsrnr_deducted_db";
            spec.grid = linear_grid(-10.0, 30.0, 2.0);
            break;
        case Figure::fig4:
            spec.param_name = "beta";
            spec.grid = linear_grid(0.0, 1.0, 0.1);
            break;
        case Figure::fig5:
            spec.param_name = "mean_gain";
            spec.grid = log_grid(0.25, 4.0, 10);
            break;
        case Figure::fig6:
            spec.param_name = "r0";
            spec.grid = linear_grid(5.0, 40.0, 2.5);
            break;
        case Figure::fig7:
            spec.param_name = "gamma_thr_db";
            spec.grid = linear_grid(-10.0, 10.0, 2.0);
            break;
        case Figure::fig8a:
            spec.param_name = "rho";
            spec.grid = linear_grid(2.0, 20.0, 2.0);
            spec.engines = {EngineKind::analytic};
            break;
        case Figure::fig8b:
            spec.param_name = "r0";
            spec.grid = linear_grid(10.0, 40.0, 2.5);
            spec.engines = {EngineKind::analytic};
            break;
        case Figure::custom:
            spec.engines = {EngineKind::analytic};
            break;
    }
    return spec;
}

void apply_preset_base(Figure figure, SystemParams& params)
{
    // Every coverage figure uses the defaults (r0 = 15, 3 dB, mu = 1,
    // beta = 0.8, TSRNR = 51 dB) apart from its swept axis.
    if (figure == Figure::fig8a) params.r0 = 25.0;
    if (figure == Figure::fig8b) params.rho = 10.0;
}

SweepResult run_sweep(SweepSpec const& spec, SystemParams const& params, BetaGeomParams const& geom,
                      SweepHooks const& hooks)
{
    if (spec.grid.empty()) throw std::invalid_argument("sweep grid is empty");
    if (!is_known_param(spec.param_name))
        throw std::invalid_argument("unknown sweep parameter: " + spec.param_name);

    SweepResult result;
    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi)
    {
        double const value = spec.grid[gi];
        if (hooks.completed)
        {
            Table done = hooks.completed(gi);
            if (!done.empty())
            {
                result.rows.insert(result.rows.end(), done.begin(), done.end());
                if (hooks.on_progress) hooks.on_progress(result.rows);
                continue;
            }
        }

        Table rows;
        std::string point_error;
        try
        {
            if (is_beta_figure(spec.figure))
            {
                rows = beta_rows(spec, params, geom, value);
            }
            else
            {
                SystemParams point = params;
                set_param(point, spec.param_name, value);
                validated(point);

                std::vector<AnalyticCell> cells;
                bool const want_analytic =
                    std::find(spec.engines.begin(), spec.engines.end(), EngineKind::analytic)
                    != spec.engines.end();
                if (want_analytic) cells = analytic_cells(spec, point);

                for (std::size_t si = 0; si < spec.scenarios.size(); ++si)
                {
                    Scenario const s = spec.scenarios[si];
                    std::vector<mc::Powers> powers;
                    double sim_ms = 0.0;
                    for (std::size_t mi = 0; mi < spec.metrics.size(); ++mi)
                    {
                        Metric const m = spec.metrics[mi];
                        for (EngineKind const e : spec.engines)
                        {
                            Row r = make_row(spec, value, to_string(s), to_string(m), to_string(e));
                            if (e == EngineKind::analytic)
                            {
                                AnalyticCell const& c = cells[si * spec.metrics.size() + mi];
                                r.coverage = c.value;
                                if (spec.record_timing) r.wall_ms = c.wall_ms;
                                if (!c.error.empty())
                                    point_error = c.error;
                                if (c.clamped)
                                    result.warnings.push_back(
                                        spec.param_name + "=" + format_number(value) + " "
                                        + std::string(to_string(s)) + "/" + std::string(to_string(m))
                                        + ": analytic value clamped to [0,1]");
                            }
                            else
                            {
                                auto const start = Clock::now();
                                mc::RunOptions const opts{spec.threads, spec.marginal};
                                if (powers.empty())
                                {
                                    powers = mc::simulate_powers(point, s, spec.mc_trials,
                                                                 spec.master_seed, opts);
                                    sim_ms = elapsed_ms(start);
                                }
                                std::vector<double> ratios;
                                ratios.reserve(powers.size());
                                for (mc::Powers const& w : powers)
                                    ratios.push_back(mc::sinr(point, w, m));
                                auto const est = mc::coverage_from_samples(ratios, point.gamma_thr,
                                                                           spec.master_seed);
                                r.coverage = est.p_hat;
                                r.ci_low = est.ci_low;
                                r.ci_high = est.ci_high;
                                r.n_trials = est.n_trials;
                                r.seed = est.seed;
                                if (spec.record_timing) r.wall_ms = sim_ms + elapsed_ms(start);
                                sim_ms = 0.0;
                            }
                            rows.push_back(std::move(r));
                        }
                    }
                }
            }
        }
        catch (std::exception const& e)
        {
            point_error = e.what();
            rows.clear();
        }

        if (!point_error.empty())
        {
            ++result.failed_points;
            result.errors.push_back(spec.param_name + "=" + format_number(value) + ": " + point_error);
            if (rows.size() != rows_per_point(spec))
            {
                // Placeholder rows with blank results keep the grid shape.
                rows.clear();
                if (is_beta_figure(spec.figure))
                {
                    for (double k : spec.k_values)
                        rows.push_back(make_row(spec, value, k_label(k), "beta", "analytic"));
                }
                else
                {
                    for (Scenario s : spec.scenarios)
                        for (Metric m : spec.metrics)
                            for (EngineKind e : spec.engines)
                                rows.push_back(make_row(spec, value, to_string(s), to_string(m),
                                                        to_string(e)));
                }
            }
        }

        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        if (hooks.on_progress) hooks.on_progress(result.rows);
    }
    return result;
}

std::function<Table(std::size_t)> resume_from(Table const& previous, SweepSpec const& spec)
{
    std::map<std::string, Table> by_value;
    for (Row const& r : previous)
        if (r.param_name == spec.param_name) by_value[format_number(r.param_value)].push_back(r);

    std::size_t const expected = rows_per_point(spec);
    std::vector<double> const grid = spec.grid;
    std::uint64_t const seed = spec.master_seed;
    std::uint64_t const trials = spec.mc_trials;
    return [by_value = std::move(by_value), expected, grid, seed, trials](std::size_t index) -> Table {
        auto const it = by_value.find(format_number(grid.at(index)));
        if (it == by_value.end() || it->second.size() != expected) return {};
        for (Row const& r : it->second)
        {
            if (!r.coverage) return {};  // failed or incomplete point: recompute
            if (r.engine == "mc" && (r.seed != seed || r.n_trials != trials)) return {};
        }
        return it->second;
    };
}

}  // namespace ambc::experiment
