// Command-line front end: analytic / mc / sweep / beta.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ambc/analytic.hpp"
#include "ambc/beta_estimator.hpp"
#include "ambc/config.hpp"
#include "ambc/sweep.hpp"
#include "ambc/table.hpp"

namespace ex = ambc::experiment;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitEngine = 2;

struct Options
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> sets;
    std::vector<std::string> scenarios;
    std::vector<std::string> metrics;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> threads;
    bool marginal = false;
    bool resume = false;
    bool timing = false;
    std::string param;
    std::vector<double> values;
    std::string figure;
};

void add_common(CLI::App& cmd, Options& o)
{
    cmd.add_option("--config", o.config, "INI config with [system], [beta_geom], [sweep]")
        ->check(CLI::ExistingFile);
    cmd.add_option("--seed", o.seed, "Master seed for Monte Carlo substreams");
    cmd.add_option("--out", o.out, "Output file (default: stdout)");
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--set", o.sets, "Parameter override key=value (repeatable)")
        ->allow_extra_args(false);
    cmd.add_option("--scenario", o.scenarios, "scenario1, scenario2 or benchmark (repeatable)")
        ->allow_extra_args(false);
    cmd.add_option("--metric", o.metrics, "sinr or sir (repeatable)")->allow_extra_args(false);
    cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd.add_flag("--timing", o.timing, "Fill the wall_ms column");
}

void add_sweep_axis(CLI::App& cmd, Options& o)
{
    cmd.add_option("--param", o.param, "Swept parameter name");
    cmd.add_option("--values", o.values, "Comma-separated grid for --param")->delimiter(',');
    cmd.add_flag("--resume", o.resume, "Skip grid points already complete in --out");
}

void add_mc_options(CLI::App& cmd, Options& o)
{
    cmd.add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd.add_flag("--marginal", o.marginal, "De-condition over the nearest-PT distance r0");
}

std::string join_list(std::vector<std::string> const& items)
{
    std::string out;
    for (auto const& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

std::vector<std::string> overrides_from(Options const& o)
{
    std::vector<std::string> ov;
    if (!o.figure.empty()) ov.push_back("sweep.figure=" + o.figure);
    if (o.seed) ov.push_back("sweep.master_seed=" + std::to_string(*o.seed));
    if (o.trials) ov.push_back("sweep.mc_trials=" + std::to_string(*o.trials));
    if (o.threads) ov.push_back("sweep.threads=" + std::to_string(*o.threads));
    if (o.marginal) ov.push_back("sweep.marginal=true");
    if (o.timing) ov.push_back("sweep.record_timing=true");
    if (!o.scenarios.empty()) ov.push_back("sweep.scenarios=" + join_list(o.scenarios));
    if (!o.metrics.empty()) ov.push_back("sweep.metrics=" + join_list(o.metrics));
    if (!o.param.empty()) ov.push_back("sweep.param=" + o.param);
    if (!o.values.empty())
    {
        std::vector<std::string> text;
        for (double v : o.values) text.push_back(ex::format_number(v));
        ov.push_back("sweep.values=" + join_list(text));
    }
    ov.insert(ov.end(), o.sets.begin(), o.sets.end());
    return ov;
}

ex::ExperimentConfig load(Options const& o)
{
    auto const ov = overrides_from(o);
    ex::ExperimentConfig cfg = o.config.empty() ? ex::parse_config("", ov)
                                                : ex::load_config(o.config, ov);
    for (auto const& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    return cfg;
}

void write_table(ex::Table const& table, ex::Format format, std::string const& out)
{
    if (out.empty())
        std::cout << (format == ex::Format::csv ? ex::to_csv(table) : ex::to_json(table));
    else
        ex::emit(table, format, out);
}

int run(ex::ExperimentConfig cfg, Options const& o, std::optional<ex::EngineKind> engine)
{
    ex::SweepSpec& spec = cfg.sweep;
    if (engine) spec.engines = {*engine};
    if (spec.grid.empty())
    {
        // Single operating point, reported against beta.
        if (spec.param_name != "beta")
            throw std::invalid_argument("--param " + spec.param_name + " needs --values");
        spec.grid = {cfg.system.beta};
    }
    ex::Format const format = ex::parse_format(o.format);

    ex::SweepHooks hooks;
    if (o.resume)
    {
        if (o.out.empty()) throw std::invalid_argument("--resume needs --out");
        if (std::filesystem::exists(o.out))
            hooks.completed = ex::resume_from(ex::read_table(o.out), spec);
    }
    if (!o.out.empty())
        hooks.on_progress = [&](ex::Table const& rows) { ex::emit(rows, format, o.out); };

    ex::SweepResult const result = ex::run_sweep(spec, cfg.system, cfg.geom, hooks);
    for (auto const& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (auto const& e : result.errors) std::cerr << "error: " << e << '\n';
    write_table(result.rows, format, o.out);
    return result.failed_points > 0 ? kExitEngine : kExitOk;
}

int run_beta(ex::ExperimentConfig const& cfg, Options const& o)
{
    ex::Table table;
    for (double k : cfg.sweep.k_values)
    {
        ambc::BetaGeomParams geom = cfg.geom;
        geom.k = k;
        auto const est = ambc::analytic::estimate_beta(cfg.system.r0, cfg.system.rho,
                                                       cfg.system.alpha, geom);
        ex::Row r;
        r.param_name = "r0";
        r.param_value = cfg.system.r0;
        r.scenario = "k=" + ex::format_number(k);
        r.metric = "beta";
        r.engine = "analytic";
        r.coverage = est.beta;
        table.push_back(r);
        std::cerr << "k=" << ex::format_number(k) << " rho=" << ex::format_number(cfg.system.rho)
                  << " theta0=" << ex::format_number(est.theta0)
                  << " l=" << ex::format_number(est.l) << " eps=" << ex::format_number(est.eps)
                  << '\n';
    }
    write_table(table, ex::parse_format(o.format), o.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coverage probability of ambient-backscatter-assisted primary networks"};
    app.require_subcommand(1);

    Options o;
    auto* analytic = app.add_subcommand("analytic", "Closed-form coverage");
    add_common(*analytic, o);
    add_sweep_axis(*analytic, o);
    analytic->add_flag("--marginal", o.marginal, "De-condition over the nearest-PT distance r0");

    auto* mc = app.add_subcommand("mc", "Monte Carlo coverage");
    add_common(*mc, o);
    add_sweep_axis(*mc, o);
    add_mc_options(*mc, o);

    auto* sweep = app.add_subcommand("sweep", "Figure preset or configured sweep");
    add_common(*sweep, o);
    add_sweep_axis(*sweep, o);
    add_mc_options(*sweep, o);
    sweep->add_option("--figure", o.figure, "fig3 ... fig8b or custom");

    auto* beta = app.add_subcommand("beta", "Delay-tolerance estimate of beta");
    add_common(*beta, o);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try
    {
        ex::ExperimentConfig const cfg = load(o);
        if (*beta) return run_beta(cfg, o);
        if (*analytic) return run(cfg, o, ex::EngineKind::analytic);
        if (*mc) return run(cfg, o, ex::EngineKind::mc);
        return run(cfg, o, std::nullopt);
    }
    catch (ex::ConfigError const& e)
    {
        for (auto const& msg : e.errors()) std::cerr << "error: " << msg << '\n';
        return kExitValidation;
    }
    catch (ambc::ValidationError const& e)
    {
        for (auto const& msg : e.errors()) std::cerr << "error: " << msg << '\n';
        return kExitValidation;
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEngine;
    }
}
