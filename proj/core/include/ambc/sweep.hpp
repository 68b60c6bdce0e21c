#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ambc/model.hpp"
#include "ambc/table.hpp"

namespace ambc::experiment
{

enum class Figure
{
    fig3,   // coverage vs path-loss-deducted TSRNR [dB]
    fig4,   // coverage vs beta
    fig5,   // coverage vs mean fading gain 1/mu
    fig6,   // coverage vs r0
    fig7,   // coverage vs threshold [dB]
    fig8a,  // beta estimate vs rho
    fig8b,  // beta estimate vs r0
    custom,
};

enum class EngineKind
{
    analytic,
    mc,
};

std::string_view to_string(Figure f);
Figure parse_figure(std::string_view name);
std::string_view to_string(EngineKind e);
EngineKind parse_engine(std::string_view name);

struct SweepSpec
{
    Figure figure = Figure::custom;
    std::string param_name = "beta";
    std::vector<double> grid;
    std::vector<Scenario> scenarios = {Scenario::scenario1, Scenario::scenario2,
                                       Scenario::benchmark};
    std::vector<Metric> metrics = {Metric::sinr, Metric::sir};
    std::vector<EngineKind> engines = {EngineKind::analytic};
    std::uint64_t mc_trials = 50000;
    std::uint64_t master_seed = 20190601;
    std::vector<double> k_values = {1.0, 2.0, 3.0};  ///< delay-tolerance ratios (fig8)
    bool marginal = false;       ///< de-condition over r0 in both engines
    bool record_timing = false;  ///< wall_ms stays blank unless set (keeps reruns byte-identical)
    unsigned threads = 0;        ///< 0 = hardware concurrency
};

/// Names accepted by set_param, beyond the SystemParams field names:
/// gamma_thr_db, tsrnr_db, tsrnr_deducted_db (TSRNR minus the r0 path loss,
/// so sigma2 = P_tx L(r0) / 10^(x/10)), mean_gain (mu = 1/x).
bool is_known_param(std::string_view name);

/// Applies one named parameter (linear or the *_db variants) to `params`.
/// Throws std::invalid_argument for an unknown name.
void set_param(SystemParams& params, std::string_view name, double value);

/// Inclusive arithmetic grid; the endpoint is kept when within 1e-9 steps.
std::vector<double> linear_grid(double min, double max, double step);
std::vector<double> log_grid(double min, double max, std::size_t points);

/// The preset for a figure: pinned parameter, grid, engines, and the base
/// parameter overrides of that operating point.
SweepSpec figure_preset(Figure figure);
void apply_preset_base(Figure figure, SystemParams& params);

/// Whether the figure reports the beta estimate instead of coverage.
bool is_beta_figure(Figure figure);

struct SweepResult
{
    Table rows;
    std::size_t failed_points = 0;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

struct SweepHooks
{
    /// Rows already computed for grid index i (resume); empty = compute.
    std::function<Table(std::size_t)> completed;
    /// Called after each grid point with every row produced so far.
    std::function<void(Table const&)> on_progress;
};

/// One row per grid point x scenario x metric x engine, in grid order.
/// Engine failures become rows with blank coverage and are counted.
SweepResult run_sweep(SweepSpec const& spec, SystemParams const& params,
                      BetaGeomParams const& geom, SweepHooks const& hooks = {});

/// Rows of `previous` grouped by grid index of `spec` for resuming a run:
/// a point counts as done when its rows match the expected row count.
std::function<Table(std::size_t)> resume_from(Table const& previous, SweepSpec const& spec);

}  // namespace ambc::experiment
