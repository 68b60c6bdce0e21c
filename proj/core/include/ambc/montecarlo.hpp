#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ambc/model.hpp"
#include "ambc/rng.hpp"

namespace ambc::mc
{

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

double norm(Point p);

/// One BT: offset from its parent PT plus the PT->BT and BT->PR power gains.
struct Backscatterer
{
    Point offset;
    double g_tx = 0.0;
    double g_rx = 0.0;
};

using Cluster = std::vector<Backscatterer>;

/// A sampled network seen from the typical PR at the origin.
struct NetworkRealization
{
    Point typical_pt;             ///< at (r0, 0)
    double typical_gain = 0.0;    ///< g_{Y0}
    std::vector<Point> pt_locations;
    std::vector<double> pt_gains;           ///< g_Y per atypical PT
    Cluster typical_cluster;                ///< empty for the benchmark
    std::vector<Cluster> atypical_clusters; ///< one per atypical PT (scenario 1 only)
};

/// Deconditioned received powers at the typical PR [W].
struct Powers
{
    double s_pt = 0.0;
    double s_bt = 0.0;
    double i_pt = 0.0;
    double i_bt = 0.0;
};

struct CoverageEstimate
{
    double p_hat = 0.0;
    double ci_low = 0.0;   ///< 95% Wilson bound
    double ci_high = 0.0;  ///< 95% Wilson bound
    std::uint64_t n_trials = 0;
    std::uint64_t n_covered = 0;
    std::uint64_t seed = 0;
};

class ContractError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/// Homogeneous PPP in the annulus r0 < |y| < R.
std::vector<Point> sample_ppp_annulus(double lambda_p, double r0, double R, Engine& rng);

/// Daughter offsets of one Matern cluster: Poisson count, uniform in B(0, rho).
std::vector<Point> sample_cluster(double lambda_b, double rho, Engine& rng);

/// Draws a realization for `scenario`. Draw order is fixed (typical gain,
/// atypical PTs, typical cluster, atypical clusters), so for one substream a
/// scenario-2 realization is the scenario-1 realization without atypical
/// clusters, and the benchmark is scenario 2 without the typical cluster.
NetworkRealization sample_realization(SystemParams const& p, Scenario scenario, Engine& rng);

Powers realize_powers(SystemParams const& p, NetworkRealization const& net, Scenario scenario);

/// Ratio of the received powers under the decodable fraction beta; +inf for a
/// zero denominator with positive numerator, 0 for 0/0.
double sinr(SystemParams const& p, Powers const& powers, Metric metric);

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct RunOptions
{
    unsigned threads = 0;     ///< 0 = hardware concurrency
    bool marginal_r0 = false; ///< draw r0 ~ Rayleigh(1/sqrt(2 pi lambda_p)) per trial
};

/// Per-trial deconditioned powers. Entry i depends only on (params, scenario,
/// master_seed, i); in marginal mode an r0 draw >= R leaves all powers 0.
std::vector<Powers> simulate_powers(SystemParams const& p, Scenario scenario,
                                    std::uint64_t n_trials, std::uint64_t master_seed,
                                    RunOptions const& options = {});

/// Per-trial SINR (or SIR). Entry i depends only on (params, scenario,
/// master_seed, i). In marginal mode an r0 draw >= R yields 0 (outage).
std::vector<double> simulate_sinr(SystemParams const& p, Scenario scenario, Metric metric,
                                  std::uint64_t n_trials, std::uint64_t master_seed,
                                  RunOptions const& options = {});

CoverageEstimate estimate_coverage(SystemParams const& p, Scenario scenario, Metric metric,
                                   std::uint64_t n_trials, std::uint64_t master_seed,
                                   RunOptions const& options = {});

/// Coverage estimate from precomputed per-trial ratios at threshold `gamma_thr`.
CoverageEstimate coverage_from_samples(std::span<double const> ratios, double gamma_thr,
                                       std::uint64_t seed);

/// Geometry and gain magnitudes of one BT for the symbol/phase check.
struct BackscatterLink
{
    double g_tx = 1.0;
    double g_rx = 1.0;
    double l_tx = 1.0;  ///< L(r_tx)
    double l_rx = 1.0;  ///< L(r_rx)
};

struct RawPowerCheck
{
    double empirical_mean = 0.0;
    double standard_error = 0.0;
    double prediction = 0.0;  ///< (eta P_tx / 2) sum g_tx g_rx L L
};

/// Averages eta P_tx |sum_k z_k b_k|^2 over random symbols b_k ~ Bernoulli(1/2)
/// and uniform channel phases, with fixed magnitudes. With
/// `symbols_always_one` every b_k = 1.
RawPowerCheck raw_backscatter_power(SystemParams const& p,
                                    std::span<BackscatterLink const> links,
                                    std::uint64_t n_draws, Engine& rng,
                                    bool symbols_always_one = false);

}  // namespace ambc::mc
