#include "ambc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <thread>
#include <tuple>

namespace ambc::mc
{
namespace
{

using std::numbers::pi;

Point uniform_in_disk(double radius, Engine& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double const r = radius * std::sqrt(unit(rng));
    double const phi = 2.0 * pi * unit(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

Cluster sample_backscatterers(SystemParams const& p, Engine& rng)
{
    std::exponential_distribution<double> fading(p.mu);
    Cluster cluster;
    for (Point const& offset : sample_cluster(p.lambda_b, p.rho, rng))
    {
        double const g_tx = fading(rng);
        double const g_rx = fading(rng);
        cluster.push_back({offset, g_tx, g_rx});
    }
    return cluster;
}

// Sum over one cluster of g_tx g_rx L(r_tx) L(r_rx) for a parent at `parent`.
double cascaded_power(Cluster const& cluster, Point parent, double alpha)
{
    double sum = 0.0;
    for (Backscatterer const& bt : cluster)
    {
        Point const at{parent.x + bt.offset.x, parent.y + bt.offset.y};
        sum += bt.g_tx * bt.g_rx * path_loss(norm(bt.offset), alpha) * path_loss(norm(at), alpha);
    }
    return sum;
}

unsigned worker_count(RunOptions const& options, std::uint64_t n_trials)
{
    unsigned n = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(1, n_trials)));
}

// Runs body(i) for i in [0, n) over contiguous blocks on `workers` threads.
template <typename Body>
void parallel_for(std::uint64_t n, unsigned workers, Body const& body)
{
    if (workers <= 1)
    {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    std::uint64_t const block = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
    {
        std::uint64_t const begin = w * block;
        std::uint64_t const end = std::min(n, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i) body(i);
        });
    }
}

}  // namespace

double norm(Point p)
{
    return std::hypot(p.x, p.y);
}

std::vector<Point> sample_ppp_annulus(double lambda_p, double r0, double R, Engine& rng)
{
    if (!(r0 > 0.0 && r0 < R)) throw std::domain_error("sample_ppp_annulus: need 0 < r0 < R");
    if (!(lambda_p >= 0.0)) throw std::domain_error("sample_ppp_annulus: lambda_p must be >= 0");
    std::vector<Point> points;
    if (lambda_p == 0.0) return points;

    double const area = pi * (R * R - r0 * r0);
    std::poisson_distribution<std::uint64_t> count(lambda_p * area);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t const n = count(rng);
    points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
    {
        double r = std::sqrt(r0 * r0 + unit(rng) * (R * R - r0 * r0));
        // Keep the open annulus even at the rounding boundary.
        r = std::clamp(r, std::nextafter(r0, R), std::nextafter(R, r0));
        double const phi = 2.0 * pi * unit(rng);
        points.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return points;
}

std::vector<Point> sample_cluster(double lambda_b, double rho, Engine& rng)
{
    if (!(rho > 0.0)) throw std::domain_error("sample_cluster: rho must be > 0");
    if (!(lambda_b >= 0.0)) throw std::domain_error("sample_cluster: lambda_b must be >= 0");
    std::vector<Point> offsets;
    if (lambda_b == 0.0) return offsets;

    std::poisson_distribution<std::uint64_t> count(lambda_b * pi * rho * rho);
    std::uint64_t const n = count(rng);
    offsets.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) offsets.push_back(uniform_in_disk(rho, rng));
    return offsets;
}

NetworkRealization sample_realization(SystemParams const& p, Scenario scenario, Engine& rng)
{
    std::exponential_distribution<double> fading(p.mu);
    NetworkRealization net;
    net.typical_pt = {p.r0, 0.0};
    net.typical_gain = fading(rng);

    net.pt_locations = sample_ppp_annulus(p.lambda_p, p.r0, p.R, rng);
    net.pt_gains.reserve(net.pt_locations.size());
    for (std::size_t i = 0; i < net.pt_locations.size(); ++i) net.pt_gains.push_back(fading(rng));

    if (scenario != Scenario::benchmark) net.typical_cluster = sample_backscatterers(p, rng);
    if (scenario == Scenario::scenario1)
    {
        net.atypical_clusters.reserve(net.pt_locations.size());
        for (std::size_t i = 0; i < net.pt_locations.size(); ++i)
            net.atypical_clusters.push_back(sample_backscatterers(p, rng));
    }
    return net;
}

Powers realize_powers(SystemParams const& p, NetworkRealization const& net, Scenario scenario)
{
    if (net.pt_gains.size() != net.pt_locations.size())
        throw ContractError("realize_powers: one gain per atypical PT required");
    if (scenario == Scenario::benchmark && !net.typical_cluster.empty())
        throw ContractError("realize_powers: benchmark realization has BTs");
    if (scenario != Scenario::scenario1 && !net.atypical_clusters.empty())
        throw ContractError("realize_powers: atypical clusters outside scenario 1");
    if (scenario == Scenario::scenario1 && net.atypical_clusters.size() != net.pt_locations.size())
        throw ContractError("realize_powers: scenario 1 needs one cluster per atypical PT");

    double const backscatter = 0.5 * p.eta * p.p_tx;
    Powers out;
    out.s_pt = net.typical_gain * path_loss(norm(net.typical_pt), p.alpha) * p.p_tx;
    out.s_bt = backscatter * cascaded_power(net.typical_cluster, net.typical_pt, p.alpha);
    for (std::size_t i = 0; i < net.pt_locations.size(); ++i)
    {
        out.i_pt += net.pt_gains[i] * path_loss(norm(net.pt_locations[i]), p.alpha) * p.p_tx;
        if (scenario == Scenario::scenario1)
            out.i_bt += backscatter
                        * cascaded_power(net.atypical_clusters[i], net.pt_locations[i], p.alpha);
    }
    return out;
}

double sinr(SystemParams const& p, Powers const& w, Metric metric)
{
    double const noise = metric == Metric::sinr ? p.sigma2 : 0.0;
    double const num = w.s_pt + p.beta * w.s_bt;
    double const den = (1.0 - p.beta) * w.s_bt + w.i_pt + w.i_bt + noise;
    if (den == 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return num / den;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials)
{
    if (trials == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    double const n = static_cast<double>(trials);
    double const phat = static_cast<double>(successes) / n;
    double const z2 = z * z;
    double const denom = 1.0 + z2 / n;
    double const center = (phat + z2 / (2.0 * n)) / denom;
    double const half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::clamp(std::min(center - half, phat), 0.0, 1.0),
            std::clamp(std::max(center + half, phat), 0.0, 1.0)};
}

std::vector<Powers> simulate_powers(SystemParams const& params, Scenario scenario,
                                    std::uint64_t n_trials, std::uint64_t master_seed,
                                    RunOptions const& options)
{
    SystemParams const& p = validated(params);
    std::vector<Powers> powers(n_trials);
    double const rayleigh_rate = pi * p.lambda_p;

    parallel_for(n_trials, worker_count(options, n_trials), [&](std::uint64_t i) {
        Engine rng = make_substream(master_seed, i);
        SystemParams trial = p;
        if (options.marginal_r0)
        {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            double const r = std::sqrt(-std::log1p(-unit(rng)) / rayleigh_rate);
            if (!(r > 0.0) || r >= p.R) return;  // outage
            trial.r0 = r;
        }
        NetworkRealization const net = sample_realization(trial, scenario, rng);
        powers[i] = realize_powers(trial, net, scenario);
    });
    return powers;
}

std::vector<double> simulate_sinr(SystemParams const& params, Scenario scenario, Metric metric,
                                  std::uint64_t n_trials, std::uint64_t master_seed,
                                  RunOptions const& options)
{
    auto const powers = simulate_powers(params, scenario, n_trials, master_seed, options);
    std::vector<double> ratios;
    ratios.reserve(powers.size());
    for (Powers const& w : powers) ratios.push_back(sinr(params, w, metric));
    return ratios;
}

CoverageEstimate coverage_from_samples(std::span<double const> ratios, double gamma_thr,
                                       std::uint64_t seed)
{
    CoverageEstimate est;
    est.n_trials = ratios.size();
    est.seed = seed;
    est.n_covered = static_cast<std::uint64_t>(
        std::count_if(ratios.begin(), ratios.end(), [&](double s) { return s >= gamma_thr; }));
    est.p_hat = est.n_trials == 0 ? 0.0
                                  : static_cast<double>(est.n_covered)
                                        / static_cast<double>(est.n_trials);
    std::tie(est.ci_low, est.ci_high) = wilson_interval(est.n_covered, est.n_trials);
    return est;
}

CoverageEstimate estimate_coverage(SystemParams const& p, Scenario scenario, Metric metric,
                                   std::uint64_t n_trials, std::uint64_t master_seed,
                                   RunOptions const& options)
{
    if (n_trials < 1) throw std::invalid_argument("estimate_coverage: n_trials must be >= 1");
    auto const ratios = simulate_sinr(p, scenario, metric, n_trials, master_seed, options);
    return coverage_from_samples(ratios, p.gamma_thr, master_seed);
}

RawPowerCheck raw_backscatter_power(SystemParams const& p, std::span<BackscatterLink const> links,
                                    std::uint64_t n_draws, Engine& rng, bool symbols_always_one)
{
    if (n_draws < 2) throw std::invalid_argument("raw_backscatter_power: n_draws must be >= 2");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    std::bernoulli_distribution symbol(0.5);

    std::vector<double> magnitude;
    magnitude.reserve(links.size());
    RawPowerCheck out;
    for (BackscatterLink const& k : links)
    {
        magnitude.push_back(std::sqrt(k.g_tx * k.g_rx * k.l_tx * k.l_rx));
        out.prediction += k.g_tx * k.g_rx * k.l_tx * k.l_rx;
    }
    out.prediction *= 0.5 * p.eta * p.p_tx;

    // Welford running mean/variance.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t n = 1; n <= n_draws; ++n)
    {
        std::complex<double> field{0.0, 0.0};
        for (double const a : magnitude)
        {
            double const theta_tx = phase(rng);
            double const theta_rx = phase(rng);
            bool const b = symbols_always_one || symbol(rng);
            if (b) field += std::polar(a, theta_tx + theta_rx);
        }
        double const power = p.eta * p.p_tx * std::norm(field);
        double const delta = power - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (power - mean);
    }
    out.empirical_mean = mean;
    out.standard_error = std::sqrt(m2 / static_cast<double>(n_draws - 1) / static_cast<double>(n_draws));
    return out;
}

}  // namespace ambc::mc
