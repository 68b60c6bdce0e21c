#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ambc/analytic.hpp"
#include "ambc/montecarlo.hpp"
#include "oracles.hpp"

using namespace ambc;
using namespace ambc::analytic;
using std::numbers::pi;

namespace
{

double beta_star(SystemParams const& p)
{
    return p.gamma_thr / (p.gamma_thr + 1.0);
}

struct MeanSe
{
    double mean = 0.0;
    double se = 0.0;
};

template <typename Draw>
MeanSe sample_mean(std::uint64_t n, Draw draw)
{
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
    {
        double const v = draw();
        s += v;
        s2 += v * v;
    }
    double const m = s / static_cast<double>(n);
    return {m, std::sqrt((s2 / static_cast<double>(n) - m * m) / static_cast<double>(n))};
}

}  // namespace

TEST_SUITE("analytic")
{
    TEST_CASE("cluster power coefficient")
    {
        CHECK(gamma_vt(0.0, 10.0, 3.5, 1.0) == 0.0);
        for (double rho : {1.0, 10.0, 37.0})
            for (double mu : {1.0, 0.25})
            {
                double const closed = pi / mu * 0.1 * std::log1p(rho * rho);
                CHECK(gamma_vt(0.1, rho, 2.0, mu) == doctest::Approx(closed).epsilon(1e-8));
            }
        auto f = [](double r) { return r / (std::pow(r, 3.5) + 1.0); };
        double const ref = 2.0 * pi * 0.1 * oracle::simpson(f, 0.0, 10.0, 10'000'000);
        CHECK(gamma_vt(0.1, 10.0, 3.5, 1.0) == doctest::Approx(ref).epsilon(1e-9));
        CHECK_THROWS(gamma_vt(-1.0, 10.0, 3.5, 1.0));
        SystemParams const p;
        CHECK(vt_weight(p) == doctest::Approx(0.25 * gamma_vt(0.1, 10.0, 3.5, 1.0)));
    }

    TEST_CASE("branch selection")
    {
        SystemParams p;
        p.beta = 0.0;
        CHECK(branch_of(p) == Branch::interference_dominated);
        p.beta = beta_star(p);
        CHECK(std::abs(backscatter_coefficient(p)) < 1e-15);
        p.beta = 0.8;
        CHECK(branch_of(p) == Branch::signal_enhancing);
        CHECK_THROWS_AS(xi1(p), BranchError);
    }

    TEST_CASE("typical-cluster factor limits")
    {
        SystemParams p;
        p.beta = 0.3;
        p.eta = 0.0;
        CHECK(xi1(p) == 1.0);
        p = {};
        p.beta = beta_star(p);
        CHECK(xi1(p) == doctest::Approx(1.0).epsilon(1e-12));
        p = {};
        p.beta = 0.3;
        double const x = xi1(p);
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }

    TEST_CASE("typical-cluster factor against sampled clusters")
    {
        SystemParams p;
        p.beta = 0.5;
        double const c = backscatter_coefficient(p);
        double const scale = p.mu * c / path_loss(p.r0, p.alpha) * 0.5 * p.eta;

        std::mt19937_64 rng(3);
        std::poisson_distribution<int> count(p.lambda_b * pi * p.rho * p.rho);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::exponential_distribution<double> g(p.mu);
        auto const est = sample_mean(100'000, [&] {
            double sum = 0.0;
            for (int k = count(rng); k > 0; --k)
            {
                double const r = p.rho * std::sqrt(u(rng));
                double const phi = 2.0 * pi * u(rng);
                double const rx = std::hypot(r * std::cos(phi) - p.r0, r * std::sin(phi));
                sum += g(rng) * g(rng) * oracle::path_loss(r, p.alpha) * oracle::path_loss(rx, p.alpha);
            }
            return std::exp(-scale * sum);
        });
        CHECK(std::abs(xi1(p) - est.mean) < 4.0 * est.se);
    }

    TEST_CASE("interference factor")
    {
        SystemParams p;
        p.lambda_p = 1e-300;
        CHECK(interference_factor(p, p.gamma_thr, true) == doctest::Approx(1.0).epsilon(1e-12));

        p = {};
        p.lambda_b = 0.0;
        CHECK(interference_factor(p, p.gamma_thr, true)
              == interference_factor(p, p.gamma_thr, false));

        p = {};
        CHECK(interference_factor(p, p.gamma_thr, true)
              < interference_factor(p, p.gamma_thr, false));
    }

    TEST_CASE("interference factor against sampled PPPs")
    {
        SystemParams const p;
        double const scale = p.mu * p.gamma_thr / path_loss(p.r0, p.alpha);
        std::mt19937_64 rng(5);
        std::poisson_distribution<int> count(p.lambda_p * pi * (p.R * p.R - p.r0 * p.r0));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::exponential_distribution<double> g(p.mu);
        auto const est = sample_mean(100'000, [&] {
            double sum = 0.0;
            for (int k = count(rng); k > 0; --k)
            {
                double const r = std::sqrt(p.r0 * p.r0 + u(rng) * (p.R * p.R - p.r0 * p.r0));
                sum += g(rng) * oracle::path_loss(r, p.alpha);
            }
            return std::exp(-scale * sum);
        });
        CHECK(std::abs(interference_factor(p, p.gamma_thr, false) - est.mean) < 4.0 * est.se);
    }

    TEST_CASE("noise factor")
    {
        SystemParams p;
        p.mu = 1.0;
        p.gamma_thr = 2.0;
        p.p_tx = 1.0;
        p.sigma2 = path_loss(p.r0, p.alpha) / 10.0;
        CHECK(noise_factor(p, 1.0) == doctest::Approx(std::exp(-0.2)).epsilon(1e-14));
        CHECK(noise_factor(p, 1e300) == doctest::Approx(1.0).epsilon(1e-14));
        p.sigma2 = 0.0;
        CHECK(noise_factor(p, 1.0) == 1.0);
    }

    TEST_CASE("benchmark against independent PGFL evaluation")
    {
        SystemParams const p;
        for (Metric m : {Metric::sinr, Metric::sir})
        {
            double const sigma2 = m == Metric::sir ? 0.0 : p.sigma2;
            double const ref = oracle::benchmark_coverage(p.lambda_p, p.r0, p.R, p.alpha, p.mu,
                                                          p.gamma_thr, p.p_tx, sigma2);
            CHECK(coverage(p, Scenario::benchmark, m) == doctest::Approx(ref).epsilon(1e-8));
        }
    }

    TEST_CASE("empty clusters reduce to the benchmark")
    {
        SystemParams p;
        p.lambda_b = 0.0;
        for (double beta : {0.0, 0.5, 0.9})
        {
            p.beta = beta;
            for (Metric m : {Metric::sinr, Metric::sir})
            {
                double const b = coverage(p, Scenario::benchmark, m);
                CHECK(coverage(p, Scenario::scenario1, m) == b);
                CHECK(coverage(p, Scenario::scenario2, m) == b);
            }
        }
    }

    TEST_CASE("benchmark ignores beta")
    {
        SystemParams p;
        p.beta = 0.1;
        double const a = coverage(p, Scenario::benchmark, Metric::sinr);
        p.beta = 0.95;
        CHECK(coverage(p, Scenario::benchmark, Metric::sinr) == a);
    }

    TEST_CASE("one-sided limits agree at the branch switch")
    {
        SystemParams p;
        double const bs = beta_star(p);
        for (Scenario s : {Scenario::scenario1, Scenario::scenario2})
            for (Metric m : {Metric::sinr, Metric::sir})
            {
                p.beta = bs - 1e-9;
                auto const left = evaluate_coverage(p, s, m);
                p.beta = bs + 1e-9;
                auto const right = evaluate_coverage(p, s, m);
                CHECK(left.terms.branch == Branch::interference_dominated);
                CHECK(right.terms.branch == Branch::signal_enhancing);
                CHECK(std::abs(left.probability - right.probability) < 1e-6);

                p.beta = bs - 1e-4;
                double const l4 = coverage(p, s, m);
                p.beta = bs + 1e-4;
                CHECK(std::abs(l4 - coverage(p, s, m)) < 1e-3);
            }
    }

    TEST_CASE("unit effective gain is regular")
    {
        // Pick beta so that gamma_tilde = 1 exactly.
        SystemParams p;
        double const w = vt_weight(p);
        p.beta = (p.gamma_thr + 1.0 / w) / (p.gamma_thr + 1.0);
        if (p.beta <= 1.0)
        {
            auto const at = evaluate_coverage(p, Scenario::scenario2, Metric::sinr);
            CHECK(at.terms.gamma_tilde == doctest::Approx(1.0).epsilon(1e-12));
            p.beta += 1e-7;
            double const near = coverage(p, Scenario::scenario2, Metric::sinr);
            CHECK(std::abs(at.probability - near) < 1e-5);
        }
    }

    TEST_CASE("coverage is a probability and ordered")
    {
        SystemParams p;
        for (double beta = 0.0; beta <= 1.0; beta += 0.05)
        {
            p.beta = beta;
            for (Metric m : {Metric::sinr, Metric::sir})
            {
                auto const r1 = evaluate_coverage(p, Scenario::scenario1, m);
                auto const r2 = evaluate_coverage(p, Scenario::scenario2, m);
                CHECK_FALSE(r1.clamped);
                CHECK_FALSE(r2.clamped);
                CHECK(r1.probability >= 0.0);
                CHECK(r2.probability <= 1.0);
                CHECK(r2.probability >= r1.probability);
            }
            CHECK(coverage(p, Scenario::scenario2, Metric::sir)
                  >= coverage(p, Scenario::scenario2, Metric::sinr));
        }
    }

    TEST_CASE("threshold extremes")
    {
        SystemParams p;
        p.gamma_thr = 1e-12;
        CHECK(coverage(p, Scenario::scenario1, Metric::sinr) == doctest::Approx(1.0).epsilon(1e-6));
        p.gamma_thr = 1e9;
        p.beta = 0.0;
        CHECK(coverage(p, Scenario::scenario1, Metric::sinr) < 1e-6);
    }

    TEST_CASE("invalid parameters are rejected")
    {
        SystemParams p;
        p.r0 = 120.0;
        CHECK_THROWS_AS(coverage(p, Scenario::scenario2, Metric::sinr), ValidationError);
    }

    TEST_CASE("operating point inside the Monte Carlo interval")
    {
        SystemParams const p;
        double const a = coverage(p, Scenario::scenario2, Metric::sinr);
        auto const est = mc::estimate_coverage(p, Scenario::scenario2, Metric::sinr, 50000, 20190601);
        CHECK(a >= est.ci_low);
        CHECK(a <= est.ci_high);
    }

    TEST_CASE("marginal coverage")
    {
        SystemParams p;
        p.lambda_b = 0.0;
        p.gamma_thr = 1e-12;
        p.sigma2 = 0.0;
        CHECK(marginal_coverage(p, Scenario::benchmark, Metric::sir)
              == doctest::Approx(1.0 - std::exp(-pi * p.lambda_p * p.R * p.R)).epsilon(1e-6));

        SystemParams const d;
        double const a = marginal_coverage(d, Scenario::benchmark, Metric::sir);
        mc::RunOptions opts;
        opts.marginal_r0 = true;
        std::uint64_t const n = 100'000;
        auto const est = mc::estimate_coverage(d, Scenario::benchmark, Metric::sir, n, 42, opts);
        double const se = std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
        CHECK(std::abs(a - est.p_hat) < 4.0 * se);
    }

    TEST_CASE("marginal benchmark SINR rises with PT density")
    {
        SystemParams lo;
        SystemParams hi;
        hi.lambda_p = 2.0 * lo.lambda_p;
        mc::RunOptions opts;
        opts.marginal_r0 = true;
        std::uint64_t const n = 100'000;
        auto const mlo = mc::estimate_coverage(lo, Scenario::benchmark, Metric::sinr, n, 1, opts);
        auto const mhi = mc::estimate_coverage(hi, Scenario::benchmark, Metric::sinr, n, 2, opts);
        CHECK(mhi.ci_low > mlo.ci_high);
        CHECK(marginal_coverage(hi, Scenario::benchmark, Metric::sinr)
              > marginal_coverage(lo, Scenario::benchmark, Metric::sinr));
    }
}
