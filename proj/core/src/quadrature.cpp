#include "ambc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace ambc::quad
{
namespace
{

// Kronrod 21-point abscissae (descending); odd indices are the 10-point
// Gauss nodes. Index 10 is the midpoint.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077589823346500, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(Segment const& other) const { return error < other.error; }
};

Segment gauss_kronrod_21(Integrand const& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double const f_center = f(center);

    double kronrod = kWgk[10] * f_center;
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f_lo{};
    std::array<double, 10> f_hi{};

    for (std::size_t j = 0; j < 10; ++j)
    {
        double const dx = half * kXgk[j];
        double const f1 = f(center - dx);
        double const f2 = f(center + dx);
        f_lo[j] = f1;
        f_hi[j] = f2;
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }

    double const mean = 0.5 * kronrod;
    double asc = kWgk[10] * std::abs(f_center - mean);
    for (std::size_t j = 0; j < 10; ++j)
        asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));

    double const value = kronrod * half;
    double const abs_h = std::abs(half);
    asc *= abs_h;
    abs_sum *= abs_h;

    // QUADPACK error scaling.
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * abs_sum, err);

    return {a, b, value, err};
}

double tolerance(QuadConfig const& cfg, double value)
{
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

void check_config(QuadConfig const& cfg)
{
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be > 0");
    if (cfg.max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
}

}  // namespace

ConvergenceError::ConvergenceError(QuadResult best)
    : std::runtime_error("quadrature did not converge: estimate "
                         + std::to_string(best.value) + ", error "
                         + std::to_string(best.abs_error) + " after "
                         + std::to_string(best.intervals) + " intervals"),
      best_(best)
{
}

QuadResult integrate_1d(Integrand const& f, double a, double b, QuadConfig const& cfg)
{
    check_config(cfg);
    if (!(a <= b)) throw std::invalid_argument("integrate_1d: requires a <= b");
    if (a == b) return {0.0, 0.0, 0, 0};

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod_21(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    std::size_t evaluations = 21;
    if (!std::isfinite(total) || !std::isfinite(total_err))
        throw ConvergenceError({total, total_err, evaluations, heap.size()});

    while (total_err > tolerance(cfg, total))
    {
        if (heap.size() >= cfg.max_subdivisions)
            throw ConvergenceError({total, total_err, evaluations, heap.size()});

        Segment worst = heap.top();
        double const mid = 0.5 * (worst.a + worst.b);
        // Interval too narrow to bisect further in floating point.
        if (!(mid > worst.a && mid < worst.b))
            throw ConvergenceError({total, total_err, evaluations, heap.size()});
        heap.pop();

        Segment left = gauss_kronrod_21(f, worst.a, mid);
        Segment right = gauss_kronrod_21(f, mid, worst.b);
        evaluations += 42;

        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        if (!std::isfinite(total) || !std::isfinite(total_err))
            throw ConvergenceError({total, total_err, evaluations, heap.size()});
    }

    // Re-sum to drop accumulated cancellation from the running updates.
    double value = 0.0;
    double err = 0.0;
    std::size_t const intervals = heap.size();
    while (!heap.empty())
    {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err, evaluations, intervals};
}

QuadResult integrate_semi_infinite(Integrand const& f, QuadConfig const& cfg)
{
    auto mapped = [&f](double u) {
        double const t = -std::log(u);
        return f(t) / u;
    };
    return integrate_1d(mapped, 0.0, 1.0, cfg);
}

QuadResult integrate_polar(PolarIntegrand const& f, RadialLimit const& r_max,
                           double theta_a, double theta_b, QuadConfig const& cfg)
{
    if (!(theta_a <= theta_b))
        throw std::invalid_argument("integrate_polar: requires theta_a <= theta_b");

    double inner_err = 0.0;
    std::size_t evaluations = 0;
    auto over_radius = [&](double theta) {
        double const upper = r_max(theta);
        if (!(upper >= 0.0))
            throw std::invalid_argument("integrate_polar: r_max(theta) must be >= 0");
        auto const inner = integrate_1d([&](double r) { return f(r, theta) * r; }, 0.0,
                                        upper, cfg);
        inner_err = std::max(inner_err, inner.abs_error);
        evaluations += inner.evaluations;
        return inner.value;
    };

    QuadResult outer = integrate_1d(over_radius, theta_a, theta_b, cfg);
    outer.abs_error += inner_err * (theta_b - theta_a);
    outer.evaluations = evaluations;
    return outer;
}

}  // namespace ambc::quad
