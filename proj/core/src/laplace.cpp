// Laplace transform of the double-fading gain g = g1 g2, g_i ~ Exp(mu).
//
// Everything is reduced to mu = 1 through L(s; mu) = L(s / mu^2; 1), so a
// single immutable table serves every parameter set.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ambc/analytic.hpp"

namespace ambc::analytic
{
namespace
{

quad::QuadConfig const kTight{1e-13, 1e-300, 4096};

double unit_laplace(double s)
{
    if (s == 0.0) return 1.0;
    return quad::integrate_semi_infinite(
               [s](double t) { return std::exp(-t) / (s * t + 1.0); }, kTight)
        .value;
}

double unit_complement(double s)
{
    if (s == 0.0) return 0.0;
    return quad::integrate_semi_infinite(
               [s](double t) {
                   double const st = s * t;
                   return std::exp(-t) * st / (st + 1.0);
               },
               kTight)
        .value;
}

// d/ds of the complement.
double unit_complement_slope(double s)
{
    return quad::integrate_semi_infinite(
               [s](double t) {
                   double const d = s * t + 1.0;
                   return std::exp(-t) * t / (d * d);
               },
               kTight)
        .value;
}

// Cubic Hermite table of y = ln C(s) over x = ln s with exact slopes.
class ComplementTable
{
  public:
    static constexpr double log_min = -6.0 * 2.302585092994046;
    static constexpr double log_max = 6.0 * 2.302585092994046;
    static constexpr int per_decade = 40;

    ComplementTable()
    {
        int const n = 12 * per_decade + 1;
        step_ = (log_max - log_min) / (n - 1);
        y_.resize(n);
        dy_.resize(n);
        for (int i = 0; i < n; ++i)
        {
            double const s = std::exp(log_min + i * step_);
            double const c = unit_complement(s);
            y_[i] = std::log(c);
            dy_[i] = s * unit_complement_slope(s) / c;
        }
    }

    double operator()(double s) const
    {
        double const x = std::log(s);
        double const pos = (x - log_min) / step_;
        auto const i = std::min(static_cast<std::size_t>(pos), y_.size() - 2);
        double const t = pos - static_cast<double>(i);
        double const t2 = t * t;
        double const t3 = t2 * t;
        double const h00 = 2 * t3 - 3 * t2 + 1;
        double const h10 = t3 - 2 * t2 + t;
        double const h01 = -2 * t3 + 3 * t2;
        double const h11 = t3 - t2;
        double const y = h00 * y_[i] + h10 * step_ * dy_[i] + h01 * y_[i + 1]
                         + h11 * step_ * dy_[i + 1];
        return std::exp(y);
    }

  private:
    double step_ = 0.0;
    std::vector<double> y_;
    std::vector<double> dy_;
};

ComplementTable const& table()
{
    static ComplementTable const instance;
    return instance;
}

void check_args(double s, double mu)
{
    if (!(s >= 0.0)) throw std::domain_error("Laplace transform argument must be >= 0");
    if (!(mu > 0.0)) throw std::domain_error("fading rate mu must be > 0");
}

}  // namespace

double laplace_double_fading(double s, double mu)
{
    check_args(s, mu);
    return unit_laplace(s / (mu * mu));
}

double laplace_double_fading_complement(double s, double mu)
{
    check_args(s, mu);
    return unit_complement(s / (mu * mu));
}

double cached_laplace_complement(double s, double mu)
{
    check_args(s, mu);
    double const u = s / (mu * mu);
    if (u == 0.0) return 0.0;
    double const x = std::log(u);
    if (x < ComplementTable::log_min)
    {
        // E[g^n] = (n!)^2 at mu = 1, so 1 - L = s - 2 s^2 + 6 s^3 - ...
        return u * (1.0 - u * (2.0 - 6.0 * u));
    }
    if (x > ComplementTable::log_max) return unit_complement(u);
    return table()(u);
}

double hypoexp_cdf(double g, double mu1, double mu2, double w1, double w2)
{
    if (!(mu1 > 0.0) || !(mu2 > 0.0)) throw std::domain_error("hypoexp_cdf: rates must be > 0");
    if (!(w1 >= 0.0) || !(w2 >= 0.0)) throw std::domain_error("hypoexp_cdf: weights must be >= 0");
    if (w1 == 0.0 && w2 == 0.0) throw std::domain_error("hypoexp_cdf: both weights are zero");
    if (g <= 0.0) return 0.0;

    // Effective rates; a zero weight means that term is identically 0.
    if (w1 == 0.0) return -std::expm1(-(mu2 / w2) * g);
    if (w2 == 0.0) return -std::expm1(-(mu1 / w1) * g);
    // The survival function is symmetric in (m1, m2); order them so the
    // expm1 argument below is never positive.
    double const m1 = std::max(mu1 / w1, mu2 / w2);
    double const m2 = std::min(mu1 / w1, mu2 / w2);

    // Survival = [m1 e^{-m2 g} - m2 e^{-m1 g}] / (m1 - m2)
    //          = e^{-m2 g} [1 - m2 expm1(-(m1-m2) g) / (m1-m2)].
    double const d = m1 - m2;
    double const ratio = d == 0.0 ? -g : std::expm1(-d * g) / d;
    double const survival = std::exp(-m2 * g) * (1.0 - m2 * ratio);
    return std::clamp(1.0 - survival, 0.0, 1.0);
}

}  // namespace ambc::analytic
