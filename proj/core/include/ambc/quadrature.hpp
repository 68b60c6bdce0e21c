#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace ambc::quad
{

struct QuadConfig
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    std::size_t max_subdivisions = 2048;
};

struct QuadResult
{
    double value = 0.0;
    double abs_error = 0.0;   ///< estimated absolute error
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

/// Raised when the subdivision budget runs out before the tolerance is met.
/// Carries the best estimate reached.
class ConvergenceError : public std::runtime_error
{
  public:
    explicit ConvergenceError(QuadResult best);

    QuadResult const& best() const { return best_; }

  private:
    QuadResult best_;
};

using Integrand = std::function<double(double)>;
using PolarIntegrand = std::function<double(double r, double theta)>;
using RadialLimit = std::function<double(double theta)>;

/// Globally adaptive 21-point Gauss-Kronrod integration over [a, b].
/// The integrand is never evaluated at the endpoints.
QuadResult integrate_1d(Integrand const& f, double a, double b, QuadConfig const& cfg = {});

/// Integral over [0, inf) through t = -ln(u), u in (0, 1].
QuadResult integrate_semi_infinite(Integrand const& f, QuadConfig const& cfg = {});

/// \int_{theta_a}^{theta_b} \int_0^{r_max(theta)} f(r, theta) r dr dtheta,
/// angle outer, radius inner.
QuadResult integrate_polar(PolarIntegrand const& f, RadialLimit const& r_max,
                           double theta_a, double theta_b, QuadConfig const& cfg = {});

}  // namespace ambc::quad
