#include "ambc/beta_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ambc::analytic
{
namespace
{

// L(r) L(|x - PR|) for a BT at polar (r, theta) around the PT.
double cascaded_path_loss(double r, double theta, double r0, double alpha)
{
    double const r_rx =
        std::sqrt(std::max(0.0, r * r + r0 * r0 - 2.0 * r * r0 * std::cos(theta)));
    return path_loss(r, alpha) * path_loss(r_rx, alpha);
}

}  // namespace

double DelayEllipse::radius(double theta) const
{
    double const semi_latus = l * (1.0 - eps * eps);
    if (semi_latus <= 0.0) return 0.0;
    return semi_latus / (1.0 - eps * std::cos(theta));
}

DelayEllipse delay_ellipse(double r0, BetaGeomParams const& geom)
{
    validated(geom);
    if (!(r0 > 0.0)) throw std::domain_error("delay_ellipse: r0 must be > 0");
    double const l = 0.5 * (r0 + geom.v_c * geom.delta_tau());
    return {l, std::min(1.0, r0 / (2.0 * l))};
}

double theta0(double r0, double rho, double l, double eps)
{
    if (!(rho > 0.0)) throw std::domain_error("theta0: rho must be > 0");
    if (!(l >= 0.5 * r0 * (1.0 - 1e-12)))
        throw std::domain_error("theta0: semi-major axis shorter than r0/2");
    if (eps <= 0.0) return l >= rho ? std::numbers::pi : 0.0;  // circle
    double const arg = 1.0 / eps - l * (1.0 - eps * eps) / (eps * rho);
    if (arg >= 1.0) return 0.0;
    if (arg <= -1.0) return std::numbers::pi;
    return std::acos(arg);
}

BetaEstimate estimate_beta(double r0, double rho, double alpha, BetaGeomParams const& geom,
                           quad::QuadConfig const& cfg)
{
    if (!(rho > 0.0)) throw std::domain_error("estimate_beta: rho must be > 0");
    if (!(alpha > 0.0)) throw std::domain_error("estimate_beta: alpha must be > 0");
    DelayEllipse const ellipse = delay_ellipse(r0, geom);

    BetaEstimate out;
    out.l = ellipse.l;
    out.eps = ellipse.eps;
    out.theta0 = theta0(r0, rho, ellipse.l, ellipse.eps);

    auto const pl = [r0, alpha](double r, double theta) {
        return cascaded_path_loss(r, theta, r0, alpha);
    };
    auto const disk = [rho](double) { return rho; };
    auto const inside_ellipse = [&ellipse, rho](double theta) {
        return std::min(rho, ellipse.radius(theta));
    };

    double const total = quad::integrate_polar(pl, disk, 0.0, std::numbers::pi, cfg).value;
    double const pi = std::numbers::pi;
    double const near = out.theta0 > 0.0
                            ? quad::integrate_polar(pl, disk, 0.0, out.theta0, cfg).value
                            : 0.0;
    double const far = out.theta0 < pi
                           ? quad::integrate_polar(pl, inside_ellipse, out.theta0, pi, cfg).value
                           : 0.0;
    out.beta = std::clamp((near + far) / total, 0.0, 1.0);
    if (out.theta0 == pi) out.beta = 1.0;
    return out;
}

}  // namespace ambc::analytic
