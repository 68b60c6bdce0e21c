#pragma once

#include "ambc/model.hpp"
#include "ambc/quadrature.hpp"

namespace ambc::analytic
{

/// Delay-tolerance ellipse with foci at the typical PT (origin) and the
/// typical PR (distance r0 along theta = 0).
struct DelayEllipse
{
    double l = 0.0;    ///< semi-major axis [m]
    double eps = 1.0;  ///< eccentricity r0 / (2 l)

    /// Focus-centered polar radius l (1 - eps^2) / (1 - eps cos theta).
    double radius(double theta) const;
};

DelayEllipse delay_ellipse(double r0, BetaGeomParams const& geom);

struct BetaEstimate
{
    double beta = 0.0;
    double theta0 = 0.0;  ///< angle where the ellipse crosses the cluster disk
    double l = 0.0;
    double eps = 1.0;
};

/// Crossing angle of the circle r = rho and the delay ellipse, clamped to
/// [0, pi]: 0 when the ellipse never leaves the disk, pi when the ellipse
/// contains the disk.
double theta0(double r0, double rho, double l, double eps);

/// Fraction of the typical cluster's mean backscattered power that arrives
/// within the tolerable delay.
BetaEstimate estimate_beta(double r0, double rho, double alpha, BetaGeomParams const& geom,
                           quad::QuadConfig const& cfg = {});

}  // namespace ambc::analytic
