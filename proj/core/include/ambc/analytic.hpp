#pragma once

#include <stdexcept>

#include "ambc/model.hpp"
#include "ambc/quadrature.hpp"

namespace ambc::analytic
{

/// Thrown when an interference-dominated-only quantity is requested with
/// Gamma(1-beta) - beta < 0.
class BranchError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/// Which closed form governs the coverage at the given (beta, Gamma).
enum class Branch
{
    /// Gamma(1-beta) - beta >= 0: typical-cluster power acts as net interference.
    interference_dominated,
    /// Gamma(1-beta) - beta < 0: typical cluster replaced by a virtual transmitter.
    signal_enhancing,
};

/// Gamma(1-beta) - beta.
double backscatter_coefficient(SystemParams const& p);
Branch branch_of(SystemParams const& p);

/// Aggregate cluster-received power normalized by P_tx:
/// (2 pi / mu) lambda_b \int_0^rho r / (r^alpha + 1) dr.
double gamma_vt(double lambda_b, double rho, double alpha, double mu);

/// Power weight of a cluster's virtual transmitter as seen at a receiver,
/// i.e. gamma_vt scaled by the eta/2 reflection and symbol-energy factor
/// that applies to every backscattered path.
double vt_weight(SystemParams const& p);

/// E[exp(-s g)] for g = g1 g2, g_i ~ Exp(mu), by direct quadrature.
double laplace_double_fading(double s, double mu);

/// 1 - E[exp(-s g)], evaluated without cancellation.
double laplace_double_fading_complement(double s, double mu);

/// Same as laplace_double_fading_complement, served from a precomputed
/// interpolation table (direct quadrature outside its range).
double cached_laplace_complement(double s, double mu);

/// CDF of w1 g1 + w2 g2 with g_i ~ Exp(mu_i).
double hypoexp_cdf(double g, double mu1, double mu2, double w1, double w2);

/// Typical-cluster factor of the interference-dominated branch.
double xi1(SystemParams const& p, quad::QuadConfig const& cfg = {});

/// PGFL of the atypical PTs (and, with `include_vt`, their clusters' virtual
/// transmitters) at effective threshold `gamma_eff`.
double interference_factor(SystemParams const& p, double gamma_eff, bool include_vt,
                           quad::QuadConfig const& cfg = {});

/// Same, with an explicit virtual-transmitter weight (0 disables it).
double interference_factor_weighted(SystemParams const& p, double gamma_eff,
                                    double vt_weight, quad::QuadConfig const& cfg = {});

/// exp(-mu sigma2 Gamma / (scale L(r0) P_tx)).
double noise_factor(SystemParams const& p, double scale);

struct CoverageTerms
{
    Branch branch = Branch::interference_dominated;
    double xi1 = 1.0;          ///< typical-cluster factor (1 on the signal-enhancing branch)
    double xi_interf = 1.0;    ///< outer-cluster interference factor at Gamma
    double xi_scaled = 1.0;    ///< same factor at Gamma / gamma_tilde (signal-enhancing only)
    double zeta = 1.0;         ///< noise factor at Gamma
    double zeta_scaled = 1.0;  ///< noise factor at Gamma / gamma_tilde (signal-enhancing only)
    double gamma_vt = 0.0;     ///< cluster power coefficient
    double vt_weight = 0.0;    ///< eta/2 * gamma_vt
    double gamma_tilde = 0.0;  ///< -(Gamma(1-beta) - beta) * vt_weight (signal-enhancing only)
};

struct CoverageResult
{
    double probability = 0.0;  ///< clamped to [0, 1]
    double raw = 0.0;          ///< before clamping
    bool clamped = false;      ///< raw left [0,1] by more than the quadrature tolerance
    CoverageTerms terms;
};

CoverageResult evaluate_coverage(SystemParams const& p, Scenario scenario, Metric metric,
                                 quad::QuadConfig const& cfg = {});

double coverage(SystemParams const& p, Scenario scenario, Metric metric,
                quad::QuadConfig const& cfg = {});

/// Coverage de-conditioned over a Rayleigh-distributed r0 (nearest-PT
/// distance); `p.r0` is ignored. Distances >= R count as outage.
double marginal_coverage(SystemParams const& p, Scenario scenario, Metric metric,
                         quad::QuadConfig const& cfg = {});

}  // namespace ambc::analytic
