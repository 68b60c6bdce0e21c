#include "ambc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ambc::analytic
{
namespace
{

using std::numbers::pi;

// (r0^alpha + 1) / (r^alpha + 1) = L(r) / L(r0).
double relative_gain(SystemParams const& p, double r)
{
    return (std::pow(p.r0, p.alpha) + 1.0) / (std::pow(r, p.alpha) + 1.0);
}

// Normalized noise-to-signal exponent mu sigma2 Gamma / (L(r0) P_tx).
double noise_exponent(SystemParams const& p)
{
    return p.mu * p.sigma2 * p.gamma_thr / (path_loss(p.r0, p.alpha) * p.p_tx);
}

// (gamma_tilde F(mu/gamma_tilde) - F(mu)) / (gamma_tilde - 1) rewritten as
// F1 + F0 * expm1(-(gt - 1) D) / (gt - 1), with
// F(mu) - F(mu/gt) exponent difference = (gt - 1) D computed pointwise
// without subtraction. Regular at gt = 1, where it is the Erlang-2 limit.
double signal_enhancing_combination(SystemParams const& p, double gt, double weight,
                                    double f_scaled, double f_unscaled,
                                    quad::QuadConfig const& cfg)
{
    double const w = weight;
    auto integrand = [&](double r) {
        double const u0 = p.gamma_thr * relative_gain(p, r);
        double const u1 = u0 / gt;
        double const num = u0 * ((1.0 + w) + w * (u0 + u1));
        double const den = (1.0 + u0) * (1.0 + w * u0) * (1.0 + u1) * (1.0 + w * u1);
        return num / den * r;
    };
    double const radial = quad::integrate_1d(integrand, p.r0, p.R, cfg).value;
    double const d = -(2.0 * pi * p.lambda_p * radial + noise_exponent(p)) / gt;

    double const x = gt - 1.0;
    double const ratio = std::abs(x) < 1e-9 ? -d : std::expm1(-x * d) / x;
    return f_scaled + f_unscaled * ratio;
}

}  // namespace

double backscatter_coefficient(SystemParams const& p)
{
    return p.gamma_thr * (1.0 - p.beta) - p.beta;
}

Branch branch_of(SystemParams const& p)
{
    return backscatter_coefficient(p) >= 0.0 ? Branch::interference_dominated
                                             : Branch::signal_enhancing;
}

double gamma_vt(double lambda_b, double rho, double alpha, double mu)
{
    if (!(lambda_b >= 0.0) || !(rho > 0.0) || !(alpha > 0.0) || !(mu > 0.0))
        throw std::domain_error("gamma_vt: invalid arguments");
    if (lambda_b == 0.0) return 0.0;
    double const radial =
        quad::integrate_1d([alpha](double r) { return r / (std::pow(r, alpha) + 1.0); }, 0.0,
                           rho, {1e-12, 1e-300, 2048})
            .value;
    return 2.0 * pi / mu * lambda_b * radial;
}

double vt_weight(SystemParams const& p)
{
    return 0.5 * p.eta * gamma_vt(p.lambda_b, p.rho, p.alpha, p.mu);
}

double xi1(SystemParams const& p, quad::QuadConfig const& cfg)
{
    double const c = backscatter_coefficient(p);
    if (c < 0.0) throw BranchError("xi1 requires Gamma(1-beta) - beta >= 0");
    if (c == 0.0 || p.eta == 0.0 || p.lambda_b == 0.0) return 1.0;

    double const scale = p.mu * p.eta * c / (2.0 * path_loss(p.r0, p.alpha));
    auto const f = [&](double r, double theta) {
        double const r_rx = std::sqrt(std::max(
            0.0, r * r + p.r0 * p.r0 - 2.0 * r * p.r0 * std::cos(theta)));
        double const a = scale * path_loss(r, p.alpha) * path_loss(r_rx, p.alpha);
        return cached_laplace_complement(a, p.mu);
    };
    double const rho = p.rho;
    double const half_disk =
        quad::integrate_polar(f, [rho](double) { return rho; }, 0.0, pi, cfg).value;
    return std::exp(-p.lambda_b * 2.0 * half_disk);
}

double interference_factor_weighted(SystemParams const& p, double gamma_eff, double weight,
                                    quad::QuadConfig const& cfg)
{
    if (!(gamma_eff > 0.0)) throw std::domain_error("interference_factor: gamma_eff must be > 0");
    if (!(weight >= 0.0)) throw std::domain_error("interference_factor: weight must be >= 0");
    // 1 - 1/((1+u)(1+w u)) = (u (1 + w) + w u^2) / ((1+u)(1+w u))
    auto integrand = [&](double r) {
        double const u = gamma_eff * relative_gain(p, r);
        double const num = u * (1.0 + weight) + weight * u * u;
        return num / ((1.0 + u) * (1.0 + weight * u)) * r;
    };
    double const radial = quad::integrate_1d(integrand, p.r0, p.R, cfg).value;
    return std::exp(-2.0 * pi * p.lambda_p * radial);
}

double interference_factor(SystemParams const& p, double gamma_eff, bool include_vt,
                           quad::QuadConfig const& cfg)
{
    return interference_factor_weighted(p, gamma_eff, include_vt ? vt_weight(p) : 0.0, cfg);
}

double noise_factor(SystemParams const& p, double scale)
{
    if (!(scale > 0.0)) throw std::domain_error("noise_factor: scale must be > 0");
    if (p.sigma2 == 0.0 || std::isinf(scale)) return 1.0;
    return std::exp(-noise_exponent(p) / scale);
}

CoverageResult evaluate_coverage(SystemParams const& params, Scenario scenario, Metric metric,
                                 quad::QuadConfig const& cfg)
{
    SystemParams p = for_metric(validated(params), metric);
    if (scenario == Scenario::benchmark) p.lambda_b = 0.0;

    CoverageResult out;
    CoverageTerms& t = out.terms;
    t.gamma_vt = gamma_vt(p.lambda_b, p.rho, p.alpha, p.mu);
    t.vt_weight = 0.5 * p.eta * t.gamma_vt;
    // Only scenario 1 has clusters around the interfering PTs.
    double const interferer_weight = scenario == Scenario::scenario1 ? t.vt_weight : 0.0;

    t.zeta = noise_factor(p, 1.0);
    t.xi_interf = interference_factor_weighted(p, p.gamma_thr, interferer_weight, cfg);

    double const c = backscatter_coefficient(p);
    if (c >= 0.0 || t.vt_weight == 0.0)
    {
        // With no typical-cluster power (vt_weight == 0) the signal-enhancing
        // branch degenerates to the same product at xi1 = 1.
        t.branch = c >= 0.0 ? Branch::interference_dominated : Branch::signal_enhancing;
        t.xi1 = c >= 0.0 ? xi1(p, cfg) : 1.0;
        out.raw = t.xi1 * t.xi_interf * t.zeta;
    }
    else
    {
        t.branch = Branch::signal_enhancing;
        double const gt = -c * t.vt_weight;
        t.gamma_tilde = gt;
        t.xi_scaled = interference_factor_weighted(p, p.gamma_thr / gt, interferer_weight, cfg);
        t.zeta_scaled = noise_factor(p, gt);
        out.raw = signal_enhancing_combination(p, gt, interferer_weight,
                                               t.xi_scaled * t.zeta_scaled,
                                               t.xi_interf * t.zeta, cfg);
    }

    double const slack = std::max(cfg.abs_tol, cfg.rel_tol) * 100.0;
    out.clamped = out.raw < -slack || out.raw > 1.0 + slack;
    out.probability = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

double coverage(SystemParams const& p, Scenario scenario, Metric metric,
                quad::QuadConfig const& cfg)
{
    return evaluate_coverage(p, scenario, metric, cfg).probability;
}

double marginal_coverage(SystemParams const& params, Scenario scenario, Metric metric,
                         quad::QuadConfig const& cfg)
{
    SystemParams const& p = validated(params);
    double const rate = pi * p.lambda_p;
    // Rayleigh tail mass exp(-rate r^2) below 1e-6.
    double const r_tail = std::sqrt(std::log(1e6) / rate);
    double const upper = std::min(r_tail, p.R);

    quad::QuadConfig outer = cfg;
    outer.rel_tol = std::max(cfg.rel_tol, 1e-6);
    outer.abs_tol = std::max(cfg.abs_tol, 1e-9);

    auto integrand = [&](double r) {
        SystemParams at = p;
        at.r0 = r;
        double const density = 2.0 * rate * r * std::exp(-rate * r * r);
        return coverage(at, scenario, metric, cfg) * density;
    };
    return std::clamp(quad::integrate_1d(integrand, 0.0, upper, outer).value, 0.0, 1.0);
}

}  // namespace ambc::analytic
