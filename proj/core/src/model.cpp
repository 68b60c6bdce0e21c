#include "ambc/model.hpp"

#include <cmath>
#include <numeric>

namespace ambc
{

std::string_view to_string(Scenario s)
{
    switch (s)
    {
        case Scenario::scenario1: return "scenario1";
        case Scenario::scenario2: return "scenario2";
        case Scenario::benchmark: return "benchmark";
    }
    return "unknown";
}

std::string_view to_string(Metric m)
{
    return m == Metric::sinr ? "sinr" : "sir";
}

Scenario parse_scenario(std::string_view name)
{
    if (name == "scenario1" || name == "1") return Scenario::scenario1;
    if (name == "scenario2" || name == "2") return Scenario::scenario2;
    if (name == "benchmark" || name == "0") return Scenario::benchmark;
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

Metric parse_metric(std::string_view name)
{
    if (name == "sinr") return Metric::sinr;
    if (name == "sir") return Metric::sir;
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

double path_loss(double r, double alpha)
{
    if (!(r >= 0.0)) throw std::domain_error("path_loss: distance must be >= 0");
    if (!(alpha > 0.0)) throw std::domain_error("path_loss: alpha must be > 0");
    return 1.0 / (1.0 + std::pow(r, alpha));
}

double db_to_linear(double db)
{
    if (!std::isfinite(db)) throw std::domain_error("db_to_linear: non-finite input");
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    if (!(linear > 0.0) || !std::isfinite(linear))
        throw std::domain_error("linear_to_db: input must be finite and > 0");
    return 10.0 * std::log10(linear);
}

double noise_from_tsrnr(double p_tx, double tsrnr_db)
{
    if (!(p_tx > 0.0)) throw std::domain_error("noise_from_tsrnr: p_tx must be > 0");
    return p_tx / db_to_linear(tsrnr_db);
}

namespace
{
std::string join(std::vector<std::string> const& items)
{
    return std::accumulate(items.begin(), items.end(), std::string{},
                           [](std::string acc, std::string const& s) {
                               return acc.empty() ? s : acc + "; " + s;
                           });
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> errors)
    : std::invalid_argument("invalid parameters: " + join(errors)),
      errors_(std::move(errors))
{
}

ValidationReport validate(SystemParams const& p)
{
    ValidationReport report;
    auto require = [&](bool cond, char const* what) {
        if (!cond) report.errors.emplace_back(what);
    };
    // Negated comparisons so NaN fails every check.
    require(p.lambda_p > 0.0, "lambda_p must be > 0");
    require(p.lambda_b >= 0.0, "lambda_b must be >= 0");
    require(p.mu > 0.0, "mu must be > 0");
    require(p.p_tx > 0.0, "p_tx must be > 0");
    require(p.sigma2 >= 0.0, "sigma2 must be >= 0");
    require(p.eta >= 0.0 && p.eta <= 1.0, "eta out of [0,1]");
    require(p.beta >= 0.0 && p.beta <= 1.0, "beta out of [0,1]");
    require(p.alpha > 2.0, "alpha must be > 2");
    require(p.gamma_thr > 0.0, "gamma_thr must be > 0");
    require(p.r0 > 0.0, "r0 must be > 0");
    require(p.rho > 0.0, "rho must be > 0");
    if (p.r0 >= p.R) report.errors.emplace_back("r0 >= R");
    else require(p.R > p.r0, "R must be > r0");
    for (double v : {p.lambda_p, p.lambda_b, p.rho, p.r0, p.R, p.eta, p.alpha, p.mu,
                     p.beta, p.gamma_thr, p.p_tx, p.sigma2})
    {
        if (std::isinf(v))
        {
            report.errors.emplace_back("non-finite parameter");
            break;
        }
    }

    if (report.ok() && p.lambda_b > 0.0 && p.lambda_b <= p.lambda_p)
        report.warnings.emplace_back(
            "lambda_b <= lambda_p: clustered BTs are not denser than PTs");
    return report;
}

ValidationReport validate(BetaGeomParams const& g)
{
    ValidationReport report;
    if (!(g.delta_b > 0.0)) report.errors.emplace_back("delta_b must be > 0");
    if (!(g.k >= 0.0)) report.errors.emplace_back("k must be >= 0");
    if (!(g.v_c > 0.0)) report.errors.emplace_back("v_c must be > 0");
    return report;
}

SystemParams const& validated(SystemParams const& params)
{
    auto report = validate(params);
    if (!report.ok()) throw ValidationError(std::move(report.errors));
    return params;
}

BetaGeomParams const& validated(BetaGeomParams const& geom)
{
    auto report = validate(geom);
    if (!report.ok()) throw ValidationError(std::move(report.errors));
    return geom;
}

SystemParams for_metric(SystemParams params, Metric metric)
{
    if (metric == Metric::sir) params.sigma2 = 0.0;
    return params;
}

}  // namespace ambc
