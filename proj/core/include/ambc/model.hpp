#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ambc
{

/// Network constants shared by the analytic and Monte Carlo engines.
///
/// All quantities are linear; decibel inputs are converted at the CLI/config
/// boundary. `sigma2 == 0` is legal and represents the interference-limited
/// (SIR) regime.
struct SystemParams
{
    double lambda_p = 2e-4;   ///< PT density [1/m^2]
    double lambda_b = 0.1;    ///< BT density inside a cluster disk [1/m^2]
    double rho = 10.0;        ///< cluster disk radius [m]
    double r0 = 15.0;         ///< typical PT-PR distance [m]
    double R = 100.0;         ///< outer network radius [m]
    double eta = 0.5;         ///< reflection coefficient
    double alpha = 3.5;       ///< path-loss exponent
    double mu = 1.0;          ///< fading rate; power gains ~ Exp(mu)
    double beta = 0.8;        ///< decodable fraction of typical-cluster power
    double gamma_thr = 1.9952623149688795;  ///< threshold (3 dB), linear
    double p_tx = 1.0;        ///< PT transmit power [W]
    double sigma2 = 7.943282347242815e-06;  ///< noise power [W] (TSRNR 51 dB)

    friend bool operator==(SystemParams const&, SystemParams const&) = default;
};

/// Geometry inputs for the delay-tolerance estimate of beta.
struct BetaGeomParams
{
    double delta_b = 100e6;  ///< primary symbol bandwidth [Hz]
    double k = 1.0;          ///< tolerable delay as a multiple of 1/delta_b
    double v_c = 3e8;        ///< propagation speed [m/s]

    /// Maximum tolerable excess delay [s].
    double delta_tau() const { return k / delta_b; }

    friend bool operator==(BetaGeomParams const&, BetaGeomParams const&) = default;
};

enum class Scenario
{
    scenario1,  // BTs around every PT
    scenario2,  // BTs around the typical PT only
    benchmark,  // no BTs
};

enum class Metric
{
    sinr,
    sir,
};

std::string_view to_string(Scenario s);
std::string_view to_string(Metric m);
Scenario parse_scenario(std::string_view name);
Metric parse_metric(std::string_view name);

/// Bounded path loss L(r) = 1 / (1 + r^alpha).
double path_loss(double r, double alpha);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Noise power from a transmit-signal-to-receive-noise ratio in dB.
double noise_from_tsrnr(double p_tx, double tsrnr_db);

struct ValidationReport
{
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

class ValidationError : public std::invalid_argument
{
  public:
    explicit ValidationError(std::vector<std::string> errors);

    std::vector<std::string> const& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

ValidationReport validate(SystemParams const& params);
ValidationReport validate(BetaGeomParams const& geom);

/// Returns `params` unchanged or throws ValidationError naming every
/// violated invariant.
SystemParams const& validated(SystemParams const& params);
BetaGeomParams const& validated(BetaGeomParams const& geom);

/// Copy of `params` with the noise removed when `metric` is SIR.
SystemParams for_metric(SystemParams params, Metric metric);

}  // namespace ambc
