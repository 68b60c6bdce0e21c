#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ambc/model.hpp"
#include "ambc/sweep.hpp"

namespace ambc::experiment
{

struct ExperimentConfig
{
    SystemParams system;
    BetaGeomParams geom;
    SweepSpec sweep;
    std::vector<std::string> warnings;
};

/// Aggregated parse / unknown-key / validation failures.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> errors);

    std::vector<std::string> const& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

/// Parses flat INI text with [system], [beta_geom] and [sweep] sections.
/// Missing keys keep the defaults; `overrides` ("key=value", system or
/// beta_geom keys) are applied after the file.
ExperimentConfig parse_config(std::string_view text,
                              std::vector<std::string> const& overrides = {});

ExperimentConfig load_config(std::filesystem::path const& path,
                             std::vector<std::string> const& overrides = {});

}  // namespace ambc::experiment
