#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ambc::experiment
{

/// One output row. Empty optionals are written as blank CSV cells / JSON null.
struct Row
{
    std::string param_name;
    double param_value = 0.0;
    std::string scenario;
    std::string metric;
    std::string engine;
    std::optional<double> coverage;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<std::uint64_t> n_trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> wall_ms;
};

using Table = std::vector<Row>;

enum class Format
{
    csv,
    json,
};

Format parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "param_name,param_value,scenario,metric,engine,coverage,ci_low,ci_high,n_trials,seed,wall_ms";

/// Shortest text of `value` at 10 significant digits.
std::string format_number(double value);

std::string to_csv(Table const& table);
std::string to_json(Table const& table);

Table parse_csv(std::string_view text);
Table parse_json(std::string_view text);

/// Writes `table` to `path`; throws std::runtime_error if unwritable and
/// std::invalid_argument for an empty table.
void emit(Table const& table, Format format, std::filesystem::path const& path);

Table read_table(std::filesystem::path const& path);

}  // namespace ambc::experiment
