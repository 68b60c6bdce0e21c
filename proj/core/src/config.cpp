#include "ambc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace ambc::experiment
{
namespace
{

struct Entry
{
    std::string value;
    std::size_t line = 0;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    while (!s.empty())
    {
        auto const comma = s.find(',');
        auto const item = trim(s.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string const& text, std::string const& key)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (std::exception const&)
    {
        used = 0;
    }
    if (used == 0 || trim(std::string_view(text).substr(used)).size() != 0)
        throw std::invalid_argument("bad number for " + key + ": '" + text + "'");
    return v;
}

std::uint64_t to_u64(std::string const& text, std::string const& key)
{
    std::uint64_t v = 0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer for " + key + ": '" + text + "'");
    return v;
}

bool to_bool(std::string const& text, std::string const& key)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument("bad boolean for " + key + ": '" + text + "'");
}

// Keys that derive sigma2 or depend on other fields are applied last.
int apply_order(std::string const& key)
{
    if (key == "p_tx") return 0;
    if (key == "tsrnr_db" || key == "tsrnr_deducted_db") return 2;
    return 1;
}

std::string join(std::vector<std::string> const& items)
{
    return std::accumulate(items.begin(), items.end(), std::string{},
                           [](std::string acc, std::string const& s) {
                               return acc.empty() ? s : acc + "; " + s;
                           });
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("configuration error: " + join(errors)), errors_(std::move(errors))
{
}

ExperimentConfig parse_config(std::string_view text, std::vector<std::string> const& overrides)
{
    std::vector<std::string> errors;
    std::map<std::string, Section> sections{{"system", {}}, {"beta_geom", {}}, {"sweep", {}}};

    std::string current;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);)
    {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
            {
                errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
                continue;
            }
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (!sections.contains(current))
                errors.push_back("line " + std::to_string(line_no) + ": unknown section [" + current + "]");
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        if (current.empty())
        {
            errors.push_back("line " + std::to_string(line_no) + ": key outside of a section");
            continue;
        }
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        // Trailing comments.
        if (auto const hash = value.find(" #"); hash != std::string_view::npos)
            value = trim(value.substr(0, hash));
        if (sections.contains(current))
            sections[current][key] = {std::string(value), line_no};
    }

    for (std::string const& ov : overrides)
    {
        auto const eq = ov.find('=');
        if (eq == std::string::npos)
        {
            errors.push_back("override '" + ov + "': expected key=value");
            continue;
        }
        std::string key(trim(std::string_view(ov).substr(0, eq)));
        std::string value(trim(std::string_view(ov).substr(eq + 1)));
        std::string section = "system";
        if (auto const dot = key.find('.'); dot != std::string::npos)
        {
            section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        else if (key == "delta_b" || key == "k" || key == "v_c")
        {
            section = "beta_geom";
        }
        if (!sections.contains(section))
        {
            errors.push_back("override '" + ov + "': unknown section " + section);
            continue;
        }
        sections[section][key] = {value, 0};
    }

    auto where = [](Entry const& e) {
        return e.line ? "line " + std::to_string(e.line) + ": " : std::string("override: ");
    };

    ExperimentConfig cfg;

    // [sweep] first: a figure preset supplies the base for [system].
    Section const& sw = sections["sweep"];
    Figure figure = Figure::custom;
    if (auto it = sw.find("figure"); it != sw.end())
    {
        try
        {
            figure = parse_figure(it->second.value);
        }
        catch (std::exception const& e)
        {
            errors.push_back(where(it->second) + e.what());
        }
    }
    cfg.sweep = figure_preset(figure);
    apply_preset_base(figure, cfg.system);

    std::optional<double> grid_min, grid_max, grid_step;
    std::optional<std::size_t> grid_points;
    std::string spacing = "linear";
    for (auto const& [key, entry] : sw)
    {
        try
        {
            std::string const& v = entry.value;
            if (key == "figure") continue;
            else if (key == "param")
            {
                if (figure != Figure::custom && v != cfg.sweep.param_name)
                    throw std::invalid_argument("figure " + std::string(to_string(figure))
                                                + " sweeps " + cfg.sweep.param_name);
                if (!is_known_param(v)) throw std::invalid_argument("unknown sweep parameter: " + v);
                cfg.sweep.param_name = v;
            }
            else if (key == "values")
            {
                cfg.sweep.grid.clear();
                for (auto const& item : split_list(v)) cfg.sweep.grid.push_back(to_double(item, key));
            }
            else if (key == "min") grid_min = to_double(v, key);
            else if (key == "max") grid_max = to_double(v, key);
            else if (key == "step") grid_step = to_double(v, key);
            else if (key == "points") grid_points = to_u64(v, key);
            else if (key == "spacing")
            {
                if (v != "linear" && v != "log") throw std::invalid_argument("spacing must be linear or log");
                spacing = v;
            }
            else if (key == "scenarios")
            {
                cfg.sweep.scenarios.clear();
                for (auto const& item : split_list(v)) cfg.sweep.scenarios.push_back(parse_scenario(item));
            }
            else if (key == "metrics")
            {
                cfg.sweep.metrics.clear();
                for (auto const& item : split_list(v)) cfg.sweep.metrics.push_back(parse_metric(item));
            }
            else if (key == "engines")
            {
                cfg.sweep.engines.clear();
                for (auto const& item : split_list(v)) cfg.sweep.engines.push_back(parse_engine(item));
            }
            else if (key == "k_values")
            {
                cfg.sweep.k_values.clear();
                for (auto const& item : split_list(v)) cfg.sweep.k_values.push_back(to_double(item, key));
            }
            else if (key == "mc_trials") cfg.sweep.mc_trials = to_u64(v, key);
            else if (key == "master_seed") cfg.sweep.master_seed = to_u64(v, key);
            else if (key == "marginal") cfg.sweep.marginal = to_bool(v, key);
            else if (key == "record_timing") cfg.sweep.record_timing = to_bool(v, key);
            else if (key == "threads") cfg.sweep.threads = static_cast<unsigned>(to_u64(v, key));
            else throw std::invalid_argument("unknown key: " + key);
        }
        catch (std::exception const& e)
        {
            errors.push_back(where(entry) + e.what());
        }
    }
    if (grid_min || grid_max || grid_step || grid_points)
    {
        try
        {
            if (!grid_min || !grid_max)
                throw std::invalid_argument("grid needs both min and max");
            if (spacing == "log")
                cfg.sweep.grid = log_grid(*grid_min, *grid_max, grid_points.value_or(10));
            else if (grid_step)
                cfg.sweep.grid = linear_grid(*grid_min, *grid_max, *grid_step);
            else
            {
                std::size_t const n = grid_points.value_or(11);
                double const step = n > 1 ? (*grid_max - *grid_min) / static_cast<double>(n - 1) : 1.0;
                cfg.sweep.grid = n > 1 ? linear_grid(*grid_min, *grid_max, step)
                                       : std::vector<double>{*grid_min};
            }
        }
        catch (std::exception const& e)
        {
            errors.push_back(std::string("[sweep] ") + e.what());
        }
    }
    if (cfg.sweep.mc_trials < 1) errors.emplace_back("[sweep] mc_trials must be >= 1");

    std::vector<std::pair<std::string, Entry>> system(sections["system"].begin(),
                                                      sections["system"].end());
    std::stable_sort(system.begin(), system.end(), [](auto const& a, auto const& b) {
        return apply_order(a.first) < apply_order(b.first);
    });
    for (auto const& [key, entry] : system)
    {
        try
        {
            if (!is_known_param(key)) throw std::invalid_argument("unknown key: " + key);
            set_param(cfg.system, key, to_double(entry.value, key));
        }
        catch (std::exception const& e)
        {
            errors.push_back(where(entry) + e.what());
        }
    }

    for (auto const& [key, entry] : sections["beta_geom"])
    {
        try
        {
            double const v = to_double(entry.value, key);
            if (key == "delta_b") cfg.geom.delta_b = v;
            else if (key == "delta_b_mhz") cfg.geom.delta_b = v * 1e6;
            else if (key == "k") cfg.geom.k = v;
            else if (key == "v_c") cfg.geom.v_c = v;
            else throw std::invalid_argument("unknown key: " + key);
        }
        catch (std::exception const& e)
        {
            errors.push_back(where(entry) + e.what());
        }
    }

    if (errors.empty())
    {
        auto report = validate(cfg.system);
        auto geom_report = validate(cfg.geom);
        errors.insert(errors.end(), report.errors.begin(), report.errors.end());
        errors.insert(errors.end(), geom_report.errors.begin(), geom_report.errors.end());
        cfg.warnings = std::move(report.warnings);
        if (cfg.sweep.grid.empty() && figure != Figure::custom)
            errors.emplace_back("[sweep] grid is empty");
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

ExperimentConfig load_config(std::filesystem::path const& path,
                             std::vector<std::string> const& overrides)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot read config file " + path.string()});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

}  // namespace ambc::experiment
