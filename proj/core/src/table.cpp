#include "ambc/table.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include <json.hpp>

namespace ambc::experiment
{
namespace
{

using json = nlohmann::ordered_json;

std::string quote_csv(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

template <typename T>
std::string optional_cell(std::optional<T> const& v)
{
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) return format_number(*v);
    else return std::to_string(*v);
}

double rounded(double value)
{
    return std::stod(format_number(value));
}

template <typename T>
json optional_json(std::optional<T> const& v)
{
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) return rounded(*v);
    else return *v;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        char const c = text[i];
        any = true;
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < text.size() && text[i + 1] == '"')
                {
                    field += '"';
                    ++i;
                }
                else quoted = false;
            }
            else field += c;
            continue;
        }
        if (c == '"') quoted = true;
        else if (c == ',')
        {
            record.push_back(std::move(field));
            field.clear();
        }
        else if (c == '\n' || c == '\r')
        {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            any = false;
        }
        else field += c;
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    if (any)
    {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

template <typename T>
std::optional<T> parse_cell(std::string const& cell)
{
    if (cell.empty()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>)
    {
        std::size_t used = 0;
        double const v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("csv: bad number '" + cell + "'");
        return v;
    }
    else
    {
        T v{};
        auto const [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
            throw std::invalid_argument("csv: bad integer '" + cell + "'");
        return v;
    }
}

template <typename T>
std::optional<T> json_field(json const& obj, char const* key)
{
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return obj.at(key).get<T>();
}

}  // namespace

Format parse_format(std::string_view name)
{
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string format_number(double value)
{
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.10g", value);
    return buf.data();
}

std::string to_csv(Table const& table)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (Row const& r : table)
    {
        std::array<std::string, 11> const cells = {
            quote_csv(r.param_name),   format_number(r.param_value),
            quote_csv(r.scenario),     quote_csv(r.metric),
            quote_csv(r.engine),       optional_cell(r.coverage),
            optional_cell(r.ci_low),   optional_cell(r.ci_high),
            optional_cell(r.n_trials), optional_cell(r.seed),
            optional_cell(r.wall_ms),
        };
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }
    return out;
}

std::string to_json(Table const& table)
{
    json rows = json::array();
    for (Row const& r : table)
    {
        json obj = json::object();
        obj["param_name"] = r.param_name;
        obj["param_value"] = rounded(r.param_value);
        obj["scenario"] = r.scenario;
        obj["metric"] = r.metric;
        obj["engine"] = r.engine;
        obj["coverage"] = optional_json(r.coverage);
        obj["ci_low"] = optional_json(r.ci_low);
        obj["ci_high"] = optional_json(r.ci_high);
        obj["n_trials"] = optional_json(r.n_trials);
        obj["seed"] = optional_json(r.seed);
        obj["wall_ms"] = optional_json(r.wall_ms);
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

Table parse_csv(std::string_view text)
{
    auto records = split_csv(text);
    if (records.empty()) throw std::invalid_argument("csv: missing header");
    std::string header;
    for (std::size_t i = 0; i < records[0].size(); ++i)
        header += (i ? "," : "") + records[0][i];
    if (header != kCsvHeader) throw std::invalid_argument("csv: unexpected header");

    Table table;
    for (std::size_t n = 1; n < records.size(); ++n)
    {
        auto const& c = records[n];
        if (c.size() != 11)
            throw std::invalid_argument("csv: record " + std::to_string(n) + " has "
                                        + std::to_string(c.size()) + " fields");
        Row r;
        r.param_name = c[0];
        r.param_value = parse_cell<double>(c[1]).value_or(0.0);
        r.scenario = c[2];
        r.metric = c[3];
        r.engine = c[4];
        r.coverage = parse_cell<double>(c[5]);
        r.ci_low = parse_cell<double>(c[6]);
        r.ci_high = parse_cell<double>(c[7]);
        r.n_trials = parse_cell<std::uint64_t>(c[8]);
        r.seed = parse_cell<std::uint64_t>(c[9]);
        r.wall_ms = parse_cell<double>(c[10]);
        table.push_back(std::move(r));
    }
    return table;
}

Table parse_json(std::string_view text)
{
    json const doc = json::parse(text);
    if (!doc.is_array()) throw std::invalid_argument("json: expected an array of rows");
    Table table;
    for (json const& obj : doc)
    {
        Row r;
        r.param_name = obj.at("param_name").get<std::string>();
        r.param_value = obj.at("param_value").get<double>();
        r.scenario = obj.at("scenario").get<std::string>();
        r.metric = obj.at("metric").get<std::string>();
        r.engine = obj.at("engine").get<std::string>();
        r.coverage = json_field<double>(obj, "coverage");
        r.ci_low = json_field<double>(obj, "ci_low");
        r.ci_high = json_field<double>(obj, "ci_high");
        r.n_trials = json_field<std::uint64_t>(obj, "n_trials");
        r.seed = json_field<std::uint64_t>(obj, "seed");
        r.wall_ms = json_field<double>(obj, "wall_ms");
        table.push_back(std::move(r));
    }
    return table;
}

void emit(Table const& table, Format format, std::filesystem::path const& path)
{
    if (table.empty()) throw std::invalid_argument("emit: table is empty");
    // Write beside the target and rename, so readers never see a partial file.
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << (format == Format::csv ? to_csv(table) : to_json(table));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot write " + path.string());
    }
}

Table read_table(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string const text = buf.str();
    auto const first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') return parse_json(text);
    return parse_csv(text);
}

}  // namespace ambc::experiment
