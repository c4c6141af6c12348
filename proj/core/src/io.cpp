#include "opnet/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "opnet/error.hpp"

namespace opnet {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& context) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(context + ": malformed number '" + token + "'");
  return value;
}

TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                       const std::string& id) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open series file '" + path.string() + "'");

  TimeSeries series;
  series.id = id.empty() ? path.stem().string() : id;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t value_col = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);

    if (format == SeriesFormat::Plain) {
      series.values.push_back(parse_double(line, where));
      continue;
    }

    auto fields = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      bool found = false;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] == "value") {
          value_col = c;
          found = true;
          break;
        }
      }
      if (!found) throw Error(where + ": CSV header must contain a 'value' column");
      continue;
    }
    if (value_col >= fields.size())
      throw Error(where + ": row has no field in the 'value' column");
    series.values.push_back(parse_double(fields[value_col], where));
  }

  validate(series);
  return series;
}

void save_series(const TimeSeries& series, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write series file '" + path.string() + "'");
  for (double v : series.values) out << format_double(v) << '\n';
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

GroupedDataset load_manifest(const std::filesystem::path& manifest_path,
                             SeriesFormat format) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest '" + manifest_path.string() + "'");
  const auto base = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                    : std::filesystem::path(".");

  GroupedDataset dataset;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = manifest_path.string() + ":" + std::to_string(line_no);

    auto fields = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 2 || fields[0] != "id" || fields[1] != "group")
        throw Error(where + ": manifest header must be 'id,group'");
      continue;
    }
    if (fields.size() != 2)
      throw Error(where + ": expected 2 fields 'id,group', got " +
                  std::to_string(fields.size()));
    const std::string& entry = fields[0];
    const std::string& group = fields[1];
    if (entry.empty()) throw Error(where + ": empty id field");
    if (group.empty()) throw Error(where + ": empty group field");

    std::filesystem::path series_path = base / entry;
    if (!std::filesystem::exists(series_path))
      throw Error(where + ": series file '" + series_path.string() +
                  "' does not exist");
    TimeSeries s = load_series(series_path, format);
    s.group = group;
    for (const auto& existing : dataset.series)
      if (existing.id == s.id)
        throw Error(where + ": duplicate series id '" + s.id + "'");
    dataset.groups[group].push_back(s.id);
    dataset.series.push_back(std::move(s));
  }
  if (!header_seen) throw Error("manifest '" + manifest_path.string() + "' is empty");
  if (dataset.series.empty())
    throw Error("manifest '" + manifest_path.string() + "' lists no series");
  validate(dataset);
  return dataset;
}

}  // namespace opnet
