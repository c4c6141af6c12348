#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "opnet/time_series.hpp"

namespace opnet {

enum class SeriesFormat {
  Plain,  // one decimal value per line, '#' comments, blank lines ignored
  Csv,    // header "value" or "t,value"; the value column is read
};

// Loads a scalar series from a UTF-8 text file. Malformed numbers raise
// Error with the 1-based line number. The series id defaults to the file
// stem unless an explicit id is given.
TimeSeries load_series(const std::filesystem::path& path,
                       SeriesFormat format = SeriesFormat::Plain,
                       const std::string& id = "");

// Writes one value per line using shortest round-trip formatting.
void save_series(const TimeSeries& series, const std::filesystem::path& path);

// Loads a manifest CSV with header "id,group". Paths in the id column are
// resolved relative to the manifest's directory; the series id is the file
// stem. Duplicate ids, missing files and empty groups raise Error.
GroupedDataset load_manifest(const std::filesystem::path& manifest_path,
                             SeriesFormat format = SeriesFormat::Plain);

// Shortest decimal string that round-trips to the same double ("NA" is
// never produced here; callers emit it for absent values).
std::string format_double(double value);

// Strict double parser; the entire token must be consumed.
double parse_double(const std::string& token, const std::string& context);

}  // namespace opnet
