#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rfblt/series.hpp"

namespace rfblt::csv {

/// Reads a `time,value` file with a header row. Rows must be sorted by time.
series::TimeSeries read_series(const std::filesystem::path& path);
series::TimeSeries parse_series(std::istream& in, const std::string& name = {});

void write_series(std::ostream& out, const series::TimeSeries& series);

/// Shortest text that parses back to the same double.
std::string format_double(double x);

/// Parses a full field as a double; throws on trailing garbage.
double parse_double(const std::string& field);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(std::istream& in);
void write_table(std::ostream& out, const Table& table);

}  // namespace rfblt::csv
