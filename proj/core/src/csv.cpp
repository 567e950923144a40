#include "rfblt/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rfblt/error.hpp"

namespace rfblt::csv {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) fail(ErrorCode::IoError, "cannot format number");
  return std::string(buf, ptr);
}

double parse_double(const std::string& field) {
  const std::string s = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
          ErrorCode::InvalidArgument, "not a number: '" + field + "'");
  return value;
}

series::TimeSeries parse_series(std::istream& in, const std::string& name) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::InvalidArgument,
          "empty series file");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split(trim(line));
  require(header.size() == 2 && trim(header[0]) == "time" && trim(header[1]) == "value",
          ErrorCode::InvalidArgument, "expected header 'time,value', got '" + line + "'");
  std::vector<double> times;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line));
    require(fields.size() == 2, ErrorCode::InvalidArgument,
            "line " + std::to_string(line_no) + ": expected 2 fields");
    times.push_back(parse_double(fields[0]));
    values.push_back(parse_double(fields[1]));
    if (times.size() > 1) {
      require(times.back() > times[times.size() - 2], ErrorCode::InvalidArgument,
              "line " + std::to_string(line_no) + ": rows are not sorted by time");
    }
  }
  return series::TimeSeries(std::move(times), std::move(values), name);
}

series::TimeSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open " + path.string());
  return parse_series(in, path.stem().string());
}

void write_series(std::ostream& out, const series::TimeSeries& series) {
  out << "time,value\n";
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format_double(series.time(i)) << ',' << format_double(series.value(i)) << '\n';
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::InvalidArgument, "empty table");
  for (auto& h : split(trim(line))) table.header.push_back(trim(h));
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& f : split(trim(line))) row.push_back(parse_double(f));
    require(row.size() == table.header.size(), ErrorCode::InvalidArgument,
            "row width does not match header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_table(std::ostream& out, const Table& table) {
  for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

}  // namespace rfblt::csv
