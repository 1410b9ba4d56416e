#include "kvb/report/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

#include "kvb/error.hpp"

namespace kvb::report {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view s, std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Model, "bad number '" + std::string(s) + "' in field " + std::string(field));
  }
  return value;
}

std::optional<double> parse_optional(std::string_view s, std::string_view field) {
  if (s.empty()) return std::nullopt;
  return parse_number(s, field);
}

void check_token(const std::string& s) {
  if (s.empty() || s.find_first_of(",;=\n") != std::string::npos) {
    throw Error(ErrorKind::Model, "parameter token '" + s + "' is empty or contains a separator");
  }
}

std::string optional_text(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

}  // namespace

std::string_view to_string(Example e) noexcept {
  switch (e) {
    case Example::Interval: return "interval";
    case Example::Point: return "point";
    case Example::Coulomb: return "coulomb";
    case Example::Core: return "core";
  }
  return "?";
}

Example parse_example(std::string_view s) {
  for (Example e : {Example::Interval, Example::Point, Example::Coulomb, Example::Core}) {
    if (s == to_string(e)) return e;
  }
  throw Error(ErrorKind::Model, "unknown example '" + std::string(s) + "'");
}

Classification parse_classification(std::string_view s) {
  for (Classification c : {Classification::Top, Classification::NotTop, Classification::Friedrichs}) {
    if (s == to_string(c)) return c;
  }
  throw Error(ErrorKind::Model, "unknown classification '" + std::string(s) + "'");
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string emit_record(const Report& r) {
  if (r.bottom_oracle.has_value() != r.abs_error.has_value()) {
    throw Error(ErrorKind::Model, "abs_error must be present exactly when bottom_oracle is");
  }
  std::string params;
  for (const auto& [k, v] : r.parameters) {
    check_token(k);
    check_token(v);
    if (!params.empty()) params += ';';
    params += k + '=' + v;
  }
  std::string line;
  line += to_string(r.example);
  line += ',' + params;
  line += ',' + format_number(r.m_S);
  line += ',' + optional_text(r.t_q);
  line += ',';
  line += to_string(r.classification);
  line += ',' + format_number(r.bottom_analytic);
  line += ',' + optional_text(r.bottom_oracle);
  line += ',' + optional_text(r.abs_error);
  return line;
}

Report parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != 8) {
    throw Error(ErrorKind::Model, "record needs 8 fields, got " + std::to_string(f.size()));
  }
  Report r;
  r.example = parse_example(f[0]);
  if (!f[1].empty()) {
    for (std::string_view kv : split(f[1], ';')) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string_view::npos || eq == 0 || eq + 1 == kv.size()) {
        throw Error(ErrorKind::Model, "bad parameter '" + std::string(kv) + "'");
      }
      r.parameters.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    }
  }
  r.m_S = parse_number(f[2], "m_S");
  r.t_q = parse_optional(f[3], "t_q");
  r.classification = parse_classification(f[4]);
  r.bottom_analytic = parse_number(f[5], "bottom_analytic");
  r.bottom_oracle = parse_optional(f[6], "bottom_oracle");
  r.abs_error = parse_optional(f[7], "abs_error");
  if (r.bottom_oracle.has_value() != r.abs_error.has_value()) {
    throw Error(ErrorKind::Model, "abs_error must be present exactly when bottom_oracle is");
  }
  return r;
}

void write_records(std::ostream& out, std::span<const Report> reports) {
  out << kRecordHeader << '\n';
  for (const Report& r : reports) out << emit_record(r) << '\n';
}

std::vector<Report> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Model, "empty record stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw Error(ErrorKind::Model, "missing record header");
  std::vector<Report> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

void write_table(std::ostream& out, std::span<const Report> reports, std::span<const bool> status) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"example", "parameters", "m_S", "t_q", "class", "bottom", "oracle", "abs_err"});
  if (!status.empty()) rows.front().push_back("status");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Report& r = reports[i];
    std::string params;
    for (const auto& [k, v] : r.parameters) {
      if (!params.empty()) params += ' ';
      params += k + '=' + v;
    }
    rows.push_back({std::string(to_string(r.example)), params, format_number(r.m_S),
                    r.t_q ? format_number(*r.t_q) : "-", std::string(to_string(r.classification)),
                    format_number(r.bottom_analytic),
                    r.bottom_oracle ? format_number(*r.bottom_oracle) : "-",
                    r.abs_error ? format_number(*r.abs_error) : "-"});
    if (!status.empty()) rows.back().push_back(i < status.size() && status[i] ? "PASS" : "FAIL");
  }
  write_columns(out, rows);
}

void write_columns(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      line += row[j];
      if (j + 1 < row.size()) line.append(width[j] - row[j].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

}  // namespace kvb::report
