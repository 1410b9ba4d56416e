#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kvb/extension/classification.hpp"

namespace kvb::report {

enum class Example { Interval, Point, Coulomb, Core };

std::string_view to_string(Example e) noexcept;
Example parse_example(std::string_view s);
Classification parse_classification(std::string_view s);

/// One classified extension. Bottoms and m_S are in the unshifted frame of
/// the example (m_S = 0 for the point interaction and the Coulomb family).
struct Report {
  Example example = Example::Interval;
  std::map<std::string, std::string> parameters;
  double m_S = 0.0;
  std::optional<double> t_q;
  Classification classification = Classification::Top;
  double bottom_analytic = 0.0;
  std::optional<double> bottom_oracle;
  std::optional<double> abs_error;

  bool operator==(const Report&) const = default;
};

/// %.15g.
std::string format_number(double x);

inline constexpr std::string_view kRecordHeader =
    "example,parameters,m_S,t_q,classification,bottom_analytic,bottom_oracle,abs_error";

/// One comma-separated line (no newline). Parameters are written as
/// `key=value` pairs joined by ';'. Throws ErrorKind::Model if a key or value
/// contains one of ",;=" or if abs_error and bottom_oracle disagree in presence.
std::string emit_record(const Report& r);
/// Inverse of emit_record. Throws ErrorKind::Model on malformed input.
Report parse_record(std::string_view line);

void write_records(std::ostream& out, std::span<const Report> reports);
/// Expects the header line first; blank lines are skipped.
std::vector<Report> read_records(std::istream& in);

/// Aligned, human-readable table. `status` (if non-empty) adds a PASS/FAIL column.
void write_table(std::ostream& out, std::span<const Report> reports,
                 std::span<const bool> status = {});

/// Left-aligned columns separated by two spaces; rows may differ in length.
void write_columns(std::ostream& out, const std::vector<std::vector<std::string>>& rows);

}  // namespace kvb::report
