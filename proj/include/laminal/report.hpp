#pragma once

#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "laminal/model.hpp"

namespace laminal {

struct ReportSection {
  std::string title;
  std::vector<std::string> lines;
};

/// A plain-text report: titled sections plus named CSV payloads. Rationals
/// are always rendered exactly.
struct ReportDocument {
  std::deque<ReportSection> sections;
  std::vector<std::pair<std::string, std::string>> csv_attachments;
  /// False once any check line recorded a FAIL.
  bool ok = true;

  ReportSection& add_section(std::string title);
  /// Appends "PASS <what>" or "FAIL <what>" to `section` and updates `ok`.
  void check(ReportSection& section, bool passed, const std::string& what);

  /// Sections only.
  std::string render() const;
  /// Sections followed by each attachment under its own header.
  std::string render_with_attachments() const;
};

/// Column-aligned text table; the first row is the header.
std::vector<std::string> format_table(const std::vector<std::vector<std::string>>& rows);

/// "{1,2,3}" using sample labels.
std::string format_set(const SampleSet& set, const std::vector<std::string>& labels);
/// "(1/2, 1/4)"
std::string format_vector(const std::vector<Rational>& values);

/// CSV field quoting (RFC 4180).
std::string csv_field(const std::string& value);

}  // namespace laminal
