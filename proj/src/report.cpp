#include "laminal/report.hpp"

#include <algorithm>

namespace laminal {

ReportSection& ReportDocument::add_section(std::string title) {
  sections.push_back({std::move(title), {}});
  return sections.back();
}

void ReportDocument::check(ReportSection& section, bool passed, const std::string& what) {
  section.lines.push_back(std::string(passed ? "PASS " : "FAIL ") + what);
  ok = ok && passed;
}

std::string ReportDocument::render() const {
  std::string out;
  for (const auto& s : sections) {
    out += "== " + s.title + " ==\n";
    for (const auto& line : s.lines) out += line + "\n";
    out += "\n";
  }
  return out;
}

std::string ReportDocument::render_with_attachments() const {
  std::string out = render();
  for (const auto& [name, content] : csv_attachments) out += "== attachment " + name + " ==\n" + content + "\n";
  return out;
}

std::vector<std::string> format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::vector<std::string> out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::string format_set(const SampleSet& set, const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += labels[set[i]];
  }
  return out + "}";
}

std::string format_vector(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].str();
  }
  return out + ")";
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace laminal
