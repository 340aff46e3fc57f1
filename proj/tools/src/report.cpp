#include "report.hpp"

namespace aqt::cli {

namespace {

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_field(columns[i]);
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

std::string Report::text() const {
  std::string out = "# scenario " + scenario + " (kind " + to_string(kind) + ", source " + source + ")\n";
  for (const auto& l : lines) out += l + '\n';
  if (failures.empty()) {
    out += "status = ok\n";
  } else {
    out += "status = failed:";
    for (std::size_t i = 0; i < failures.size(); ++i) out += (i ? ", " : " ") + failures[i];
    out += '\n';
  }
  return out;
}

}  // namespace aqt::cli
