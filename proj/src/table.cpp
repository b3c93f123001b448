#include "tailforge/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "tailforge/specfun.hpp"

namespace tailforge {

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw DomainError("table: row width does not match header");
  rows_.push_back(std::move(row));
}

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);  // no "-0.000"
  return s;
}

namespace {

void check(const OutputOptions& opt) {
  if (opt.precision < 1 || opt.precision > 15) throw DomainError("precision must lie in 1..15");
}

double convert(double v, const Column& c, const OutputOptions& opt) {
  if (c.exponent && opt.units == Units::bits && std::isfinite(v)) return v / std::log(2.0);
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c, const Column& col, const OutputOptions& opt) {
  if (auto d = std::get_if<double>(&c)) return format_number(convert(*d, col, opt), opt.precision);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& t, const OutputOptions& opt) {
  check(opt);
  const auto& cols = t.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << csv_escape(cols[j].name);
  os << "\n";
  for (const auto& row : t.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_escape(cell_text(row[j], cols[j], opt));
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t, const OutputOptions& opt) {
  check(opt);
  nlohmann::ordered_json doc;
  doc["units"] = opt.units == Units::bits ? "bits" : "nats";
  doc["precision"] = opt.precision;
  auto& cols = doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns()) cols.push_back(c.name);
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Column& col = t.columns()[j];
      if (auto d = std::get_if<double>(&row[j])) {
        std::string s = format_number(convert(*d, col, opt), opt.precision);
        if (std::isfinite(*d))
          r[col.name] = std::strtod(s.c_str(), nullptr);  // rounded value, shortest round-trip repr
        else
          r[col.name] = s;
      } else if (auto i = std::get_if<long long>(&row[j])) {
        r[col.name] = *i;
      } else {
        r[col.name] = std::get<std::string>(row[j]);
      }
    }
    rows.push_back(std::move(r));
  }
  os << doc.dump(2) << "\n";
}

void write_table(std::ostream& os, const Table& t, const OutputOptions& opt) {
  if (opt.format == OutputFormat::json)
    write_json(os, t, opt);
  else
    write_csv(os, t, opt);
}

}  // namespace tailforge
