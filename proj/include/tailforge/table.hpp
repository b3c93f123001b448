#ifndef TAILFORGE_TABLE_HPP
#define TAILFORGE_TABLE_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tailforge {

enum class OutputFormat { csv, json };
enum class Units { nats, bits };

struct OutputOptions {
  OutputFormat format = OutputFormat::csv;
  int precision = 6;  // fixed decimals, 1..15
  Units units = Units::nats;
};

using Cell = std::variant<double, long long, std::string>;

struct Column {
  std::string name;
  bool exponent = false;  // converted when units == bits
};

class Table {
public:
  explicit Table(std::vector<Column> columns);
  void add_row(std::vector<Cell> row);
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Fixed decimals; +inf prints as "inf".
std::string format_number(double v, int precision);

void write_csv(std::ostream& os, const Table& t, const OutputOptions& opt);
void write_json(std::ostream& os, const Table& t, const OutputOptions& opt);
void write_table(std::ostream& os, const Table& t, const OutputOptions& opt);

}  // namespace tailforge

#endif
