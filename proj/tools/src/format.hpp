#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bec::cli {

/// %.17g: round-trips every double.
std::string format_number(double x);

std::string json_escape(const std::string& s);

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// `# key: value` metadata lines, a header line, then one line per row.
void write_csv(const Table& table, std::ostream& out);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}; non-finite numbers become null.
void write_json(const Table& table, std::ostream& out);

/// Minimal streaming writer for a single JSON object.
class JsonObject {
public:
  explicit JsonObject(std::ostream& out, int indent = 0);
  JsonObject& field(const std::string& key, double value);
  JsonObject& field(const std::string& key, const std::string& value);
  JsonObject& field(const std::string& key, const char* value);
  JsonObject& field(const std::string& key, bool value);
  JsonObject& field(const std::string& key, const std::vector<double>& values);
  JsonObject& field(const std::string& key, const std::vector<std::string>& values);
  /// Writes `"key": ` and leaves the value to the caller.
  std::ostream& raw(const std::string& key);
  void close();

private:
  void separator();
  std::ostream& out_;
  int indent_;
  bool first_ = true;
  bool closed_ = false;
};

std::string json_value(const Cell& cell);

}  // namespace bec::cli
