#include "format.hpp"

#include <cmath>
#include <cstdio>

namespace bec::cli {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string json_value(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    return std::isfinite(*d) ? format_number(*d) : "null";
  }
  return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
}

namespace {

std::string csv_value(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return format_number(*d);
  std::string s = std::get<std::string>(cell);
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.meta) out << "# " << key << ": " << csv_value(value) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_value(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  out << "{\n  \"meta\": {";
  for (std::size_t i = 0; i < table.meta.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << '"' << json_escape(table.meta[i].first)
        << "\": " << json_value(table.meta[i].second);
  }
  out << (table.meta.empty() ? "},\n" : "\n  },\n") << "  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? ", " : "") << '"' << json_escape(table.columns[i]) << "\": " << json_value(row[i]);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

JsonObject::JsonObject(std::ostream& out, int indent) : out_(out), indent_(indent) { out_ << '{'; }

void JsonObject::separator() {
  out_ << (first_ ? "\n" : ",\n") << std::string(static_cast<std::size_t>(indent_ + 2), ' ');
  first_ = false;
}

std::ostream& JsonObject::raw(const std::string& key) {
  separator();
  return out_ << '"' << json_escape(key) << "\": ";
}

JsonObject& JsonObject::field(const std::string& key, double value) {
  raw(key) << json_value(Cell{value});
  return *this;
}

JsonObject& JsonObject::field(const std::string& key, const std::string& value) {
  raw(key) << json_value(Cell{value});
  return *this;
}

JsonObject& JsonObject::field(const std::string& key, const char* value) {
  return field(key, std::string(value));
}

JsonObject& JsonObject::field(const std::string& key, bool value) {
  raw(key) << (value ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::field(const std::string& key, const std::vector<double>& values) {
  std::ostream& o = raw(key);
  o << '[';
  for (std::size_t i = 0; i < values.size(); ++i) o << (i ? ", " : "") << json_value(Cell{values[i]});
  o << ']';
  return *this;
}

JsonObject& JsonObject::field(const std::string& key, const std::vector<std::string>& values) {
  std::ostream& o = raw(key);
  o << '[';
  for (std::size_t i = 0; i < values.size(); ++i) o << (i ? ", " : "") << json_value(Cell{values[i]});
  o << ']';
  return *this;
}

void JsonObject::close() {
  if (closed_) return;
  closed_ = true;
  out_ << (first_ ? "}" : "\n" + std::string(static_cast<std::size_t>(indent_), ' ') + "}");
}

}  // namespace bec::cli
