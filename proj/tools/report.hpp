#pragma once

// Flat records rendered as JSON lines or CSV with one shared field order, so
// both formats of one run carry the same data.

#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace cdm::report {

using Record = nlohmann::ordered_json;

enum class Format { Jsonl, Csv, Dot };

inline Format parse_format(const std::string& s) {
  if (s == "jsonl" || s == "json") return Format::Jsonl;
  if (s == "csv") return Format::Csv;
  if (s == "dot") return Format::Dot;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  std::string text;
  if (v.is_null()) return "";
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (!text.empty()) text += ' ';
      text += item.is_string() ? item.get<std::string>() : item.dump();
    }
  } else if (v.is_object()) {
    for (const auto& [key, item] : v.items()) {
      if (!text.empty()) text += ' ';
      text += key + "=" + (item.is_string() ? item.get<std::string>() : item.dump());
    }
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return quoted + "\"";
}

/// Writes records one at a time; CSV gets a header before the first row.
class Writer {
 public:
  Writer(std::ostream& out, Format format) : out_(out), format_(format) {
    if (format == Format::Dot) throw std::invalid_argument("records cannot be written as DOT");
  }

  void write(const Record& record) {
    if (format_ == Format::Jsonl) {
      out_ << record.dump() << '\n';
      return;
    }
    if (!header_done_) {
      bool first = true;
      for (const auto& [key, value] : record.items()) {
        out_ << (first ? "" : ",") << key;
        first = false;
      }
      out_ << '\n';
      header_done_ = true;
    }
    bool first = true;
    for (const auto& [key, value] : record.items()) {
      out_ << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  Format format_;
  bool header_done_ = false;
};

}  // namespace cdm::report
