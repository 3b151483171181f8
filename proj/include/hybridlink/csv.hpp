#pragma once

#include "hybridlink/version.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hybridlink {

// Fixed formatting: 9 significant digits, scientific. Output is byte
// reproducible for identical inputs.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

// Compact form for column-name suffixes; still deterministic.
inline std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;  // emitted in order
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;

  void meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
  void meta(const std::string& key, double value) {
    metadata.emplace_back(key, format_number(value));
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "# hybridlink " << kVersion << "\n";
    for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < headers.size(); ++i)
      out << headers[i] << (i + 1 < headers.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i)
        out << format_number(row[i]) << (i + 1 < row.size() ? "," : "");
      out << "\n";
    }
    return out.str();
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << to_csv();
  }
};

}  // namespace hybridlink
