#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace symtomo::app {

/// Provenance written at the top of every output file.
struct Header {
  std::string command;
  std::string config_hash;
  /// Extra key/value lines, e.g. the frame of a tomogram.
  std::vector<std::pair<std::string, std::string>> info;
};

struct Column {
  std::string name;
  std::vector<double> values;
};

/// "%.16e"; 17 significant digits round-trip every double.
std::string format_double(double v);

/// Writes `stem`.csv or `stem`.json depending on `format`; returns the path.
std::string write_table(const std::string& stem, const std::string& format, const Header& header,
                        const std::vector<Column>& columns);

/// JSON document with a "meta" object carrying the header fields.
std::string write_report(const std::string& path, const Header& header, nlohmann::json body);

}  // namespace symtomo::app
