#include "app/output.hpp"

#include <cstdio>
#include <fstream>

#include "symtomo/error.hpp"

namespace symtomo::app {

namespace {

nlohmann::json meta(const Header& h) {
  nlohmann::json m = {{"tool", "symtomo"}, {"version", SYMTOMO_VERSION}, {"command", h.command},
                      {"config_hash", h.config_hash}};
  for (const auto& [k, v] : h.info) m[k] = v;
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string write_table(const std::string& stem, const std::string& format, const Header& header,
                        const std::vector<Column>& columns) {
  const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != rows) throw std::logic_error("ragged table " + stem);
  }
  if (format == "json") {
    nlohmann::json data = nlohmann::json::object();
    nlohmann::json names = nlohmann::json::array();
    for (const auto& c : columns) {
      names.push_back(c.name);
      data[c.name] = c.values;
    }
    return write_report(stem + ".json", header, {{"columns", names}, {"data", data}});
  }
  const std::string path = stem + ".csv";
  auto out = open_out(path);
  out << "# symtomo " << SYMTOMO_VERSION << '\n';
  out << "# command: " << header.command << '\n';
  out << "# config_hash: " << header.config_hash << '\n';
  for (const auto& [k, v] : header.info) out << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c].values[r]);
    out << '\n';
  }
  return path;
}

std::string write_report(const std::string& path, const Header& header, nlohmann::json body) {
  nlohmann::json doc = {{"meta", meta(header)}};
  for (auto& [k, v] : body.items()) doc[k] = v;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  return path;
}

}  // namespace symtomo::app
