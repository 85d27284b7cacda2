// Minimal CSV writing/reading with round-trip float formatting (%.17g), used
// for trajectory, snapshot and eigen tables.  The reader exists mainly so
// tests and downstream tooling can reload what the writers produced.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "selmut/errors.hpp"

namespace selmut {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw config_error("cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    f << (i ? "," : "") << header[i];
  f << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      f << (i ? "," : "") << format_g17(row[i]);
    f << "\n";
  }
  if (!f) throw config_error("write to " + path + " failed");
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(f, line)) throw config_error(path + ": empty file");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw config_error(path + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace selmut
