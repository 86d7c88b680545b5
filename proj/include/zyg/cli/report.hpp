#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace zyg::cli {

struct Record {
  std::string type;
  std::string config_hash;
  nlohmann::json data;
};

struct ReportBundle {
  std::string command;
  std::string config_hash;
  nlohmann::json config;
  std::optional<std::string> timestamp;
  std::vector<Record> records;

  void add(std::string type, nlohmann::json data);
  nlohmann::json to_json() const;
};

/// Plot-ready CSV; doubles are written with %.17g so reruns compare byte for byte.
class CsvTable {
 public:
  CsvTable(std::string name, std::vector<std::string> header);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_number(double v);
inline std::string csv_number(std::size_t v) { return std::to_string(v); }
inline std::string csv_number(int v) { return std::to_string(v); }
inline std::string csv_bool(bool v) { return v ? "true" : "false"; }

std::string utc_timestamp();

}  // namespace zyg::cli
