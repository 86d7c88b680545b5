#include "zyg/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include "zyg/core.hpp"

namespace zyg::cli {

void ReportBundle::add(std::string type, nlohmann::json data) {
  records.push_back({std::move(type), config_hash, std::move(data)});
}

nlohmann::json ReportBundle::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["config"] = config;
  if (timestamp) j["timestamp"] = *timestamp;
  j["records"] = nlohmann::json::array();
  for (const auto& r : records)
    j["records"].push_back({{"type", r.type}, {"config_hash", r.config_hash}, {"data", r.data}});
  return j;
}

CsvTable::CsvTable(std::string name, std::vector<std::string> header)
    : name_(std::move(name)), header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw Error("csv table " + name_ + ": row has " + std::to_string(cells.size()) + " cells, header has " +
                std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote(cells[i]);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_line(out, header_);
  for (const auto& r : rows_) append_line(out, r);
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace zyg::cli
