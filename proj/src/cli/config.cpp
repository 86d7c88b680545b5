#include "zyg/cli/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace zyg::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(key, e.what());
  }
}

Interval interval_field(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) fail(field, "expected [lo, hi]");
  return Interval{v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

void validate(ExperimentConfig& c) {
  if (c.kernel.empty()) fail("kernel", "must not be empty");
  if (!(c.theta > 0.0 && c.theta <= 1.0)) fail("theta", "must lie in (0, 1]");
  if (c.symbol.empty()) fail("symbol", "must not be empty");
  for (int a = 0; a < 3; ++a)
    if (!c.domain.axes[static_cast<std::size_t>(a)].valid()) fail("domain", "axis " + std::to_string(a + 1) + " is empty");
  if (c.depth_min < 0 || c.depth_max < c.depth_min) fail("depths", "need 0 <= min <= max");
  for (int n : c.resolution)
    if (n < 1) fail("resolution", "entries must be positive");
  if (c.amplitude && !(*c.amplitude > 1.0)) fail("amplitude", "must exceed 1 or be \"auto\"");
  if (!(c.alpha >= 0.0)) fail("alpha", "must be nonnegative");
  if (c.p && !(*c.p >= 1.0)) fail("p", "must be at least 1");
  if (c.q && !(*c.q >= 1.0)) fail("q", "must be at least 1");
  if (c.p && c.q) {
    if (*c.p > *c.q) fail("p", "must not exceed q");
    const double implied = 1.0 / *c.p - 1.0 / *c.q;
    if (std::abs(c.alpha - implied) > 1e-12) {
      std::ostringstream os;
      os << "alpha = " << c.alpha << " but 1/p - 1/q = " << implied;
      fail("alpha", os.str());
    }
  }
  if (c.out.empty()) fail("out", "must not be empty");
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["kernel"] = c.kernel;
  j["theta"] = c.theta;
  j["symbol"] = c.symbol;
  j["domain"] = json::array();
  for (const auto& ax : c.domain.axes) j["domain"].push_back({ax.lo, ax.hi});
  j["depths"] = {c.depth_min, c.depth_max};
  j["resolution"] = {c.resolution[0], c.resolution[1], c.resolution[2]};
  j["amplitude"] = c.amplitude ? json(*c.amplitude) : json("auto");
  j["alpha"] = c.alpha;
  j["p"] = c.p ? json(*c.p) : json(nullptr);
  j["q"] = c.q ? json(*c.q) : json(nullptr);
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"kernel", "theta", "symbol", "domain", "depths", "resolution",
                                           "amplitude", "alpha", "p", "q", "seed", "out"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) fail(key, "unknown key");
  ExperimentConfig c;
  if (j.contains("kernel")) c.kernel = get_field<std::string>(j, "kernel");
  if (j.contains("theta")) c.theta = get_field<double>(j, "theta");
  if (j.contains("symbol")) c.symbol = get_field<std::string>(j, "symbol");
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_array() || d.size() != 3) fail("domain", "expected [[lo,hi],[lo,hi],[lo,hi]]");
    for (std::size_t a = 0; a < 3; ++a) c.domain.axes[a] = interval_field(d[a], "domain");
  }
  if (j.contains("depths")) {
    const json& d = j["depths"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
      fail("depths", "expected [min, max]");
    c.depth_min = d[0].get<int>();
    c.depth_max = d[1].get<int>();
  }
  if (j.contains("resolution")) {
    const json& r = j["resolution"];
    if (!r.is_array() || r.size() != 3) fail("resolution", "expected [n1, n2, n3]");
    for (std::size_t a = 0; a < 3; ++a) {
      if (!r[a].is_number_integer()) fail("resolution", "entries must be integers");
      c.resolution[a] = r[a].get<int>();
    }
  }
  if (j.contains("amplitude")) {
    const json& a = j["amplitude"];
    if (a.is_string()) {
      if (a.get<std::string>() != "auto") fail("amplitude", "expected a number or \"auto\"");
    } else if (a.is_number()) {
      c.amplitude = a.get<double>();
    } else {
      fail("amplitude", "expected a number or \"auto\"");
    }
  }
  if (j.contains("alpha")) c.alpha = get_field<double>(j, "alpha");
  for (const char* key : {"p", "q"}) {
    if (!j.contains(key) || j[key].is_null()) continue;
    if (!j[key].is_number()) fail(key, "expected a number or null");
    (key[0] == 'p' ? c.p : c.q) = j[key].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) c.out = get_field<std::string>(j, "out");
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

nlohmann::json experiment_json(const ExperimentConfig& c) {
  json j = to_json(c);
  j.erase("out");
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = experiment_json(c).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::pair<int, int> parse_depths(const std::string& s) {
  const auto pos = s.find("..");
  try {
    if (pos == std::string::npos) {
      const int d = std::stoi(s);
      return {d, d};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
  } catch (const std::exception&) {
    fail("depths", "expected MIN..MAX, got '" + s + "'");
  }
}

Resolution parse_resolution(const std::string& s) {
  Resolution r{};
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  try {
    while (std::getline(ss, tok, 'x')) parts.push_back(std::stoi(tok));
  } catch (const std::exception&) {
    fail("resolution", "expected N1xN2xN3, got '" + s + "'");
  }
  if (parts.size() == 1) return {parts[0], parts[0], parts[0]};
  if (parts.size() != 3) fail("resolution", "expected N1xN2xN3, got '" + s + "'");
  for (std::size_t a = 0; a < 3; ++a) r[a] = parts[a];
  return r;
}

}  // namespace zyg::cli
