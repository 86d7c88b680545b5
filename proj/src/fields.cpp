#include "zyg/fields.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zyg {

Symbol constant_symbol(double c) {
  std::ostringstream os;
  os << "constant:" << c;
  return {os.str(), [c](const Point&) { return c; }, std::nullopt, true, std::nullopt};
}

Symbol linear_symbol(int axis) {
  if (axis < 1 || axis > 3) throw DomainError("linear symbol axis must be 1, 2 or 3");
  const auto a = static_cast<std::size_t>(axis - 1);
  Symbol s{"linear-x" + std::to_string(axis), [a](const Point& x) { return x[a]; }, std::nullopt, axis == 3,
           std::nullopt};
  if (axis == 3) s.holder_exponent = 1.0;
  return s;
}

Symbol holder_x3_symbol(double beta) {
  if (!(beta > 0.0)) throw DomainError("holder-x3 exponent must be positive");
  std::ostringstream os;
  os << "holder-x3:" << beta;
  return {os.str(), [beta](const Point& x) { return std::pow(std::abs(x[2]), beta); }, std::min(beta, 1.0), true,
          std::nullopt};
}

Symbol sign_x3_symbol(double c) {
  std::ostringstream os;
  os << "sign-x3:" << c;
  return {os.str(), [c](const Point& x) { return sign(x[2] - c); }, std::nullopt, true, std::nullopt};
}

Symbol separable_product_symbol(double p1, double p2, double p3) {
  std::ostringstream os;
  os << "separable-product:" << p1 << "," << p2 << "," << p3;
  auto pw = [](double v, double p) { return p == 0.0 ? 1.0 : std::pow(std::abs(v), p); };
  return {os.str(), [=](const Point& x) { return pw(x[0], p1) * pw(x[1], p2) * pw(x[2], p3); }, std::nullopt,
          p1 == 0.0 && p2 == 0.0, std::nullopt};
}

namespace {

std::vector<double> read_csv_numbers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sample file " + path.string());
  std::vector<double> out;
  std::string token;
  char ch;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + token + "' in " + path.string());
    }
    token.clear();
  };
  while (in.get(ch)) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t' || ch == ';')
      flush();
    else
      token.push_back(ch);
  }
  flush();
  return out;
}

std::vector<double> read_binary_numbers(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open sample file " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  if (bytes % sizeof(double) != 0) throw ConfigError("binary sample file size is not a multiple of 8");
  std::vector<double> out(bytes / sizeof(double));
  in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
  return out;
}

}  // namespace

Symbol grid_file_symbol(const std::string& sidecar_path) {
  namespace fs = std::filesystem;
  std::ifstream in(sidecar_path);
  if (!in) throw ConfigError("cannot open grid sidecar " + sidecar_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("grid sidecar " + sidecar_path + ": " + e.what());
  }
  for (const char* key : {"box", "resolution", "samples"})
    if (!j.contains(key)) throw ConfigError(std::string("grid sidecar missing key '") + key + "'");
  Box box;
  Resolution res;
  for (std::size_t a = 0; a < 3; ++a) {
    box.axes[a] = Interval::make(j["box"].at(a).at(0).get<double>(), j["box"].at(a).at(1).get<double>());
    res[a] = j["resolution"].at(a).get<int>();
    if (res[a] <= 0) throw ConfigError("grid sidecar resolution must be positive");
  }
  const fs::path samples = fs::path(sidecar_path).parent_path() / j["samples"].get<std::string>();
  std::string format = j.value("format", samples.extension() == ".bin" ? "binary" : "csv");
  std::vector<double> values;
  if (format == "csv")
    values = read_csv_numbers(samples);
  else if (format == "binary")
    values = read_binary_numbers(samples);
  else
    throw ConfigError("grid sidecar format must be 'csv' or 'binary'");
  const std::size_t expected = static_cast<std::size_t>(res[0]) * res[1] * res[2];
  if (values.size() != expected) {
    std::ostringstream os;
    os << "grid file has " << values.size() << " samples, expected " << expected;
    throw ConfigError(os.str());
  }

  auto grid = std::make_shared<GridFunction>(box, res);
  std::copy(values.begin(), values.end(), grid->values().begin());
  Symbol s;
  s.name = "from-grid-file:" + sidecar_path;
  s.domain = box;
  s.evaluate = [grid](const Point& x) {
    int idx[3];
    for (int a = 0; a < 3; ++a) {
      const auto& ax = grid->box().axes[static_cast<std::size_t>(a)];
      if (!ax.contains(x[static_cast<std::size_t>(a)]))
        throw DomainError("point outside the grid-file symbol's box");
      const int n = grid->resolution()[static_cast<std::size_t>(a)];
      idx[a] = std::clamp(static_cast<int>((x[static_cast<std::size_t>(a)] - ax.lo) / grid->step(a)), 0, n - 1);
    }
    return (*grid)[grid->index(idx[0], idx[1], idx[2])];
  };
  return s;
}

Symbol make_symbol(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&](const std::string& txt) {
    try {
      std::size_t used = 0;
      const double v = std::stod(txt, &used);
      if (used != txt.size()) throw std::invalid_argument(txt);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("symbol '" + spec + "': bad numeric parameter '" + txt + "'");
    }
  };
  if (head == "constant") return constant_symbol(arg.empty() ? 1.0 : number(arg));
  if (head == "linear-x1") return linear_symbol(1);
  if (head == "linear-x2") return linear_symbol(2);
  if (head == "linear-x3") return linear_symbol(3);
  if (head == "holder-x3") {
    if (arg.empty()) throw ConfigError("holder-x3 needs an exponent, e.g. holder-x3:0.5");
    return holder_x3_symbol(number(arg));
  }
  if (head == "sign-x3") return sign_x3_symbol(arg.empty() ? 0.0 : number(arg));
  if (head == "separable-product") {
    std::array<double, 3> p{1.0, 1.0, 1.0};
    if (!arg.empty()) {
      std::stringstream ss(arg);
      std::string part;
      std::size_t i = 0;
      while (std::getline(ss, part, ',')) {
        if (i >= 3) throw ConfigError("separable-product takes three exponents");
        p[i++] = number(part);
      }
      if (i != 3) throw ConfigError("separable-product takes three exponents");
    }
    return separable_product_symbol(p[0], p[1], p[2]);
  }
  if (head == "from-grid-file") return grid_file_symbol(arg);
  throw ConfigError("unknown symbol '" + spec + "'");
}

GridFunction::GridFunction(const Box& box, const Resolution& res) : box_(box), res_(res) {
  if (box.empty()) throw DomainError("grid over an empty box");
  for (std::size_t a = 0; a < 3; ++a) {
    if (res[a] <= 0) throw DomainError("grid resolution must be positive");
    step_[a] = box.axes[a].length() / res[a];
  }
  cell_volume_ = box.volume() / (static_cast<double>(res[0]) * res[1] * res[2]);
  values_.assign(static_cast<std::size_t>(res[0]) * res[1] * res[2], 0.0);
}

Point GridFunction::node(std::size_t idx) const {
  const auto n2 = static_cast<std::size_t>(res_[2]);
  const auto n1 = static_cast<std::size_t>(res_[1]);
  const int k = static_cast<int>(idx % n2);
  const int j = static_cast<int>((idx / n2) % n1);
  const int i = static_cast<int>(idx / (n1 * n2));
  return {node_coord(0, i), node_coord(1, j), node_coord(2, k)};
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::abs_mean() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s / static_cast<double>(values_.size());
}

double quadrature(const GridFunction& g) {
  double s = 0.0;
  for (double v : g.values()) s += v;
  return s * g.cell_volume();
}

double pairing(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw DomainError("pairing requires a shared grid");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.cell_volume();
}

GridFunction sample_symbol(const Symbol& b, const Box& box, const Resolution& res) {
  return GridFunction::sample(box, res, [&](const Point& x) { return b(x); });
}

double mean(const Symbol& b, const Box& r, const Resolution& res) {
  const GridFunction g = sample_symbol(b, r, res);
  return quadrature(g) / r.volume();
}

GridFunction extremal_testfunction(const Symbol& b, const ZygmundRectangle& r, const Resolution& res) {
  const GridFunction bs = sample_symbol(b, r.box(), res);
  const double n = static_cast<double>(bs.size());
  double bmean = 0.0;
  for (double v : bs.values()) bmean += v;
  bmean /= n;
  // Deviations at rounding level of the mean count as zero.
  const double zero_band = 1e-14 * bs.sup_norm();
  GridFunction f(r.box(), res);
  double gmean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double dev = bs[i] - bmean;
    f[i] = std::abs(dev) <= zero_band ? 0.0 : sign(dev);
    gmean += f[i];
  }
  gmean /= n;
  for (double& v : f.values()) v -= gmean;
  return f;
}

}  // namespace zyg
