#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zyg/geometry.hpp"

namespace zyg {

using Resolution = std::array<int, 3>;

inline Resolution cube_resolution(int n) { return {n, n, n}; }

/// Commutator symbol b: a scalar field on R^3.
struct Symbol {
  std::string name;
  std::function<double(const Point&)> evaluate;
  std::optional<double> holder_exponent;  // claimed Hölder exponent in x3, if any
  bool constant_in_x12 = false;
  std::optional<Box> domain;  // unset means all of R^3

  double operator()(const Point& x) const { return evaluate(x); }
};

Symbol constant_symbol(double c);
Symbol linear_symbol(int axis);  // b(x) = x_axis, axis in {1,2,3}
/// b(x) = |x3|^beta.
Symbol holder_x3_symbol(double beta);
/// b(x) = sign(x3 - c).
Symbol sign_x3_symbol(double c = 0.0);
/// b(x) = |x1|^p1 |x2|^p2 |x3|^p3 (0^0 = 1).
Symbol separable_product_symbol(double p1, double p2, double p3);
/// Piecewise-constant symbol read from a JSON sidecar that names a CSV or
/// raw little-endian float64 sample file:
///   {"box": [[lo,hi],[lo,hi],[lo,hi]], "resolution": [n1,n2,n3],
///    "samples": "file.csv" | "file.bin", "format": "csv" | "binary"}
/// Samples are ordered with axis 3 fastest.
Symbol grid_file_symbol(const std::string& sidecar_path);

/// Parses "constant:c", "linear-x1|x2|x3", "holder-x3:beta", "sign-x3[:c]",
/// "separable-product:p1,p2,p3", "from-grid-file:path".
Symbol make_symbol(const std::string& spec);

/// Samples at cell midpoints of a tensor grid over a box, axis 3 fastest.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(const Box& box, const Resolution& res);

  template <class F>
  static GridFunction sample(const Box& box, const Resolution& res, F&& f) {
    GridFunction g(box, res);
    for (std::size_t idx = 0; idx < g.size(); ++idx) g.values_[idx] = f(g.node(idx));
    return g;
  }

  const Box& box() const { return box_; }
  const Resolution& resolution() const { return res_; }
  std::size_t size() const { return values_.size(); }
  double cell_volume() const { return cell_volume_; }
  double step(int axis) const { return step_[static_cast<std::size_t>(axis)]; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(res_[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(res_[2]) +
           static_cast<std::size_t>(k);
  }
  double node_coord(int axis, int i) const {
    return box_.axes[static_cast<std::size_t>(axis)].lo + (i + 0.5) * step(axis);
  }
  Point node(std::size_t idx) const;

  double& operator[](std::size_t idx) { return values_[idx]; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_grid(const GridFunction& o) const { return box_ == o.box_ && res_ == o.res_; }

  double sup_norm() const;
  double abs_mean() const;  // <|g|>_box

 private:
  Box box_{};
  Resolution res_{0, 0, 0};
  std::array<double, 3> step_{0, 0, 0};
  double cell_volume_ = 0.0;
  std::vector<double> values_;
};

/// Midpoint-rule integral.
double quadrature(const GridFunction& g);

/// <f, g> = sum f g dV on a shared grid.
double pairing(const GridFunction& f, const GridFunction& g);

GridFunction sample_symbol(const Symbol& b, const Box& box, const Resolution& res);

/// <b>_R by midpoint quadrature.
double mean(const Symbol& b, const Box& r, const Resolution& res);
inline double mean(const Symbol& b, const ZygmundRectangle& r, const Resolution& res) {
  return mean(b, r.box(), res);
}

/// f = (g - <g>_R) 1_R with g = sign(b - <b>_R); sign(0) = 0. At grid level
/// <b, f> equals the integral of |b - <b>_R| over R.
GridFunction extremal_testfunction(const Symbol& b, const ZygmundRectangle& r, const Resolution& res);

/// Midpoint samples of a function on [lo, hi] (one dimension).
struct SampledFunction {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> samples;

  double step() const { return (hi - lo) / static_cast<double>(samples.size()); }
  double node(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * step(); }

  template <class F>
  static SampledFunction sample(double lo, double hi, std::size_t n, F&& f) {
    SampledFunction s{lo, hi, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) s.samples[i] = f(s.node(i));
    return s;
  }
};

}  // namespace zyg
