#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zyg/core.hpp"

namespace zyg {

struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  int order() const { return a1 + a2 + a3; }
  int operator[](int i) const { return i == 0 ? a1 : (i == 1 ? a2 : a3); }
  bool operator==(const MultiIndex&) const = default;
};

std::string to_string(const MultiIndex& a);

/// All multi-indices with order <= max_order, graded then lexicographic descending.
std::vector<MultiIndex> multi_indices(int max_order);

/// m(xi) = xi3 / (xi1^2 xi2^2 + xi3^2)^{1/2}.
double fp_multiplier(const Point& xi);

std::array<double, 3> fp_gradient(const Point& xi);

/// Per-axis finite-difference steps: h_i = h_scale * |xi_i| for i = 1, 2
/// (h_scale * tau_i when xi_i = 0) and h_3 = h_scale * max(|xi3|, tau_3), with
/// tau_1 = |xi3 / xi2|, tau_2 = |xi3 / xi1| (|xi3|^{1/2} if the divisor
/// vanishes) and tau_3 = |xi1 xi2|.
std::array<double, 3> fd_steps(const Point& xi, double h_scale);

/// Clearance: |xi3| > 10 h_3, or |xi1| > 10 h_1 and |xi2| > 10 h_2.
bool fd_clearance(const Point& xi, double h_scale);

/// Default step scale per derivative order (1, 2, 3).
double default_h_scale(int order);

/// Nested central differences with one Richardson step, |alpha| <= 3.
/// Stencil values near |m| = 1 are taken as sign(xi3)(1 - q) with q = 1 - |m|
/// evaluated without cancellation.
double fp_partial_fd(const Point& xi, const MultiIndex& alpha, double h_scale);
inline double fp_partial_fd(const Point& xi, const MultiIndex& alpha) {
  return fp_partial_fd(xi, alpha, default_h_scale(alpha.order()));
}

/// |xi1|^{-a1 + a2} |(|xi1| xi2, xi3)|^{-a2 - a3}.
double fp_bound(const Point& xi, const MultiIndex& alpha);

struct LogGrid {
  double log2_lo = -20.0;
  double log2_hi = 20.0;
  int points = 100;  // per axis, positive octant

  double node(int i) const;
};

struct MultiplierCheck {
  MultiIndex alpha;
  double max_ratio = 0.0;
  LogGrid grid;
  Point argmax{};
  std::size_t skipped = 0;  // nodes failing FD clearance
};

/// max over the grid of |d^alpha m| / fp_bound for all |alpha| <= alpha_max.
/// Closed form for |alpha| <= 1, finite differences above.
std::vector<MultiplierCheck> check_mz1(const LogGrid& grid, int alpha_max = 2);

struct StabilityRow {
  MultiIndex alpha;
  double coarse = 0.0;
  double fine = 0.0;
  double relative_change = 0.0;
};

/// check_mz1 on the grid and on the grid with twice the node density
/// (2n - 1 nodes, containing the coarse nodes).
std::vector<StabilityRow> check_mz1_stability(const LogGrid& grid, int alpha_max = 2);

struct UnboundednessRow {
  double eps = 0.0;
  double d1 = 0.0;      // eps * max |d1 m|
  double d2 = 0.0;      // eps * max |d2 m|
  double d3 = 0.0;      // eps^2 * max |d3 m|
  double corner = 0.0;  // eps * |d1 m(eps, eps, eps^2)|
};

/// Maxima of |d_i m| over an n^3 node grid of [eps,2eps] x [eps,2eps] x [eps^2,2eps^2].
std::vector<UnboundednessRow> unboundedness_sweep(const std::vector<double>& eps_ladder, int n = 16);

struct GradientCheck {
  std::size_t points = 0;
  std::size_t skipped = 0;
  double max_relative_error = 0.0;
  Point worst{};
};

/// fp_gradient against fp_partial_fd at random clearance-respecting points with
/// log-uniform magnitudes in [2^lo, 2^hi] and random signs.
GradientCheck gradient_check(std::size_t n, std::uint64_t seed = 1, double log2_lo = -10.0, double log2_hi = 10.0);

}  // namespace zyg
