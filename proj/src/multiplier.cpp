#include "zyg/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <sstream>

namespace zyg {

std::string to_string(const MultiIndex& a) {
  std::ostringstream os;
  os << "(" << a.a1 << "," << a.a2 << "," << a.a3 << ")";
  return os.str();
}

std::vector<MultiIndex> multi_indices(int max_order) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= max_order; ++n)
    for (int a1 = n; a1 >= 0; --a1)
      for (int a2 = n - a1; a2 >= 0; --a2) out.push_back({a1, a2, n - a1 - a2});
  return out;
}

namespace {

double rho(const Point& xi) {
  const double p = xi[0] * xi[1];
  return std::hypot(p, xi[2]);
}

void require_regular(const Point& xi) {
  if (xi[0] * xi[1] == 0.0 && xi[2] == 0.0) throw SingularityError("multiplier is singular at xi1 xi2 = xi3 = 0");
}

// 1 - |m| = u^2 / (r (r + 1)), r = sqrt(1 + u^2), u = xi1 xi2 / xi3.
double one_minus_abs_m(const Point& xi) {
  const double u = xi[0] * xi[1] / xi[2];
  const double r = std::hypot(1.0, u);
  return u * u / (r * (r + 1.0));
}

}  // namespace

double fp_multiplier(const Point& xi) {
  require_regular(xi);
  return xi[2] / rho(xi);
}

std::array<double, 3> fp_gradient(const Point& xi) {
  require_regular(xi);
  if (xi[0] == 0.0) throw DomainError("d1 m is not defined in closed form at xi1 = 0");
  const double r = rho(xi);
  const double r3 = r * r * r;
  const double p2 = xi[0] * xi[0] * xi[1] * xi[1];
  return {-(p2 * xi[2] / xi[0]) / r3, -(xi[0] * xi[0] * xi[1] * xi[2]) / r3, p2 / r3};
}

std::array<double, 3> fd_steps(const Point& xi, double h_scale) {
  const double a1 = std::abs(xi[0]), a2 = std::abs(xi[1]), a3 = std::abs(xi[2]);
  const double tau1 = a2 > 0.0 ? a3 / a2 : std::sqrt(a3);
  const double tau2 = a1 > 0.0 ? a3 / a1 : std::sqrt(a3);
  const double tau3 = a1 * a2;
  return {h_scale * (a1 > 0.0 ? a1 : tau1), h_scale * (a2 > 0.0 ? a2 : tau2), h_scale * std::max(a3, tau3)};
}

bool fd_clearance(const Point& xi, double h_scale) {
  const auto h = fd_steps(xi, h_scale);
  return std::abs(xi[2]) > 10.0 * h[2] || (std::abs(xi[0]) > 10.0 * h[0] && std::abs(xi[1]) > 10.0 * h[1]);
}

double default_h_scale(int order) {
  switch (order) {
    case 0:
    case 1: return 1e-4;
    case 2: return 1e-3;
    default: return 5e-3;
  }
}

namespace {

struct Tap {
  double offset;  // in units of h
  double weight;
};

// Central difference taps for d^n/dx^n with O(h^2) error, weights divided by h^n later.
std::span<const Tap> central_taps(int n) {
  static constexpr Tap d0[] = {{0.0, 1.0}};
  static constexpr Tap d1[] = {{-1.0, -0.5}, {1.0, 0.5}};
  static constexpr Tap d2[] = {{-1.0, 1.0}, {0.0, -2.0}, {1.0, 1.0}};
  static constexpr Tap d3[] = {{-2.0, -0.5}, {-1.0, 1.0}, {1.0, -1.0}, {2.0, 0.5}};
  switch (n) {
    case 0: return d0;
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    default: throw DomainError("finite differences support derivative order <= 3 per axis");
  }
}

double int_power(double h, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= h;
  return r;
}

template <class F>
double nested_difference(const Point& xi, const MultiIndex& alpha, const std::array<double, 3>& h, F&& f) {
  const auto t1 = central_taps(alpha.a1), t2 = central_taps(alpha.a2), t3 = central_taps(alpha.a3);
  double s = 0.0;
  for (const auto& a : t1)
    for (const auto& b : t2)
      for (const auto& c : t3)
        s += a.weight * b.weight * c.weight *
             f(Point{xi[0] + a.offset * h[0], xi[1] + b.offset * h[1], xi[2] + c.offset * h[2]});
  return s / (int_power(h[0], alpha.a1) * int_power(h[1], alpha.a2) * int_power(h[2], alpha.a3));
}

}  // namespace

double fp_partial_fd(const Point& xi, const MultiIndex& alpha, double h_scale) {
  if (alpha.a1 < 0 || alpha.a2 < 0 || alpha.a3 < 0 || alpha.order() > 3)
    throw DomainError("fp_partial_fd supports |alpha| <= 3");
  require_regular(xi);
  if (alpha.order() == 0) return fp_multiplier(xi);
  if (!fd_clearance(xi, h_scale)) throw ClearanceError("frequency point too close to the singular set");
  auto h = fd_steps(xi, h_scale);
  // The stencil reaches 2h (order-3 taps); with sign(xi3) fixed over it and
  // |m| >= 1/2 the complement q = 1 - |m| is differenced instead of m.
  const bool sign_fixed = std::abs(xi[2]) > 2.0 * h[2];
  const bool near_one = xi[2] != 0.0 && std::abs(fp_multiplier(xi)) >= 0.5;
  auto diff = [&](const std::array<double, 3>& step) {
    if (sign_fixed && near_one) return -sign(xi[2]) * nested_difference(xi, alpha, step, one_minus_abs_m);
    return nested_difference(xi, alpha, step, [](const Point& p) { return fp_multiplier(p); });
  };
  const double coarse = diff(h);
  for (double& v : h) v *= 0.5;
  const double fine = diff(h);
  return (4.0 * fine - coarse) / 3.0;
}

double fp_bound(const Point& xi, const MultiIndex& alpha) {
  const int e1 = -alpha.a1 + alpha.a2;
  const int e2 = -alpha.a2 - alpha.a3;
  const double a1 = std::abs(xi[0]);
  if (e1 < 0 && a1 == 0.0) throw DomainError("fp_bound: xi1 = 0 with negative exponent");
  const double r = std::hypot(a1 * xi[1], xi[2]);
  if (e2 < 0 && r == 0.0) throw DomainError("fp_bound: (xi1 xi2, xi3) = 0 with negative exponent");
  return std::pow(a1, e1) * std::pow(r, e2);
}

double LogGrid::node(int i) const {
  if (points < 2) return std::exp2(log2_lo);
  return std::exp2(log2_lo + (log2_hi - log2_lo) * i / (points - 1));
}

namespace {

double derivative(const Point& xi, const MultiIndex& a) {
  if (a.order() == 0) return fp_multiplier(xi);
  if (a.order() == 1) {
    const auto g = fp_gradient(xi);
    return a.a1 ? g[0] : (a.a2 ? g[1] : g[2]);
  }
  return fp_partial_fd(xi, a);
}

}  // namespace

std::vector<MultiplierCheck> check_mz1(const LogGrid& grid, int alpha_max) {
  if (alpha_max < 0 || alpha_max > 3) throw DomainError("check_mz1: alpha_max must lie in 0..3");
  std::vector<double> nodes(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) nodes[static_cast<std::size_t>(i)] = grid.node(i);
  std::vector<MultiplierCheck> out;
  for (const auto& a : multi_indices(alpha_max)) {
    MultiplierCheck c{a, 0.0, grid, {}, 0};
    const double hs = default_h_scale(a.order());
    for (double x1 : nodes)
      for (double x2 : nodes)
        for (double x3 : nodes) {
          const Point xi{x1, x2, x3};
          if (a.order() >= 2 && !fd_clearance(xi, hs)) {
            ++c.skipped;
            continue;
          }
          const double r = std::abs(derivative(xi, a)) / fp_bound(xi, a);
          if (r > c.max_ratio) {
            c.max_ratio = r;
            c.argmax = xi;
          }
        }
    out.push_back(c);
  }
  return out;
}

std::vector<StabilityRow> check_mz1_stability(const LogGrid& grid, int alpha_max) {
  LogGrid fine = grid;
  fine.points = 2 * grid.points - 1;
  const auto c = check_mz1(grid, alpha_max);
  const auto f = check_mz1(fine, alpha_max);
  std::vector<StabilityRow> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double denom = std::max(std::abs(c[i].max_ratio), std::abs(f[i].max_ratio));
    out.push_back({c[i].alpha, c[i].max_ratio, f[i].max_ratio,
                   denom > 0.0 ? std::abs(f[i].max_ratio - c[i].max_ratio) / denom : 0.0});
  }
  return out;
}

std::vector<UnboundednessRow> unboundedness_sweep(const std::vector<double>& eps_ladder, int n) {
  if (n < 2) throw DomainError("unboundedness_sweep: need at least 2 nodes per axis");
  std::vector<UnboundednessRow> out;
  for (double eps : eps_ladder) {
    if (!(eps > 0.0)) throw DomainError("unboundedness_sweep: eps must be positive");
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    const double e2 = eps * eps;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double t = 1.0 / (n - 1);
          const Point xi{eps * (1.0 + i * t), eps * (1.0 + j * t), e2 * (1.0 + k * t)};
          const auto g = fp_gradient(xi);
          m1 = std::max(m1, std::abs(g[0]));
          m2 = std::max(m2, std::abs(g[1]));
          m3 = std::max(m3, std::abs(g[2]));
        }
    const double corner = eps * std::abs(fp_gradient({eps, eps, e2})[0]);
    out.push_back({eps, eps * m1, eps * m2, e2 * m3, corner});
  }
  return out;
}

GradientCheck gradient_check(std::size_t n, std::uint64_t seed, double log2_lo, double log2_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(log2_lo, log2_hi);
  std::bernoulli_distribution flip(0.5);
  GradientCheck gc;
  const double hs = default_h_scale(1);
  while (gc.points < n) {
    Point xi;
    for (double& v : xi) v = (flip(rng) ? -1.0 : 1.0) * std::exp2(mag(rng));
    if (!fd_clearance(xi, hs)) {
      ++gc.skipped;
      continue;
    }
    const auto g = fp_gradient(xi);
    for (int a = 0; a < 3; ++a) {
      MultiIndex e{a == 0, a == 1, a == 2};
      const double fd = fp_partial_fd(xi, e, hs);
      const double exact = g[static_cast<std::size_t>(a)];
      const double rel = std::abs(fd - exact) / std::abs(exact);
      if (rel > gc.max_relative_error) {
        gc.max_relative_error = rel;
        gc.worst = xi;
      }
    }
    ++gc.points;
  }
  return gc;
}

}  // namespace zyg
