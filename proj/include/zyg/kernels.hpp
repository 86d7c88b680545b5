#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "zyg/core.hpp"

namespace zyg {

/// D_theta(t1,t2,t3) = (t3/(t1 t2) + t1 t2/t3)^(-theta).
double d_theta(double t1, double t2, double t3, double theta);

/// size_Z(t1,t2,t3) = D_theta(t1,t2,t3) / (t1 t2 t3).
double size_z(double t1, double t2, double t3, double theta);

/// Kernel evaluation contract. `profile` is set for convolution kernels
/// (K(x,y) = profile(x - y)) and lets quadratures tabulate by offset.
struct Kernel {
  std::string name;
  double theta = 1.0;
  std::function<double(const Point&, const Point&)> evaluate;
  std::function<double(double)> modulus;
  // Non-degeneracy witness: x with |x1-y1|>d1, |x2-y2|>d2, |x3-y3|>d1*d2.
  std::function<Point(const Point&, double, double)> witness;
  // c in |K(witness, y)| >= c / (d1^2 d2^2).
  double witness_constant = 0.0;
  std::function<double(const Point&)> profile;

  double operator()(const Point& x, const Point& y) const { return evaluate(x, y); }
  bool is_convolution() const { return static_cast<bool>(profile); }
  bool has_witness() const { return static_cast<bool>(witness); }
};

/// sign(z1 z2) / ((z1 z2)^2 + z3^2) with z = x - y.
double nagel_wainger(const Point& x, const Point& y);
double nagel_wainger_profile(const Point& z);

/// Offset of the Nagel-Wainger witness along each horizontal axis, in units of delta.
inline const double kWitnessSpread = std::pow(2.0, 0.25);

/// y + (s d1, s d2, s^2 d1 d2), s = kWitnessSpread: on the Zygmund manifold,
/// strictly beyond the required separations, |K| = 1/(4 d1^2 d2^2).
Point nw_witness(const Point& y, double d1, double d2);

Kernel make_nagel_wainger(double theta = 1.0);
Kernel make_zero_stub(double theta = 1.0);
Kernel make_constant_stub(double theta = 1.0);

using KernelFactory = std::function<Kernel(double theta)>;
void register_kernel(const std::string& name, KernelFactory factory);
/// Catalog lookup: "nagel-wainger", "zero-stub", "constant-stub" or a registered name.
Kernel make_kernel(const std::string& name, double theta = 1.0);
std::vector<std::string> kernel_names();

struct BoundCheckReport {
  double max_ratio = 0.0;
  Point argmax_x{};
  Point argmax_y{};
  std::size_t samples = 0;
};

using PairSampler = std::function<std::pair<Point, Point>(std::mt19937_64&)>;

/// (x, x', y) with |x_i - x'_i| <= |x_i - y_i| / 2.
struct ContinuitySample {
  Point x, x_perturbed, y;
};
using ContinuitySampler = std::function<ContinuitySample(std::mt19937_64&)>;

/// max |K(x,y)| / size_Z(|x-y|, theta) over n sampled pairs.
BoundCheckReport check_size_bound(const Kernel& k, const PairSampler& sampler, std::size_t n,
                                  std::uint64_t seed = 1);

/// Max ratio of the four continuity differences (x1, x23, y1, y23) against
/// omega(relative perturbation) * size_Z. The y-variants reuse the x offsets.
BoundCheckReport check_continuity(const Kernel& k, const ContinuitySampler& sampler, std::size_t n,
                                  std::uint64_t seed = 1);

struct HomogeneityReport {
  double max_kernel_error = 0.0;  // |K(z) - (st)^2 K(rho z)| / |K(z)|
  double max_size_error = 0.0;    // |size_Z(t) - (st)^2 size_Z(rho t)| / size_Z(t)
  Point argmax_z{};
  std::size_t samples = 0;
};

/// Zygmund homogeneity on n random (z, s, t): |z_i|, s, t log-uniform in [2^-10, 2^10].
HomogeneityReport check_homogeneity(const Kernel& k, std::size_t n, std::uint64_t seed = 1);

/// Uniform pairs in [-scale, scale]^3 x [-scale, scale]^3 (off the singular set a.s.).
PairSampler uniform_pair_sampler(double scale = 4.0);
/// Pairs with z3 = z1 z2, |z_i| log-uniform over [2^-lo, 2^hi].
PairSampler manifold_pair_sampler(double log2_span = 6.0);
/// Admissible continuity perturbations with relative size up to `max_fraction` <= 1/2.
ContinuitySampler admissible_continuity_sampler(double max_fraction = 0.5, double log2_span = 4.0);

}  // namespace zyg
