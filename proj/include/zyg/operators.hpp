#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zyg/fields.hpp"
#include "zyg/kernels.hpp"

namespace zyg {

/// Source/target boxes separated in every coordinate.
struct SeparatedPair {
  Box source;
  Box target;
  Point min_gaps{};

  /// Throws SeparationError unless every coordinate gap is positive.
  static SeparatedPair make(const Box& source, const Box& target);
};

/// Kernel matrix between the midpoint nodes of a target grid and a source grid
/// on separated boxes. Convolution kernels on grids with matching cell sizes
/// are tabulated by index offset; anything else is evaluated pointwise.
class KernelInteraction {
 public:
  KernelInteraction(const Kernel& k, const Box& target, const Resolution& target_res, const Box& source,
                    const Resolution& source_res);

  std::size_t target_size() const { return target_.size(); }
  std::size_t source_size() const { return source_.size(); }
  bool tabulated() const { return !table_.empty(); }

  /// (T f)(x_i) = sum_j K(x_i, y_j) f_j dV_source.
  std::vector<double> apply(std::span<const double> source_values) const;
  /// (T* g)(y_j) = sum_i K(x_i, y_j) g_i dV_target.
  std::vector<double> apply_adjoint(std::span<const double> target_values) const;
  /// sum_i sum_j (b_t[i] - b_s[j]) K(x_i, y_j) phi[j] psi[i] dV_t dV_s.
  double commutator_sum(std::span<const double> b_target, std::span<const double> psi,
                        std::span<const double> b_source, std::span<const double> phi) const;

  double entry(std::size_t target_index, std::size_t source_index) const;

  /// Per target node: {min_j, max_j} of K(x_i, y_j) * w_j.
  std::vector<std::pair<double, double>> row_ranges(std::span<const double> source_weight) const;
  /// Per source node: {min_i, max_i} of K(x_i, y_j) * w_i.
  std::vector<std::pair<double, double>> column_ranges(std::span<const double> target_weight) const;

  const GridFunction& target_grid() const { return target_; }
  const GridFunction& source_grid() const { return source_; }

 private:
  template <class Visit>
  void for_each_row(std::size_t target_index, Visit&& visit) const;

  const Kernel* kernel_;
  GridFunction target_;  // geometry carriers only
  GridFunction source_;
  std::array<int, 3> dims_{};
  std::vector<double> table_;
};

/// T f at arbitrary target points separated from supp f.
std::vector<double> apply_T(const Kernel& k, const GridFunction& f, std::span<const Point> targets);
/// T* f(x) = int K(y, x) f(y) dy at target points.
std::vector<double> apply_T_star(const Kernel& k, const GridFunction& f, std::span<const Point> targets);

/// Double midpoint quadrature of (b(x) - b(y)) K(x,y) phi(y) psi(x); phi on P1, psi on P2.
double commutator_pairing(const Symbol& b, const Kernel& k, const GridFunction& phi, const GridFunction& psi);

struct OffDiagonalEstimate {
  double u = 2.0;
  double t = 2.0;
  double value = 0.0;
  std::size_t pair_index = 0;
  std::size_t testfn_index = 0;
  Box p1{};
  Box p2{};
};

struct OffPair {
  ZygmundRectangle p1;
  ZygmundRectangle p2;
};

struct TestFunctionPair {
  std::string label;
  GridFunction f1;  // on P1
  GridFunction f2;  // on P2
};

/// Accepted comparability window for dist(J^i, L^i) / l(J^i).
inline constexpr double kOffDistLo = 1.0;
inline constexpr double kOffDistHi = 3.0;

/// Throws AdmissibilityError unless l(J^i) = l(L^i) and dist(J^i, L^i) in [l, 3l].
void check_off_admissible(const OffPair& pair);

/// P2 = P1 shifted by `shift` side lengths along every axis (dist = (shift-1) l).
OffPair shifted_off_pair(const ZygmundRectangle& p1, double shift = 2.0);

/// Default test functions on a pair: indicators and sign patterns, all |f| <= 1.
std::vector<TestFunctionPair> default_off_testfunctions(const OffPair& pair, const Resolution& res);

/// max |pairing| / |P1|^(1 + 1/u - 1/t): a lower estimate of Off_u^t.
OffDiagonalEstimate off_constant_estimate(const Symbol& b, const Kernel& k, double u, double t,
                                          std::span<const OffPair> pairs,
                                          std::span<const std::vector<TestFunctionPair>> testfns);

struct PartialKernelValue {
  double value = 0.0;
  double band_width = 0.0;  // width of the excluded diagonal band in x1 - y1
  double bound = 0.0;       // |I1| / (|z2||z3|) * D_theta(|I1|, |z2|, |z3|)
  int resolution = 0;
};

/// K_{I1}(x23, y23) = double integral of K over x1, y1 in I1, diagonal cells excluded.
PartialKernelValue partial_kernel_I1(const Kernel& k, const Interval& i1, const std::array<double, 2>& x23,
                                     const std::array<double, 2>& y23, int n = 256);

/// Quadrature of |b(z) - b(y)| |K(z,y)| |f(y)| over supp f.
double domination_majorant(const Symbol& b, const Kernel& k, const GridFunction& f, const Point& z);

struct DominationCheck {
  double commutator = 0.0;  // |b(z) Tf(z) - T(bf)(z)|
  double majorant = 0.0;
  bool holds = false;
};
DominationCheck check_domination(const Symbol& b, const Kernel& k, const GridFunction& f, const Point& z);

struct RieszValue {
  double value = 0.0;
  double excluded_width = 0.0;
};

/// Quadrature of |x - y|^(alpha-1) f(y) with the cell containing x excluded.
RieszValue riesz_potential_1d(double alpha, const SampledFunction& f, double x);

/// (I^1 I^2 I^3)|f| (x), applied axis by axis (3, then 2, then 1).
double riesz_majorant_3d(double alpha, const GridFunction& f, const Point& x);

/// Case-split bound for t3^{2alpha} size_Z(t, theta) used in the majorant chain:
/// t3^{2a} / (t1^{1+th} t2^{1+th} t3^{1-th}) if t3 <= t1 t2, else
/// t3^{2a} / (t1^{1-th} t2^{1-th} t3^{1+th}).
double majorant_split_bound(double t1, double t2, double t3, double alpha, double theta);
/// prod t_i^{alpha - 1}.
double riesz_product_kernel(double t1, double t2, double t3, double alpha);

struct MajorantChainCheck {
  double max_constant = 0.0;  // max of majorant / (norm * riesz) over points
  std::size_t points = 0;
  std::size_t domination_failures = 0;
};

/// Checks |[b,T]f(z)| <= majorant(z) and majorant(z) <= C * norm * (I^1 I^2 I^3)|f|(z)
/// at every point; reports the smallest C that works.
MajorantChainCheck check_majorant_chain(const Symbol& b, const Kernel& k, const GridFunction& f,
                                        std::span<const Point> points, double alpha, double b_norm);

}  // namespace zyg
