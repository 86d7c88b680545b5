#include "zyg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zyg {

SeparatedPair SeparatedPair::make(const Box& source, const Box& target) {
  SeparatedPair p{source, target, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    p.min_gaps[a] = source.axes[a].distance(target.axes[a]);
    if (!(p.min_gaps[a] > 0.0)) {
      std::ostringstream os;
      os << "supports are not separated along axis " << a + 1;
      throw SeparationError(os.str());
    }
  }
  return p;
}

KernelInteraction::KernelInteraction(const Kernel& k, const Box& target, const Resolution& target_res,
                                     const Box& source, const Resolution& source_res)
    : kernel_(&k), target_(target, target_res), source_(source, source_res) {
  SeparatedPair::make(source, target);
  if (!k.is_convolution()) return;
  for (int a = 0; a < 3; ++a)
    if (std::abs(target_.step(a) - source_.step(a)) > 1e-14 * source_.step(a)) return;
  for (std::size_t a = 0; a < 3; ++a) dims_[a] = target_res[a] + source_res[a] - 1;
  table_.resize(static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2]);
  std::array<double, 3> shift;
  for (std::size_t a = 0; a < 3; ++a) shift[a] = target.axes[a].lo - source.axes[a].lo;
  std::size_t idx = 0;
  for (int d1 = 0; d1 < dims_[0]; ++d1) {
    const double z1 = shift[0] + (d1 - (source_res[0] - 1)) * source_.step(0);
    for (int d2 = 0; d2 < dims_[1]; ++d2) {
      const double z2 = shift[1] + (d2 - (source_res[1] - 1)) * source_.step(1);
      for (int d3 = 0; d3 < dims_[2]; ++d3) {
        const double z3 = shift[2] + (d3 - (source_res[2] - 1)) * source_.step(2);
        table_[idx++] = k.profile({z1, z2, z3});
      }
    }
  }
}

double KernelInteraction::entry(std::size_t ti, std::size_t sj) const {
  if (table_.empty()) return (*kernel_)(target_.node(ti), source_.node(sj));
  const auto& tr = target_.resolution();
  const auto& sr = source_.resolution();
  const int t3 = static_cast<int>(ti % tr[2]), t2 = static_cast<int>((ti / tr[2]) % tr[1]),
            t1 = static_cast<int>(ti / (static_cast<std::size_t>(tr[2]) * tr[1]));
  const int s3 = static_cast<int>(sj % sr[2]), s2 = static_cast<int>((sj / sr[2]) % sr[1]),
            s1 = static_cast<int>(sj / (static_cast<std::size_t>(sr[2]) * sr[1]));
  const std::size_t d1 = static_cast<std::size_t>(t1 - s1 + sr[0] - 1);
  const std::size_t d2 = static_cast<std::size_t>(t2 - s2 + sr[1] - 1);
  const std::size_t d3 = static_cast<std::size_t>(t3 - s3 + sr[2] - 1);
  return table_[(d1 * static_cast<std::size_t>(dims_[1]) + d2) * static_cast<std::size_t>(dims_[2]) + d3];
}

// Calls visit(source_index, K(x_i, y_j)) for every source node, in source order.
template <class Visit>
void KernelInteraction::for_each_row(std::size_t ti, Visit&& visit) const {
  if (table_.empty()) {
    const Point x = target_.node(ti);
    for (std::size_t sj = 0; sj < source_.size(); ++sj) visit(sj, (*kernel_)(x, source_.node(sj)));
    return;
  }
  const auto& tr = target_.resolution();
  const auto& sr = source_.resolution();
  const int t3 = static_cast<int>(ti % tr[2]), t2 = static_cast<int>((ti / tr[2]) % tr[1]),
            t1 = static_cast<int>(ti / (static_cast<std::size_t>(tr[2]) * tr[1]));
  const std::size_t D2 = static_cast<std::size_t>(dims_[1]), D3 = static_cast<std::size_t>(dims_[2]);
  std::size_t sj = 0;
  for (int s1 = 0; s1 < sr[0]; ++s1) {
    const std::size_t d1 = static_cast<std::size_t>(t1 - s1 + sr[0] - 1);
    for (int s2 = 0; s2 < sr[1]; ++s2) {
      const std::size_t d2 = static_cast<std::size_t>(t2 - s2 + sr[1] - 1);
      const double* row = table_.data() + (d1 * D2 + d2) * D3 + static_cast<std::size_t>(t3 + sr[2] - 1);
      for (int s3 = 0; s3 < sr[2]; ++s3, ++sj) visit(sj, row[-s3]);
    }
  }
}

std::vector<double> KernelInteraction::apply(std::span<const double> f) const {
  if (f.size() != source_.size()) throw DomainError("apply: source size mismatch");
  std::vector<double> out(target_.size());
  const double w = source_.cell_volume();
  for (std::size_t ti = 0; ti < out.size(); ++ti) {
    double s = 0.0;
    for_each_row(ti, [&](std::size_t sj, double kv) { s += kv * f[sj]; });
    out[ti] = s * w;
  }
  return out;
}

std::vector<double> KernelInteraction::apply_adjoint(std::span<const double> g) const {
  if (g.size() != target_.size()) throw DomainError("apply_adjoint: target size mismatch");
  std::vector<double> out(source_.size(), 0.0);
  // Accumulate row by row in fixed target order: deterministic.
  for (std::size_t ti = 0; ti < target_.size(); ++ti) {
    const double gi = g[ti];
    if (gi == 0.0) continue;
    for_each_row(ti, [&](std::size_t sj, double kv) { out[sj] += kv * gi; });
  }
  const double w = target_.cell_volume();
  for (double& v : out) v *= w;
  return out;
}

double KernelInteraction::commutator_sum(std::span<const double> b_target, std::span<const double> psi,
                                         std::span<const double> b_source, std::span<const double> phi) const {
  if (b_target.size() != target_.size() || psi.size() != target_.size() || b_source.size() != source_.size() ||
      phi.size() != source_.size())
    throw DomainError("commutator_sum: size mismatch");
  double total = 0.0;
  for (std::size_t ti = 0; ti < target_.size(); ++ti) {
    if (psi[ti] == 0.0) continue;
    const double bx = b_target[ti];
    double s = 0.0;
    for_each_row(ti, [&](std::size_t sj, double kv) { s += (bx - b_source[sj]) * kv * phi[sj]; });
    total += s * psi[ti];
  }
  return total * target_.cell_volume() * source_.cell_volume();
}

std::vector<std::pair<double, double>> KernelInteraction::row_ranges(std::span<const double> w) const {
  if (w.size() != source_.size()) throw DomainError("row_ranges: weight size mismatch");
  std::vector<std::pair<double, double>> out(target_.size());
  for (std::size_t ti = 0; ti < out.size(); ++ti) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for_each_row(ti, [&](std::size_t sj, double kv) {
      const double v = kv * w[sj];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    });
    out[ti] = {lo, hi};
  }
  return out;
}

std::vector<std::pair<double, double>> KernelInteraction::column_ranges(std::span<const double> w) const {
  if (w.size() != target_.size()) throw DomainError("column_ranges: weight size mismatch");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> out(source_.size(), {inf, -inf});
  for (std::size_t ti = 0; ti < target_.size(); ++ti) {
    const double wi = w[ti];
    for_each_row(ti, [&](std::size_t sj, double kv) {
      const double v = kv * wi;
      auto& r = out[sj];
      r.first = std::min(r.first, v);
      r.second = std::max(r.second, v);
    });
  }
  return out;
}

namespace {

void require_point_separated(const Box& support, const Point& x) {
  for (std::size_t a = 0; a < 3; ++a) {
    if (support.axes[a].contains(x[a])) {
      std::ostringstream os;
      os << "target point not separated from the support along axis " << a + 1;
      throw SeparationError(os.str());
    }
  }
}

template <class Eval>
std::vector<double> apply_at_points(const GridFunction& f, std::span<const Point> targets, Eval&& eval) {
  for (const auto& x : targets) require_point_separated(f.box(), x);
  std::vector<double> out;
  out.reserve(targets.size());
  for (const auto& x : targets) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0.0) s += eval(x, f.node(j)) * f[j];
    out.push_back(s * f.cell_volume());
  }
  return out;
}

}  // namespace

std::vector<double> apply_T(const Kernel& k, const GridFunction& f, std::span<const Point> targets) {
  return apply_at_points(f, targets, [&](const Point& x, const Point& y) { return k(x, y); });
}

std::vector<double> apply_T_star(const Kernel& k, const GridFunction& f, std::span<const Point> targets) {
  return apply_at_points(f, targets, [&](const Point& x, const Point& y) { return k(y, x); });
}

double commutator_pairing(const Symbol& b, const Kernel& k, const GridFunction& phi, const GridFunction& psi) {
  const KernelInteraction op(k, psi.box(), psi.resolution(), phi.box(), phi.resolution());
  const GridFunction bx = sample_symbol(b, psi.box(), psi.resolution());
  const GridFunction by = sample_symbol(b, phi.box(), phi.resolution());
  return op.commutator_sum(bx.values(), psi.values(), by.values(), phi.values());
}

void check_off_admissible(const OffPair& pair) {
  for (int i = 0; i < 3; ++i) {
    const double lj = pair.p1.side(i);
    const double ll = pair.p2.side(i);
    if (std::abs(lj - ll) > 1e-12 * lj) throw AdmissibilityError("Off pair sides differ");
    const double ratio = pair.p1.axis(i).distance(pair.p2.axis(i)) / lj;
    if (ratio < kOffDistLo * (1 - 1e-12) || ratio > kOffDistHi * (1 + 1e-12)) {
      std::ostringstream os;
      os << "Off pair distance/side = " << ratio << " on axis " << i + 1 << " outside [" << kOffDistLo << ", "
         << kOffDistHi << "]";
      throw AdmissibilityError(os.str());
    }
  }
}

OffPair shifted_off_pair(const ZygmundRectangle& p1, double shift) {
  std::array<Interval, 3> ax;
  for (int i = 0; i < 3; ++i) {
    const double d = shift * p1.side(i);
    ax[static_cast<std::size_t>(i)] = Interval{p1.axis(i).lo + d, p1.axis(i).hi + d};
  }
  return {p1, ZygmundRectangle(ax[0], ax[1], ax[2], 8 * kZygmundTol)};
}

std::vector<TestFunctionPair> default_off_testfunctions(const OffPair& pair, const Resolution& res) {
  const Box& b1 = pair.p1.box();
  const Box& b2 = pair.p2.box();
  auto one = [](const Point&) { return 1.0; };
  auto split3 = [](const Box& b) {
    const double c = b.axes[2].center();
    return [c](const Point& x) { return sign(x[2] - c); };
  };
  auto split1 = [](const Box& b) {
    const double c = b.axes[0].center();
    return [c](const Point& x) { return sign(x[0] - c); };
  };
  std::vector<TestFunctionPair> out;
  out.push_back({"1,1", GridFunction::sample(b1, res, one), GridFunction::sample(b2, res, one)});
  out.push_back({"1,s3", GridFunction::sample(b1, res, one), GridFunction::sample(b2, res, split3(b2))});
  out.push_back({"s3,1", GridFunction::sample(b1, res, split3(b1)), GridFunction::sample(b2, res, one)});
  out.push_back({"s1,1", GridFunction::sample(b1, res, split1(b1)), GridFunction::sample(b2, res, one)});
  return out;
}

OffDiagonalEstimate off_constant_estimate(const Symbol& b, const Kernel& k, double u, double t,
                                          std::span<const OffPair> pairs,
                                          std::span<const std::vector<TestFunctionPair>> testfns) {
  if (!(u > 1.0) || !(t > 1.0)) throw DomainError("Off exponents must exceed 1");
  if (pairs.size() != testfns.size()) throw DomainError("one test-function list per pair is required");
  OffDiagonalEstimate est{u, t, 0.0, 0, 0, {}, {}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    check_off_admissible(pairs[p]);
    const double norm = std::pow(pairs[p].p1.volume(), 1.0 + 1.0 / u - 1.0 / t);
    for (std::size_t f = 0; f < testfns[p].size(); ++f) {
      const auto& tf = testfns[p][f];
      if (!(tf.f1.box() == pairs[p].p1.box()) || !(tf.f2.box() == pairs[p].p2.box()))
        throw AdmissibilityError("test functions must live on P1 and P2");
      if (tf.f1.sup_norm() > 1.0 + 1e-12 || tf.f2.sup_norm() > 1.0 + 1e-12)
        throw AdmissibilityError("test functions must satisfy |f| <= 1");
      const double v = std::abs(commutator_pairing(b, k, tf.f1, tf.f2)) / norm;
      if ((p == 0 && f == 0) || v > est.value) {
        est.value = v;
        est.pair_index = p;
        est.testfn_index = f;
        est.p1 = pairs[p].p1.box();
        est.p2 = pairs[p].p2.box();
      }
    }
  }
  return est;
}

PartialKernelValue partial_kernel_I1(const Kernel& k, const Interval& i1, const std::array<double, 2>& x23,
                                     const std::array<double, 2>& y23, int n) {
  if (x23[0] == y23[0] || x23[1] == y23[1]) throw DegenerateError("partial kernel needs x2 != y2 and x3 != y3");
  if (n < 2) throw DomainError("partial kernel resolution must be at least 2");
  const double h = i1.length() / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x1 = i1.lo + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double y1 = i1.lo + (j + 0.5) * h;
      s += k({x1, x23[0], x23[1]}, {y1, y23[0], y23[1]});
    }
  }
  PartialKernelValue out;
  out.value = s * h * h;
  out.band_width = h;
  out.resolution = n;
  const double z2 = std::abs(x23[0] - y23[0]);
  const double z3 = std::abs(x23[1] - y23[1]);
  out.bound = i1.length() / (z2 * z3) * d_theta(i1.length(), z2, z3, k.theta);
  return out;
}

double domination_majorant(const Symbol& b, const Kernel& k, const GridFunction& f, const Point& z) {
  require_point_separated(f.box(), z);
  const double bz = b(z);
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] == 0.0) continue;
    const Point y = f.node(j);
    s += std::abs(bz - b(y)) * std::abs(k(z, y)) * std::abs(f[j]);
  }
  return s * f.cell_volume();
}

DominationCheck check_domination(const Symbol& b, const Kernel& k, const GridFunction& f, const Point& z) {
  const Point pts[1] = {z};
  const GridFunction bf = GridFunction::sample(f.box(), f.resolution(), [&](const Point& y) { return b(y); });
  GridFunction prod(f.box(), f.resolution());
  for (std::size_t j = 0; j < f.size(); ++j) prod[j] = bf[j] * f[j];
  const double tf = apply_T(k, f, pts)[0];
  const double tbf = apply_T(k, prod, pts)[0];
  DominationCheck c;
  c.commutator = std::abs(b(z) * tf - tbf);
  c.majorant = domination_majorant(b, k, f, z);
  c.holds = c.commutator <= c.majorant * (1.0 + 1e-12) + 1e-300;
  return c;
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("Riesz order alpha must lie in (0, 1)");
}

// Weights |x - y_j|^(alpha-1) h for midpoint nodes on [lo, hi) with n cells;
// the cell containing x gets weight 0.
std::vector<double> riesz_weights(double alpha, double lo, double hi, std::size_t n, double x, double* excluded) {
  const double h = (hi - lo) / static_cast<double>(n);
  std::vector<double> w(n);
  *excluded = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double cl = lo + static_cast<double>(j) * h;
    const double cr = (j + 1 == n) ? hi : cl + h;
    if (cl <= x && x < cr) {
      w[j] = 0.0;
      *excluded = h;
      continue;
    }
    const double y = lo + (static_cast<double>(j) + 0.5) * h;
    w[j] = std::pow(std::abs(x - y), alpha - 1.0) * h;
  }
  return w;
}

}  // namespace

RieszValue riesz_potential_1d(double alpha, const SampledFunction& f, double x) {
  require_alpha(alpha);
  if (f.samples.empty()) return {};
  RieszValue r;
  const auto w = riesz_weights(alpha, f.lo, f.hi, f.samples.size(), x, &r.excluded_width);
  for (std::size_t j = 0; j < w.size(); ++j) r.value += w[j] * f.samples[j];
  return r;
}

double riesz_majorant_3d(double alpha, const GridFunction& f, const Point& x) {
  require_alpha(alpha);
  const auto& res = f.resolution();
  const auto& box = f.box();
  double ex = 0.0;
  const auto w1 = riesz_weights(alpha, box.axes[0].lo, box.axes[0].hi, static_cast<std::size_t>(res[0]), x[0], &ex);
  const auto w2 = riesz_weights(alpha, box.axes[1].lo, box.axes[1].hi, static_cast<std::size_t>(res[1]), x[1], &ex);
  const auto w3 = riesz_weights(alpha, box.axes[2].lo, box.axes[2].hi, static_cast<std::size_t>(res[2]), x[2], &ex);
  // I^3 along axis 3, then I^2, then I^1.
  double total = 0.0;
  for (int i = 0; i < res[0]; ++i) {
    double acc2 = 0.0;
    for (int j = 0; j < res[1]; ++j) {
      double acc3 = 0.0;
      const std::size_t base = f.index(i, j, 0);
      for (int k = 0; k < res[2]; ++k) acc3 += w3[static_cast<std::size_t>(k)] * std::abs(f[base + k]);
      acc2 += w2[static_cast<std::size_t>(j)] * acc3;
    }
    total += w1[static_cast<std::size_t>(i)] * acc2;
  }
  return total;
}

double majorant_split_bound(double t1, double t2, double t3, double alpha, double theta) {
  const double num = std::pow(t3, 2.0 * alpha);
  if (t3 <= t1 * t2) return num / (std::pow(t1 * t2, 1.0 + theta) * std::pow(t3, 1.0 - theta));
  return num / (std::pow(t1 * t2, 1.0 - theta) * std::pow(t3, 1.0 + theta));
}

double riesz_product_kernel(double t1, double t2, double t3, double alpha) {
  return std::pow(t1 * t2 * t3, alpha - 1.0);
}

MajorantChainCheck check_majorant_chain(const Symbol& b, const Kernel& k, const GridFunction& f,
                                        std::span<const Point> points, double alpha, double b_norm) {
  require_alpha(alpha);
  if (k.theta < alpha) throw DomainError("majorant chain requires alpha <= theta");
  MajorantChainCheck out;
  for (const auto& z : points) {
    const DominationCheck dom = check_domination(b, k, f, z);
    if (!dom.holds) ++out.domination_failures;
    const double riesz = riesz_majorant_3d(alpha, f, z);
    double c = 0.0;
    if (dom.majorant > 0.0) c = (b_norm > 0.0 && riesz > 0.0) ? dom.majorant / (b_norm * riesz)
                                                               : std::numeric_limits<double>::infinity();
    out.max_constant = std::max(out.max_constant, c);
    ++out.points;
  }
  return out;
}

}  // namespace zyg
