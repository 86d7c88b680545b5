#include "zyg/kernels.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace zyg {

namespace {

void require_positive(double t1, double t2, double t3, double theta) {
  if (!(t1 > 0.0) || !(t2 > 0.0) || !(t3 > 0.0))
    throw DomainError("D_theta/size_Z need positive arguments");
  if (!(theta > 0.0) || theta > 1.0) throw DomainError("theta must lie in (0, 1]");
}

}  // namespace

double d_theta(double t1, double t2, double t3, double theta) {
  require_positive(t1, t2, t3, theta);
  const double ratio = t3 / (t1 * t2);
  return std::pow(ratio + 1.0 / ratio, -theta);
}

double size_z(double t1, double t2, double t3, double theta) {
  require_positive(t1, t2, t3, theta);
  // (t1^2 t2^2 + t3^2)^-theta (t1 t2 t3)^-(1-theta): avoids the ratio blowing up.
  const double p = t1 * t2;
  return std::pow(p * p + t3 * t3, -theta) * std::pow(p * t3, theta - 1.0);
}

double nagel_wainger_profile(const Point& z) {
  const double p = z[0] * z[1];
  const double den = p * p + z[2] * z[2];
  if (!(den > 0.0)) throw SingularityError("Nagel-Wainger kernel evaluated on its singular set");
  return sign(p) / den;
}

double nagel_wainger(const Point& x, const Point& y) { return nagel_wainger_profile(x - y); }

Point nw_witness(const Point& y, double d1, double d2) {
  const double s = kWitnessSpread;
  return {y[0] + s * d1, y[1] + s * d2, y[2] + s * s * d1 * d2};
}

namespace {

double reference_modulus_constant();

}  // namespace

Kernel make_nagel_wainger(double theta) {
  Kernel k;
  k.name = "nagel-wainger";
  k.theta = theta;
  k.evaluate = nagel_wainger;
  k.profile = nagel_wainger_profile;
  k.witness = nw_witness;
  // |K(witness)| = 1/(2 s^4 d1^2 d2^2) with s^4 = 2.
  k.witness_constant = 0.25;
  const double c = reference_modulus_constant();
  k.modulus = [c](double t) { return c * t; };
  return k;
}

Kernel make_zero_stub(double theta) {
  Kernel k;
  k.name = "zero-stub";
  k.theta = theta;
  k.evaluate = [](const Point&, const Point&) { return 0.0; };
  k.profile = [](const Point&) { return 0.0; };
  k.witness = nw_witness;
  k.witness_constant = 0.25;
  k.modulus = [](double t) { return t; };
  return k;
}

Kernel make_constant_stub(double theta) {
  Kernel k;
  k.name = "constant-stub";
  k.theta = theta;
  k.evaluate = [](const Point&, const Point&) { return 1.0; };
  k.profile = [](const Point&) { return 1.0; };
  k.witness = nw_witness;
  k.witness_constant = 0.25;
  k.modulus = [](double t) { return t; };
  return k;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, KernelFactory>& registry() {
  static std::map<std::string, KernelFactory> r{
      {"nagel-wainger", make_nagel_wainger},
      {"zero-stub", make_zero_stub},
      {"constant-stub", make_constant_stub},
  };
  return r;
}

}  // namespace

void register_kernel(const std::string& name, KernelFactory factory) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(factory);
}

Kernel make_kernel(const std::string& name, double theta) {
  KernelFactory f;
  {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end()) throw ConfigError("unknown kernel '" + name + "'");
    f = it->second;
  }
  if (!(theta > 0.0) || theta > 1.0) throw DomainError("theta must lie in (0, 1]");
  return f(theta);
}

std::vector<std::string> kernel_names() {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

namespace {

double abs_diff(const Point& a, const Point& b, int i) { return std::abs(a[i] - b[i]); }

double ratio_of(double numer, double denom) {
  if (numer == 0.0) return 0.0;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return numer / denom;
}

}  // namespace

BoundCheckReport check_size_bound(const Kernel& k, const PairSampler& sampler, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BoundCheckReport rep;
  for (std::size_t s = 0; s < n; ++s) {
    const auto [x, y] = sampler(rng);
    const double bound = size_z(abs_diff(x, y, 0), abs_diff(x, y, 1), abs_diff(x, y, 2), k.theta);
    const double r = ratio_of(std::abs(k(x, y)), bound);
    if (s == 0 || r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax_x = x;
      rep.argmax_y = y;
    }
  }
  rep.samples = n;
  return rep;
}

BoundCheckReport check_continuity(const Kernel& k, const ContinuitySampler& sampler, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BoundCheckReport rep;
  for (std::size_t s = 0; s < n; ++s) {
    const ContinuitySample smp = sampler(rng);
    const Point& x = smp.x;
    const Point& y = smp.y;
    const Point d = smp.x_perturbed - x;
    double t[3];
    for (int i = 0; i < 3; ++i) {
      t[i] = abs_diff(x, y, i);
      if (std::abs(d[i]) > 0.5 * t[i]) {
        std::ostringstream os;
        os << "continuity sample violates |x_i - x'_i| <= |x_i - y_i|/2 on axis " << i + 1;
        throw DomainError(os.str());
      }
    }
    const double size = size_z(t[0], t[1], t[2], k.theta);
    const double base = k(x, y);
    const double rel1 = std::abs(d[0]) / t[0];
    const double rel23 = std::abs(d[1]) / t[1] + std::abs(d[2]) / t[2];
    const double w1 = k.modulus(std::min(rel1, 1.0)) * size;
    const double w23 = k.modulus(std::min(rel23, 1.0)) * size;

    const Point x1p{x[0] + d[0], x[1], x[2]};
    const Point x23p{x[0], x[1] + d[1], x[2] + d[2]};
    const Point y1p{y[0] + d[0], y[1], y[2]};
    const Point y23p{y[0], y[1] + d[1], y[2] + d[2]};
    const double ratios[4] = {
        ratio_of(std::abs(k(x1p, y) - base), w1),
        ratio_of(std::abs(k(x23p, y) - base), w23),
        ratio_of(std::abs(k(x, y1p) - base), w1),
        ratio_of(std::abs(k(x, y23p) - base), w23),
    };
    const double r = *std::max_element(std::begin(ratios), std::end(ratios));
    if (s == 0 || r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax_x = x;
      rep.argmax_y = y;
    }
  }
  rep.samples = n;
  return rep;
}

PairSampler uniform_pair_sampler(double scale) {
  return [scale](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Point x{u(rng), u(rng), u(rng)};
    Point y{u(rng), u(rng), u(rng)};
    return std::make_pair(x, y);
  };
}

namespace {

double log_uniform(std::mt19937_64& rng, double log2_span) {
  std::uniform_real_distribution<double> u(-log2_span, log2_span);
  return std::exp2(u(rng));
}

double random_sign(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
}

}  // namespace

PairSampler manifold_pair_sampler(double log2_span) {
  return [log2_span](std::mt19937_64& rng) {
    const double z1 = random_sign(rng) * log_uniform(rng, log2_span);
    const double z2 = random_sign(rng) * log_uniform(rng, log2_span);
    const double z3 = random_sign(rng) * std::abs(z1 * z2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Point y{u(rng), u(rng), u(rng)};
    return std::make_pair(y + Point{z1, z2, z3}, y);
  };
}

ContinuitySampler admissible_continuity_sampler(double max_fraction, double log2_span) {
  if (max_fraction > 0.5) throw DomainError("continuity perturbations are limited to half the separation");
  return [max_fraction, log2_span](std::mt19937_64& rng) {
    Point z;
    for (int i = 0; i < 2; ++i) z[i] = random_sign(rng) * log_uniform(rng, log2_span);
    // Vertical offset spread around the Zygmund manifold.
    z[2] = random_sign(rng) * std::abs(z[0] * z[1]) * log_uniform(rng, 0.5 * log2_span);
    std::uniform_real_distribution<double> frac(-max_fraction, max_fraction);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Point y{u(rng), u(rng), u(rng)};
    Point x = y + z;
    Point d;
    for (int i = 0; i < 3; ++i) d[i] = frac(rng) * std::abs(x[i] - y[i]);
    return ContinuitySample{x, x + d, y};
  };
}

HomogeneityReport check_homogeneity(const Kernel& k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HomogeneityReport rep;
  const Point origin{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    Point z;
    for (double& v : z) v = random_sign(rng) * log_uniform(rng, 10.0);
    const double s = log_uniform(rng, 10.0);
    const double t = log_uniform(rng, 10.0);
    const double st2 = (s * t) * (s * t);
    const Point rz{s * z[0], t * z[1], s * t * z[2]};
    const double kz = k(z, origin);
    const double krz = st2 * k(rz, origin);
    const double ke = kz == krz ? 0.0 : std::abs(kz - krz) / std::abs(kz);
    const double sz = size_z(std::abs(z[0]), std::abs(z[1]), std::abs(z[2]), k.theta);
    const double srz = st2 * size_z(std::abs(rz[0]), std::abs(rz[1]), std::abs(rz[2]), k.theta);
    const double se = std::abs(sz - srz) / sz;
    if (ke > rep.max_kernel_error) {
      rep.max_kernel_error = ke;
      rep.argmax_z = z;
    }
    rep.max_size_error = std::max(rep.max_size_error, se);
  }
  rep.samples = n;
  return rep;
}

namespace {

double reference_modulus_constant() {
  // omega(t) = c t, c measured once on a fixed admissible sample set.
  static const double c = [] {
    Kernel unit;
    unit.name = "nagel-wainger";
    unit.theta = 1.0;
    unit.evaluate = nagel_wainger;
    unit.modulus = [](double t) { return t; };
    return check_continuity(unit, admissible_continuity_sampler(), 4096, 20240901).max_ratio;
  }();
  return c;
}

}  // namespace

}  // namespace zyg
