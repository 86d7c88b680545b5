#include "zyg/awf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zyg {

namespace {

GridFunction from_values(const Box& box, const Resolution& res, const std::vector<double>& v) {
  GridFunction g(box, res);
  std::copy(v.begin(), v.end(), g.values().begin());
  return g;
}

GridFunction ones(const Box& box, const Resolution& res) {
  return GridFunction::sample(box, res, [](const Point&) { return 1.0; });
}

double min_abs(const GridFunction& g) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : g.values()) m = std::min(m, std::abs(v));
  return m;
}

double max_spread(const std::vector<std::pair<double, double>>& ranges) {
  double s = 0.0;
  for (const auto& [lo, hi] : ranges) s = std::max(s, hi - lo);
  return s;
}

void guard_division(const GridFunction& denom, double bracket, const char* what) {
  const double m = min_abs(denom);
  if (m < 0.5 * bracket) {
    std::ostringstream os;
    os << what << " drops to " << m << ", below half the lower bracket " << bracket;
    throw DivisionHazard(os.str());
  }
}

}  // namespace

AwfSetup::AwfSetup(const Kernel& k, const ZygmundRectangle& r, double amplitude, const Resolution& res)
    : pair_(reflect(r, k, amplitude)),
      res_(res),
      op_(k, pair_.reflected.box(), res, pair_.base.box(), res),
      tstar_one_(from_values(pair_.base.box(), res, op_.apply_adjoint(ones(pair_.reflected.box(), res).values()))),
      t_one_(from_values(pair_.reflected.box(), res, op_.apply(ones(pair_.base.box(), res).values()))) {}

double AwfSetup::eta_once_bound() const {
  std::vector<double> w(tstar_one_.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = 1.0 / tstar_one_[j];
  return 0.5 * max_spread(op_.row_ranges(w)) * tstar_one_.cell_volume() * static_cast<double>(w.size());
}

double AwfSetup::eta_twice_bound() const {
  std::vector<double> w(t_one_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / t_one_[i];
  const double second = 0.5 * max_spread(op_.column_ranges(w)) * t_one_.cell_volume() * static_cast<double>(w.size());
  return eta_once_bound() * second;
}

namespace {

void check_input(const AwfSetup& s, const GridFunction& f) {
  if (!(f.box() == s.pair().base.box()) || f.resolution() != s.resolution())
    throw DomainError("AWF input must be sampled on the grid of R");
  const double q = std::abs(quadrature(f));
  if (q > 1e-10 * f.sup_norm() * s.pair().base.volume()) {
    std::ostringstream os;
    os << "AWF input is not mean-zero: |int f| = " << q;
    throw DomainError(os.str());
  }
}

AwfDecomposition once_impl(const AwfSetup& s, const GridFunction& f, std::vector<double>* th_out) {
  check_input(s, f);
  guard_division(s.tstar_one(), s.lower_bracket(), "|T*1_{R~}| on R");
  AwfDecomposition d{.base = s.pair()};
  d.amplitude = s.pair().amplitude;
  d.f_sup = f.sup_norm();
  d.f_abs_mean = f.abs_mean();
  d.h_R = GridFunction(f.box(), f.resolution());
  for (std::size_t j = 0; j < f.size(); ++j) d.h_R[j] = f[j] / s.tstar_one()[j];
  std::vector<double> th = s.interaction().apply(d.h_R.values());
  d.e = from_values(s.pair().reflected.box(), s.resolution(), th);
  double res = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) res = std::max(res, std::abs(f[j] - d.h_R[j] * s.tstar_one()[j]));
  for (std::size_t i = 0; i < th.size(); ++i) res = std::max(res, std::abs(th[i] - d.e[i]));
  d.residual_sup = res;
  d.error_mean = std::abs(quadrature(d.e));
  if (th_out) *th_out = std::move(th);
  return d;
}

}  // namespace

AwfDecomposition awf_once(const AwfSetup& s, const GridFunction& f) { return once_impl(s, f, nullptr); }

AwfDecomposition awf_twice(const AwfSetup& s, const GridFunction& f) {
  std::vector<double> th;
  AwfDecomposition d = once_impl(s, f, &th);
  guard_division(s.t_one(), s.lower_bracket(), "|T1_R| on R~");
  const GridFunction& e1 = d.e;
  d.h_Rtilde = GridFunction(e1.box(), e1.resolution());
  for (std::size_t i = 0; i < e1.size(); ++i) d.h_Rtilde[i] = e1[i] / s.t_one()[i];
  const std::vector<double> tsh = s.interaction().apply_adjoint(d.h_Rtilde.values());
  d.e = from_values(f.box(), f.resolution(), tsh);
  d.twice = true;

  double res = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double recon = d.h_R[j] * s.tstar_one()[j] - tsh[j] + d.e[j];
    res = std::max(res, std::abs(f[j] - recon));
  }
  for (std::size_t i = 0; i < e1.size(); ++i) {
    const double recon = -th[i] + d.h_Rtilde[i] * s.t_one()[i];
    res = std::max(res, std::abs(recon));
  }
  d.residual_sup = res;
  d.error_mean = std::abs(quadrature(d.e));
  return d;
}

AwfDecomposition awf_once(const Kernel& k, const ZygmundRectangle& r, const GridFunction& f, double amplitude) {
  return awf_once(AwfSetup(k, r, amplitude, f.resolution()), f);
}

AwfDecomposition awf_twice(const Kernel& k, const ZygmundRectangle& r, const GridFunction& f, double amplitude) {
  return awf_twice(AwfSetup(k, r, amplitude, f.resolution()), f);
}

Calibration calibrate_amplitude(const Kernel& k, const ZygmundRectangle& r, const Resolution& res) {
  Calibration cal;
  cal.resolution = res;
  std::ostringstream why;
  for (int m = kLadderFirstLog2; m <= kLadderLastLog2; m += kLadderStepLog2) {
    const double a = std::ldexp(1.0, m);
    ++cal.rungs_tried;
    std::optional<AwfSetup> setup;
    try {
      setup.emplace(k, r, a, res);
    } catch (const WitnessFailure& e) {
      why << " A=2^" << m << ": " << e.what() << ";";
      continue;
    }
    const double scale = r.volume() * std::abs(setup->pair().kernel_at_centers);
    const double bracket = std::min(min_abs(setup->tstar_one()), min_abs(setup->t_one())) / scale;
    if (!(bracket >= 0.5)) {
      why << " A=2^" << m << ": bracket " << bracket << ";";
      continue;
    }
    const GridFunction probe = extremal_testfunction(sign_x3_symbol(r.center()[2]), r, res);
    const AwfDecomposition d = awf_twice(*setup, probe);
    if (d.error_mean > kMeanZeroTol * d.f_abs_mean * r.volume() || d.h_factor() > kHBoundFactor) {
      why << " A=2^" << m << ": probe bounds fail;";
      continue;
    }
    const double eta2 = setup->eta_twice_bound();
    if (!(eta2 <= kEtaTwiceCeiling)) {
      why << " A=2^" << m << ": eta bound " << eta2 << ";";
      continue;
    }
    cal.amplitude = a;
    cal.eta_once_bound = setup->eta_once_bound();
    cal.eta_twice_bound = eta2;
    cal.probe_eta_twice = d.eta();
    cal.probe_h_factor = d.h_factor();
    cal.bracket_ratio = bracket;
    return cal;
  }
  throw CalibrationFailure("no amplitude up to 2^32 qualifies for kernel '" + k.name + "':" + why.str());
}

double grid_oscillation(const Symbol& b, const ZygmundRectangle& r, const Resolution& res) {
  const GridFunction bs = sample_symbol(b, r.box(), res);
  const double n = static_cast<double>(bs.size());
  double bmean = 0.0;
  for (double v : bs.values()) bmean += v;
  bmean /= n;
  const double zero_band = 1e-14 * bs.sup_norm();
  double s = 0.0;
  for (double v : bs.values()) {
    const double dev = std::abs(v - bmean);
    if (dev > zero_band) s += dev;
  }
  return s / n;
}

OscillationCertificate oscillation_lower_bound(const Symbol& b, const AwfSetup& setup, double constant) {
  const ZygmundRectangle& r = setup.pair().base;
  const Resolution& res = setup.resolution();
  OscillationCertificate c{r, grid_oscillation(b, r, res), 0.0, 0.0, setup.pair().amplitude, constant, 0.0, 0.0,
                           false};
  const GridFunction f = extremal_testfunction(b, r, res);
  if (f.sup_norm() == 0.0) {
    c.valid = c.osc_value <= 0.0;
    return c;
  }
  const AwfDecomposition d = awf_twice(setup, f);
  const Box& rb = r.box();
  const Box& tb = setup.pair().reflected.box();
  const GridFunction b_r = sample_symbol(b, rb, res);
  const GridFunction b_t = sample_symbol(b, tb, res);
  const GridFunction one_r = ones(rb, res);
  const GridFunction one_t = ones(tb, res);
  const double vol = r.volume();
  const auto& op = setup.interaction();
  // phi_1 = h_R, psi_1 = 1_{R~}/|R|; phi_2 = 1_R, psi_2 = h_{R~}/|R|.
  c.pairing_1 = op.commutator_sum(b_t.values(), one_t.values(), b_r.values(), d.h_R.values()) / vol;
  c.pairing_2 = op.commutator_sum(b_t.values(), d.h_Rtilde.values(), b_r.values(), one_r.values()) / vol;
  c.error_sup = d.e.sup_norm();
  c.bound = constant * (std::abs(c.pairing_1) + std::abs(c.pairing_2));
  c.valid = c.osc_value <= c.bound;
  return c;
}

OscillationCertificate oscillation_lower_bound(const Symbol& b, const Kernel& k, const ZygmundRectangle& r,
                                               double amplitude, const Resolution& res, double constant) {
  return oscillation_lower_bound(b, AwfSetup(k, r, amplitude, res), constant);
}

BmoLowerEstimate bmo_lower_via_off(const Symbol& b, const Kernel& k, double p, double q,
                                   std::span<const ZygmundRectangle> rectangles, double amplitude,
                                   const Resolution& res) {
  if (!(p >= 1.0) || !(p <= q)) throw DomainError("bmo_lower_via_off requires 1 <= p <= q");
  const double expo = 1.0 / p - 1.0 / q;
  BmoLowerEstimate out;
  for (std::size_t i = 0; i < rectangles.size(); ++i) {
    OscillationCertificate c = oscillation_lower_bound(b, k, rectangles[i], amplitude, res);
    if (!c.valid) ++out.invalid_certificates;
    const double v = c.osc_value / std::pow(rectangles[i].volume(), expo);
    if (i == 0 || v > out.value) {
      out.value = v;
      out.argmax = i;
    }
    out.certificates.push_back(std::move(c));
  }
  return out;
}

}  // namespace zyg
