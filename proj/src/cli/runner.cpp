#include "zyg/cli/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "zyg/awf.hpp"
#include "zyg/cli/serialize.hpp"
#include "zyg/compact.hpp"
#include "zyg/multiplier.hpp"
#include "zyg/norms.hpp"
#include "zyg/operators.hpp"

namespace zyg::cli {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::KernelsCheck: return "kernels-check";
    case Command::NormsBmo: return "norms-bmo";
    case Command::NormsEquivalence: return "norms-equivalence";
    case Command::AwfVerify: return "awf-verify";
    case Command::OffEstimate: return "off-estimate";
    case Command::CompactProbe: return "compact-probe";
    case Command::MultiplierAudit: return "multiplier-audit";
  }
  return "unknown";
}

std::vector<Command> all_commands() {
  return {Command::KernelsCheck, Command::NormsBmo,     Command::NormsEquivalence, Command::AwfVerify,
          Command::OffEstimate,  Command::CompactProbe, Command::MultiplierAudit};
}

namespace {

constexpr std::size_t kHomogeneitySamples = 100000;
constexpr std::size_t kBoundSamples = 10000;
constexpr std::size_t kHolderSamples = 10000;
constexpr std::size_t kMaxRectangles = 10;
constexpr double kHomogeneityTol = 1e-12;
constexpr double kAwfTol = 1e-8;
constexpr double kGradientTol = 1e-6;
constexpr double kStabilityTol = 0.05;
constexpr double kColumnTol = 0.05;
constexpr double kCornerTol = 1e-9;

struct Context {
  const ExperimentConfig& cfg;
  RunResult& out;
  Kernel kernel;
  Symbol symbol;

  void fail(const std::string& what) { out.invariant_failures.push_back(what); }
};

Kernel build_kernel(const ExperimentConfig& c) {
  try {
    return make_kernel(c.kernel, c.theta);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config field 'kernel': ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config field 'theta': ") + e.what());
  }
}

Symbol build_symbol(const ExperimentConfig& c) {
  try {
    return make_symbol(c.symbol);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config field 'symbol': ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config field 'symbol': ") + e.what());
  }
}

std::vector<ZygmundRectangle> rectangles(const ExperimentConfig& c) {
  auto all = enumerate_zygmund(c.domain, c.depth_min, c.depth_max);
  if (all.empty()) throw ConfigError("config fields 'domain'/'depths': no dyadic Zygmund rectangle fits");
  return all;
}

/// Evenly strided subset of at most `cap` entries, first entry always kept.
std::vector<ZygmundRectangle> strided(const std::vector<ZygmundRectangle>& all, std::size_t cap) {
  if (all.size() <= cap) return all;
  std::vector<ZygmundRectangle> out;
  for (std::size_t i = 0; i < cap; ++i) out.push_back(all[i * all.size() / cap]);
  return out;
}

double amplitude(Context& ctx) {
  if (ctx.cfg.amplitude) return *ctx.cfg.amplitude;
  const auto coarsest = enumerate_zygmund(ctx.cfg.domain, ctx.cfg.depth_min, ctx.cfg.depth_min);
  if (coarsest.empty()) throw ConfigError("config fields 'domain'/'depths': no rectangle to calibrate on");
  const Calibration cal = calibrate_amplitude(ctx.kernel, coarsest.front(), ctx.cfg.resolution);
  ctx.out.bundle.add("calibration", {{"rectangle", coarsest.front()}, {"calibration", cal}});
  return cal.amplitude;
}

void kernels_check(Context& ctx) {
  const auto& c = ctx.cfg;
  CsvTable t("kernels-check", {"kernel", "theta", "check", "value", "samples"});
  auto row = [&](const std::string& check, double v, std::size_t n) {
    t.add_row({c.kernel, csv_number(c.theta), check, csv_number(v), csv_number(n)});
  };

  const auto hom = check_homogeneity(ctx.kernel, kHomogeneitySamples, c.seed);
  ctx.out.bundle.add("homogeneity", hom);
  row("homogeneity_kernel_error", hom.max_kernel_error, hom.samples);
  row("homogeneity_size_error", hom.max_size_error, hom.samples);
  if (!(hom.max_kernel_error <= kHomogeneityTol)) ctx.fail("kernel homogeneity error exceeds 1e-12");
  if (!(hom.max_size_error <= kHomogeneityTol)) ctx.fail("size_Z homogeneity error exceeds 1e-12");

  const auto size_u = check_size_bound(ctx.kernel, uniform_pair_sampler(), kBoundSamples, c.seed);
  const auto size_m = check_size_bound(ctx.kernel, manifold_pair_sampler(), kBoundSamples, c.seed);
  const auto cont = check_continuity(ctx.kernel, admissible_continuity_sampler(), kBoundSamples, c.seed);
  ctx.out.bundle.add("size_bound_uniform", size_u);
  ctx.out.bundle.add("size_bound_manifold", size_m);
  ctx.out.bundle.add("continuity", cont);
  row("size_ratio_uniform", size_u.max_ratio, size_u.samples);
  row("size_ratio_manifold", size_m.max_ratio, size_m.samples);
  row("continuity_ratio", cont.max_ratio, cont.samples);
  for (const auto* r : {&size_u, &size_m, &cont})
    if (!std::isfinite(r->max_ratio)) ctx.fail("kernel bound ratio is not finite");

  const auto coarsest = enumerate_zygmund(c.domain, c.depth_min, c.depth_min);
  if (coarsest.empty()) throw ConfigError("config fields 'domain'/'depths': no rectangle to calibrate on");
  const Calibration cal = calibrate_amplitude(ctx.kernel, coarsest.front(), c.resolution);
  ctx.out.bundle.add("calibration", {{"rectangle", coarsest.front()}, {"calibration", cal}});
  row("calibrated_amplitude", cal.amplitude, static_cast<std::size_t>(cal.rungs_tried));
  row("eta_twice_bound", cal.eta_twice_bound, static_cast<std::size_t>(cal.rungs_tried));
  ctx.out.tables.push_back(std::move(t));
}

void norms_bmo(Context& ctx) {
  const auto& c = ctx.cfg;
  const NormEstimate est = bmo_norm(ctx.symbol, c.domain, c.depth_min, c.depth_max, c.alpha, c.resolution);
  ctx.out.bundle.add("bmo_norm", est);
  CsvTable t("norms-bmo", {"symbol", "alpha", "depth_min", "depth_max", "value", "witness_rectangle", "family_size"});
  t.add_row({c.symbol, csv_number(c.alpha), csv_number(c.depth_min), csv_number(c.depth_max), csv_number(est.value),
             est.witness ? rectangle_label(*est.witness) : "", csv_number(est.family_size)});
  ctx.out.tables.push_back(std::move(t));
}

void norms_equivalence(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto rep = check_equivalence(ctx.symbol, c.alpha, c.domain, c.depth_min, c.depth_max, kHolderSamples, c.seed,
                                     kDefaultEquivalenceConstant, c.resolution);
  ctx.out.bundle.add("equivalence", rep);
  CsvTable t("norms-equivalence", {"symbol", "alpha", "bmo", "holder", "ratio", "c_eq", "status"});
  t.add_row({c.symbol, csv_number(c.alpha), csv_number(rep.bmo), csv_number(rep.holder), csv_number(rep.ratio),
             csv_number(rep.c_eq), to_string(rep.status)});
  ctx.out.tables.push_back(std::move(t));
  if (rep.status == EquivalenceStatus::OutOfRange) ctx.fail("equivalence ratio outside [1/c_eq, c_eq]: " + rep.message);
}

void awf_verify(Context& ctx) {
  const auto& c = ctx.cfg;
  const double a = amplitude(ctx);
  CsvTable t("awf-verify", {"rectangle", "amplitude", "error_mean", "error_mean_tol", "h_factor", "residual_sup",
                            "eta_A", "eta_16A", "eta_decreases", "osc", "certificate_bound", "certificate_valid"});
  for (const auto& r : strided(rectangles(c), kMaxRectangles)) {
    const AwfSetup s1(ctx.kernel, r, a, c.resolution);
    const AwfSetup s16(ctx.kernel, r, 16.0 * a, c.resolution);
    const GridFunction f = extremal_testfunction(ctx.symbol, r, c.resolution);
    const auto d1 = awf_twice(s1, f);
    const auto d16 = awf_twice(s16, f);
    const auto cert = oscillation_lower_bound(ctx.symbol, s1);

    const double mean_tol = kAwfTol * d1.f_abs_mean * r.volume();
    const bool trivial = d1.f_abs_mean == 0.0;
    const bool decreases = trivial || d16.eta() < d1.eta();
    const std::string label = rectangle_label(r);
    if (!(d1.error_mean <= mean_tol)) ctx.fail("awf mean-zero error on " + label);
    if (!(d1.h_factor() <= kHBoundFactor)) ctx.fail("awf h_R exceeds 8 A ||f|| on " + label);
    if (!(d1.residual_sup <= kAwfTol * d1.f_sup)) ctx.fail("awf reconstruction residual on " + label);
    if (!decreases) ctx.fail("awf error ratio does not decrease from A to 16A on " + label);
    if (!cert.valid) ctx.fail("invalid oscillation certificate on " + label);

    ctx.out.bundle.add("awf",
                       {{"rectangle", r},
                        {"pair", d1.base},
                        {"amplitude", a},
                        {"error_mean", d1.error_mean},
                        {"h_factor", d1.h_factor()},
                        {"residual_sup", d1.residual_sup},
                        {"f_sup", d1.f_sup},
                        {"f_abs_mean", d1.f_abs_mean},
                        {"eta", json::array({d1.eta(), d16.eta()})},
                        {"eta_decreases", decreases},
                        {"certificate", cert},
                        {"resolution", c.resolution}});
    t.add_row({label, csv_number(a), csv_number(d1.error_mean), csv_number(mean_tol), csv_number(d1.h_factor()),
               csv_number(d1.residual_sup), csv_number(d1.eta()), csv_number(d16.eta()), csv_bool(decreases),
               csv_number(cert.osc_value), csv_number(cert.bound), csv_bool(cert.valid)});
  }
  ctx.out.tables.push_back(std::move(t));
}

void off_estimate(Context& ctx) {
  const auto& c = ctx.cfg;
  const double p = c.p.value_or(2.0);
  const double q = c.q.value_or(p);
  const double a = amplitude(ctx);
  const auto rects = strided(rectangles(c), kMaxRectangles);

  std::vector<OffPair> pairs;
  std::vector<std::vector<TestFunctionPair>> testfns;
  CsvTable t("off-estimate", {"rectangle", "u", "t", "off_value", "osc_scaled", "certificate_valid"});
  const auto lower = bmo_lower_via_off(ctx.symbol, ctx.kernel, p, q, rects, a, c.resolution);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    pairs.push_back(shifted_off_pair(rects[i]));
    testfns.push_back(default_off_testfunctions(pairs.back(), c.resolution));
    const auto one = off_constant_estimate(ctx.symbol, ctx.kernel, p, q, std::span(pairs).last(1),
                                           std::span(testfns).last(1));
    const auto& cert = lower.certificates[i];
    const double scaled = cert.osc_value / std::pow(rects[i].volume(), 1.0 / p - 1.0 / q);
    t.add_row({rectangle_label(rects[i]), csv_number(p), csv_number(q), csv_number(one.value), csv_number(scaled),
               csv_bool(cert.valid)});
  }
  const auto total = off_constant_estimate(ctx.symbol, ctx.kernel, p, q, pairs, testfns);
  ctx.out.bundle.add("off_estimate", total);
  ctx.out.bundle.add("bmo_lower_via_off", {{"value", lower.value},
                                           {"argmax", lower.argmax},
                                           {"invalid_certificates", lower.invalid_certificates},
                                           {"certificates", lower.certificates}});
  if (lower.invalid_certificates > 0) ctx.fail("invalid oscillation certificates in off estimate");
  ctx.out.tables.push_back(std::move(t));
}

void compact_probe(Context& ctx) {
  const auto& c = ctx.cfg;
  const double a = amplitude(ctx);
  ProbeOptions opts;
  opts.resolution = c.resolution;
  const auto dossier = compactness_dossier(ctx.symbol, c.alpha, ctx.kernel, a, c.domain,
                                           dyadic_scale_ladder(c.depth_min, c.depth_max), opts);
  ctx.out.bundle.add("compactness_dossier", dossier);
  CsvTable t("compact-probe", {"axis", "scale", "o_alpha", "witness_rectangle", "searched"});
  for (const auto& ax : dossier.axes) {
    for (std::size_t i = 0; i < ax.probe.scales.size(); ++i)
      t.add_row({csv_number(ax.probe.axis), csv_number(ax.probe.scales[i]), csv_number(ax.probe.o_alpha_values[i]),
                 i < ax.probe.witnesses.size() ? rectangle_label(ax.probe.witnesses[i]) : "",
                 csv_number(ax.probe.searched[i])});
    if (ax.invalid_certificates > 0)
      ctx.fail("invalid certificates on axis " + std::to_string(ax.probe.axis) + " of the compactness dossier");
  }
  ctx.out.tables.push_back(std::move(t));
}

void multiplier_audit(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto grad = gradient_check(kHolderSamples, c.seed);
  ctx.out.bundle.add("gradient_check", grad);
  if (!(grad.max_relative_error <= kGradientTol)) ctx.fail("fp_gradient disagrees with finite differences");

  const LogGrid grid;
  const auto checks = check_mz1(grid, 2);
  const auto stab = check_mz1_stability(grid, 2);
  ctx.out.bundle.add("mz1", checks);
  ctx.out.bundle.add("mz1_stability", stab);
  CsvTable t("multiplier-mz1", {"alpha", "max_ratio", "argmax", "fine_max_ratio", "relative_change"});
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& m = checks[i];
    const std::string am =
        "(" + csv_number(m.argmax[0]) + ";" + csv_number(m.argmax[1]) + ";" + csv_number(m.argmax[2]) + ")";
    t.add_row({to_string(m.alpha), csv_number(m.max_ratio), am, csv_number(stab[i].fine),
               csv_number(stab[i].relative_change)});
    if (!std::isfinite(m.max_ratio)) ctx.fail("M_Z^1 ratio not finite for alpha " + to_string(m.alpha));
    if (!(stab[i].relative_change <= kStabilityTol)) ctx.fail("M_Z^1 ratio unstable for alpha " + to_string(m.alpha));
  }
  ctx.out.tables.push_back(std::move(t));

  std::vector<double> eps;
  for (int m = 2; m <= 12; ++m) eps.push_back(std::ldexp(1.0, -m));
  const auto rows = unboundedness_sweep(eps);
  ctx.out.bundle.add("unboundedness", rows);
  CsvTable u("multiplier-unboundedness", {"eps", "eps_max_d1", "eps_max_d2", "eps2_max_d3", "corner"});
  for (const auto& r : rows)
    u.add_row({csv_number(r.eps), csv_number(r.d1), csv_number(r.d2), csv_number(r.d3), csv_number(r.corner)});
  ctx.out.tables.push_back(std::move(u));

  auto spread = [&](double UnboundednessRow::*col) {
    double lo = rows.front().*col, hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.*col);
      hi = std::max(hi, r.*col);
    }
    return (hi - lo) / hi;
  };
  if (!(spread(&UnboundednessRow::d1) <= kColumnTol && spread(&UnboundednessRow::d2) <= kColumnTol &&
        spread(&UnboundednessRow::d3) <= kColumnTol))
    ctx.fail("unboundedness columns vary by more than 5%");
  for (const auto& r : rows)
    if (!(std::abs(r.corner - std::pow(2.0, -1.5)) <= kCornerTol)) ctx.fail("corner value differs from 2^{-3/2}");
}

}  // namespace

RunResult run(const ExperimentConfig& config, Command command, bool stamp) {
  ExperimentConfig cfg = config;
  validate(cfg);
  RunResult out;
  out.bundle.command = to_string(command);
  out.bundle.config = experiment_json(cfg);
  out.bundle.config_hash = config_hash(cfg);
  if (stamp) out.bundle.timestamp = utc_timestamp();

  Context ctx{cfg, out, build_kernel(cfg), build_symbol(cfg)};
  switch (command) {
    case Command::KernelsCheck: kernels_check(ctx); break;
    case Command::NormsBmo: norms_bmo(ctx); break;
    case Command::NormsEquivalence: norms_equivalence(ctx); break;
    case Command::AwfVerify: awf_verify(ctx); break;
    case Command::OffEstimate: off_estimate(ctx); break;
    case Command::CompactProbe: compact_probe(ctx); break;
    case Command::MultiplierAudit: multiplier_audit(ctx); break;
  }
  out.bundle.add("invariant_failures", out.invariant_failures);
  return out;
}

void write_outputs(const RunResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("config field 'out': cannot create " + out_dir + ": " + ec.message());
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream os(fs::path(out_dir) / file, std::ios::binary);
    if (!os) throw ConfigError("config field 'out': cannot write " + file);
    os << text;
  };
  write(result.bundle.command + ".json", result.bundle.to_json().dump(2) + "\n");
  for (const auto& t : result.tables) write(t.name() + ".csv", t.str());
}

}  // namespace zyg::cli
