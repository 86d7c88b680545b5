#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zyg/cli/config.hpp"
#include "zyg/cli/runner.hpp"

using namespace zyg;
using namespace zyg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Zygmund-dilation commutator workbench"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, kernel, symbol, depths, resolution, amplitude;
  std::optional<double> theta, alpha, p, q;
  bool stamp = false;
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--kernel", kernel, "kernel name");
  app.add_option("--theta", theta, "kernel decay exponent in (0, 1]");
  app.add_option("--symbol", symbol, "symbol spec, e.g. linear-x3 or holder-x3:0.5");
  app.add_option("--alpha", alpha, "oscillation exponent");
  app.add_option("--p", p, "source exponent");
  app.add_option("--q", q, "target exponent");
  app.add_option("--depths", depths, "dyadic depth range MIN..MAX");
  app.add_option("--resolution", resolution, "grid resolution N1xN2xN3");
  app.add_option("--amplitude", amplitude, "reflection amplitude A or 'auto'");
  app.add_flag("--stamp", stamp, "add a wall-clock timestamp to the JSON bundle");

  std::optional<Command> command;
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, Command c, const std::string& desc) {
    g->add_subcommand(name, desc)->callback([&command, c] { command = c; });
  };
  auto* kernels = group("kernels", "kernel calculus");
  leaf(kernels, "check", Command::KernelsCheck, "homogeneity, size, continuity and amplitude calibration");
  auto* norms = group("norms", "oscillation norms");
  leaf(norms, "bmo", Command::NormsBmo, "bmo_Z^alpha norm over dyadic rectangles");
  leaf(norms, "equivalence", Command::NormsEquivalence, "bmo_Z^alpha against the x3 Holder seminorm");
  auto* awf = group("awf", "approximate weak factorization");
  leaf(awf, "verify", Command::AwfVerify, "factorization identities and oscillation certificates");
  auto* off = group("off", "off-diagonal constants");
  leaf(off, "estimate", Command::OffEstimate, "Off_p^q lower estimate and certified oscillation");
  auto* compact = group("compact", "compactness");
  leaf(compact, "probe", Command::CompactProbe, "shrinking-rectangle probes and obstruction dossier");
  auto* mult = group("multiplier", "Fourier multiplier audit");
  leaf(mult, "audit", Command::MultiplierAudit, "derivative bounds and unboundedness table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (out) cfg.out = *out;
    if (kernel) cfg.kernel = *kernel;
    if (theta) cfg.theta = *theta;
    if (symbol) cfg.symbol = *symbol;
    if (p) cfg.p = *p;
    if (q) cfg.q = *q;
    if (alpha) cfg.alpha = *alpha;
    else if (p && q) cfg.alpha = 1.0 / *p - 1.0 / *q;
    if (depths) std::tie(cfg.depth_min, cfg.depth_max) = parse_depths(*depths);
    if (resolution) cfg.resolution = parse_resolution(*resolution);
    if (amplitude) {
      if (*amplitude == "auto") {
        cfg.amplitude.reset();
      } else {
        try {
          cfg.amplitude = std::stod(*amplitude);
        } catch (const std::exception&) {
          throw ConfigError("config field 'amplitude': expected a number or 'auto'");
        }
      }
    }
    validate(cfg);

    const RunResult result = run(cfg, *command, stamp);
    write_outputs(result, cfg.out);
    for (const auto& f : result.invariant_failures) std::cerr << "invariant failure: " << f << "\n";
    std::cout << to_string(*command) << ": " << result.bundle.records.size() << " records, "
              << result.tables.size() << " tables -> " << cfg.out << "\n";
    return result.invariant_failures.empty() ? kExitOk : kExitInvariant;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CalibrationFailure& e) {
    std::cerr << "calibration failure: " << e.what() << "\n";
    return kExitCalibration;
  } catch (const WitnessFailure& e) {
    std::cerr << "witness failure: " << e.what() << "\n";
    return kExitCalibration;
  } catch (const Error& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  }
}
