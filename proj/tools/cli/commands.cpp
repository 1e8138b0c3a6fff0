#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "effdim/errors.hpp"
#include "effdim/experiments.hpp"
#include "effdim/oracle.hpp"
#include "effdim/rate_functions.hpp"
#include "effdim/text.hpp"

namespace effdim::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "signal", "N", "s", "c", "Q", "class_alpha", "rho0", "class_N0",
    "level", "length", "padding", "values", "tail_energy", "path",
    "kappa", "varkappa", "eps", "tau", "t0", "H0", "N0", "n0",
    "delta", "L1", "L2", "theorem", "replicates", "n", "seed",
    "offsets", "threads", "data", "data_file", "eps_grid", "c_lo",
    "c_hi", "band_limit", "out"};

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

struct Output {
  std::string dest;
  std::string summary;
  std::string payload;
  int code = kExitOk;
};

std::size_t default_n(const Config& cfg) {
  return static_cast<std::size_t>(cfg.count_or("n", MCConfig{}.n));
}

NoiseLevel noise(const Config& cfg) { return NoiseLevel(cfg.real_or("eps", 1.0)); }

double tau_of(const Config& cfg) {
  const double tau = cfg.real_or("tau", 1.0);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  return tau;
}

SmoothnessClassParams class_params(const Config& cfg) {
  SmoothnessClassParams p{cfg.require_real("s"), cfg.real_or("Q", 1.0),
                          cfg.real_or("class_alpha", 0.1),
                          cfg.real_or("rho0", 2.0),
                          static_cast<std::size_t>(cfg.count_or("class_N0", 1))};
  p.validate();
  return p;
}

std::vector<double> read_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read data file: " + path.string());
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    for (std::string tok; ls >> tok;) out.push_back(parse_number(tok));
  }
  return out;
}

MCConfig mc_config(const Config& cfg) {
  MCConfig mc;
  mc.replicates = static_cast<std::size_t>(cfg.count_or("replicates", mc.replicates));
  mc.n = default_n(cfg);
  mc.master_seed = cfg.count_or("seed", mc.master_seed);
  if (auto offs = cfg.counts("offsets")) mc.offsets = *offs;
  mc.threads = static_cast<unsigned>(cfg.count_or("threads", 0));
  return mc;
}

void require_horizon(const Config& cfg, const Signal& theta,
                     const std::string& kind) {
  const std::size_t n = default_n(cfg);
  if (n > theta.size()) {
    throw ConfigError("generated " + kind + " signal has N=" +
                      std::to_string(theta.size()) + " < n=" +
                      std::to_string(n) + "; require n <= N");
  }
}

Output cmd_oracle(const Config& cfg) {
  const NamedSignal sig = build_signal(cfg);
  const NoiseLevel eps = noise(cfg);
  const double tau = tau_of(cfg);
  const OracleResult res = effective_dimension(sig.theta, eps, tau);
  Output o;
  o.summary = "d_tau=" + std::to_string(res.d_tau) +
              " r_tau=" + format_number(res.r_tau) + "\n";
  std::ostringstream csv;
  write_risk_curve(csv, sig.theta, eps, tau);
  o.payload = csv.str();
  return o;
}

Output cmd_posterior(const Config& cfg) {
  const PriorParams prior = build_prior(cfg);
  Observation x = [&] {
    if (auto data = cfg.reals("data")) {
      return make_observation(std::move(*data), prior.eps());
    }
    if (auto path = cfg.text("data_file")) {
      return make_observation(read_values(*path), prior.eps());
    }
    const NamedSignal sig = build_signal(cfg);
    return simulate(sig.theta, prior.eps(), default_n(cfg),
                    StreamKey{cfg.count_or("seed", 0), 0});
  }();
  const PosteriorOverD post = posterior_pmf(x, prior);
  Output o;
  o.summary = "dhat=" + std::to_string(map_dimension(post)) +
              " A=" + format_number(prior.penalty()) +
              " tail_mass=" + format_number(post.tail_mass) + "\n";
  std::ostringstream csv;
  write_pmf(csv, post);
  o.payload = csv.str();
  return o;
}

Output cmd_verify(const Config& cfg) {
  const std::string theorem = cfg.require_text("theorem");
  const PriorParams prior = build_prior(cfg);
  const double tau = tau_of(cfg);
  const MCConfig mc = mc_config(cfg);
  Output o;

  if (theorem == "lower-bound") {
    const LowerBoundReport rep = lower_bound_experiment(
        tau, prior.eps(), cfg.require_count("L1"), cfg.require_count("L2"),
        cfg.require_real("delta"), prior, mc);
    o.summary = "sum=" + format_number(rep.sum) +
                " delta_prime=" + format_number(rep.delta_prime) +
                " satisfied=" + (rep.satisfied ? "true" : "false") + "\n";
    o.payload = format_report(rep);
    o.code = rep.satisfied ? kExitOk : kExitVerificationFailed;
    return o;
  }

  const NamedSignal sig = build_signal(cfg);
  ExperimentReport rep;
  if (theorem == "overshoot") {
    rep = mc_overshoot(sig.theta, prior, tau, mc, sig.label);
  } else if (theorem == "undershoot") {
    rep = mc_undershoot(sig.theta, prior, tau, mc, sig.label);
  } else if (theorem == "two-sided-i") {
    TwoSidedParams tp{TwoSidedParams::Case::kTail, cfg.require_real("t0"),
                      static_cast<std::size_t>(cfg.count_or("N0", 1))};
    rep = mc_two_sided(sig.theta, prior, tau, tp, mc, sig.label);
  } else if (theorem == "two-sided-ii") {
    TwoSidedParams tp{TwoSidedParams::Case::kHead, cfg.require_real("H0"),
                      static_cast<std::size_t>(cfg.count_or("n0", 1))};
    rep = mc_two_sided(sig.theta, prior, tau, tp, mc, sig.label);
  } else {
    throw ConfigError("unknown theorem '" + theorem +
                      "' (expected overshoot, undershoot, two-sided-i, "
                      "two-sided-ii or lower-bound)");
  }
  const bool ok = rep.all_satisfied();
  o.summary = "theorem=" + theorem + " all_satisfied=" +
              (ok ? "true" : "false") + "\n";
  o.payload = format_report(rep);
  o.code = ok ? kExitOk : kExitVerificationFailed;
  return o;
}

Output cmd_smoothness(const Config& cfg) {
  const SmoothnessClassParams pc = class_params(cfg);
  const PriorParams prior = build_prior(cfg);
  const double tau = tau_of(cfg);
  SmoothnessSweepParams sp;
  if (auto grid = cfg.reals("eps_grid")) sp.eps_grid = *grid;
  sp.c_lo = cfg.real_or("c_lo", sp.c_lo);
  sp.c_hi = cfg.real_or("c_hi", sp.c_hi);
  sp.band_limit = cfg.real_or("band_limit", sp.band_limit);
  MCConfig mc = mc_config(cfg);
  mc.replicates = static_cast<std::size_t>(cfg.count_or("replicates", 50));

  const SmoothnessReport rep = smoothness_sweep(pc, prior, tau, sp, mc);
  const bool ok = rep.d_tau_monotone && rep.error_nonincreasing;
  Output o;
  o.summary = std::string("d_tau_monotone=") +
              (rep.d_tau_monotone ? "true" : "false") +
              " error_nonincreasing=" +
              (rep.error_nonincreasing ? "true" : "false") +
              " band_ratio=" + format_number(rep.band_ratio) + "\n";
  o.payload = format_report(rep);
  o.code = ok ? kExitOk : kExitVerificationFailed;
  return o;
}

Output cmd_make_signal(const Config& cfg) {
  const NamedSignal sig = build_signal(cfg);
  Output o;
  o.summary = "signal=" + sig.label + " N=" + std::to_string(sig.theta.size()) +
              " tail_energy=" + format_number(sig.theta.tail_energy()) + "\n";
  o.payload = format_signal(sig.theta);
  return o;
}

// Writes next to the destination and renames, so a failed run never leaves a
// truncated file behind.
void write_file(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write output file: " + path.string());
    f << body;
    if (!f.flush()) {
      throw ConfigError("cannot write output file: " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

Output dispatch(const Invocation& inv) {
  Config cfg = inv.config_path.empty() ? Config::parse("", "<defaults>")
                                       : Config::load(inv.config_path);
  for (const auto& kv : inv.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (inv.seed) cfg.set("seed", std::to_string(*inv.seed));
  cfg.reject_unknown(kKnownKeys);

  Output o;
  if (inv.command == "oracle") {
    o = cmd_oracle(cfg);
  } else if (inv.command == "posterior") {
    o = cmd_posterior(cfg);
  } else if (inv.command == "verify") {
    o = cmd_verify(cfg);
  } else if (inv.command == "smoothness") {
    o = cmd_smoothness(cfg);
  } else {
    o = cmd_make_signal(cfg);
  }
  o.dest = inv.out_path.empty() ? cfg.text_or("out", "") : inv.out_path;
  return o;
}

}  // namespace

PriorParams build_prior(const Config& cfg) {
  const double kappa = cfg.require_real("kappa");
  const double varkappa = cfg.require_real("varkappa");
  if (!(kappa > kKappaFloor)) {
    throw ConfigError("kappa must exceed e-1 (got " + format_number(kappa) + ")");
  }
  if (!(varkappa > 0.0)) {
    throw ConfigError("varkappa must be positive (got " +
                      format_number(varkappa) + ")");
  }
  return PriorParams(kappa, varkappa, noise(cfg));
}

NamedSignal build_signal(const Config& cfg) {
  const std::string kind = cfg.require_text("signal");
  const auto big_n = [&] {
    return static_cast<std::size_t>(cfg.count_or("N", default_n(cfg)));
  };
  if (kind == "zero") return {zero_signal(big_n()), kind};
  if (kind == "power-law") {
    Signal theta = power_law_signal(cfg.require_real("s"), cfg.real_or("c", 1.0),
                                    big_n());
    require_horizon(cfg, theta, kind);
    return {std::move(theta), kind};
  }
  if (kind == "self-similar") {
    Signal theta = self_similar_signal(class_params(cfg), big_n());
    require_horizon(cfg, theta, kind);
    return {std::move(theta), kind};
  }
  if (kind == "adversarial-prime" || kind == "adversarial-double-prime") {
    const AdversarialPair pair = adversarial_pair(
        tau_of(cfg), noise(cfg), cfg.require_count("L1"),
        cfg.require_count("L2"), cfg.require_real("delta"));
    return {kind == "adversarial-prime" ? pair.prime : pair.double_prime, kind};
  }
  if (kind == "block") {
    return {block_signal(cfg.require_real("level"), cfg.require_count("length"),
                         noise(cfg), cfg.count_or("padding", 0)),
            kind};
  }
  if (kind == "values") {
    auto values = cfg.reals("values");
    if (!values) throw ConfigError("signal=values needs a 'values' list");
    return {Signal(std::move(*values), cfg.real_or("tail_energy", 0.0)), kind};
  }
  if (kind == "file") {
    const std::string path = cfg.require_text("path");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read signal file: " + path);
    return {read_signal(in), "file:" + path};
  }
  throw ConfigError("unknown signal kind '" + kind +
                    "' (expected zero, power-law, self-similar, "
                    "adversarial-prime, adversarial-double-prime, block, "
                    "values or file)");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Local effective dimension in the Gaussian sequence model"};
  app.require_subcommand(1);
  Invocation inv;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"oracle", "oracle dimension d_tau and the risk curve"},
      {"posterior", "posterior over the dimension and the MAP dimension"},
      {"verify", "Monte Carlo check of a concentration bound"},
      {"smoothness", "smoothness estimation sweep over noise levels"},
      {"make-signal", "write a signal file"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "key = value config file");
    sub->add_option("--out", inv.out_path, "output CSV path (default stdout)");
    sub->add_option("--seed", inv.seed, "master seed, overrides the config");
    sub->add_option("--set", inv.overrides, "key=value override")
        ->take_all();
    sub->callback([&inv, n = name] { inv.command = n; });
  }

  std::vector<const char*> argv{"effdim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const Output o = dispatch(inv);
    if (!o.dest.empty()) write_file(o.dest, o.payload);
    out << o.summary;
    if (o.dest.empty()) out << o.payload;
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace effdim::cli
