#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dimac/channel_io.hpp"
#include "dimac/dirinfo.hpp"
#include "dimac/errors.hpp"
#include "dimac/exponents.hpp"
#include "dimac/regions.hpp"
#include "dimac/simulate.hpp"
#include "output.hpp"

namespace dimac::cli {

namespace {

using json = nlohmann::json;

/// Uniform iid inputs; kernels accept the feedback alphabet of the requested
/// map so the policies can be paired with any feedback mode.
InputPolicies uniform_policies(const FsMac& channel, std::size_t n, const std::string& feedback) {
  const FeedbackFn f1 = FeedbackFn::parse(feedback, channel.out());
  const FeedbackFn f2 = FeedbackFn::parse(feedback, channel.out());
  return {CausalKernel::uniform(channel.in1(), f1.range(), n),
          CausalKernel::uniform(channel.in2(), f2.range(), n), f1, f2};
}

void common_parameters(RunManifest& m, const Common& c) {
  m.input_file(c.spec);
  m.parameter("spec", c.spec);
  m.parameter("n", c.n);
  m.parameter("s0", c.s0);
  m.parameter("feedback", c.feedback);
  m.parameter("threads", c.threads);
}

std::string region_csv(const RateRegion& region) {
  std::string text = "R1,R2\n";
  for (const auto& v : region.vertices()) text += fmt12(v.r1) + "," + fmt12(v.r2) + "\n";
  return text;
}

json region_sidecar(const RateRegion& region, std::size_t resolution) {
  const auto& m = region.metadata();
  return {{"n", m.n},
          {"variant", to_string(m.variant)},
          {"grid", m.grid},
          {"resolution", resolution},
          {"s0", m.s0},
          {"pairs", m.pairs},
          {"channel_hash", m.channel_id},
          {"max_sum_rate", region.max_sum_rate()}};
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

}  // namespace

int cmd_region(const RegionOptions& o) {
  RunManifest manifest("region");
  common_parameters(manifest, o.common);
  manifest.parameter("grid", o.grid);
  manifest.parameter("family", o.family);
  manifest.parameter("variant", o.variant);
  manifest.parameter("sweep", o.sweep);
  manifest.parameter("max_pairs", o.max_pairs);

  const ChannelSpec spec = load_channel_spec(o.common.spec);
  RegionRequest req;
  req.n = o.common.n;
  req.resolution = o.grid;
  if (o.common.feedback != "none") {
    req.f1 = FeedbackFn::parse(o.common.feedback, spec.channel.out());
    req.f2 = FeedbackFn::parse(o.common.feedback, spec.channel.out());
  } else {
    FeedbackFn::parse(o.common.feedback, spec.channel.out());
  }
  if (o.family.empty()) {
    req.family = req.f1 ? PolicyFamily::FeedbackDriven : PolicyFamily::Iid;
  } else {
    req.family = parse_policy_family(o.family);
  }
  req.variant = parse_variant(o.variant);
  req.s0 = S0Mode::parse(o.common.s0);
  req.max_pairs = o.max_pairs;
  req.threads = o.common.threads;
  req.channel_id = channel_hash(spec);

  if (o.sweep == 0) {
    const RateRegion region = region_union(spec.channel, req);
    emit(o.common.out, region_csv(region));
    if (!o.common.out.empty()) {
      emit(stem(o.common.out) + ".json", region_sidecar(region, o.grid).dump(2) + "\n");
    }
    emit_manifest(o.common.out, manifest);
    return 0;
  }

  if (o.common.out.empty()) throw InputError("--sweep writes several files and needs --out");
  const std::string base = stem(o.common.out);
  std::vector<RateRegion> regions;
  for (std::size_t k = 1; k <= o.sweep; ++k) {
    req.n = k;
    regions.push_back(region_union(spec.channel, req));
    const std::string path = fmt::format("{}_n{}", base, k);
    emit(path + ".csv", region_csv(regions.back()));
    emit(path + ".json", region_sidecar(regions.back(), o.grid).dump(2) + "\n");
  }
  const LimitEstimate lim = limit_region_estimate(regions);
  std::string conv = "n,max_sum_rate,hausdorff_to_next\n";
  for (std::size_t k = 0; k < regions.size(); ++k) {
    conv += fmt::format("{},{},{}\n", k + 1, fmt12(regions[k].max_sum_rate()),
                        k < lim.gaps.size() ? fmt12(lim.gaps[k]) : "");
  }
  emit(base + "_convergence.csv", conv);
  emit_manifest(o.common.out, manifest);
  return 0;
}

int cmd_simulate(const SimulateOptions& o) {
  RunManifest manifest("simulate");
  common_parameters(manifest, o.common);
  manifest.parameter("K", o.K);
  manifest.parameter("M1", o.M1);
  manifest.parameter("M2", o.M2);
  manifest.parameter("trials", o.trials);
  manifest.seed(o.seed);

  const ChannelSpec spec = load_channel_spec(o.common.spec);
  SimConfig cfg;
  cfg.n = o.common.n;
  cfg.K = o.K;
  cfg.M1 = o.M1;
  cfg.M2 = o.M2;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.s0 = S0Mode::parse(o.common.s0);
  cfg.threads = o.common.threads;
  const SimResult r =
      run_ensemble(spec.channel, uniform_policies(spec.channel, cfg.n, o.common.feedback), cfg);

  json types = json::array();
  for (int i = 0; i < 3; ++i) {
    types.push_back({{"type", i + 1},
                     {"errors", r.errors[i]},
                     {"rate", r.rates[i]},
                     {"interval95", interval_json(r.intervals[i])},
                     {"exact_bound", r.exact_bound[i] ? json(*r.exact_bound[i]) : json(nullptr)},
                     {"exact_bound_rho", r.exact_bound_rho[i]},
                     {"exponent_bound", r.exponent_bound[i]},
                     {"exponent_bound_rho", r.exponent_bound_rho[i]}});
  }
  const json out = {{"n", cfg.n},
                    {"K", cfg.K},
                    {"N", cfg.N()},
                    {"M1", cfg.M1},
                    {"M2", cfg.M2},
                    {"R1", std::log2(static_cast<double>(cfg.M1)) / static_cast<double>(cfg.N())},
                    {"R2", std::log2(static_cast<double>(cfg.M2)) / static_cast<double>(cfg.N())},
                    {"seed", cfg.seed},
                    {"s0", r.s0_label},
                    {"trials", r.trials},
                    {"correct", r.correct},
                    {"pe", r.pe},
                    {"pe_interval95", interval_json(r.pe_interval)},
                    {"error_types", types}};
  emit(o.common.out, out.dump(2) + "\n");
  emit_manifest(o.common.out, manifest);
  return 0;
}

int cmd_dirinfo(const Common& o) {
  RunManifest manifest("dirinfo");
  common_parameters(manifest, o);
  const ChannelSpec spec = load_channel_spec(o.spec);
  const FsMac& ch = spec.channel;
  const InputPolicies pol = uniform_policies(ch, o.n, o.feedback);
  const S0Mode mode = S0Mode::parse(o.s0);

  // Worst case takes the minimum over initial states for each quantity.
  std::vector<CausalChannelLaw> laws;
  if (mode.kind == S0Mode::Kind::Worst) {
    laws = per_state_laws(ch, o.n);
  } else {
    laws.push_back(channel_causal_law(ch, mode, o.n));
  }
  double v[3] = {INFINITY, INFINITY, INFINITY};
  for (const auto& law : laws) {
    const JointLaw j = joint_law(pol, law);
    v[0] = std::min(v[0], directed_info_cc(j, Source::X1).total);
    v[1] = std::min(v[1], directed_info_cc(j, Source::X2).total);
    v[2] = std::min(v[2], directed_info(j, Source::X1X2).total);
  }
  const char* names[3] = {"x1_given_x2", "x2_given_x1", "sum"};
  std::string text = "quantity,bits,bits_per_use\n";
  for (int i = 0; i < 3; ++i) {
    text += fmt::format("{},{},{}\n", names[i], fmt12(v[i]),
                        fmt12(v[i] / static_cast<double>(o.n)));
  }
  emit(o.out, text);
  emit_manifest(o.out, manifest);
  return 0;
}

int cmd_exponent(const ExponentOptions& o) {
  RunManifest manifest("exponent");
  common_parameters(manifest, o.common);
  manifest.parameter("type", o.type);
  manifest.parameter("rho_step", o.rho_step);
  if (!(o.rho_step > 0.0 && o.rho_step <= 1.0)) throw InputError("--rho-step must lie in (0, 1]");

  std::vector<ErrorType> types;
  if (o.type == "all") {
    types = {ErrorType::One, ErrorType::Two, ErrorType::Three};
  } else if (o.type == "1" || o.type == "2" || o.type == "3") {
    types = {static_cast<ErrorType>(o.type[0] - '0')};
  } else {
    throw InputError(fmt::format("unknown error type '{}'", o.type));
  }
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / o.rho_step));
  std::vector<double> grid;
  for (std::size_t k = 0; k <= steps; ++k) {
    grid.push_back(std::min(1.0, static_cast<double>(k) * o.rho_step));
  }
  if (grid.back() < 1.0) grid.push_back(1.0);

  const ChannelSpec spec = load_channel_spec(o.common.spec);
  const InputPolicies pol = uniform_policies(spec.channel, o.common.n, o.common.feedback);
  const std::size_t ns = spec.channel.states().size();
  std::string text = "type,rho";
  for (std::size_t s = 0; s < ns; ++s) text += fmt::format(",E_s{}", s);
  text += ",F\n";
  for (ErrorType t : types) {
    const ExponentEval ev = exponent_curve(t, pol, spec.channel, o.common.n, grid);
    for (std::size_t k = 0; k < ev.rho.size(); ++k) {
      text += fmt::format("{},{}", static_cast<int>(t), fmt12(ev.rho[k]));
      for (double e : ev.E[k]) text += "," + fmt12(e);
      text += "," + fmt12(ev.F[k]) + "\n";
    }
  }
  emit(o.common.out, text);
  emit_manifest(o.common.out, manifest);
  return 0;
}

int cmd_entropy(const Common& o) {
  RunManifest manifest("entropy");
  common_parameters(manifest, o);
  const ChannelSpec spec = load_channel_spec(o.spec);
  if (!spec.noise) {
    throw InputError("entropy needs a spec with an additive noise builder "
                     "(gilbert_elliott or additive_modq)");
  }
  std::string text = "n,lower,upper\n";
  for (std::size_t k = 1; k <= o.n; ++k) {
    const EntropyRateBounds b = entropy_rate_bounds(*spec.noise, k);
    text += fmt::format("{},{},{}\n", k, fmt12(b.lower), fmt12(b.upper));
  }
  emit(o.out, text);
  emit_manifest(o.out, manifest);
  return 0;
}

}  // namespace dimac::cli
