#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "urllc/protocol_sim.hpp"

namespace urllc {

void wilson_interval(uint64_t successes, uint64_t trials, double z, double* lo, double* hi) {
  if (trials == 0) {
    *lo = 0.0;
    *hi = 1.0;
    return;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double radius = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  *lo = std::max(0.0, center - radius);
  *hi = std::min(1.0, center + radius);
}

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr size_t kMaxAttempts = 8;

struct Partial {
  uint64_t trials = 0;
  uint64_t successes = 0;
  long re_used_sum = 0;
  long re_wasted_sum = 0;
  std::vector<uint64_t> latency_hist;
  std::vector<uint64_t> attempt_hist;

  explicit Partial(size_t hist_size)
      : latency_hist(hist_size, 0), attempt_hist(kMaxAttempts, 0) {}

  void add(const TransactionOutcome& o) {
    ++trials;
    re_used_sum += o.re_used;
    re_wasted_sum += o.re_wasted;
    attempt_hist[std::min<size_t>(static_cast<size_t>(o.attempts_data), kMaxAttempts - 1)]++;
    if (o.success) {
      ++successes;
      latency_hist[std::min<size_t>(static_cast<size_t>(o.latency_symbols),
                                    latency_hist.size() - 1)]++;
    }
  }

  void merge(const Partial& other) {
    trials += other.trials;
    successes += other.successes;
    re_used_sum += other.re_used_sum;
    re_wasted_sum += other.re_wasted_sum;
    for (size_t i = 0; i < latency_hist.size(); ++i) latency_hist[i] += other.latency_hist[i];
    for (size_t i = 0; i < attempt_hist.size(); ++i) attempt_hist[i] += other.attempt_hist[i];
  }
};

size_t hist_size_for(const ScenarioConfig& cfg) {
  const int lead = cfg.direction == Direction::Uplink ? 1 : 0;
  return static_cast<size_t>(lead + cfg.deadline_slots * kSymbolsPerSlot + 2);
}

double percentile_ms(const std::vector<uint64_t>& hist, uint64_t successes, double q,
                     double symbol_ms) {
  if (successes == 0) return 0.0;
  const uint64_t rank = std::max<uint64_t>(
      1, static_cast<uint64_t>(std::ceil(q * static_cast<double>(successes))));
  uint64_t cum = 0;
  for (size_t i = 0; i < hist.size(); ++i) {
    cum += hist[i];
    if (cum >= rank) return static_cast<double>(i) * symbol_ms;
  }
  return static_cast<double>(hist.size() - 1) * symbol_ms;
}

double max_latency_ms(const std::vector<uint64_t>& hist, double symbol_ms) {
  for (size_t i = hist.size(); i-- > 0;) {
    if (hist[i] > 0) return static_cast<double>(i) * symbol_ms;
  }
  return 0.0;
}

McStats finalize(const Partial& p, const ScenarioConfig& cfg) {
  McStats s;
  s.trials = p.trials;
  s.successes = p.successes;
  s.reliability_hat =
      p.trials == 0 ? 0.0 : static_cast<double>(p.successes) / static_cast<double>(p.trials);
  wilson_interval(p.successes, p.trials, kZ95, &s.wilson_lo, &s.wilson_hi);
  const double sym_ms = cfg.numerology.symbol_duration_ms;
  s.latency_p50_ms = percentile_ms(p.latency_hist, p.successes, 0.50, sym_ms);
  s.latency_p95_ms = percentile_ms(p.latency_hist, p.successes, 0.95, sym_ms);
  s.latency_p99_ms = percentile_ms(p.latency_hist, p.successes, 0.99, sym_ms);
  s.latency_max_ms = max_latency_ms(p.latency_hist, sym_ms);
  s.mean_re_used =
      p.trials == 0 ? 0.0 : static_cast<double>(p.re_used_sum) / static_cast<double>(p.trials);
  s.mean_re_wasted =
      p.trials == 0 ? 0.0 : static_cast<double>(p.re_wasted_sum) / static_cast<double>(p.trials);
  s.attempt_hist = p.attempt_hist;
  s.latency_hist_symbols = p.latency_hist;
  return s;
}

int resolve_threads(const ScenarioConfig& cfg, uint64_t n_trials) {
  int t = cfg.threads > 0 ? cfg.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  t = std::min<int>(t, 64);
  if (static_cast<uint64_t>(t) > n_trials) t = static_cast<int>(std::max<uint64_t>(1, n_trials));
  return t;
}

/// Runs fn(trial_index) over [0, n) on `threads` workers with static chunking.
template <typename Fn>
void parallel_trials(uint64_t n, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (uint64_t i = 0; i < n; ++i) fn(static_cast<int>(0), i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(threads));
  const uint64_t chunk = (n + static_cast<uint64_t>(threads) - 1) / static_cast<uint64_t>(threads);
  for (int w = 0; w < threads; ++w) {
    const uint64_t lo = static_cast<uint64_t>(w) * chunk;
    const uint64_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&fn, w, lo, hi] {
      for (uint64_t i = lo; i < hi; ++i) fn(w, i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

McStats run_monte_carlo(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                        const DataBlerProfile& d, uint64_t n_trials, uint64_t master_seed) {
  validate_profiles(c, d);
  validate_scenario(cfg);
  if (n_trials == 0) throw std::invalid_argument("n_trials must be >= 1");

  const size_t hist = hist_size_for(cfg);
  const int threads = resolve_threads(cfg, n_trials);
  std::vector<Partial> partials(static_cast<size_t>(threads), Partial(hist));

  parallel_trials(n_trials, threads, [&](int worker, uint64_t i) {
    TrialRng rng(master_seed, i);
    const TransactionOutcome o = run_trial(cfg, c, d, rng, /*collect_trace=*/false);
    partials[static_cast<size_t>(worker)].add(o);
  });

  Partial total(hist);
  for (const auto& p : partials) total.merge(p);
  return finalize(total, cfg);
}

ModeComparison compare_modes(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                             const DataBlerProfile& d, uint64_t n_trials, uint64_t master_seed) {
  validate_profiles(c, d);
  ScenarioConfig conv = cfg;
  conv.mode = SlotMode::Conventional;
  ScenarioConfig flex = cfg;
  flex.mode = SlotMode::Flexible;
  validate_scenario(conv);
  validate_scenario(flex);
  if (n_trials == 0) throw std::invalid_argument("n_trials must be >= 1");

  struct PairPartial {
    Partial conv;
    Partial flex;
    uint64_t mismatch_trials = 0;
    uint64_t conv_affected_successes = 0;
    uint64_t flex_affected_successes = 0;
    uint64_t conv_affected_latency_sym = 0;
    uint64_t flex_affected_latency_sym = 0;
    uint64_t dominance_violations = 0;
    uint64_t attempt_regressions = 0;

    explicit PairPartial(size_t hist) : conv(hist), flex(hist) {}
  };

  const size_t hist = hist_size_for(cfg);
  const int threads = resolve_threads(cfg, n_trials);
  std::vector<PairPartial> partials(static_cast<size_t>(threads), PairPartial(hist));

  parallel_trials(n_trials, threads, [&](int worker, uint64_t i) {
    // Common random numbers: both modes replay the same keyed trial stream.
    TrialRng rng_conv(master_seed, i);
    TrialRng rng_flex(master_seed, i);
    const TransactionOutcome oc = run_trial(conv, c, d, rng_conv, false);
    const TransactionOutcome of = run_trial(flex, c, d, rng_flex, false);
    PairPartial& pp = partials[static_cast<size_t>(worker)];
    pp.conv.add(oc);
    pp.flex.add(of);
    if (oc.mismatch || of.mismatch) {
      ++pp.mismatch_trials;
      if (oc.success) {
        ++pp.conv_affected_successes;
        pp.conv_affected_latency_sym += static_cast<uint64_t>(oc.latency_symbols);
      }
      if (of.success) {
        ++pp.flex_affected_successes;
        pp.flex_affected_latency_sym += static_cast<uint64_t>(of.latency_symbols);
      }
    }
    if (oc.success && !of.success) ++pp.dominance_violations;
    if (cfg.direction == Direction::Uplink && of.attempts_data < oc.attempts_data) {
      ++pp.attempt_regressions;
    }
  });

  PairPartial total(hist);
  for (const auto& p : partials) {
    total.conv.merge(p.conv);
    total.flex.merge(p.flex);
    total.mismatch_trials += p.mismatch_trials;
    total.conv_affected_successes += p.conv_affected_successes;
    total.flex_affected_successes += p.flex_affected_successes;
    total.conv_affected_latency_sym += p.conv_affected_latency_sym;
    total.flex_affected_latency_sym += p.flex_affected_latency_sym;
    total.dominance_violations += p.dominance_violations;
    total.attempt_regressions += p.attempt_regressions;
  }

  ModeComparison cmpres;
  cmpres.conventional = finalize(total.conv, conv);
  cmpres.flexible = finalize(total.flex, flex);
  cmpres.reliability_delta =
      cmpres.flexible.reliability_hat - cmpres.conventional.reliability_hat;
  cmpres.latency_p50_delta_ms = cmpres.flexible.latency_p50_ms - cmpres.conventional.latency_p50_ms;
  cmpres.latency_p95_delta_ms = cmpres.flexible.latency_p95_ms - cmpres.conventional.latency_p95_ms;
  cmpres.latency_p99_delta_ms = cmpres.flexible.latency_p99_ms - cmpres.conventional.latency_p99_ms;
  cmpres.mean_re_used_delta = cmpres.flexible.mean_re_used - cmpres.conventional.mean_re_used;
  cmpres.mean_re_wasted_delta =
      cmpres.flexible.mean_re_wasted - cmpres.conventional.mean_re_wasted;
  cmpres.mismatch_trials = total.mismatch_trials;
  const double sym_ms = cfg.numerology.symbol_duration_ms;
  cmpres.conv_latency_affected_ms =
      total.conv_affected_successes == 0
          ? 0.0
          : sym_ms * static_cast<double>(total.conv_affected_latency_sym) /
                static_cast<double>(total.conv_affected_successes);
  cmpres.flex_latency_affected_ms =
      total.flex_affected_successes == 0
          ? 0.0
          : sym_ms * static_cast<double>(total.flex_affected_latency_sym) /
                static_cast<double>(total.flex_affected_successes);
  cmpres.dominance_violations = total.dominance_violations;
  cmpres.attempt_regressions = total.attempt_regressions;
  return cmpres;
}

}  // namespace urllc
