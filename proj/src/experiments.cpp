#include "urllc/experiments.hpp"

#include <cstdio>

namespace urllc {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string analytic_report_csv(const ScenarioDoc& doc) {
  std::string out;
  append_row(out, {"profile", "eps_sr", "eps_rg", "eps_na", "eps_nd", "eps_da", "eps_dn",
                   "eps_an", "p1", "p12", "p2", "p2d", "p2n", "p_ul", "p_ul_enum",
                   "p_dl_coherent", "p_dl_enum", "p_dl_verbatim", "verbatim_warn",
                   "verbatim_minus_coherent"});
  int idx = 0;
  for (const auto& row : doc.profiles) {
    validate_profiles(row.errors, row.blers);
    const double ul = p_ul(row.errors, row.blers);
    const double dl = p_dl_coherent(row.errors, row.blers);
    const VerbatimResult vb = p_dl_verbatim(row.errors, row.blers);
    const EnumerationResult eu = enumerate_ul(row.errors, row.blers);
    const EnumerationResult ed = enumerate_dl(row.errors, row.blers);
    append_row(out, {std::to_string(idx++), csv_num(row.errors.eps_sr), csv_num(row.errors.eps_rg),
                     csv_num(row.errors.eps_na), csv_num(row.errors.eps_nd),
                     csv_num(row.errors.eps_da), csv_num(row.errors.eps_dn),
                     csv_num(row.errors.eps_an), csv_num(row.blers.p1), csv_num(row.blers.p12),
                     csv_num(row.blers.p2), csv_num(row.blers.p2d), csv_num(row.blers.p2n),
                     csv_num(ul), csv_num(eu.success_probability), csv_num(dl),
                     csv_num(ed.success_probability), csv_num(vb.value),
                     vb.exceeds_one ? "1" : "0", csv_num(vb.value - dl)});
  }
  return out;
}

std::string region_report_csv(const ScenarioDoc& doc) {
  if (!doc.sweep) throw ConfigError("region report needs a [sweep] section");
  const SweepSpec& sw = *doc.sweep;
  const ProfileRow& row = doc.profiles.front();
  validate_profiles(row.errors, row.blers);
  const std::vector<RegionPoint> points =
      region_curve(doc.scenario.direction, row.errors, row.blers, sw.x_param, sw.y_param,
                   sw.x_grid, sw.target, sw.verbatim);
  std::string out;
  append_row(out, {std::string(to_string(sw.x_param)),
                   std::string(to_string(sw.y_param)) + "_boundary", "feasible"});
  for (const auto& p : points) {
    append_row(out, {csv_num(p.x), csv_num(p.y_boundary), p.feasible ? "1" : "0"});
  }
  return out;
}

namespace {

const char* kSimulateHeader =
    "direction,mode,mu,slot_format,deadline_slots,trials,seed,successes,reliability,"
    "wilson_lo,wilson_hi,latency_p50_ms,latency_p95_ms,latency_p99_ms,latency_max_ms,"
    "mean_re_used,mean_re_wasted,attempts_0,attempts_1,attempts_2";

std::string stats_cells(const McStats& s) {
  std::string out;
  out += std::to_string(s.trials) + ',';
  out += csv_num(s.reliability_hat) + ',';
  out += csv_num(s.wilson_lo) + ',';
  out += csv_num(s.wilson_hi) + ',';
  out += csv_num(s.latency_p50_ms) + ',';
  out += csv_num(s.latency_p95_ms) + ',';
  out += csv_num(s.latency_p99_ms) + ',';
  out += csv_num(s.latency_max_ms) + ',';
  out += csv_num(s.mean_re_used) + ',';
  out += csv_num(s.mean_re_wasted) + ',';
  out += std::to_string(s.attempt_hist.size() > 0 ? s.attempt_hist[0] : 0) + ',';
  out += std::to_string(s.attempt_hist.size() > 1 ? s.attempt_hist[1] : 0) + ',';
  out += std::to_string(s.attempt_hist.size() > 2 ? s.attempt_hist[2] : 0);
  return out;
}

}  // namespace

SimulateResult simulate_report(const ScenarioDoc& doc, uint64_t trials, uint64_t seed,
                               int trace_count) {
  const ProfileRow& row = doc.profiles.front();
  const ScenarioConfig& cfg = doc.scenario;
  validate_profiles(row.errors, row.blers);
  validate_scenario(cfg);

  SimulateResult result;
  result.stats = run_monte_carlo(cfg, row.errors, row.blers, trials, seed);
  const McStats& s = result.stats;

  std::string& out = result.csv;
  out += kSimulateHeader;
  out += '\n';
  out += std::string(to_string(cfg.direction)) + ',';
  out += std::string(to_string(cfg.mode)) + ',';
  out += std::to_string(cfg.numerology.mu) + ',';
  out += cfg.slot_format + ',';
  out += std::to_string(cfg.deadline_slots) + ',';
  out += std::to_string(s.trials) + ',';
  out += std::to_string(seed) + ',';
  out += std::to_string(s.successes) + ',';
  out += csv_num(s.reliability_hat) + ',';
  out += csv_num(s.wilson_lo) + ',';
  out += csv_num(s.wilson_hi) + ',';
  out += csv_num(s.latency_p50_ms) + ',';
  out += csv_num(s.latency_p95_ms) + ',';
  out += csv_num(s.latency_p99_ms) + ',';
  out += csv_num(s.latency_max_ms) + ',';
  out += csv_num(s.mean_re_used) + ',';
  out += csv_num(s.mean_re_wasted) + ',';
  out += std::to_string(s.attempt_hist.size() > 0 ? s.attempt_hist[0] : 0) + ',';
  out += std::to_string(s.attempt_hist.size() > 1 ? s.attempt_hist[1] : 0) + ',';
  out += std::to_string(s.attempt_hist.size() > 2 ? s.attempt_hist[2] : 0);
  out += '\n';

  for (int i = 0; i < trace_count; ++i) {
    TrialRng rng(seed, static_cast<uint64_t>(i));
    const TransactionOutcome o = run_trial(cfg, row.errors, row.blers, rng, true);
    result.traces += "# trial " + std::to_string(i) + "\n";
    result.traces += format_trace(o, cfg);
  }
  return result;
}

CompareResult compare_report(const ScenarioDoc& doc, uint64_t trials, uint64_t seed) {
  const ProfileRow& row = doc.profiles.front();
  validate_profiles(row.errors, row.blers);

  CompareResult result;
  result.comparison = compare_modes(doc.scenario, row.errors, row.blers, trials, seed);
  const ModeComparison& cmp = result.comparison;

  std::string& out = result.csv;
  out += "row,direction,trials,reliability,wilson_lo,wilson_hi,latency_p50_ms,latency_p95_ms,"
         "latency_p99_ms,latency_max_ms,mean_re_used,mean_re_wasted,attempts_0,attempts_1,"
         "attempts_2,mismatch_trials,latency_affected_ms,dominance_violations\n";
  const auto emit = [&](const char* name, const McStats& s, double affected_ms) {
    out += std::string(name) + ',';
    out += std::string(to_string(doc.scenario.direction)) + ',';
    out += stats_cells(s) + ',';
    out += std::to_string(cmp.mismatch_trials) + ',';
    out += csv_num(affected_ms) + ',';
    out += std::to_string(cmp.dominance_violations);
    out += '\n';
  };
  emit("conventional", cmp.conventional, cmp.conv_latency_affected_ms);
  emit("flexible", cmp.flexible, cmp.flex_latency_affected_ms);

  out += "delta,";
  out += std::string(to_string(doc.scenario.direction)) + ',';
  out += std::to_string(cmp.flexible.trials) + ',';
  out += csv_num(cmp.reliability_delta) + ',';
  out += csv_num(cmp.flexible.wilson_lo - cmp.conventional.wilson_lo) + ',';
  out += csv_num(cmp.flexible.wilson_hi - cmp.conventional.wilson_hi) + ',';
  out += csv_num(cmp.latency_p50_delta_ms) + ',';
  out += csv_num(cmp.latency_p95_delta_ms) + ',';
  out += csv_num(cmp.latency_p99_delta_ms) + ',';
  out += csv_num(cmp.flexible.latency_max_ms - cmp.conventional.latency_max_ms) + ',';
  out += csv_num(cmp.mean_re_used_delta) + ',';
  out += csv_num(cmp.mean_re_wasted_delta) + ',';
  for (size_t i = 0; i < 3; ++i) {
    const uint64_t f = cmp.flexible.attempt_hist.size() > i ? cmp.flexible.attempt_hist[i] : 0;
    const uint64_t c = cmp.conventional.attempt_hist.size() > i ? cmp.conventional.attempt_hist[i] : 0;
    out += std::to_string(static_cast<long long>(f) - static_cast<long long>(c)) + ',';
  }
  out += std::to_string(cmp.mismatch_trials) + ',';
  out += csv_num(cmp.flex_latency_affected_ms - cmp.conv_latency_affected_ms) + ',';
  out += std::to_string(cmp.dominance_violations);
  out += '\n';
  return result;
}

}  // namespace urllc
