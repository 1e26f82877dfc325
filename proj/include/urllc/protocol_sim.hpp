#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "urllc/error_model.hpp"
#include "urllc/slot_grid.hpp"

namespace urllc {

struct SymbolSpan {
  int first = 0;
  int last = 0;

  int length() const { return last - first + 1; }
  bool operator==(const SymbolSpan&) const = default;
};

/// Symbol positions inside a slot. Slots are numbered from 1 starting at the
/// slot of the first grant; an uplink transaction prepends its scheduling
/// request on the last symbol of the preceding slot. Defaults fit "fig1h"
/// (2 DL, 10 flexible, 2 UL symbols).
struct TimingPlan {
  int sr_symbol = 13;                       // uplink: SR rides the slot end
  SymbolSpan dci_span{0, 1};
  SymbolSpan ul_data_span{4, 13};
  SymbolSpan dl_data_span{2, 10};
  SymbolSpan feedback_span{13, 13};
  int processing_gap_symbols = 2;

  // Flexible uplink: DTX sensed in-slot, grant resent, shortened data span.
  int dtx_check_symbol = 5;
  SymbolSpan dci_retx_span{6, 7};
  SymbolSpan ul_recovery_span{9, 13};

  // Flexible downlink: early NACK aborts a badly-coded transmission and a
  // fresh grant plus robust data complete within the same slot.
  SymbolSpan early_nack_span{4, 5};
  int abort_symbol = 6;                     // first symbol no longer transmitted
  SymbolSpan dl_recovery_dci_span{7, 8};
  SymbolSpan dl_recovery_data_span{9, 12};

  // Next-slot retransmissions.
  SymbolSpan ul_retx_span{4, 13};
  SymbolSpan dl_retx_span{2, 11};

  bool operator==(const TimingPlan&) const = default;
};

enum class ForcedEvent : uint8_t { MissFirstDci, InappropriateMcs };

const char* to_string(ForcedEvent e);

/// Downlink link-adaptation state: the grant carries granted_mcs while the
/// channel supports supportable_mcs; granted above supportable means the
/// transmission is inappropriately coded.
struct ChannelState {
  int supportable_mcs = 10;
  int granted_mcs = 10;

  bool mismatched() const { return granted_mcs > supportable_mcs; }
  bool operator==(const ChannelState&) const = default;
};

struct ScenarioConfig {
  Direction direction = Direction::Uplink;
  SlotMode mode = SlotMode::Conventional;
  Numerology numerology;                    // default mu = 0
  std::string slot_format = "fig1h";
  int deadline_slots = 2;
  int sr_period_slots = 1;                  // uplink only
  TimingPlan timing;
  double p_mismatch = 0.0;                  // downlink: inappropriate-MCS chance
  double robustness_multiplier = 1.0;       // extra frequency on recovery transmissions
  int freq_units = 4;                       // nominal data allocation width
  std::vector<ForcedEvent> forced_events;
  int threads = 0;                          // 0 = hardware concurrency
  // Sensitivity study: subject early-NACK detection at the gNB to an
  // eps_dn-probability miss instead of treating it as error-free.
  bool early_nack_fallible = false;

  bool forced(ForcedEvent e) const;
};

/// Rejects timing plans that conflict with the slot format, the mode, or the
/// ordering constraints (spans in range, gaps respected, directions usable).
/// Throws std::invalid_argument naming the offending span.
void validate_scenario(const ScenarioConfig& cfg);

enum class Actor : uint8_t { Ue, Gnb };
enum class EventKind : uint8_t {
  SrSent, SrMissed, DciSent, DciMissed, DciRetx,
  UlDataTx, DlDataTx, DataDecodeOk, DataDecodeFail,
  FeedbackSent, FeedbackDetected, DtxDeclared, EarlyNack, TxAborted,
  DeadlineExpired,
};

const char* to_string(EventKind k);

struct TraceEvent {
  int t = 0;  // symbols since the transaction start
  Actor actor = Actor::Gnb;
  EventKind kind = EventKind::DciSent;
  std::optional<FeedbackSignal> signal;
  std::optional<Allocation> alloc;
};

struct TransactionOutcome {
  bool success = false;
  int latency_symbols = 0;   // meaningful when success
  double latency_ms = 0.0;
  long re_used = 0;
  long re_wasted = 0;
  int attempts_data = 0;     // decode attempts
  bool mismatch = false;     // an inappropriate MCS occurred
  ChannelState channel;      // downlink only
  std::vector<TraceEvent> trace;
};

/// Keyed-draw identities for protocol decisions. Both slot modes consult the
/// same role for the same decision, so common-random-number comparisons stay
/// aligned. Encoded as kind * 1000 + slot index.
namespace roles {
inline constexpr uint64_t kSr = 1000;         // + opportunity index
inline constexpr uint64_t kDci = 2000;        // + slot
inline constexpr uint64_t kDciRetx = 3000;    // + slot (in-slot recovery grant)
inline constexpr uint64_t kData = 4000;       // + slot of the decode
inline constexpr uint64_t kFeedback = 5000;   // + slot
inline constexpr uint64_t kMismatch = 6000;
inline constexpr uint64_t kEarlyNack = 7000;  // + slot (fallible detection)
}  // namespace roles

TransactionOutcome run_ul_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                                const DataBlerProfile& d, TrialRng& rng,
                                bool collect_trace = true);
TransactionOutcome run_dl_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                                const DataBlerProfile& d, TrialRng& rng,
                                bool collect_trace = true);
TransactionOutcome run_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                             const DataBlerProfile& d, TrialRng& rng,
                             bool collect_trace = true);

std::string format_trace(const TransactionOutcome& outcome, const ScenarioConfig& cfg);

struct McStats {
  uint64_t trials = 0;
  uint64_t successes = 0;
  double reliability_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double latency_p50_ms = 0.0;
  double latency_p95_ms = 0.0;
  double latency_p99_ms = 0.0;
  double latency_max_ms = 0.0;
  double mean_re_used = 0.0;
  double mean_re_wasted = 0.0;
  std::vector<uint64_t> attempt_hist;          // index = decode attempts
  std::vector<uint64_t> latency_hist_symbols;  // successes, index = symbols
};

/// Wilson score interval for successes/trials at z standard normal quantiles.
void wilson_interval(uint64_t successes, uint64_t trials, double z, double* lo, double* hi);

/// n_trials independent trials on per-trial streams derived from master_seed.
/// The aggregate is an order-insensitive fold, so the result is identical for
/// any thread count.
McStats run_monte_carlo(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                        const DataBlerProfile& d, uint64_t n_trials, uint64_t master_seed);

struct ModeComparison {
  McStats conventional;
  McStats flexible;
  double reliability_delta = 0.0;          // flexible - conventional
  double latency_p50_delta_ms = 0.0;
  double latency_p95_delta_ms = 0.0;
  double latency_p99_delta_ms = 0.0;
  double mean_re_used_delta = 0.0;
  double mean_re_wasted_delta = 0.0;
  uint64_t mismatch_trials = 0;
  // Mean success latency over trials where a mismatch occurred.
  double conv_latency_affected_ms = 0.0;
  double flex_latency_affected_ms = 0.0;
  // Trials where the conventional mode succeeded and the flexible one failed.
  uint64_t dominance_violations = 0;
  // Uplink trials where the flexible mode made fewer decode attempts.
  uint64_t attempt_regressions = 0;
};

/// Runs both modes on identical per-trial random streams (common random
/// numbers). cfg.mode is ignored.
ModeComparison compare_modes(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                             const DataBlerProfile& d, uint64_t n_trials,
                             uint64_t master_seed);

}  // namespace urllc
