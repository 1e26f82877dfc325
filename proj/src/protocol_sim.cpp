#include "urllc/protocol_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace urllc {

const char* to_string(ForcedEvent e) {
  switch (e) {
    case ForcedEvent::MissFirstDci: return "miss_first_dci";
    case ForcedEvent::InappropriateMcs: return "inappropriate_mcs";
  }
  return "?";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::SrSent: return "SrSent";
    case EventKind::SrMissed: return "SrMissed";
    case EventKind::DciSent: return "DciSent";
    case EventKind::DciMissed: return "DciMissed";
    case EventKind::DciRetx: return "DciRetx";
    case EventKind::UlDataTx: return "UlDataTx";
    case EventKind::DlDataTx: return "DlDataTx";
    case EventKind::DataDecodeOk: return "DataDecodeOk";
    case EventKind::DataDecodeFail: return "DataDecodeFail";
    case EventKind::FeedbackSent: return "FeedbackSent";
    case EventKind::FeedbackDetected: return "FeedbackDetected";
    case EventKind::DtxDeclared: return "DtxDeclared";
    case EventKind::EarlyNack: return "EarlyNack";
    case EventKind::TxAborted: return "TxAborted";
    case EventKind::DeadlineExpired: return "DeadlineExpired";
  }
  return "?";
}

bool ScenarioConfig::forced(ForcedEvent e) const {
  return std::find(forced_events.begin(), forced_events.end(), e) != forced_events.end();
}

namespace {

void check_span(const SymbolSpan& s, const char* name) {
  if (s.first < 0 || s.last >= kSymbolsPerSlot || s.first > s.last) {
    throw std::invalid_argument(std::string("timing span out of range: ") + name);
  }
}

void check_usage(const SlotFormat& fmt, const SymbolSpan& s, Direction dir, SlotMode mode,
                 Direction configured, const char* name) {
  for (int i = s.first; i <= s.last; ++i) {
    if (!validate_usage(fmt, i, dir, mode, configured)) {
      throw std::invalid_argument(std::string("timing span '") + name + "' needs " +
                                  to_string(dir) + " usage at symbol " + std::to_string(i) +
                                  " of format " + fmt.name);
    }
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("timing plan inconsistent: ") + what);
}

}  // namespace

void validate_scenario(const ScenarioConfig& cfg) {
  if (cfg.deadline_slots < 1) throw std::invalid_argument("deadline_slots must be >= 1");
  if (cfg.sr_period_slots < 1) throw std::invalid_argument("sr_period_slots must be >= 1");
  if (!(cfg.p_mismatch >= 0.0 && cfg.p_mismatch <= 1.0)) {
    throw std::invalid_argument("p_mismatch out of range [0,1]");
  }
  if (!(cfg.robustness_multiplier >= 1.0)) {
    throw std::invalid_argument("robustness_multiplier must be >= 1");
  }
  if (cfg.freq_units < 1) throw std::invalid_argument("freq_units must be >= 1");
  if (cfg.threads < 0) throw std::invalid_argument("threads must be >= 0");

  const SlotFormat& fmt = slot_format_by_name(cfg.slot_format);
  const TimingPlan& tp = cfg.timing;
  const SlotMode mode = cfg.mode;
  const Direction configured = cfg.direction;
  const int gap = tp.processing_gap_symbols;

  check_span(tp.dci_span, "dci_span");
  check_usage(fmt, tp.dci_span, Direction::Downlink, mode, configured, "dci_span");

  if (cfg.direction == Direction::Uplink) {
    require(tp.sr_symbol >= 0 && tp.sr_symbol < kSymbolsPerSlot, "sr_symbol in 0..13");
    check_usage(fmt, {tp.sr_symbol, tp.sr_symbol}, Direction::Uplink, mode, configured,
                "sr_symbol");
    check_span(tp.ul_data_span, "ul_data_span");
    check_usage(fmt, tp.ul_data_span, Direction::Uplink, mode, configured, "ul_data_span");
    check_span(tp.ul_retx_span, "ul_retx_span");
    check_usage(fmt, tp.ul_retx_span, Direction::Uplink, mode, configured, "ul_retx_span");
    require(tp.ul_data_span.first >= tp.dci_span.last + 1 + gap,
            "ul_data_span must leave a processing gap after the grant");
    if (mode == SlotMode::Flexible) {
      require(tp.dtx_check_symbol >= tp.ul_data_span.first + 1,
              "dtx_check_symbol must follow the expected uplink start");
      check_span(tp.dci_retx_span, "dci_retx_span");
      check_usage(fmt, tp.dci_retx_span, Direction::Downlink, mode, configured,
                  "dci_retx_span");
      require(tp.dci_retx_span.first > tp.dtx_check_symbol,
              "dci_retx_span must follow dtx_check_symbol");
      check_span(tp.ul_recovery_span, "ul_recovery_span");
      check_usage(fmt, tp.ul_recovery_span, Direction::Uplink, mode, configured,
                  "ul_recovery_span");
      require(tp.ul_recovery_span.first >= tp.dci_retx_span.last + 1,
              "ul_recovery_span must follow the grant retransmission");
      require(tp.ul_recovery_span.length() <= tp.ul_data_span.length(),
              "ul_recovery_span longer than ul_data_span");
      require(tp.ul_recovery_span.length() <= tp.ul_retx_span.length(),
              "ul_recovery_span longer than ul_retx_span");
    }
  } else {
    check_span(tp.dl_data_span, "dl_data_span");
    check_usage(fmt, tp.dl_data_span, Direction::Downlink, mode, configured, "dl_data_span");
    check_span(tp.dl_retx_span, "dl_retx_span");
    check_usage(fmt, tp.dl_retx_span, Direction::Downlink, mode, configured, "dl_retx_span");
    check_span(tp.feedback_span, "feedback_span");
    check_usage(fmt, tp.feedback_span, Direction::Uplink, mode, configured, "feedback_span");
    require(tp.dl_data_span.first >= tp.dci_span.last + 1,
            "dl_data_span must follow the grant");
    require(tp.feedback_span.first >= tp.dl_data_span.last + 1 + gap,
            "feedback_span must leave a processing gap after the data");
    if (mode == SlotMode::Flexible) {
      check_span(tp.early_nack_span, "early_nack_span");
      check_usage(fmt, tp.early_nack_span, Direction::Uplink, mode, configured,
                  "early_nack_span");
      require(tp.early_nack_span.first >= tp.dci_span.last + 1 + gap,
              "early_nack_span must leave a processing gap after the grant");
      require(tp.early_nack_span.first >= tp.dl_data_span.first &&
                  tp.early_nack_span.last <= tp.dl_data_span.last,
              "early_nack_span must sit inside the downlink data span");
      require(tp.abort_symbol > tp.early_nack_span.last, "abort_symbol must follow the early NACK");
      require(tp.abort_symbol <= tp.dl_data_span.last, "abort_symbol past the data span");
      check_span(tp.dl_recovery_dci_span, "dl_recovery_dci_span");
      check_usage(fmt, tp.dl_recovery_dci_span, Direction::Downlink, mode, configured,
                  "dl_recovery_dci_span");
      require(tp.dl_recovery_dci_span.first >= tp.abort_symbol,
              "dl_recovery_dci_span must start at or after the abort");
      check_span(tp.dl_recovery_data_span, "dl_recovery_data_span");
      check_usage(fmt, tp.dl_recovery_data_span, Direction::Downlink, mode, configured,
                  "dl_recovery_data_span");
      require(tp.dl_recovery_data_span.first >= tp.dl_recovery_dci_span.last + 1,
              "dl_recovery_data_span must follow the recovery grant");
      require(tp.dl_recovery_data_span.length() <= tp.dl_data_span.length(),
              "dl_recovery_data_span longer than dl_data_span");
    }
  }
}

namespace {

/// Shared bookkeeping for one simulated transaction.
struct Trial {
  const ScenarioConfig& cfg;
  const ControlErrorProfile& c;
  const DataBlerProfile& d;
  TrialRng& rng;
  bool collect_trace;
  TransactionOutcome out;
  int lead;  // symbols before slot 1 (the SR for uplink)

  Trial(const ScenarioConfig& cfg_, const ControlErrorProfile& c_, const DataBlerProfile& d_,
        TrialRng& rng_, bool collect)
      : cfg(cfg_), c(c_), d(d_), rng(rng_), collect_trace(collect),
        lead(cfg_.direction == Direction::Uplink ? 1 : 0) {}

  int slot_start(int slot) const { return lead + (slot - 1) * kSymbolsPerSlot; }
  int window_end() const { return lead + cfg.deadline_slots * kSymbolsPerSlot; }

  bool event(double p, uint64_t role) { return rng.uniform_at(role) < p; }

  void log(int t, Actor actor, EventKind kind, std::optional<FeedbackSignal> sig = {},
           std::optional<Allocation> alloc = {}) {
    if (collect_trace) out.trace.push_back({t, actor, kind, sig, alloc});
  }

  void tx_data(int slot, const Allocation& alloc, bool wasted) {
    const EventKind kind =
        cfg.direction == Direction::Uplink ? EventKind::UlDataTx : EventKind::DlDataTx;
    const Actor actor = cfg.direction == Direction::Uplink ? Actor::Ue : Actor::Gnb;
    log(slot_start(slot) + alloc.first_symbol, actor, kind, {}, alloc);
    if (wasted) {
      out.re_wasted += resource_elements(alloc);
    } else {
      out.re_used += resource_elements(alloc);
    }
  }

  /// Decode attempt at the end of `alloc` in `slot`; finishes the trial on
  /// success.
  bool decode(int slot, const Allocation& alloc, double bler, uint64_t role) {
    ++out.attempts_data;
    const int t_end = slot_start(slot) + alloc.last_symbol;
    const Actor decoder = cfg.direction == Direction::Uplink ? Actor::Gnb : Actor::Ue;
    if (!event(bler, role)) {
      log(t_end, decoder, EventKind::DataDecodeOk);
      out.success = true;
      out.latency_symbols = t_end + 1;
      out.latency_ms = out.latency_symbols * cfg.numerology.symbol_duration_ms;
      return true;
    }
    log(t_end, decoder, EventKind::DataDecodeFail);
    return false;
  }

  void expire() { log(window_end(), Actor::Gnb, EventKind::DeadlineExpired); }

  Allocation robust(Allocation a) const {
    a.freq_units = static_cast<int>(std::ceil(a.freq_units * cfg.robustness_multiplier));
    return a;
  }
};

// ---------------------------------------------------------------------------
// Uplink: SR -> grant -> data, one retransmission budget. Flexible mode
// senses a silent uplink early and resends the grant inside the same slot,
// moving the transmission onto a shortened, frequency-expanded span.

/// Retransmission round in `slot` after a failed decode; combined BLER p12.
bool ul_retransmission(Trial& tr, int slot) {
  const TimingPlan& tp = tr.cfg.timing;
  const int t0 = tr.slot_start(slot);
  const Allocation retx{tp.ul_retx_span.first, tp.ul_retx_span.last, tr.cfg.freq_units};
  const bool rg_ok = !tr.event(tr.c.eps_rg, roles::kDci + static_cast<uint64_t>(slot));
  tr.log(t0 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);
  if (rg_ok) {
    tr.tx_data(slot, retx, false);
    return tr.decode(slot, retx, tr.d.p12, roles::kData + static_cast<uint64_t>(slot));
  }
  tr.log(t0 + tp.dci_span.last, Actor::Ue, EventKind::DciMissed);
  if (tr.cfg.mode == SlotMode::Flexible) {
    tr.log(t0 + tp.dtx_check_symbol, Actor::Gnb, EventKind::DtxDeclared);
    const bool retx_ok = !tr.event(tr.c.eps_rg, roles::kDciRetx + static_cast<uint64_t>(slot));
    tr.log(t0 + tp.dci_retx_span.first, Actor::Gnb, EventKind::DciRetx);
    if (retx_ok) {
      Allocation rec = expand_frequency(retx, tp.ul_recovery_span.first, tp.ul_recovery_span.last);
      rec = tr.robust(rec);
      tr.tx_data(slot, rec, false);
      return tr.decode(slot, rec, tr.d.p12, roles::kData + static_cast<uint64_t>(slot));
    }
    tr.log(t0 + tp.dci_retx_span.last, Actor::Ue, EventKind::DciMissed);
  }
  return false;
}

/// Robust single transmission in `slot` after the previous grant was missed
/// and no data was ever sent; BLER p2.
bool ul_robust_round(Trial& tr, int slot) {
  const TimingPlan& tp = tr.cfg.timing;
  const int t0 = tr.slot_start(slot);
  const Allocation alloc =
      tr.robust({tp.ul_retx_span.first, tp.ul_retx_span.last, tr.cfg.freq_units});
  const bool rg_ok = !tr.event(tr.c.eps_rg, roles::kDci + static_cast<uint64_t>(slot));
  tr.log(t0 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);
  if (rg_ok) {
    tr.tx_data(slot, alloc, false);
    return tr.decode(slot, alloc, tr.d.p2, roles::kData + static_cast<uint64_t>(slot));
  }
  tr.log(t0 + tp.dci_span.last, Actor::Ue, EventKind::DciMissed);
  if (tr.cfg.mode == SlotMode::Flexible) {
    tr.log(t0 + tp.dtx_check_symbol, Actor::Gnb, EventKind::DtxDeclared);
    const bool retx_ok = !tr.event(tr.c.eps_rg, roles::kDciRetx + static_cast<uint64_t>(slot));
    tr.log(t0 + tp.dci_retx_span.first, Actor::Gnb, EventKind::DciRetx);
    if (retx_ok) {
      Allocation rec =
          expand_frequency(alloc, tp.ul_recovery_span.first, tp.ul_recovery_span.last);
      tr.tx_data(slot, rec, false);
      return tr.decode(slot, rec, tr.d.p2, roles::kData + static_cast<uint64_t>(slot));
    }
    tr.log(t0 + tp.dci_retx_span.last, Actor::Ue, EventKind::DciMissed);
  }
  return false;
}

}  // namespace

TransactionOutcome run_ul_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                                const DataBlerProfile& d, TrialRng& rng, bool collect_trace) {
  Trial tr(cfg, c, d, rng, collect_trace);
  const TimingPlan& tp = cfg.timing;

  // Scheduling-request phase: at most two periodic opportunities whose grant
  // slot still fits the deadline.
  int grant_slot = -1;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int slot = attempt * cfg.sr_period_slots + 1;
    if (slot > cfg.deadline_slots) break;
    const int t_sr = attempt * cfg.sr_period_slots * kSymbolsPerSlot;
    tr.log(t_sr, Actor::Ue, EventKind::SrSent);
    if (tr.event(c.eps_sr, roles::kSr + static_cast<uint64_t>(attempt))) {
      tr.log(t_sr, Actor::Gnb, EventKind::SrMissed);
      continue;
    }
    grant_slot = slot;
    break;
  }
  if (grant_slot < 0) {
    tr.expire();
    return tr.out;
  }

  const int s1 = grant_slot;
  const int t1 = tr.slot_start(s1);
  const bool first_dci_ok =
      !cfg.forced(ForcedEvent::MissFirstDci) &&
      !tr.event(c.eps_rg, roles::kDci + static_cast<uint64_t>(s1));
  tr.log(t1 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);

  if (first_dci_ok) {
    const Allocation alloc{tp.ul_data_span.first, tp.ul_data_span.last, cfg.freq_units};
    tr.tx_data(s1, alloc, false);
    if (!tr.decode(s1, alloc, d.p1, roles::kData + static_cast<uint64_t>(s1)) &&
        s1 + 1 <= cfg.deadline_slots) {
      ul_retransmission(tr, s1 + 1);
    }
  } else {
    tr.log(t1 + tp.dci_span.last, Actor::Ue, EventKind::DciMissed);
    tr.log(t1 + tp.dtx_check_symbol, Actor::Gnb, EventKind::DtxDeclared);
    bool recovered_in_slot = false;
    if (cfg.mode == SlotMode::Flexible) {
      const bool retx_ok = !tr.event(c.eps_rg, roles::kDciRetx + static_cast<uint64_t>(s1));
      tr.log(t1 + tp.dci_retx_span.first, Actor::Gnb, EventKind::DciRetx);
      if (retx_ok) {
        recovered_in_slot = true;
        Allocation rec = expand_frequency(
            {tp.ul_data_span.first, tp.ul_data_span.last, cfg.freq_units},
            tp.ul_recovery_span.first, tp.ul_recovery_span.last);
        rec = tr.robust(rec);
        tr.tx_data(s1, rec, false);
        if (!tr.decode(s1, rec, d.p1, roles::kData + static_cast<uint64_t>(s1)) &&
            s1 + 1 <= cfg.deadline_slots) {
          ul_retransmission(tr, s1 + 1);
        }
      } else {
        tr.log(t1 + tp.dci_retx_span.last, Actor::Ue, EventKind::DciMissed);
      }
    }
    if (!recovered_in_slot && s1 + 1 <= cfg.deadline_slots) {
      ul_robust_round(tr, s1 + 1);
    }
  }

  if (!tr.out.success) tr.expire();
  return tr.out;
}

// ---------------------------------------------------------------------------
// Downlink: grant -> data -> HARQ feedback, one retransmission budget.
// Flexible mode lets the UE send an early NACK when the granted MCS is
// inappropriate, aborting the doomed transmission and recovering in-slot.

namespace {

/// Slot-2 retransmission for the downlink. `grant_drawn` decides whether the
/// grant faces a fresh miss probability (the plain NACK branch treats it as
/// implicit). The data is transmitted either way; decoding needs the grant.
void dl_retx_round(Trial& tr, int slot, bool grant_drawn, const Allocation& alloc,
                   double bler) {
  const TimingPlan& tp = tr.cfg.timing;
  const int t0 = tr.slot_start(slot);
  bool rg_ok = true;
  if (grant_drawn) {
    rg_ok = !tr.event(tr.c.eps_rg, roles::kDci + static_cast<uint64_t>(slot));
  }
  tr.log(t0 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);
  if (!rg_ok) tr.log(t0 + tp.dci_span.last, Actor::Ue, EventKind::DciMissed);
  tr.tx_data(slot, alloc, false);
  if (rg_ok) {
    tr.decode(slot, alloc, bler, roles::kData + static_cast<uint64_t>(slot));
  }
}

}  // namespace

TransactionOutcome run_dl_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                                const DataBlerProfile& d, TrialRng& rng, bool collect_trace) {
  Trial tr(cfg, c, d, rng, collect_trace);
  const TimingPlan& tp = cfg.timing;
  const int s1 = 1;
  const int t1 = tr.slot_start(s1);
  const bool retx_fits = s1 + 1 <= cfg.deadline_slots;
  const Allocation nominal{tp.dl_data_span.first, tp.dl_data_span.last, cfg.freq_units};

  const bool dci_ok = !cfg.forced(ForcedEvent::MissFirstDci) &&
                      !tr.event(c.eps_rg, roles::kDci + static_cast<uint64_t>(s1));
  tr.log(t1 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);

  if (!dci_ok) {
    // UE silent for the whole slot; the gNB classifies the missing feedback.
    tr.log(t1 + tp.dci_span.last, Actor::Ue, EventKind::DciMissed);
    const FeedbackSignal det = route_feedback(
        FeedbackSignal::Dtx, c, tr.rng.uniform_at(roles::kFeedback + static_cast<uint64_t>(s1)));
    tr.log(t1 + tp.feedback_span.last, Actor::Gnb, EventKind::FeedbackDetected, det);
    if (det != FeedbackSignal::Ack && retx_fits) {
      if (det == FeedbackSignal::Nack) {
        // Retransmission combined against data the UE never received.
        const Allocation alloc{tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units};
        dl_retx_round(tr, s1 + 1, /*grant_drawn=*/true, alloc, d.p2n);
      } else {
        const Allocation alloc =
            tr.robust({tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units});
        dl_retx_round(tr, s1 + 1, /*grant_drawn=*/true, alloc, d.p2d);
      }
    }
    if (!tr.out.success) tr.expire();
    return tr.out;
  }

  const bool mismatch = cfg.forced(ForcedEvent::InappropriateMcs) ||
                        tr.event(cfg.p_mismatch, roles::kMismatch);
  tr.out.mismatch = mismatch;
  tr.out.channel.granted_mcs = tr.out.channel.supportable_mcs + (mismatch ? 1 : 0);

  if (mismatch && cfg.mode == SlotMode::Flexible) {
    const bool nack_heard =
        !cfg.early_nack_fallible ||
        !tr.event(c.eps_dn, roles::kEarlyNack + static_cast<uint64_t>(s1));
    if (nack_heard) {
      // The UE spots the inappropriate MCS right after decoding the grant and
      // switches to transmit mode; the aborted symbols are wasted.
      const Allocation aborted{tp.dl_data_span.first, tp.abort_symbol - 1, cfg.freq_units};
      tr.tx_data(s1, aborted, true);
      tr.log(t1 + tp.early_nack_span.first, Actor::Ue, EventKind::EarlyNack,
             FeedbackSignal::Nack);
      tr.log(t1 + tp.abort_symbol, Actor::Gnb, EventKind::TxAborted);
      const bool new_dci_ok = !tr.event(c.eps_rg, roles::kDciRetx + static_cast<uint64_t>(s1));
      tr.log(t1 + tp.dl_recovery_dci_span.first, Actor::Gnb, EventKind::DciRetx);
      Allocation rec = expand_frequency(nominal, tp.dl_recovery_data_span.first,
                                        tp.dl_recovery_data_span.last);
      rec = tr.robust(rec);
      tr.tx_data(s1, rec, false);
      if (new_dci_ok) {
        tr.decode(s1, rec, d.p2d, roles::kData + static_cast<uint64_t>(s1 + 1));
      } else {
        tr.log(t1 + tp.dl_recovery_dci_span.last, Actor::Ue, EventKind::DciMissed);
      }
    } else {
      // The gNB misses the early NACK and completes the doomed transmission;
      // the UE already switched away and never decodes it. The end-of-slot
      // NACK with the updated CQI drives a robust slot-2 retransmission.
      tr.tx_data(s1, nominal, true);
      tr.log(t1 + tp.early_nack_span.first, Actor::Ue, EventKind::EarlyNack,
             FeedbackSignal::Nack);
      tr.log(t1 + tp.feedback_span.first, Actor::Ue, EventKind::FeedbackSent,
             FeedbackSignal::Nack);
      const FeedbackSignal det = route_feedback(
          FeedbackSignal::Nack, c,
          tr.rng.uniform_at(roles::kFeedback + static_cast<uint64_t>(s1)));
      tr.log(t1 + tp.feedback_span.last, Actor::Gnb, EventKind::FeedbackDetected, det);
      if (det != FeedbackSignal::Ack && retx_fits) {
        const Allocation alloc =
            tr.robust({tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units});
        dl_retx_round(tr, s1 + 1, /*grant_drawn=*/det == FeedbackSignal::Dtx, alloc, d.p2d);
      }
    }
    if (!tr.out.success) tr.expire();
    return tr.out;
  }

  // Nominal transmission (also the conventional path under a mismatch).
  const double bler1 = mismatch ? d.p_bad : d.p1;
  tr.tx_data(s1, nominal, false);
  const bool ok1 = tr.decode(s1, nominal, bler1, roles::kData + static_cast<uint64_t>(s1));
  const FeedbackSignal sent = ok1 ? FeedbackSignal::Ack : FeedbackSignal::Nack;
  tr.log(t1 + tp.feedback_span.first, Actor::Ue, EventKind::FeedbackSent, sent);
  const FeedbackSignal det = route_feedback(
      sent, c, tr.rng.uniform_at(roles::kFeedback + static_cast<uint64_t>(s1)));
  tr.log(t1 + tp.feedback_span.last, Actor::Gnb, EventKind::FeedbackDetected, det);

  if (ok1) {
    if (det == FeedbackSignal::Nack && retx_fits) {
      // ACK read as NACK: the retransmission is pure waste.
      const int t2 = tr.slot_start(s1 + 1);
      tr.log(t2 + tp.dci_span.first, Actor::Gnb, EventKind::DciSent);
      const Allocation alloc{tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units};
      tr.tx_data(s1 + 1, alloc, true);
    }
    return tr.out;
  }

  if (det == FeedbackSignal::Ack || !retx_fits) {
    tr.expire();  // silent failure: no retransmission will come
    return tr.out;
  }
  if (det == FeedbackSignal::Nack) {
    if (mismatch) {
      // The NACK carries an updated CQI; the retransmission is re-coded
      // robustly rather than combined against the badly coded original.
      const Allocation alloc =
          tr.robust({tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units});
      dl_retx_round(tr, s1 + 1, /*grant_drawn=*/false, alloc, d.p2d);
    } else {
      const Allocation alloc{tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units};
      dl_retx_round(tr, s1 + 1, /*grant_drawn=*/false, alloc, d.p12);
    }
  } else {
    // NACK read as DTX: the gNB re-grants and retransmits robustly.
    const Allocation alloc =
        tr.robust({tp.dl_retx_span.first, tp.dl_retx_span.last, cfg.freq_units});
    dl_retx_round(tr, s1 + 1, /*grant_drawn=*/true, alloc, d.p2d);
  }
  if (!tr.out.success) tr.expire();
  return tr.out;
}

TransactionOutcome run_trial(const ScenarioConfig& cfg, const ControlErrorProfile& c,
                             const DataBlerProfile& d, TrialRng& rng, bool collect_trace) {
  return cfg.direction == Direction::Uplink ? run_ul_trial(cfg, c, d, rng, collect_trace)
                                            : run_dl_trial(cfg, c, d, rng, collect_trace);
}

std::string format_trace(const TransactionOutcome& outcome, const ScenarioConfig& cfg) {
  const int lead = cfg.direction == Direction::Uplink ? 1 : 0;
  std::string text;
  char line[160];
  std::snprintf(line, sizeof(line), "# %s, latency_ms=%.6f, attempts=%d, re_used=%ld, re_wasted=%ld\n",
                outcome.success ? "success" : "failure", outcome.success ? outcome.latency_ms : -1.0,
                outcome.attempts_data, outcome.re_used, outcome.re_wasted);
  text += line;
  for (const auto& ev : outcome.trace) {
    int slot = 0;
    int sym = cfg.timing.sr_symbol;
    if (ev.t >= lead) {
      slot = 1 + (ev.t - lead) / kSymbolsPerSlot;
      sym = (ev.t - lead) % kSymbolsPerSlot;
    }
    std::snprintf(line, sizeof(line), "t=%4d slot=%d sym=%2d %-3s %-16s", ev.t, slot, sym,
                  ev.actor == Actor::Ue ? "UE" : "gNB", to_string(ev.kind));
    text += line;
    if (ev.signal) {
      text += " signal=";
      text += to_string(*ev.signal);
    }
    if (ev.alloc) {
      std::snprintf(line, sizeof(line), " alloc=[%d-%d]x%d", ev.alloc->first_symbol,
                    ev.alloc->last_symbol, ev.alloc->freq_units);
      text += line;
    }
    text += '\n';
  }
  return text;
}

}  // namespace urllc
