#pragma once

#include <cstdint>

namespace urllc {

/// Control-channel error rates. All fields are probabilities in [0, 1].
struct ControlErrorProfile {
  double eps_sr = 0.0;  // scheduling request missed by the gNB
  double eps_rg = 0.0;  // resource grant (DCI) missed by the UE
  double eps_na = 0.0;  // NACK detected as ACK
  double eps_nd = 0.0;  // NACK detected as DTX
  double eps_da = 0.0;  // DTX detected as ACK
  double eps_dn = 0.0;  // DTX detected as NACK
  double eps_an = 0.0;  // ACK detected as NACK; drives wasted retransmissions only

  bool operator==(const ControlErrorProfile&) const = default;
};

/// Data-channel block error rates per transmission round.
struct DataBlerProfile {
  double p1 = 0.0;     // initial transmission
  double p12 = 0.0;    // combined decode of initial + retransmission
  double p2 = 0.0;     // single robust transmission after a missed uplink grant
  double p2d = 0.0;    // robust retransmission after a correctly detected DTX
  double p2n = 0.0;    // retransmission combined against data that was never received
  double p_bad = 0.9;  // decode error rate when the granted MCS is inappropriate

  bool operator==(const DataBlerProfile&) const = default;
};

enum class FeedbackSignal : uint8_t { Ack, Nack, Dtx };

const char* to_string(FeedbackSignal s);

/// Throws std::invalid_argument naming the offending field when any rate is
/// outside [0,1], a confusion row sums above 1, or p12 > p1.
void validate_profiles(const ControlErrorProfile& c, const DataBlerProfile& d);

/// Deterministic per-trial random stream. The sequence is a pure function of
/// (master_seed, trial_index); distinct trial indices give independent
/// streams. Derivation (fixed, covered by a regression test):
///
///   mix(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
///           z *= 0x94D049BB133111EB; z ^= z>>31
///   key        = mix(master_seed ^ mix(trial_index + GAMMA))
///   sequential draw i  = mix(key + (i+1) * GAMMA)
///   keyed draw (role)  = mix((key ^ ROLE_SALT) + (role+1) * GAMMA)
///
/// with GAMMA = 0x9E3779B97F4A7C15 and ROLE_SALT = 0xA0761D6478BD642F.
/// Keyed draws do not advance the sequential stream; they give every protocol
/// decision a stable identity so paired simulations stay aligned.
class TrialRng {
 public:
  TrialRng(uint64_t master_seed, uint64_t trial_index);

  uint64_t next_u64();
  double next_uniform();                     // in [0, 1); one stream step
  double uniform_at(uint64_t role) const;    // keyed; stream state untouched

  uint64_t key() const { return key_; }
  uint64_t draws_consumed() const { return counter_; }

 private:
  uint64_t key_ = 0;
  uint64_t counter_ = 0;
};

/// True with probability p; consumes exactly one stream step.
bool sample_event(double p, TrialRng& rng);

/// Confusion-matrix routing of a feedback signal given one uniform draw.
FeedbackSignal route_feedback(FeedbackSignal sent, const ControlErrorProfile& c, double u);

/// What the gNB detects when the UE emitted `sent`; one stream step.
FeedbackSignal detect_feedback(FeedbackSignal sent, const ControlErrorProfile& c, TrialRng& rng);

}  // namespace urllc
