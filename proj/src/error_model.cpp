#include "urllc/error_model.hpp"

#include <stdexcept>
#include <string>

namespace urllc {

const char* to_string(FeedbackSignal s) {
  switch (s) {
    case FeedbackSignal::Ack: return "ACK";
    case FeedbackSignal::Nack: return "NACK";
    case FeedbackSignal::Dtx: return "DTX";
  }
  return "?";
}

namespace {

void check_prob(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " out of range [0,1]: " + std::to_string(v));
  }
}

}  // namespace

void validate_profiles(const ControlErrorProfile& c, const DataBlerProfile& d) {
  check_prob(c.eps_sr, "eps_sr");
  check_prob(c.eps_rg, "eps_rg");
  check_prob(c.eps_na, "eps_na");
  check_prob(c.eps_nd, "eps_nd");
  check_prob(c.eps_da, "eps_da");
  check_prob(c.eps_dn, "eps_dn");
  check_prob(c.eps_an, "eps_an");
  if (c.eps_na + c.eps_nd > 1.0) {
    throw std::invalid_argument("confusion row sum > 1: eps_na + eps_nd");
  }
  if (c.eps_da + c.eps_dn > 1.0) {
    throw std::invalid_argument("confusion row sum > 1: eps_da + eps_dn");
  }
  check_prob(d.p1, "p1");
  check_prob(d.p12, "p12");
  check_prob(d.p2, "p2");
  check_prob(d.p2d, "p2d");
  check_prob(d.p2n, "p2n");
  check_prob(d.p_bad, "p_bad");
  if (d.p12 > d.p1) {
    throw std::invalid_argument("p12 > p1: combining must not raise the block error rate");
  }
}

namespace {

constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kRoleSalt = 0xA0761D6478BD642FULL;

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

double to_unit(uint64_t v) {
  // top 53 bits -> [0, 1)
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace

TrialRng::TrialRng(uint64_t master_seed, uint64_t trial_index) {
  key_ = mix64(master_seed ^ mix64(trial_index + kGamma));
}

uint64_t TrialRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double TrialRng::next_uniform() {
  return to_unit(next_u64());
}

double TrialRng::uniform_at(uint64_t role) const {
  return to_unit(mix64((key_ ^ kRoleSalt) + (role + 1) * kGamma));
}

bool sample_event(double p, TrialRng& rng) {
  return rng.next_uniform() < p;
}

FeedbackSignal route_feedback(FeedbackSignal sent, const ControlErrorProfile& c, double u) {
  switch (sent) {
    case FeedbackSignal::Nack:
      if (u < c.eps_na) return FeedbackSignal::Ack;
      if (u < c.eps_na + c.eps_nd) return FeedbackSignal::Dtx;
      return FeedbackSignal::Nack;
    case FeedbackSignal::Dtx:
      if (u < c.eps_da) return FeedbackSignal::Ack;
      if (u < c.eps_da + c.eps_dn) return FeedbackSignal::Nack;
      return FeedbackSignal::Dtx;
    case FeedbackSignal::Ack:
      if (u < c.eps_an) return FeedbackSignal::Nack;
      return FeedbackSignal::Ack;
  }
  return sent;
}

FeedbackSignal detect_feedback(FeedbackSignal sent, const ControlErrorProfile& c, TrialRng& rng) {
  return route_feedback(sent, c, rng.next_uniform());
}

}  // namespace urllc
