#pragma once

#include <cmath>

#include "urllc/error_model.hpp"

namespace urllc::testutil {

/// Random valid profile pairs for property tests: error rates log-uniform in
/// [1e-6, 0.5], block error rates in [1e-6, 0.9], p12 = p1 * u so p12 <= p1.
struct ProfileGen {
  TrialRng rng;

  explicit ProfileGen(uint64_t seed, uint64_t stream = 0) : rng(seed, stream) {}

  double log_uniform(double lo, double hi) {
    const double u = rng.next_uniform();
    return std::pow(10.0, std::log10(lo) + u * (std::log10(hi) - std::log10(lo)));
  }

  ControlErrorProfile control() {
    ControlErrorProfile c;
    c.eps_sr = log_uniform(1e-6, 0.5);
    c.eps_rg = log_uniform(1e-6, 0.5);
    c.eps_na = log_uniform(1e-6, 0.5);
    c.eps_nd = log_uniform(1e-6, 0.5);
    c.eps_da = log_uniform(1e-6, 0.5);
    c.eps_dn = log_uniform(1e-6, 0.5);
    c.eps_an = log_uniform(1e-6, 0.5);
    return c;
  }

  DataBlerProfile blers() {
    DataBlerProfile d;
    d.p1 = log_uniform(1e-6, 0.9);
    d.p12 = d.p1 * rng.next_uniform();
    d.p2 = log_uniform(1e-6, 0.9);
    d.p2d = log_uniform(1e-6, 0.9);
    d.p2n = log_uniform(1e-6, 0.9);
    d.p_bad = log_uniform(1e-6, 0.9);
    return d;
  }

  /// Same draw with the recovery rounds no worse than the combined nominal
  /// round (p12 <= p2d, p2n >= p2d, p12 <= 1/2), the regime where delivery
  /// probability is monotone in every error rate.
  DataBlerProfile ordered_blers() {
    DataBlerProfile d = blers();
    if (d.p12 > 0.5) d.p12 = 0.5;
    if (d.p2d < d.p12) d.p2d = d.p12;
    if (d.p2n < d.p2d) d.p2n = d.p2d;
    if (d.p2 < d.p12) d.p2 = d.p12;
    return d;
  }
};

}  // namespace urllc::testutil
