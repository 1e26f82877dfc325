#include "urllc/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace urllc {

double p_ul(const ControlErrorProfile& c, const DataBlerProfile& d) {
  const double qsr = 1.0 - c.eps_sr;
  const double qrg = 1.0 - c.eps_rg;
  return qsr * qrg * ((1.0 - d.p1) + d.p1 * qrg * (1.0 - d.p12)) +
         c.eps_sr * qsr * qrg * (1.0 - d.p1) +
         qsr * c.eps_rg * qrg * (1.0 - d.p2);
}

double p_dl_coherent(const ControlErrorProfile& c, const DataBlerProfile& d) {
  const double qrg = 1.0 - c.eps_rg;
  const double delivered = (1.0 - d.p1) +
                           d.p1 * (1.0 - c.eps_na - c.eps_nd) * (1.0 - d.p12) +
                           d.p1 * c.eps_nd * qrg * (1.0 - d.p2d);
  const double missed = c.eps_dn * (1.0 - d.p2n) +
                        (1.0 - c.eps_dn - c.eps_da) * (1.0 - d.p2d);
  return qrg * delivered + c.eps_rg * qrg * missed;
}

VerbatimResult p_dl_verbatim(const ControlErrorProfile& c, const DataBlerProfile& d) {
  const double qrg = 1.0 - c.eps_rg;
  const double delivered = (1.0 - d.p1) +
                           d.p1 * (1.0 - c.eps_na - c.eps_nd) * (1.0 - d.p12) +
                           c.eps_nd * qrg * (1.0 - d.p2d);
  const double missed = c.eps_dn * (1.0 - d.p2n) +
                        (1.0 - c.eps_dn - c.eps_da) * (1.0 - d.p2d);
  VerbatimResult r;
  r.value = qrg * delivered + c.eps_rg * qrg * missed;
  r.exceeds_one = r.value > 1.0;
  return r;
}

namespace {

struct LeafBuilder {
  std::vector<OutcomeLeaf>* leaves;

  void emit(const std::string& label, double prob, bool success) {
    leaves->push_back({label, prob, success});
  }
};

}  // namespace

EnumerationResult enumerate_ul(const ControlErrorProfile& c, const DataBlerProfile& d) {
  EnumerationResult out;
  LeafBuilder lb{&out.leaves};
  const double qsr = 1.0 - c.eps_sr;
  const double qrg = 1.0 - c.eps_rg;

  // SR detected on the first opportunity.
  {
    const double base = qsr;
    // Grant delivered; first attempt in slot 1.
    {
      const double g = base * qrg;
      lb.emit("SR ok / RG ok / tx1 ok", g * (1.0 - d.p1), true);
      const double f = g * d.p1;
      lb.emit("SR ok / RG ok / tx1 fail / RG2 ok / retx ok", f * qrg * (1.0 - d.p12), true);
      lb.emit("SR ok / RG ok / tx1 fail / RG2 ok / retx fail", f * qrg * d.p12, false);
      lb.emit("SR ok / RG ok / tx1 fail / RG2 miss", f * c.eps_rg, false);
    }
    // Grant missed; the gNB sees no uplink data and grants a single robust
    // transmission in the next slot.
    {
      const double g = base * c.eps_rg;
      lb.emit("SR ok / RG miss / RG2 ok / robust tx ok", g * qrg * (1.0 - d.p2), true);
      lb.emit("SR ok / RG miss / RG2 ok / robust tx fail", g * qrg * d.p2, false);
      lb.emit("SR ok / RG miss / RG2 miss", g * c.eps_rg, false);
    }
  }
  // First SR missed; one more periodic opportunity, then a single data try.
  {
    const double base = c.eps_sr * qsr;
    lb.emit("SR miss / SR2 ok / RG ok / tx ok", base * qrg * (1.0 - d.p1), true);
    lb.emit("SR miss / SR2 ok / RG ok / tx fail", base * qrg * d.p1, false);
    lb.emit("SR miss / SR2 ok / RG miss", base * c.eps_rg, false);
    lb.emit("SR miss / SR2 miss", c.eps_sr * c.eps_sr, false);
  }

  for (const auto& leaf : out.leaves) {
    out.total_probability += leaf.probability;
    if (leaf.success) out.success_probability += leaf.probability;
  }
  return out;
}

EnumerationResult enumerate_dl(const ControlErrorProfile& c, const DataBlerProfile& d) {
  EnumerationResult out;
  LeafBuilder lb{&out.leaves};
  const double qrg = 1.0 - c.eps_rg;

  // Grant delivered; initial transmission decoded against P1.
  {
    const double base = qrg;
    lb.emit("RG ok / tx1 ok", base * (1.0 - d.p1), true);
    const double f = base * d.p1;  // UE sends NACK
    lb.emit("RG ok / tx1 fail / NACK as ACK", f * c.eps_na, false);
    // Correctly detected NACK: the retransmission grant is implicit in this
    // branch (no second grant factor), matching the closed form.
    const double nack = f * (1.0 - c.eps_na - c.eps_nd);
    lb.emit("RG ok / tx1 fail / NACK ok / retx ok", nack * (1.0 - d.p12), true);
    lb.emit("RG ok / tx1 fail / NACK ok / retx fail", nack * d.p12, false);
    // NACK read as DTX: robust retransmission behind a fresh grant.
    const double asdtx = f * c.eps_nd;
    lb.emit("RG ok / tx1 fail / NACK as DTX / RG2 ok / robust retx ok",
            asdtx * qrg * (1.0 - d.p2d), true);
    lb.emit("RG ok / tx1 fail / NACK as DTX / RG2 ok / robust retx fail",
            asdtx * qrg * d.p2d, false);
    lb.emit("RG ok / tx1 fail / NACK as DTX / RG2 miss", asdtx * c.eps_rg, false);
  }
  // Grant missed; the UE stays silent and the gNB classifies a DTX.
  {
    const double base = c.eps_rg;
    lb.emit("RG miss / DTX as ACK", base * c.eps_da, false);
    const double asnack = base * c.eps_dn;
    lb.emit("RG miss / DTX as NACK / RG2 ok / retx(no combine) ok",
            asnack * qrg * (1.0 - d.p2n), true);
    lb.emit("RG miss / DTX as NACK / RG2 ok / retx(no combine) fail",
            asnack * qrg * d.p2n, false);
    lb.emit("RG miss / DTX as NACK / RG2 miss", asnack * c.eps_rg, false);
    const double asdtx = base * (1.0 - c.eps_da - c.eps_dn);
    lb.emit("RG miss / DTX ok / RG2 ok / robust retx ok", asdtx * qrg * (1.0 - d.p2d), true);
    lb.emit("RG miss / DTX ok / RG2 ok / robust retx fail", asdtx * qrg * d.p2d, false);
    lb.emit("RG miss / DTX ok / RG2 miss", asdtx * c.eps_rg, false);
  }

  for (const auto& leaf : out.leaves) {
    out.total_probability += leaf.probability;
    if (leaf.success) out.success_probability += leaf.probability;
  }
  return out;
}

BoundaryResult boundary_bisect(const std::function<double(double)>& reliability_fn,
                               double target, double rel_tol) {
  if (reliability_fn(kBoundaryFloor) < target) {
    return {0.0, false};  // infeasible even with a near-perfect control channel
  }
  if (reliability_fn(1.0) >= target) {
    return {1.0, true};
  }
  double lo = std::log10(kBoundaryFloor);
  double hi = 0.0;
  // Invariant: f(10^lo) >= target > f(10^hi).
  while (std::pow(10.0, hi) - std::pow(10.0, lo) >
         rel_tol * std::pow(10.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (reliability_fn(std::pow(10.0, mid)) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {std::pow(10.0, lo), true};
}

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::EpsSr: return "eps_sr";
    case SweepParam::EpsRg: return "eps_rg";
    case SweepParam::EpsFeedback: return "eps_feedback";
  }
  return "?";
}

void set_sweep_param(ControlErrorProfile& c, SweepParam p, double value) {
  switch (p) {
    case SweepParam::EpsSr:
      c.eps_sr = value;
      break;
    case SweepParam::EpsRg:
      c.eps_rg = value;
      break;
    case SweepParam::EpsFeedback:
      c.eps_na = c.eps_nd = c.eps_da = c.eps_dn = value;
      break;
  }
}

double direction_reliability(Direction direction, const ControlErrorProfile& c,
                             const DataBlerProfile& d, bool verbatim_dl) {
  if (direction == Direction::Uplink) return p_ul(c, d);
  return verbatim_dl ? p_dl_verbatim(c, d).value : p_dl_coherent(c, d);
}

std::vector<RegionPoint> region_curve(Direction direction, const ControlErrorProfile& base,
                                      const DataBlerProfile& d, SweepParam x_param,
                                      SweepParam y_param, const std::vector<double>& x_grid,
                                      double target, bool verbatim_dl) {
  for (size_t i = 1; i < x_grid.size(); ++i) {
    if (x_grid[i] <= x_grid[i - 1]) {
      throw std::invalid_argument("x_grid must be strictly ascending");
    }
  }
  std::vector<RegionPoint> points;
  points.reserve(x_grid.size());
  for (double x : x_grid) {
    ControlErrorProfile probe = base;
    set_sweep_param(probe, x_param, x);
    auto fn = [&](double y) {
      ControlErrorProfile p = probe;
      set_sweep_param(p, y_param, y);
      return direction_reliability(direction, p, d, verbatim_dl);
    };
    const BoundaryResult b = boundary_bisect(fn, target);
    points.push_back({x, b.feasible ? b.epsilon : 0.0, b.feasible});
  }
  return points;
}

}  // namespace urllc
