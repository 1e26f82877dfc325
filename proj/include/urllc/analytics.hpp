#pragma once

#include <functional>
#include <string>
#include <vector>

#include "urllc/error_model.hpp"
#include "urllc/slot_grid.hpp"

namespace urllc {

/// One terminal branch of a delivery event tree.
struct OutcomeLeaf {
  std::string path_label;
  double probability = 0.0;
  bool success = false;
};

struct EnumerationResult {
  std::vector<OutcomeLeaf> leaves;
  double success_probability = 0.0;
  double total_probability = 0.0;  // 1 for a complete partition
};

/// Uplink delivery success probability (scheduling request, grant, up to one
/// retransmission):
///   (1-eSR)(1-eRG){(1-P1) + P1(1-eRG)(1-P12)}
///   + eSR(1-eSR)(1-eRG)(1-P1) + (1-eSR)eRG(1-eRG)(1-P2)
double p_ul(const ControlErrorProfile& c, const DataBlerProfile& d);

/// Downlink delivery success probability, coherent form: the DTX-misread
/// recovery branch is scaled by P1 so the event tree is a probability
/// partition:
///   (1-eRG){(1-P1) + P1(1-eNA-eND)(1-P12) + P1*eND(1-eRG)(1-P2D)}
///   + eRG(1-eRG){eDN(1-P2N) + (1-eDN-eDA)(1-P2D)}
double p_dl_coherent(const ControlErrorProfile& c, const DataBlerProfile& d);

struct VerbatimResult {
  double value = 0.0;
  bool exceeds_one = false;
};

/// Downlink expression with the eND recovery term left unscaled by P1.
/// Can exceed 1 for large eND; the flag reports that, the value is not
/// clamped. Identity: verbatim - coherent = (1-eRG)^2 (1-P1) eND (1-P2D).
VerbatimResult p_dl_verbatim(const ControlErrorProfile& c, const DataBlerProfile& d);

/// Complete branch enumerations behind the closed forms. Leaf probabilities
/// sum to 1; the success totals equal p_ul / p_dl_coherent to within 1e-12.
EnumerationResult enumerate_ul(const ControlErrorProfile& c, const DataBlerProfile& d);
EnumerationResult enumerate_dl(const ControlErrorProfile& c, const DataBlerProfile& d);

inline constexpr double kBoundaryFloor = 1e-9;

struct BoundaryResult {
  double epsilon = 0.0;
  bool feasible = false;
};

/// Largest error rate meeting `target`, found by bisection on log10(eps) over
/// [kBoundaryFloor, 1] to relative tolerance `rel_tol`. `reliability_fn` must
/// be non-increasing in its argument. feasible=false when even the floor
/// misses the target (epsilon then 0).
BoundaryResult boundary_bisect(const std::function<double(double)>& reliability_fn,
                               double target, double rel_tol = 1e-3);

struct RegionPoint {
  double x = 0.0;
  double y_boundary = 0.0;
  bool feasible = false;
};

/// Which control-error rate a region sweep varies. EpsFeedback ties all four
/// feedback confusion rates (eps_na = eps_nd = eps_da = eps_dn).
enum class SweepParam { EpsSr, EpsRg, EpsFeedback };

const char* to_string(SweepParam p);

void set_sweep_param(ControlErrorProfile& c, SweepParam p, double value);

/// Reliability of `direction` delivery as a function of the swept profile.
double direction_reliability(Direction direction, const ControlErrorProfile& c,
                             const DataBlerProfile& d, bool verbatim_dl = false);

/// For each x in x_grid (set on x_param), the largest companion rate y_param
/// still meeting the target. Infeasible points carry y_boundary = 0 and
/// feasible = false.
std::vector<RegionPoint> region_curve(Direction direction, const ControlErrorProfile& base,
                                      const DataBlerProfile& d, SweepParam x_param,
                                      SweepParam y_param, const std::vector<double>& x_grid,
                                      double target, bool verbatim_dl = false);

}  // namespace urllc
