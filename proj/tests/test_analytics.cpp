#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_util.hpp"
#include "urllc/analytics.hpp"

using namespace urllc;

namespace {

ControlErrorProfile zero_control() { return {}; }

DataBlerProfile nominal_blers() {
  DataBlerProfile d;
  d.p1 = 0.1;
  d.p12 = 1e-5;
  return d;
}

}  // namespace

TEST_CASE("uplink success with perfect control collapses to 1 - p1*p12") {
  DataBlerProfile d = nominal_blers();
  CHECK(p_ul(zero_control(), d) == doctest::Approx(0.999999).epsilon(1e-12));
}

TEST_CASE("uplink success vanishes when every SR is lost") {
  ControlErrorProfile c;
  c.eps_sr = 1.0;
  CHECK(p_ul(c, nominal_blers()) == 0.0);
}

TEST_CASE("uplink success at the 1e-4 control point") {
  ControlErrorProfile c;
  c.eps_sr = 1e-4;
  c.eps_rg = 1e-4;
  DataBlerProfile d = nominal_blers();
  d.p2 = 0.1;
  const double p = p_ul(c, d);
  CHECK(p == doctest::Approx(0.9999690).epsilon(1e-5));
  CHECK(1.0 - p == doctest::Approx(3.10e-5).epsilon(2e-3));
  // The enumeration is the oracle for the closed form.
  CHECK(std::abs(p - enumerate_ul(c, d).success_probability) < 1e-12);
}

TEST_CASE("downlink success with perfect control collapses to 1 - p1*p12") {
  CHECK(p_dl_coherent(zero_control(), nominal_blers()) ==
        doctest::Approx(0.999999).epsilon(1e-12));
}

TEST_CASE("downlink success vanishes when every grant is lost") {
  ControlErrorProfile c;
  c.eps_rg = 1.0;
  CHECK(p_dl_coherent(c, nominal_blers()) == 0.0);
}

TEST_CASE("downlink success at the 1e-3 control point") {
  ControlErrorProfile c;
  c.eps_rg = 1e-3;
  c.eps_na = c.eps_nd = c.eps_da = c.eps_dn = 1e-3;
  DataBlerProfile d = nominal_blers();
  d.p2d = 1e-5;
  d.p2n = 0.1;
  const double p = p_dl_coherent(c, d);
  CHECK(p == doctest::Approx(0.9998969).epsilon(1e-5));
  CHECK(1.0 - p == doctest::Approx(1.031e-4).epsilon(2e-3));
  CHECK(std::abs(p - enumerate_dl(c, d).success_probability) < 1e-12);
}

TEST_CASE("verbatim equals coherent when eps_nd is zero") {
  ControlErrorProfile c;
  c.eps_rg = 0.01;
  c.eps_na = 0.02;
  c.eps_da = 0.005;
  c.eps_dn = 0.005;
  DataBlerProfile d = nominal_blers();
  d.p2d = 1e-4;
  d.p2n = 0.2;
  CHECK(p_dl_verbatim(c, d).value == doctest::Approx(p_dl_coherent(c, d)).epsilon(1e-15));
}

TEST_CASE("verbatim minus coherent follows the algebraic identity") {
  testutil::ProfileGen gen(101);
  for (int i = 0; i < 500; ++i) {
    const ControlErrorProfile c = gen.control();
    const DataBlerProfile d = gen.blers();
    const double delta = p_dl_verbatim(c, d).value - p_dl_coherent(c, d);
    const double expected =
        (1.0 - c.eps_rg) * (1.0 - c.eps_rg) * (1.0 - d.p1) * c.eps_nd * (1.0 - d.p2d);
    CHECK(std::abs(delta - expected) < 1e-12);
  }
}

TEST_CASE("verbatim can exceed one and flags it") {
  ControlErrorProfile c;
  c.eps_rg = 1e-3;
  c.eps_nd = 1e-3;
  c.eps_na = c.eps_da = c.eps_dn = 1e-3;
  DataBlerProfile d = nominal_blers();
  d.p2d = 1e-5;
  d.p2n = 0.1;
  const VerbatimResult r = p_dl_verbatim(c, d);
  const double delta = r.value - p_dl_coherent(c, d);
  CHECK(delta == doctest::Approx(8.98e-4).epsilon(1e-3));
  CHECK(r.value == doctest::Approx(1.00080).epsilon(1e-4));
  CHECK(r.exceeds_one);
}

TEST_CASE("uplink enumeration degenerate paths") {
  SUBCASE("error free, perfect data") {
    const EnumerationResult r = enumerate_ul(zero_control(), DataBlerProfile{});
    CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-15));
    double dominant = 0.0;
    std::string label;
    for (const auto& leaf : r.leaves) {
      if (leaf.probability > dominant) {
        dominant = leaf.probability;
        label = leaf.path_label;
      }
    }
    CHECK(dominant == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(label == "SR ok / RG ok / tx1 ok");
  }
  SUBCASE("half the SRs lost, perfect data") {
    ControlErrorProfile c;
    c.eps_sr = 0.5;
    const EnumerationResult r = enumerate_ul(c, DataBlerProfile{});
    CHECK(r.success_probability == doctest::Approx(0.75).epsilon(1e-15));
  }
}

TEST_CASE("downlink enumeration degenerate paths") {
  SUBCASE("initial always fails, retransmission always works") {
    DataBlerProfile d;
    d.p1 = 1.0;
    d.p12 = 0.0;
    const EnumerationResult r = enumerate_dl(zero_control(), d);
    CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-15));
    for (const auto& leaf : r.leaves) {
      if (leaf.success && leaf.probability > 0.5) {
        CHECK(leaf.path_label == "RG ok / tx1 fail / NACK ok / retx ok");
      }
    }
  }
  SUBCASE("grant always lost and DTX always read as ACK") {
    ControlErrorProfile c;
    c.eps_rg = 1.0;
    c.eps_da = 1.0;
    CHECK(enumerate_dl(c, nominal_blers()).success_probability == 0.0);
  }
}

TEST_CASE("enumerations partition the sample space and match the closed forms") {
  testutil::ProfileGen gen(77);
  for (int i = 0; i < 300; ++i) {
    const ControlErrorProfile c = gen.control();
    const DataBlerProfile d = gen.blers();
    const EnumerationResult ul = enumerate_ul(c, d);
    const EnumerationResult dl = enumerate_dl(c, d);
    CHECK(std::abs(ul.total_probability - 1.0) < 1e-12);
    CHECK(std::abs(dl.total_probability - 1.0) < 1e-12);
    CHECK(std::abs(ul.success_probability - p_ul(c, d)) < 1e-12);
    CHECK(std::abs(dl.success_probability - p_dl_coherent(c, d)) < 1e-12);
    for (const auto& leaf : ul.leaves) CHECK(leaf.probability >= 0.0);
    for (const auto& leaf : dl.leaves) CHECK(leaf.probability >= 0.0);
  }
}

TEST_CASE("success probabilities are monotone on ordered profiles") {
  testutil::ProfileGen gen(202);
  const double bump = 0.02;
  for (int i = 0; i < 200; ++i) {
    ControlErrorProfile c = gen.control();
    DataBlerProfile d = gen.ordered_blers();
    const double base_ul = p_ul(c, d);
    const double base_dl = p_dl_coherent(c, d);

    const auto check_control = [&](double ControlErrorProfile::*field) {
      ControlErrorProfile up = c;
      up.*field = std::min(1.0, up.*field + bump);
      if (up.eps_na + up.eps_nd > 1.0 || up.eps_da + up.eps_dn > 1.0) return;
      CHECK(p_ul(up, d) <= base_ul + 1e-12);
      CHECK(p_dl_coherent(up, d) <= base_dl + 1e-12);
    };
    check_control(&ControlErrorProfile::eps_sr);
    check_control(&ControlErrorProfile::eps_rg);
    check_control(&ControlErrorProfile::eps_na);
    check_control(&ControlErrorProfile::eps_nd);
    check_control(&ControlErrorProfile::eps_da);
    check_control(&ControlErrorProfile::eps_dn);

    const auto check_bler = [&](double DataBlerProfile::*field) {
      DataBlerProfile up = d;
      up.*field = std::min(1.0, up.*field + bump);
      if (up.p12 > up.p1) return;
      CHECK(p_ul(c, up) <= base_ul + 1e-12);
      CHECK(p_dl_coherent(c, up) <= base_dl + 1e-12);
    };
    check_bler(&DataBlerProfile::p1);
    check_bler(&DataBlerProfile::p2);
    check_bler(&DataBlerProfile::p2d);
    check_bler(&DataBlerProfile::p2n);
  }
}

TEST_CASE("uplink symmetric boundary at p1 = 0.1") {
  DataBlerProfile d = nominal_blers();
  d.p2 = 0.1;
  const auto fn = [&](double eps) {
    ControlErrorProfile c;
    c.eps_sr = eps;
    c.eps_rg = eps;
    return p_ul(c, d);
  };
  const BoundaryResult b = boundary_bisect(fn, 1.0 - 1e-5);
  CHECK(b.feasible);
  CHECK(b.epsilon == doctest::Approx(3.0e-5).epsilon(0.10));
  CHECK(b.epsilon < 1e-4);
}

TEST_CASE("uplink symmetric boundary at p1 = 0.01") {
  DataBlerProfile d;
  d.p1 = 0.01;
  d.p12 = 1e-5;
  d.p2 = 0.01;
  const auto fn = [&](double eps) {
    ControlErrorProfile c;
    c.eps_sr = eps;
    c.eps_rg = eps;
    return p_ul(c, d);
  };
  const BoundaryResult b = boundary_bisect(fn, 1.0 - 1e-5);
  CHECK(b.feasible);
  CHECK(b.epsilon == doctest::Approx(3.3e-4).epsilon(0.10));
  CHECK(b.epsilon < 1e-3);
}

TEST_CASE("downlink grant boundary with perfect feedback") {
  DataBlerProfile d = nominal_blers();
  d.p2d = 1e-5;
  d.p2n = 0.1;
  const auto fn = [&](double eps) {
    ControlErrorProfile c;
    c.eps_rg = eps;
    return p_dl_coherent(c, d);
  };
  const BoundaryResult b = boundary_bisect(fn, 1.0 - 1e-5);
  CHECK(b.feasible);
  CHECK(b.epsilon == doctest::Approx(3.0e-3).epsilon(0.10));
}

TEST_CASE("boundary bisection reports infeasibility at the floor") {
  DataBlerProfile d;
  d.p1 = 0.5;
  d.p12 = 0.1;  // residual failure 5e-2 regardless of control quality
  const auto fn = [&](double eps) {
    ControlErrorProfile c;
    c.eps_rg = eps;
    return p_ul(c, d);
  };
  const BoundaryResult b = boundary_bisect(fn, 1.0 - 1e-5);
  CHECK_FALSE(b.feasible);
  CHECK(b.epsilon == 0.0);
}

TEST_CASE("boundary bisection saturates when even eps = 1 meets the target") {
  const auto fn = [](double) { return 1.0; };
  const BoundaryResult b = boundary_bisect(fn, 0.5);
  CHECK(b.feasible);
  CHECK(b.epsilon == 1.0);
}

TEST_CASE("uplink region curve stays under 1e-4 at p1 = 0.1") {
  DataBlerProfile d = nominal_blers();
  d.p2 = 0.1;
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(std::pow(10.0, -6.0 + 0.15 * i));
  const auto points = region_curve(Direction::Uplink, ControlErrorProfile{}, d, SweepParam::EpsSr,
                                   SweepParam::EpsRg, grid, 1.0 - 1e-5);
  REQUIRE(points.size() == grid.size());
  double prev = 1.0;
  for (const auto& p : points) {
    CHECK(p.feasible);
    CHECK(p.y_boundary < 1e-4);
    CHECK(p.y_boundary <= prev * (1.0 + 2e-3));  // non-increasing up to bisection tolerance
    prev = p.y_boundary;
  }
}

TEST_CASE("uplink region curve flags infeasible grid points") {
  DataBlerProfile d = nominal_blers();
  d.p2 = 0.1;
  const std::vector<double> grid = {1e-6, 1e-3};  // 1e-3 >> symmetric boundary
  const auto points = region_curve(Direction::Uplink, ControlErrorProfile{}, d, SweepParam::EpsSr,
                                   SweepParam::EpsRg, grid, 1.0 - 1e-5);
  CHECK(points[0].feasible);
  CHECK_FALSE(points[1].feasible);
  CHECK(points[1].y_boundary == 0.0);
}

TEST_CASE("downlink feedback boundary differs from the grant boundary") {
  DataBlerProfile d = nominal_blers();
  d.p2d = 1e-5;
  d.p2n = 0.1;
  const auto fn = [&](double eps) {
    ControlErrorProfile c;
    set_sweep_param(c, SweepParam::EpsFeedback, eps);
    return p_dl_coherent(c, d);
  };
  const BoundaryResult feedback = boundary_bisect(fn, 1.0 - 1e-5);
  CHECK(feedback.feasible);
  CHECK(feedback.epsilon == doctest::Approx(9.0e-5).epsilon(0.10));
}

TEST_CASE("region curve rejects unsorted grids") {
  const std::vector<double> grid = {1e-3, 1e-4};
  CHECK_THROWS_AS(region_curve(Direction::Uplink, ControlErrorProfile{}, nominal_blers(),
                               SweepParam::EpsSr, SweepParam::EpsRg, grid, 0.5),
                  std::invalid_argument);
}
