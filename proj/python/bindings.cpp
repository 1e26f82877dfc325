#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "urllc/analytics.hpp"
#include "urllc/error_model.hpp"
#include "urllc/experiments.hpp"
#include "urllc/protocol_sim.hpp"
#include "urllc/scenario.hpp"
#include "urllc/slot_grid.hpp"

namespace py = pybind11;
using namespace urllc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Control-channel reliability analysis and slot-level HARQ simulation";

  py::enum_<Direction>(m, "Direction")
      .value("Downlink", Direction::Downlink)
      .value("Uplink", Direction::Uplink);
  py::enum_<SlotMode>(m, "SlotMode")
      .value("Conventional", SlotMode::Conventional)
      .value("Flexible", SlotMode::Flexible);
  py::enum_<SymbolType>(m, "SymbolType")
      .value("Downlink", SymbolType::Downlink)
      .value("Uplink", SymbolType::Uplink)
      .value("Flexible", SymbolType::Flexible);
  py::enum_<FeedbackSignal>(m, "FeedbackSignal")
      .value("Ack", FeedbackSignal::Ack)
      .value("Nack", FeedbackSignal::Nack)
      .value("Dtx", FeedbackSignal::Dtx);
  py::enum_<ForcedEvent>(m, "ForcedEvent")
      .value("MissFirstDci", ForcedEvent::MissFirstDci)
      .value("InappropriateMcs", ForcedEvent::InappropriateMcs);

  py::class_<ControlErrorProfile>(m, "ControlErrorProfile")
      .def(py::init([](double eps_sr, double eps_rg, double eps_na, double eps_nd,
                       double eps_da, double eps_dn, double eps_an) {
             ControlErrorProfile c{eps_sr, eps_rg, eps_na, eps_nd, eps_da, eps_dn, eps_an};
             return c;
           }),
           py::arg("eps_sr") = 0.0, py::arg("eps_rg") = 0.0, py::arg("eps_na") = 0.0,
           py::arg("eps_nd") = 0.0, py::arg("eps_da") = 0.0, py::arg("eps_dn") = 0.0,
           py::arg("eps_an") = 0.0)
      .def_readwrite("eps_sr", &ControlErrorProfile::eps_sr)
      .def_readwrite("eps_rg", &ControlErrorProfile::eps_rg)
      .def_readwrite("eps_na", &ControlErrorProfile::eps_na)
      .def_readwrite("eps_nd", &ControlErrorProfile::eps_nd)
      .def_readwrite("eps_da", &ControlErrorProfile::eps_da)
      .def_readwrite("eps_dn", &ControlErrorProfile::eps_dn)
      .def_readwrite("eps_an", &ControlErrorProfile::eps_an);

  py::class_<DataBlerProfile>(m, "DataBlerProfile")
      .def(py::init([](double p1, double p12, double p2, double p2d, double p2n, double p_bad) {
             DataBlerProfile d{p1, p12, p2, p2d, p2n, p_bad};
             return d;
           }),
           py::arg("p1") = 0.0, py::arg("p12") = 0.0, py::arg("p2") = 0.0,
           py::arg("p2d") = 0.0, py::arg("p2n") = 0.0, py::arg("p_bad") = 0.9)
      .def_readwrite("p1", &DataBlerProfile::p1)
      .def_readwrite("p12", &DataBlerProfile::p12)
      .def_readwrite("p2", &DataBlerProfile::p2)
      .def_readwrite("p2d", &DataBlerProfile::p2d)
      .def_readwrite("p2n", &DataBlerProfile::p2n)
      .def_readwrite("p_bad", &DataBlerProfile::p_bad);

  m.def("validate_profiles", &validate_profiles, py::arg("errors"), py::arg("blers"));

  py::class_<TrialRng>(m, "TrialRng")
      .def(py::init<uint64_t, uint64_t>(), py::arg("master_seed"), py::arg("trial_index"))
      .def("next_uniform", &TrialRng::next_uniform)
      .def("uniform_at", &TrialRng::uniform_at, py::arg("role"));

  m.def("sample_event", &sample_event, py::arg("p"), py::arg("rng"));
  m.def("detect_feedback", &detect_feedback, py::arg("sent"), py::arg("errors"), py::arg("rng"));

  // analytics
  py::class_<OutcomeLeaf>(m, "OutcomeLeaf")
      .def_readonly("path_label", &OutcomeLeaf::path_label)
      .def_readonly("probability", &OutcomeLeaf::probability)
      .def_readonly("success", &OutcomeLeaf::success);
  py::class_<EnumerationResult>(m, "EnumerationResult")
      .def_readonly("leaves", &EnumerationResult::leaves)
      .def_readonly("success_probability", &EnumerationResult::success_probability)
      .def_readonly("total_probability", &EnumerationResult::total_probability);
  py::class_<VerbatimResult>(m, "VerbatimResult")
      .def_readonly("value", &VerbatimResult::value)
      .def_readonly("exceeds_one", &VerbatimResult::exceeds_one);
  py::class_<BoundaryResult>(m, "BoundaryResult")
      .def_readonly("epsilon", &BoundaryResult::epsilon)
      .def_readonly("feasible", &BoundaryResult::feasible);
  py::class_<RegionPoint>(m, "RegionPoint")
      .def_readonly("x", &RegionPoint::x)
      .def_readonly("y_boundary", &RegionPoint::y_boundary)
      .def_readonly("feasible", &RegionPoint::feasible);
  py::enum_<SweepParam>(m, "SweepParam")
      .value("EpsSr", SweepParam::EpsSr)
      .value("EpsRg", SweepParam::EpsRg)
      .value("EpsFeedback", SweepParam::EpsFeedback);

  m.def("p_ul", &p_ul, py::arg("errors"), py::arg("blers"));
  m.def("p_dl_coherent", &p_dl_coherent, py::arg("errors"), py::arg("blers"));
  m.def("p_dl_verbatim", &p_dl_verbatim, py::arg("errors"), py::arg("blers"));
  m.def("enumerate_ul", &enumerate_ul, py::arg("errors"), py::arg("blers"));
  m.def("enumerate_dl", &enumerate_dl, py::arg("errors"), py::arg("blers"));
  m.def("boundary_bisect", &boundary_bisect, py::arg("reliability_fn"), py::arg("target"),
        py::arg("rel_tol") = 1e-3);
  m.def("region_curve", &region_curve, py::arg("direction"), py::arg("errors"), py::arg("blers"),
        py::arg("x_param"), py::arg("y_param"), py::arg("x_grid"), py::arg("target"),
        py::arg("verbatim_dl") = false);

  // slot grid
  py::class_<Numerology>(m, "Numerology")
      .def_readonly("mu", &Numerology::mu)
      .def_readonly("scs_khz", &Numerology::scs_khz)
      .def_readonly("slot_duration_ms", &Numerology::slot_duration_ms)
      .def_readonly("symbol_duration_ms", &Numerology::symbol_duration_ms);
  m.def("numerology_from_mu", &numerology_from_mu, py::arg("mu"));

  py::class_<SlotFormat>(m, "SlotFormat")
      .def_readonly("name", &SlotFormat::name)
      .def_property_readonly("symbols", [](const SlotFormat& f) {
        return std::vector<SymbolType>(f.symbols.begin(), f.symbols.end());
      });
  m.def("slot_format_catalog", &slot_format_catalog);
  m.def("slot_format_by_name", &slot_format_by_name, py::arg("name"),
        py::return_value_policy::reference);
  m.def("validate_usage", &validate_usage, py::arg("format"), py::arg("symbol_index"),
        py::arg("direction"), py::arg("mode"), py::arg("flexible_configured_as"));

  py::class_<Allocation>(m, "Allocation")
      .def(py::init([](int first, int last, int freq) {
             return Allocation{first, last, freq};
           }),
           py::arg("first_symbol"), py::arg("last_symbol"), py::arg("freq_units") = 1)
      .def_readwrite("first_symbol", &Allocation::first_symbol)
      .def_readwrite("last_symbol", &Allocation::last_symbol)
      .def_readwrite("freq_units", &Allocation::freq_units);
  m.def("resource_elements", &resource_elements, py::arg("allocation"));
  m.def("expand_frequency", &expand_frequency, py::arg("original"), py::arg("new_first"),
        py::arg("new_last"));

  // protocol simulation
  py::class_<SymbolSpan>(m, "SymbolSpan")
      .def(py::init([](int first, int last) { return SymbolSpan{first, last}; }),
           py::arg("first"), py::arg("last"))
      .def_readwrite("first", &SymbolSpan::first)
      .def_readwrite("last", &SymbolSpan::last);

  py::class_<TimingPlan>(m, "TimingPlan")
      .def(py::init<>())
      .def_readwrite("sr_symbol", &TimingPlan::sr_symbol)
      .def_readwrite("dci_span", &TimingPlan::dci_span)
      .def_readwrite("ul_data_span", &TimingPlan::ul_data_span)
      .def_readwrite("dl_data_span", &TimingPlan::dl_data_span)
      .def_readwrite("feedback_span", &TimingPlan::feedback_span)
      .def_readwrite("processing_gap_symbols", &TimingPlan::processing_gap_symbols)
      .def_readwrite("dtx_check_symbol", &TimingPlan::dtx_check_symbol)
      .def_readwrite("dci_retx_span", &TimingPlan::dci_retx_span)
      .def_readwrite("ul_recovery_span", &TimingPlan::ul_recovery_span)
      .def_readwrite("early_nack_span", &TimingPlan::early_nack_span)
      .def_readwrite("abort_symbol", &TimingPlan::abort_symbol)
      .def_readwrite("dl_recovery_dci_span", &TimingPlan::dl_recovery_dci_span)
      .def_readwrite("dl_recovery_data_span", &TimingPlan::dl_recovery_data_span)
      .def_readwrite("ul_retx_span", &TimingPlan::ul_retx_span)
      .def_readwrite("dl_retx_span", &TimingPlan::dl_retx_span);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("direction", &ScenarioConfig::direction)
      .def_readwrite("mode", &ScenarioConfig::mode)
      .def_readwrite("numerology", &ScenarioConfig::numerology)
      .def_readwrite("slot_format", &ScenarioConfig::slot_format)
      .def_readwrite("deadline_slots", &ScenarioConfig::deadline_slots)
      .def_readwrite("sr_period_slots", &ScenarioConfig::sr_period_slots)
      .def_readwrite("timing", &ScenarioConfig::timing)
      .def_readwrite("p_mismatch", &ScenarioConfig::p_mismatch)
      .def_readwrite("robustness_multiplier", &ScenarioConfig::robustness_multiplier)
      .def_readwrite("freq_units", &ScenarioConfig::freq_units)
      .def_readwrite("forced_events", &ScenarioConfig::forced_events)
      .def_readwrite("threads", &ScenarioConfig::threads)
      .def_readwrite("early_nack_fallible", &ScenarioConfig::early_nack_fallible);
  m.def("validate_scenario", &validate_scenario, py::arg("config"));

  py::class_<ChannelState>(m, "ChannelState")
      .def_readonly("supportable_mcs", &ChannelState::supportable_mcs)
      .def_readonly("granted_mcs", &ChannelState::granted_mcs)
      .def("mismatched", &ChannelState::mismatched);

  py::class_<TransactionOutcome>(m, "TransactionOutcome")
      .def_readonly("success", &TransactionOutcome::success)
      .def_readonly("latency_symbols", &TransactionOutcome::latency_symbols)
      .def_readonly("latency_ms", &TransactionOutcome::latency_ms)
      .def_readonly("re_used", &TransactionOutcome::re_used)
      .def_readonly("re_wasted", &TransactionOutcome::re_wasted)
      .def_readonly("attempts_data", &TransactionOutcome::attempts_data)
      .def_readonly("mismatch", &TransactionOutcome::mismatch)
      .def_readonly("channel", &TransactionOutcome::channel);

  m.def(
      "run_trial",
      [](const ScenarioConfig& cfg, const ControlErrorProfile& c, const DataBlerProfile& d,
         uint64_t master_seed, uint64_t trial_index) {
        validate_profiles(c, d);
        validate_scenario(cfg);
        TrialRng rng(master_seed, trial_index);
        return run_trial(cfg, c, d, rng, true);
      },
      py::arg("config"), py::arg("errors"), py::arg("blers"), py::arg("master_seed"),
      py::arg("trial_index") = 0);
  m.def(
      "trial_trace",
      [](const ScenarioConfig& cfg, const ControlErrorProfile& c, const DataBlerProfile& d,
         uint64_t master_seed, uint64_t trial_index) {
        validate_profiles(c, d);
        validate_scenario(cfg);
        TrialRng rng(master_seed, trial_index);
        const TransactionOutcome o = run_trial(cfg, c, d, rng, true);
        return format_trace(o, cfg);
      },
      py::arg("config"), py::arg("errors"), py::arg("blers"), py::arg("master_seed"),
      py::arg("trial_index") = 0);

  py::class_<McStats>(m, "McStats")
      .def_readonly("trials", &McStats::trials)
      .def_readonly("successes", &McStats::successes)
      .def_readonly("reliability_hat", &McStats::reliability_hat)
      .def_readonly("wilson_lo", &McStats::wilson_lo)
      .def_readonly("wilson_hi", &McStats::wilson_hi)
      .def_readonly("latency_p50_ms", &McStats::latency_p50_ms)
      .def_readonly("latency_p95_ms", &McStats::latency_p95_ms)
      .def_readonly("latency_p99_ms", &McStats::latency_p99_ms)
      .def_readonly("latency_max_ms", &McStats::latency_max_ms)
      .def_readonly("mean_re_used", &McStats::mean_re_used)
      .def_readonly("mean_re_wasted", &McStats::mean_re_wasted)
      .def_readonly("attempt_hist", &McStats::attempt_hist);
  m.def("run_monte_carlo", &run_monte_carlo, py::arg("config"), py::arg("errors"),
        py::arg("blers"), py::arg("n_trials"), py::arg("master_seed"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ModeComparison>(m, "ModeComparison")
      .def_readonly("conventional", &ModeComparison::conventional)
      .def_readonly("flexible", &ModeComparison::flexible)
      .def_readonly("reliability_delta", &ModeComparison::reliability_delta)
      .def_readonly("latency_p50_delta_ms", &ModeComparison::latency_p50_delta_ms)
      .def_readonly("latency_p95_delta_ms", &ModeComparison::latency_p95_delta_ms)
      .def_readonly("latency_p99_delta_ms", &ModeComparison::latency_p99_delta_ms)
      .def_readonly("mean_re_used_delta", &ModeComparison::mean_re_used_delta)
      .def_readonly("mean_re_wasted_delta", &ModeComparison::mean_re_wasted_delta)
      .def_readonly("mismatch_trials", &ModeComparison::mismatch_trials)
      .def_readonly("conv_latency_affected_ms", &ModeComparison::conv_latency_affected_ms)
      .def_readonly("flex_latency_affected_ms", &ModeComparison::flex_latency_affected_ms)
      .def_readonly("dominance_violations", &ModeComparison::dominance_violations)
      .def_readonly("attempt_regressions", &ModeComparison::attempt_regressions);
  m.def("compare_modes", &compare_modes, py::arg("config"), py::arg("errors"), py::arg("blers"),
        py::arg("n_trials"), py::arg("master_seed"),
        py::call_guard<py::gil_scoped_release>());

  // scenario files and reports
  py::class_<ProfileRow>(m, "ProfileRow")
      .def_readwrite("errors", &ProfileRow::errors)
      .def_readwrite("blers", &ProfileRow::blers);
  py::class_<SweepSpec>(m, "SweepSpec")
      .def_readwrite("x_param", &SweepSpec::x_param)
      .def_readwrite("y_param", &SweepSpec::y_param)
      .def_readwrite("x_grid", &SweepSpec::x_grid)
      .def_readwrite("target", &SweepSpec::target)
      .def_readwrite("verbatim", &SweepSpec::verbatim);
  py::class_<ScenarioDoc>(m, "ScenarioDoc")
      .def_readwrite("profiles", &ScenarioDoc::profiles)
      .def_readwrite("scenario", &ScenarioDoc::scenario)
      .def_readwrite("sweep", &ScenarioDoc::sweep)
      .def_readwrite("trials", &ScenarioDoc::trials)
      .def_readwrite("seed", &ScenarioDoc::seed);
  m.def("parse_scenario_file", &parse_scenario_file, py::arg("path"));
  m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"),
        py::arg("origin") = "<text>");
  m.def("serialize_scenario", &serialize_scenario, py::arg("doc"));
  m.def("analytic_report_csv", &analytic_report_csv, py::arg("doc"));
  m.def("region_report_csv", &region_report_csv, py::arg("doc"));
  m.def(
      "simulate_report_csv",
      [](const ScenarioDoc& doc, uint64_t trials, uint64_t seed) {
        return simulate_report(doc, trials, seed, 0).csv;
      },
      py::arg("doc"), py::arg("trials"), py::arg("seed"));
}
