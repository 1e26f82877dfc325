#include "urllc/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace urllc {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': '" + value + "'");
  }
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': '" + value + "'");
  }
}

SymbolSpan parse_span(const std::string& value, const std::string& key) {
  const size_t dash = value.find('-');
  SymbolSpan s;
  if (dash == std::string::npos) {
    s.first = s.last = static_cast<int>(parse_int(value, key));
  } else {
    s.first = static_cast<int>(parse_int(trim(value.substr(0, dash)), key));
    s.last = static_cast<int>(parse_int(trim(value.substr(dash + 1)), key));
  }
  return s;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char ch : value) {
    if (ch == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  const std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  return items;
}

Direction parse_direction(const std::string& value, const std::string& key) {
  if (value == "uplink") return Direction::Uplink;
  if (value == "downlink") return Direction::Downlink;
  throw ConfigError("invalid value for key '" + key + "': expected uplink|downlink");
}

SlotMode parse_mode(const std::string& value, const std::string& key) {
  if (value == "conventional") return SlotMode::Conventional;
  if (value == "flexible") return SlotMode::Flexible;
  throw ConfigError("invalid value for key '" + key + "': expected conventional|flexible");
}

void apply_errors_key(ControlErrorProfile& c, const std::string& key, const std::string& value) {
  const double v = parse_double(value, key);
  if (key == "eps_sr") c.eps_sr = v;
  else if (key == "eps_rg") c.eps_rg = v;
  else if (key == "eps_na") c.eps_na = v;
  else if (key == "eps_nd") c.eps_nd = v;
  else if (key == "eps_da") c.eps_da = v;
  else if (key == "eps_dn") c.eps_dn = v;
  else if (key == "eps_an") c.eps_an = v;
  else throw ConfigError("unknown key '" + key + "' in [errors]");
}

void apply_blers_key(DataBlerProfile& d, const std::string& key, const std::string& value) {
  const double v = parse_double(value, key);
  if (key == "p1") d.p1 = v;
  else if (key == "p12") d.p12 = v;
  else if (key == "p2") d.p2 = v;
  else if (key == "p2d") d.p2d = v;
  else if (key == "p2n") d.p2n = v;
  else if (key == "p_bad") d.p_bad = v;
  else throw ConfigError("unknown key '" + key + "' in [blers]");
}

void apply_scenario_key(ScenarioDoc& doc, const std::string& key, const std::string& value) {
  ScenarioConfig& s = doc.scenario;
  if (key == "direction") s.direction = parse_direction(value, key);
  else if (key == "mode") s.mode = parse_mode(value, key);
  else if (key == "mu") s.numerology = numerology_from_mu(static_cast<int>(parse_int(value, key)));
  else if (key == "slot_format") {
    if (!slot_format_exists(value)) {
      throw ConfigError("unknown slot format '" + value + "' for key 'slot_format'");
    }
    s.slot_format = value;
  } else if (key == "deadline_slots") s.deadline_slots = static_cast<int>(parse_int(value, key));
  else if (key == "sr_period_slots") s.sr_period_slots = static_cast<int>(parse_int(value, key));
  else if (key == "p_mismatch") s.p_mismatch = parse_double(value, key);
  else if (key == "robustness_multiplier") s.robustness_multiplier = parse_double(value, key);
  else if (key == "freq_units") s.freq_units = static_cast<int>(parse_int(value, key));
  else if (key == "threads") s.threads = static_cast<int>(parse_int(value, key));
  else if (key == "early_nack_fallible") {
    if (value == "0" || value == "false") s.early_nack_fallible = false;
    else if (value == "1" || value == "true") s.early_nack_fallible = true;
    else throw ConfigError("invalid value for key 'early_nack_fallible': expected 0|1");
  }
  else if (key == "trials") doc.trials = static_cast<uint64_t>(parse_int(value, key));
  else if (key == "seed") doc.seed = static_cast<uint64_t>(parse_int(value, key));
  else if (key == "forced_events") {
    s.forced_events.clear();
    for (const auto& item : split_list(value)) {
      if (item == "miss_first_dci") s.forced_events.push_back(ForcedEvent::MissFirstDci);
      else if (item == "inappropriate_mcs") s.forced_events.push_back(ForcedEvent::InappropriateMcs);
      else throw ConfigError("unknown forced event '" + item + "' for key 'forced_events'");
    }
  } else {
    throw ConfigError("unknown key '" + key + "' in [scenario]");
  }
}

void apply_timing_key(TimingPlan& tp, const std::string& key, const std::string& value) {
  if (key == "sr_symbol") tp.sr_symbol = static_cast<int>(parse_int(value, key));
  else if (key == "dci_span") tp.dci_span = parse_span(value, key);
  else if (key == "ul_data_span") tp.ul_data_span = parse_span(value, key);
  else if (key == "dl_data_span") tp.dl_data_span = parse_span(value, key);
  else if (key == "feedback_span") tp.feedback_span = parse_span(value, key);
  else if (key == "processing_gap_symbols")
    tp.processing_gap_symbols = static_cast<int>(parse_int(value, key));
  else if (key == "dtx_check_symbol") tp.dtx_check_symbol = static_cast<int>(parse_int(value, key));
  else if (key == "dci_retx_span") tp.dci_retx_span = parse_span(value, key);
  else if (key == "ul_recovery_span") tp.ul_recovery_span = parse_span(value, key);
  else if (key == "early_nack_span") tp.early_nack_span = parse_span(value, key);
  else if (key == "abort_symbol") tp.abort_symbol = static_cast<int>(parse_int(value, key));
  else if (key == "dl_recovery_dci_span") tp.dl_recovery_dci_span = parse_span(value, key);
  else if (key == "dl_recovery_data_span") tp.dl_recovery_data_span = parse_span(value, key);
  else if (key == "ul_retx_span") tp.ul_retx_span = parse_span(value, key);
  else if (key == "dl_retx_span") tp.dl_retx_span = parse_span(value, key);
  else throw ConfigError("unknown key '" + key + "' in [timing]");
}

void apply_sweep_key(SweepSpec& sw, const std::string& key, const std::string& value,
                     double* x_log_min, double* x_log_max, long long* x_points) {
  if (key == "x_param") sw.x_param = sweep_param_from_string(value);
  else if (key == "y_param") sw.y_param = sweep_param_from_string(value);
  else if (key == "target") sw.target = parse_double(value, key);
  else if (key == "formula") {
    if (value == "coherent") sw.verbatim = false;
    else if (value == "verbatim") sw.verbatim = true;
    else throw ConfigError("invalid value for key 'formula': expected coherent|verbatim");
  } else if (key == "x_grid") {
    sw.x_grid.clear();
    for (const auto& item : split_list(value)) sw.x_grid.push_back(parse_double(item, key));
  } else if (key == "x_log_min") *x_log_min = parse_double(value, key);
  else if (key == "x_log_max") *x_log_max = parse_double(value, key);
  else if (key == "x_points") *x_points = parse_int(value, key);
  else throw ConfigError("unknown key '" + key + "' in [sweep]");
}

}  // namespace

SweepParam sweep_param_from_string(std::string_view s) {
  if (s == "eps_sr") return SweepParam::EpsSr;
  if (s == "eps_rg") return SweepParam::EpsRg;
  if (s == "eps_feedback") return SweepParam::EpsFeedback;
  throw ConfigError("unknown sweep parameter '" + std::string(s) +
                    "': expected eps_sr|eps_rg|eps_feedback");
}

ScenarioDoc parse_scenario_text(std::string_view text, std::string_view origin) {
  ScenarioDoc doc;
  doc.profiles.clear();
  ProfileRow current;
  bool errors_seen = false;
  bool blers_seen = false;

  std::string section;
  bool sweep_present = false;
  SweepSpec sweep;
  double x_log_min = 0.0;
  double x_log_max = 0.0;
  long long x_points = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section == "errors" || section == "blers") {
        bool& seen = section == "errors" ? errors_seen : blers_seen;
        if (seen) {
          // A repeated profile section starts a new row inheriting the
          // previous values.
          doc.profiles.push_back(current);
          errors_seen = blers_seen = false;
        }
        seen = true;
      } else if (section == "sweep") {
        sweep_present = true;
      } else if (section != "scenario" && section != "timing") {
        throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                          ": unknown section [" + section + "]");
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": key '" + key +
                        "' outside any section");
    }
    try {
      if (section == "errors") apply_errors_key(current.errors, key, value);
      else if (section == "blers") apply_blers_key(current.blers, key, value);
      else if (section == "scenario") apply_scenario_key(doc, key, value);
      else if (section == "timing") apply_timing_key(doc.scenario.timing, key, value);
      else apply_sweep_key(sweep, key, value, &x_log_min, &x_log_max, &x_points);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": key '" + key +
                        "': " + e.what());
    }
  }

  doc.profiles.push_back(current);
  if (sweep_present) {
    if (sweep.x_grid.empty()) {
      if (x_points < 2 || x_log_min >= x_log_max) {
        throw ConfigError(std::string(origin) +
                          ": [sweep] needs x_grid or x_log_min < x_log_max with x_points >= 2");
      }
      for (long long i = 0; i < x_points; ++i) {
        const double lg = x_log_min + (x_log_max - x_log_min) * static_cast<double>(i) /
                                          static_cast<double>(x_points - 1);
        sweep.x_grid.push_back(std::pow(10.0, lg));
      }
    }
    if (sweep.x_param == sweep.y_param) {
      throw ConfigError(std::string(origin) + ": [sweep] x_param equals y_param");
    }
    doc.sweep = sweep;
  }
  return doc;
}

ScenarioDoc parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string span(const SymbolSpan& s) {
  return std::to_string(s.first) + "-" + std::to_string(s.last);
}

}  // namespace

std::string serialize_scenario(const ScenarioDoc& doc) {
  std::string out;
  for (const auto& p : doc.profiles) {
    out += "[errors]\n";
    out += "eps_sr = " + num(p.errors.eps_sr) + "\n";
    out += "eps_rg = " + num(p.errors.eps_rg) + "\n";
    out += "eps_na = " + num(p.errors.eps_na) + "\n";
    out += "eps_nd = " + num(p.errors.eps_nd) + "\n";
    out += "eps_da = " + num(p.errors.eps_da) + "\n";
    out += "eps_dn = " + num(p.errors.eps_dn) + "\n";
    out += "eps_an = " + num(p.errors.eps_an) + "\n";
    out += "[blers]\n";
    out += "p1 = " + num(p.blers.p1) + "\n";
    out += "p12 = " + num(p.blers.p12) + "\n";
    out += "p2 = " + num(p.blers.p2) + "\n";
    out += "p2d = " + num(p.blers.p2d) + "\n";
    out += "p2n = " + num(p.blers.p2n) + "\n";
    out += "p_bad = " + num(p.blers.p_bad) + "\n";
  }
  const ScenarioConfig& s = doc.scenario;
  out += "[scenario]\n";
  out += std::string("direction = ") + to_string(s.direction) + "\n";
  out += std::string("mode = ") + to_string(s.mode) + "\n";
  out += "mu = " + std::to_string(s.numerology.mu) + "\n";
  out += "slot_format = " + s.slot_format + "\n";
  out += "deadline_slots = " + std::to_string(s.deadline_slots) + "\n";
  out += "sr_period_slots = " + std::to_string(s.sr_period_slots) + "\n";
  out += "p_mismatch = " + num(s.p_mismatch) + "\n";
  out += "robustness_multiplier = " + num(s.robustness_multiplier) + "\n";
  out += "freq_units = " + std::to_string(s.freq_units) + "\n";
  out += "threads = " + std::to_string(s.threads) + "\n";
  out += std::string("early_nack_fallible = ") + (s.early_nack_fallible ? "1" : "0") + "\n";
  if (!s.forced_events.empty()) {
    out += "forced_events = ";
    for (size_t i = 0; i < s.forced_events.size(); ++i) {
      if (i) out += ", ";
      out += to_string(s.forced_events[i]);
    }
    out += "\n";
  }
  if (doc.trials) out += "trials = " + std::to_string(*doc.trials) + "\n";
  if (doc.seed) out += "seed = " + std::to_string(*doc.seed) + "\n";
  const TimingPlan& tp = s.timing;
  out += "[timing]\n";
  out += "sr_symbol = " + std::to_string(tp.sr_symbol) + "\n";
  out += "dci_span = " + span(tp.dci_span) + "\n";
  out += "ul_data_span = " + span(tp.ul_data_span) + "\n";
  out += "dl_data_span = " + span(tp.dl_data_span) + "\n";
  out += "feedback_span = " + span(tp.feedback_span) + "\n";
  out += "processing_gap_symbols = " + std::to_string(tp.processing_gap_symbols) + "\n";
  out += "dtx_check_symbol = " + std::to_string(tp.dtx_check_symbol) + "\n";
  out += "dci_retx_span = " + span(tp.dci_retx_span) + "\n";
  out += "ul_recovery_span = " + span(tp.ul_recovery_span) + "\n";
  out += "early_nack_span = " + span(tp.early_nack_span) + "\n";
  out += "abort_symbol = " + std::to_string(tp.abort_symbol) + "\n";
  out += "dl_recovery_dci_span = " + span(tp.dl_recovery_dci_span) + "\n";
  out += "dl_recovery_data_span = " + span(tp.dl_recovery_data_span) + "\n";
  out += "ul_retx_span = " + span(tp.ul_retx_span) + "\n";
  out += "dl_retx_span = " + span(tp.dl_retx_span) + "\n";
  if (doc.sweep) {
    const SweepSpec& sw = *doc.sweep;
    out += "[sweep]\n";
    out += std::string("x_param = ") + to_string(sw.x_param) + "\n";
    out += std::string("y_param = ") + to_string(sw.y_param) + "\n";
    out += "target = " + num(sw.target) + "\n";
    out += std::string("formula = ") + (sw.verbatim ? "verbatim" : "coherent") + "\n";
    out += "x_grid = ";
    for (size_t i = 0; i < sw.x_grid.size(); ++i) {
      if (i) out += ", ";
      out += num(sw.x_grid[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace urllc
