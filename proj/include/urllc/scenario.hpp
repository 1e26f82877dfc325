#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "urllc/analytics.hpp"
#include "urllc/protocol_sim.hpp"

namespace urllc {

/// Raised for malformed or invalid scenario files; the message names the
/// offending key or section.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileRow {
  ControlErrorProfile errors;
  DataBlerProfile blers;

  bool operator==(const ProfileRow&) const = default;
};

struct SweepSpec {
  SweepParam x_param = SweepParam::EpsSr;
  SweepParam y_param = SweepParam::EpsRg;
  std::vector<double> x_grid;
  double target = 0.99999;
  bool verbatim = false;  // downlink only: evaluate the unscaled expression

  bool operator==(const SweepSpec&) const = default;
};

/// Parsed scenario file: sectioned key=value text with [errors], [blers],
/// [scenario], [timing] and [sweep] sections. Repeating [errors] or [blers]
/// starts a new profile row that inherits the previous values.
struct ScenarioDoc {
  std::vector<ProfileRow> profiles{ProfileRow{}};
  ScenarioConfig scenario;
  std::optional<SweepSpec> sweep;
  std::optional<uint64_t> trials;
  std::optional<uint64_t> seed;
};

ScenarioDoc parse_scenario_text(std::string_view text, std::string_view origin = "<text>");
ScenarioDoc parse_scenario_file(const std::string& path);

/// Canonical text form; parse(serialize(doc)) reproduces the document.
std::string serialize_scenario(const ScenarioDoc& doc);

SweepParam sweep_param_from_string(std::string_view s);

}  // namespace urllc
