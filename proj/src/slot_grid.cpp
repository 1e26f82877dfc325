#include "urllc/slot_grid.hpp"

#include <stdexcept>

namespace urllc {

const char* to_string(SymbolType t) {
  switch (t) {
    case SymbolType::Downlink: return "D";
    case SymbolType::Uplink: return "U";
    case SymbolType::Flexible: return "F";
  }
  return "?";
}

const char* to_string(Direction d) {
  return d == Direction::Downlink ? "downlink" : "uplink";
}

const char* to_string(SlotMode m) {
  return m == SlotMode::Conventional ? "conventional" : "flexible";
}

Numerology numerology_from_mu(int mu) {
  if (mu < 0 || mu > 4) {
    throw std::invalid_argument("numerology mu must be in 0..4, got " + std::to_string(mu));
  }
  Numerology n;
  n.mu = mu;
  n.scs_khz = 15 << mu;
  n.slot_duration_ms = 1.0 / static_cast<double>(1 << mu);
  n.symbol_duration_ms = n.slot_duration_ms / kSymbolsPerSlot;
  return n;
}

namespace {

SlotFormat make_format(std::string name, std::string_view pattern) {
  SlotFormat f;
  f.name = std::move(name);
  for (int i = 0; i < kSymbolsPerSlot; ++i) {
    switch (pattern[static_cast<size_t>(i)]) {
      case 'D': f.symbols[static_cast<size_t>(i)] = SymbolType::Downlink; break;
      case 'U': f.symbols[static_cast<size_t>(i)] = SymbolType::Uplink; break;
      default: f.symbols[static_cast<size_t>(i)] = SymbolType::Flexible; break;
    }
  }
  return f;
}

}  // namespace

const std::vector<SlotFormat>& slot_format_catalog() {
  static const std::vector<SlotFormat> catalog = {
      make_format("fig1a", "DDDDDDDDDDDDDD"),
      make_format("fig1b", "UUUUUUUUUUUUUU"),
      make_format("fig1c", "FFFFFFFFFFFFFF"),
      make_format("fig1d", "DDDDDDDDDDDDFU"),
      make_format("fig1e", "DFUUUUUUUUUUUU"),
      make_format("fig1f", "DDDDDDFFUUUUUU"),
      make_format("fig1g", "DDDDFFFFFFUUUU"),
      make_format("fig1h", "DDFFFFFFFFFFFU"),
  };
  return catalog;
}

const SlotFormat& slot_format_by_name(std::string_view name) {
  for (const auto& f : slot_format_catalog()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown slot format '" + std::string(name) + "'");
}

bool slot_format_exists(std::string_view name) {
  for (const auto& f : slot_format_catalog()) {
    if (f.name == name) return true;
  }
  return false;
}

bool validate_usage(const SlotFormat& format, int symbol_index, Direction direction,
                    SlotMode mode, Direction flexible_configured_as) {
  if (symbol_index < 0 || symbol_index >= kSymbolsPerSlot) {
    throw std::invalid_argument("symbol index out of range: " + std::to_string(symbol_index));
  }
  switch (format.symbols[static_cast<size_t>(symbol_index)]) {
    case SymbolType::Downlink: return direction == Direction::Downlink;
    case SymbolType::Uplink: return direction == Direction::Uplink;
    case SymbolType::Flexible:
      return mode == SlotMode::Flexible || direction == flexible_configured_as;
  }
  return false;
}

long resource_elements(const Allocation& a) {
  return static_cast<long>(a.span_length()) * a.freq_units;
}

Allocation expand_frequency(const Allocation& original, int new_first, int new_last) {
  if (new_first < 0 || new_last >= kSymbolsPerSlot || new_first > new_last) {
    throw std::invalid_argument("expand_frequency: invalid target span");
  }
  const int new_len = new_last - new_first + 1;
  if (new_len > original.span_length()) {
    throw std::invalid_argument("expand_frequency: target span longer than original");
  }
  const long orig_re = resource_elements(original);
  Allocation out;
  out.first_symbol = new_first;
  out.last_symbol = new_last;
  out.freq_units = static_cast<int>((orig_re + new_len - 1) / new_len);
  return out;
}

}  // namespace urllc
