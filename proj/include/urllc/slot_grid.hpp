#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace urllc {

constexpr int kSymbolsPerSlot = 14;

enum class SymbolType : uint8_t { Downlink, Uplink, Flexible };
enum class Direction : uint8_t { Downlink, Uplink };
enum class SlotMode : uint8_t { Conventional, Flexible };

const char* to_string(SymbolType t);
const char* to_string(Direction d);
const char* to_string(SlotMode m);

/// Subcarrier-spacing configuration mu in 0..4; scs = 15 * 2^mu kHz,
/// slot duration 1 / 2^mu ms, 14 symbols per slot.
struct Numerology {
  int mu = 0;
  int scs_khz = 15;
  double slot_duration_ms = 1.0;
  double symbol_duration_ms = 1.0 / kSymbolsPerSlot;
};

Numerology numerology_from_mu(int mu);

struct SlotFormat {
  std::string name;
  std::array<SymbolType, kSymbolsPerSlot> symbols{};
};

/// Built-in schematic formats "fig1a".."fig1h": all-downlink, all-uplink,
/// all-flexible, and mixed leading-DL / flexible-middle / trailing-UL layouts.
const std::vector<SlotFormat>& slot_format_catalog();
const SlotFormat& slot_format_by_name(std::string_view name);
bool slot_format_exists(std::string_view name);

/// Whether a transmission in `direction` may use the symbol at `symbol_index`.
/// Downlink/Uplink symbols serve only their own direction. A Flexible symbol
/// serves both directions in flexible mode; in conventional mode it serves
/// only the direction it was configured to (`flexible_configured_as`).
bool validate_usage(const SlotFormat& format, int symbol_index, Direction direction,
                    SlotMode mode, Direction flexible_configured_as);

/// Contiguous time-frequency grant: symbols [first_symbol, last_symbol] by
/// freq_units abstract frequency-domain units.
struct Allocation {
  int first_symbol = 0;
  int last_symbol = 0;
  int freq_units = 1;

  int span_length() const { return last_symbol - first_symbol + 1; }
  bool operator==(const Allocation&) const = default;
};

long resource_elements(const Allocation& a);

/// Re-places an allocation onto a span no longer than the original, widening
/// it in frequency (ceiling division) so the resource-element count never
/// drops below the original.
Allocation expand_frequency(const Allocation& original, int new_first, int new_last);

}  // namespace urllc
