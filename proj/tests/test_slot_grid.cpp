#include <doctest.h>

#include <stdexcept>

#include "urllc/error_model.hpp"
#include "urllc/slot_grid.hpp"

using namespace urllc;

TEST_CASE("numerology values are exact") {
  const double expected_slot[5] = {1.0, 0.5, 0.25, 0.125, 0.0625};
  const int expected_scs[5] = {15, 30, 60, 120, 240};
  for (int mu = 0; mu <= 4; ++mu) {
    const Numerology n = numerology_from_mu(mu);
    CHECK(n.scs_khz == expected_scs[mu]);
    CHECK(n.slot_duration_ms == expected_slot[mu]);
    CHECK(n.slot_duration_ms * (1 << mu) == 1.0);
    CHECK(n.symbol_duration_ms == n.slot_duration_ms / 14);
  }
}

TEST_CASE("numerology rejects out-of-range mu") {
  CHECK_THROWS_AS(numerology_from_mu(5), std::invalid_argument);
  CHECK_THROWS_AS(numerology_from_mu(-1), std::invalid_argument);
}

TEST_CASE("format catalog holds the eight schematic layouts") {
  CHECK(slot_format_catalog().size() == 8);
  const SlotFormat& h = slot_format_by_name("fig1h");
  CHECK(h.symbols[0] == SymbolType::Downlink);
  CHECK(h.symbols[1] == SymbolType::Downlink);
  CHECK(h.symbols[5] == SymbolType::Flexible);
  CHECK(h.symbols[12] == SymbolType::Flexible);
  CHECK(h.symbols[13] == SymbolType::Uplink);
  CHECK_THROWS_AS(slot_format_by_name("fig1z"), std::invalid_argument);
  CHECK(slot_format_exists("fig1a"));
  CHECK_FALSE(slot_format_exists("nope"));
}

TEST_CASE("usage rules per symbol type and mode") {
  const SlotFormat& h = slot_format_by_name("fig1h");
  // Hard downlink symbol never carries uplink.
  CHECK_FALSE(validate_usage(h, 0, Direction::Uplink, SlotMode::Conventional, Direction::Uplink));
  CHECK_FALSE(validate_usage(h, 0, Direction::Uplink, SlotMode::Flexible, Direction::Uplink));
  CHECK(validate_usage(h, 0, Direction::Downlink, SlotMode::Conventional, Direction::Uplink));
  // Flexible symbol carries both directions in flexible mode.
  CHECK(validate_usage(h, 5, Direction::Uplink, SlotMode::Flexible, Direction::Downlink));
  CHECK(validate_usage(h, 5, Direction::Downlink, SlotMode::Flexible, Direction::Uplink));
  // Conventional mode pins flexible symbols to the configured direction.
  CHECK(validate_usage(h, 5, Direction::Uplink, SlotMode::Conventional, Direction::Uplink));
  CHECK_FALSE(validate_usage(h, 5, Direction::Downlink, SlotMode::Conventional, Direction::Uplink));
  // Hard uplink symbol.
  CHECK(validate_usage(h, 13, Direction::Uplink, SlotMode::Conventional, Direction::Downlink));
  CHECK_FALSE(validate_usage(h, 13, Direction::Downlink, SlotMode::Flexible, Direction::Downlink));
}

TEST_CASE("flexible mode accepts a superset of conventional usage") {
  for (const auto& fmt : slot_format_catalog()) {
    for (int idx = 0; idx < kSymbolsPerSlot; ++idx) {
      for (Direction dir : {Direction::Downlink, Direction::Uplink}) {
        for (Direction conf : {Direction::Downlink, Direction::Uplink}) {
          if (validate_usage(fmt, idx, dir, SlotMode::Conventional, conf)) {
            CHECK(validate_usage(fmt, idx, dir, SlotMode::Flexible, conf));
          }
        }
      }
    }
  }
}

TEST_CASE("resource element arithmetic") {
  CHECK(resource_elements({2, 10, 4}) == 36);
  CHECK(resource_elements({5, 5, 1}) == 1);
  CHECK(resource_elements({0, 13, 10}) == 140);
}

TEST_CASE("frequency expansion conserves resource elements") {
  const Allocation a{2, 10, 4};  // 36 RE
  const Allocation b = expand_frequency(a, 9, 13);
  CHECK(b.freq_units == 8);
  CHECK(resource_elements(b) == 40);

  const Allocation same = expand_frequency(a, 4, 12);  // same span length
  CHECK(same.freq_units == 4);
  CHECK(resource_elements(same) == 36);

  const Allocation single{3, 3, 5};
  const Allocation still = expand_frequency(single, 9, 9);
  CHECK(still.freq_units == 5);

  CHECK_THROWS_AS(expand_frequency(single, 4, 6), std::invalid_argument);
  CHECK_THROWS_AS(expand_frequency(a, 12, 10), std::invalid_argument);
}

TEST_CASE("frequency expansion never loses resource elements") {
  TrialRng rng(31, 0);
  for (int i = 0; i < 2000; ++i) {
    const int first = static_cast<int>(rng.next_uniform() * 10);
    const int len = 1 + static_cast<int>(rng.next_uniform() * (14 - first - 1));
    const int freq = 1 + static_cast<int>(rng.next_uniform() * 20);
    const Allocation a{first, first + len - 1, freq};
    const int new_len = 1 + static_cast<int>(rng.next_uniform() * len);
    const int new_first = static_cast<int>(rng.next_uniform() * (14 - new_len));
    const Allocation b = expand_frequency(a, new_first, new_first + new_len - 1);
    CHECK(resource_elements(b) >= resource_elements(a));
    // Equality exactly when the new span divides the original RE count.
    if (resource_elements(a) % new_len == 0) {
      CHECK(resource_elements(b) == resource_elements(a));
    }
  }
}
