#pragma once

#include <random>

#include "owcpon/scenario_io.hpp"
#include "support/oracles.hpp"

namespace oracle {

// Random scenario touching every section; all values are representable in
// the text form.
inline owcpon::Scenario random_scenario(std::mt19937_64& rng) {
  using namespace owcpon;
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  auto list = [&](std::uint32_t max_len) {
    std::vector<std::uint32_t> v(pick(0, max_len));
    for (auto& x : v) x = pick(0, 64);
    return v;
  };
  Scenario s;
  switch (pick(0, 2)) {
    case 0: s.profile = std::string(kProfileReproduction); break;
    case 1: s.profile = std::string(kProfileAsWritten); break;
    default: break;
  }
  s.select = static_cast<ArchitectureSelect>(pick(0, 2));
  s.format = static_cast<OutputFormat>(pick(0, 2));
  s.traditional = random_traditional(rng);
  s.traditional.capacities.owc = Rational(pick(1, 99), pick(1, 9));
  s.owc_pon = random_owc_pon(rng);
  for (auto* cat : {&s.catalogs.traditional, &s.catalogs.owc_pon}) {
    for (auto& [kind, mw] : cat->entries) {
      if (pick(0, 1)) mw = std::uniform_int_distribution<Milliwatts>(0, 2000000)(rng);
    }
    if (pick(0, 3) == 0) cat->set(DeviceKind::ExternalGateway, pick(0, 999999));
  }
  s.options = {pick(0, 1) == 1, pick(0, 1) == 1,
               pick(0, 1) ? NicCountMode::PerAp : NicCountMode::PerServer};
  s.routing = {pick(0, 1) == 1, pick(0, 1) == 1};
  s.sweep.racks = list(4);
  s.sweep.groups = list(3);
  s.sweep.servers_per_rack = list(3);
  if (pick(0, 1)) s.sweep.num_spine = pick(0, 32);
  if (pick(0, 1)) {
    TrafficSection t;
    t.top_n = pick(0, 50);
    switch (pick(0, 3)) {
      case 0: t.pattern = TrafficPattern::uniform(Rational(pick(0, 100), pick(1, 8))); break;
      case 1: t.pattern = TrafficPattern::hotspot(pick(0, 9), Rational(pick(0, 100), pick(1, 8))); break;
      case 2: {
        const auto den = pick(1, 8);
        t.pattern = TrafficPattern::intra_rack_heavy(Rational(pick(0, den), den),
                                                     Rational(pick(0, 100)));
        break;
      }
      default: break;
    }
    for (auto n = pick(0, 4); n > 0; --n) {
      t.flows.push_back({"rack" + std::to_string(pick(0, 7)) + "/server" + std::to_string(pick(0, 7)),
                         "rack" + std::to_string(pick(0, 7)) + "/server0",
                         Rational(pick(0, 1000), pick(1, 100))});
    }
    s.traffic = t;
  }
  return s;
}

}  // namespace oracle
