#pragma once

#include "goalrec/model/bundle.h"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::bench {

// A recognition bundle produced by one of the built-in generators. The text
// carries the hidden goal in real_hyp and no observations.
struct GeneratedBundle {
    std::string family;
    std::string name;
    model::BundleText text;
};

// Every generated bundle offers at least this many actions outside the
// optimal hidden plan for noise injection.
inline constexpr std::size_t kMinSpuriousActions = 4;

// "blocks", "grid", "logistics", "chain" and "corridor".
const std::vector<std::string> &generator_families();

// Deterministic in (family, seed). Every generated hidden goal is reachable
// and not satisfied initially. Throws std::invalid_argument for an unknown
// family.
GeneratedBundle generate_bundle(std::string_view family, std::uint64_t seed);

// The 4x4 corridor grid with two walls, two goal hypotheses and the
// seven-step detour plan as observations.
GeneratedBundle corridor_bundle();
std::vector<std::string> corridor_plan();

}  // namespace goalrec::bench
