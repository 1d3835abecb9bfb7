#pragma once

#include <cstdint>

namespace nacksim {

// Simulated time in integer microseconds. Integer time keeps event ordering
// and metric output exactly reproducible across runs.
using SimTime = std::int64_t;

inline constexpr SimTime kUsPerMs = 1'000;
inline constexpr SimTime kUsPerSec = 1'000'000;

constexpr SimTime from_sec(double s) { return static_cast<SimTime>(s * kUsPerSec + (s >= 0 ? 0.5 : -0.5)); }
constexpr SimTime from_ms(double ms) { return static_cast<SimTime>(ms * kUsPerMs + (ms >= 0 ? 0.5 : -0.5)); }
constexpr double to_sec(SimTime t) { return static_cast<double>(t) / kUsPerSec; }
constexpr double to_ms(SimTime t) { return static_cast<double>(t) / kUsPerMs; }

} // namespace nacksim
