// Reproducible random streams.
//
// Every unit of parallel work (a replicate, a sample shard) owns a child
// stream whose seed is a pure function of (base seed, stream index). Results
// therefore never depend on how work is scheduled across threads.

#pragma once

#include <cstdint>
#include <random>

namespace polytess {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of child stream `stream` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Generator for child stream `stream` under `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform draw on [0, 1).
double uniform01(Rng& rng);

/// Uniform draw on (0, 1].
double uniform_open_closed(Rng& rng);

}  // namespace polytess
