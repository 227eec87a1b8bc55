#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace metastack {

/// 64-bit FNV-1a. Stable across platforms; used for content-derived ids and
/// seed derivation, never for security.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Lower-case hex, zero padded to 16 digits.
std::string hex64(std::uint64_t value);

/// Seed for a named component under an experiment seed.
std::uint64_t derive_seed(std::string_view name, std::uint64_t seed);

/// Seed for the i-th member of an ensemble (trees of a forest, etc.).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

} // namespace metastack
