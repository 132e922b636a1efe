#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace graphrag::pipeline {

/// Platform-independent seed mixing: FNV-1a over the parts (length-prefixed)
/// followed by a splitmix64 finalizer.
uint64_t derive_seed(uint64_t base, std::initializer_list<std::string_view> parts);

/// Uniform integer in [0, n) by rejection sampling on raw mt19937_64 output.
/// std::uniform_int_distribution is implementation-defined, so it is not used.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

}  // namespace graphrag::pipeline
