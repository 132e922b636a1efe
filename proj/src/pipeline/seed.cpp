#include "graphrag/pipeline/seed.hpp"

#include <limits>
#include <stdexcept>

namespace graphrag::pipeline {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t fnv_bytes(uint64_t h, const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

uint64_t fnv_u64(uint64_t h, uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    }
    return fnv_bytes(h, bytes, sizeof bytes);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t base, std::initializer_list<std::string_view> parts) {
    uint64_t h = fnv_u64(kFnvOffset, base);
    for (auto part : parts) {
        h = fnv_u64(h, part.size());
        h = fnv_bytes(h, part.data(), part.size());
    }
    return splitmix64(h);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_index: empty range");
    }
    const uint64_t range = static_cast<uint64_t>(n);
    // Largest multiple of range that fits; reject draws above it.
    const uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % range;
    uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % range);
}

}  // namespace graphrag::pipeline
