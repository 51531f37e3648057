#pragma once

#include "romlin/rom.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace romlin {

inline constexpr std::size_t kDefaultGramLen = 16;
inline constexpr std::size_t kMinGramLen = 4;

// Exact nonnegative rational, kept reduced so equal scores compare equal.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Ratio&) const = default;
};

Ratio make_ratio(std::uint64_t num, std::uint64_t den);

// The set of 64-bit rolling hashes over all k-byte windows of an image,
// optionally winnowed (minimum per window of w grams, leftmost tie-break).
struct FingerprintSet {
    std::size_t k = kDefaultGramLen;
    std::size_t winnow_w = 0; // 0 = winnowing off
    bool masked = false;      // abs call/jump operands zeroed before hashing
    std::vector<std::uint64_t> hashes; // sorted, unique
    std::array<std::uint8_t, 32> source_hash{};
};

struct FingerprintOptions {
    std::size_t k = kDefaultGramLen;
    std::size_t winnow_w = 0;
    bool mask_operands = false;
};

FingerprintSet fingerprint(const RomImage& rom, FingerprintOptions options = {});

struct SimilarityScore {
    Ratio jaccard;
    Ratio containment_a_in_b;
    Ratio containment_b_in_a;
    std::uint64_t shared_grams = 0;
};

// Requires both sets to use the same k, winnowing and masking parameters.
SimilarityScore compare_fingerprints(const FingerprintSet& a, const FingerprintSet& b);

// Returns a copy of the bytes with the 2-byte operands of absolute
// call/jump instructions zeroed, so relocated but otherwise identical
// code produces identical grams.
std::vector<std::uint8_t> mask_abs_operands(const std::vector<std::uint8_t>& bytes,
                                            Architecture arch);

// The published rolling-hash base; fingerprints are comparable across
// runs and machines only because this never changes.
inline constexpr std::uint64_t kGramHashBase = 0x00000100000001B3ull;

} // namespace romlin
