#include "romlin/similarity.hpp"

#include "romlin/errors.hpp"
#include "romlin/isa.hpp"

#include <algorithm>
#include <numeric>

namespace romlin {

namespace {

std::vector<std::uint64_t> gram_hashes(const std::vector<std::uint8_t>& bytes, std::size_t k) {
    // Polynomial hash mod 2^64: h = sum(b[i] * B^(k-1-i)). Sliding removes
    // the outgoing byte's B^(k-1) term and shifts the rest up by B.
    std::uint64_t high_power = 1;
    for (std::size_t i = 1; i < k; ++i) high_power *= kGramHashBase;

    std::vector<std::uint64_t> hashes;
    hashes.reserve(bytes.size() - k + 1);
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < k; ++i) h = h * kGramHashBase + bytes[i];
    hashes.push_back(h);
    for (std::size_t i = k; i < bytes.size(); ++i) {
        h = (h - bytes[i - k] * high_power) * kGramHashBase + bytes[i];
        hashes.push_back(h);
    }
    return hashes;
}

// Standard winnowing: keep the minimum of every window of w consecutive
// gram hashes, leftmost occurrence on ties.
std::vector<std::uint64_t> winnow(const std::vector<std::uint64_t>& hashes, std::size_t w) {
    if (w <= 1 || hashes.size() <= w) {
        if (hashes.size() <= w && w > 1) {
            // Fewer grams than the window: a single window covers them all.
            auto min_it = std::min_element(hashes.begin(), hashes.end());
            return {*min_it};
        }
        return hashes;
    }
    std::vector<std::uint64_t> selected;
    std::size_t prev_pos = hashes.size(); // sentinel: no selection yet
    for (std::size_t start = 0; start + w <= hashes.size(); ++start) {
        std::size_t min_pos = start;
        for (std::size_t i = start + 1; i < start + w; ++i) {
            if (hashes[i] < hashes[min_pos]) min_pos = i;
        }
        if (min_pos != prev_pos) {
            selected.push_back(hashes[min_pos]);
            prev_pos = min_pos;
        }
    }
    return selected;
}

std::uint64_t intersection_size(const std::vector<std::uint64_t>& a,
                                const std::vector<std::uint64_t>& b) {
    std::uint64_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

} // namespace

Ratio make_ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return {0, 1};
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::vector<std::uint8_t> mask_abs_operands(const std::vector<std::uint8_t>& bytes,
                                            Architecture arch) {
    std::vector<std::uint8_t> out = bytes;
    std::size_t i = 0;
    while (i < out.size()) {
        if (has_abs_operand(out[i], arch) && i + 2 < out.size()) {
            out[i + 1] = 0;
            out[i + 2] = 0;
            i += 3;
        } else {
            ++i;
        }
    }
    return out;
}

FingerprintSet fingerprint(const RomImage& rom, FingerprintOptions options) {
    if (options.k < kMinGramLen) {
        throw Error(Errc::ParamMismatch,
                    "gram length must be at least " + std::to_string(kMinGramLen));
    }
    if (rom.size() < options.k) {
        throw Error(Errc::TooShort, "image shorter than gram length");
    }

    FingerprintSet fp;
    fp.k = options.k;
    fp.winnow_w = options.winnow_w;
    fp.masked = options.mask_operands;
    fp.source_hash = rom.content_hash();

    std::vector<std::uint64_t> hashes;
    if (options.mask_operands) {
        hashes = gram_hashes(mask_abs_operands(rom.bytes(), rom.arch()), options.k);
    } else {
        hashes = gram_hashes(rom.bytes(), options.k);
    }
    if (options.winnow_w > 1) {
        hashes = winnow(hashes, options.winnow_w);
    }
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
    fp.hashes = std::move(hashes);
    return fp;
}

SimilarityScore compare_fingerprints(const FingerprintSet& a, const FingerprintSet& b) {
    if (a.k != b.k || a.winnow_w != b.winnow_w || a.masked != b.masked) {
        throw Error(Errc::ParamMismatch,
                    "fingerprints were built with different parameters");
    }
    SimilarityScore score;
    std::uint64_t shared = intersection_size(a.hashes, b.hashes);
    std::uint64_t total = a.hashes.size() + b.hashes.size() - shared;
    score.shared_grams = shared;
    score.jaccard = make_ratio(shared, total);
    score.containment_a_in_b = make_ratio(shared, a.hashes.size());
    score.containment_b_in_a = make_ratio(shared, b.hashes.size());
    return score;
}

} // namespace romlin
