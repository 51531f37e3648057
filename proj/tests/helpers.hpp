#pragma once

// Test-only oracles, kept independent of the library code paths they
// check: a per-offset pattern matcher, signed relative-address
// arithmetic, and exact k-gram substring sets.

#include "romlin/pattern.hpp"
#include "romlin/rom.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testutil {

// Element model mirroring the DSL, built by tests before any pattern is
// compiled so the oracle never depends on the compiler output.
struct OracleElem {
    enum Kind { Literal, Any, Abs16, Rel8, ByteCap } kind = Any;
    std::uint8_t literal = 0;
    std::string slot;

    std::size_t width() const { return kind == Abs16 ? 2 : 1; }
};

struct OracleHit {
    std::size_t offset = 0;
    std::uint16_t address = 0;
    std::map<std::string, std::uint16_t> captures;
};

inline std::uint16_t oracle_rel8(std::uint16_t slot_address, std::uint8_t disp) {
    int value = static_cast<int>(slot_address) + 1;
    int signed_disp = disp < 128 ? static_cast<int>(disp) : static_cast<int>(disp) - 256;
    value += signed_disp;
    value %= 0x10000;
    if (value < 0) value += 0x10000;
    return static_cast<std::uint16_t>(value);
}

// Naive O(n*m) scan: try every offset, compare element by element.
inline std::vector<OracleHit> oracle_scan(const std::vector<std::uint8_t>& bytes,
                                          std::uint16_t base,
                                          const std::vector<OracleElem>& elems) {
    std::size_t window = 0;
    for (const auto& e : elems) window += e.width();

    std::vector<OracleHit> hits;
    if (window > bytes.size()) return hits;
    for (std::size_t offset = 0; offset + window <= bytes.size(); ++offset) {
        std::size_t cursor = offset;
        bool ok = true;
        for (const auto& e : elems) {
            if (e.kind == OracleElem::Literal && bytes[cursor] != e.literal) {
                ok = false;
                break;
            }
            cursor += e.width();
        }
        if (!ok) continue;
        OracleHit hit;
        hit.offset = offset;
        hit.address = static_cast<std::uint16_t>((base + offset) & 0xFFFF);
        cursor = offset;
        for (const auto& e : elems) {
            switch (e.kind) {
            case OracleElem::Abs16:
                hit.captures[e.slot] =
                    static_cast<std::uint16_t>(bytes[cursor] + 256 * bytes[cursor + 1]);
                break;
            case OracleElem::Rel8:
                hit.captures[e.slot] = oracle_rel8(
                    static_cast<std::uint16_t>((base + cursor) & 0xFFFF), bytes[cursor]);
                break;
            case OracleElem::ByteCap:
                hit.captures[e.slot] = bytes[cursor];
                break;
            default:
                break;
            }
            cursor += e.width();
        }
        hits.push_back(std::move(hit));
    }
    return hits;
}

// Renders an element list back into DSL text for compile_pattern.
inline std::string render_dsl(const std::vector<OracleElem>& elems) {
    std::string out;
    char buf[32];
    for (const auto& e : elems) {
        if (!out.empty()) out += " ";
        switch (e.kind) {
        case OracleElem::Literal:
            std::snprintf(buf, sizeof buf, "%02X", e.literal);
            out += buf;
            break;
        case OracleElem::Any:
            out += "??";
            break;
        case OracleElem::Abs16:
            out += "@" + e.slot + ":abs16";
            break;
        case OracleElem::Rel8:
            out += "@" + e.slot + ":rel8";
            break;
        case OracleElem::ByteCap:
            out += "@" + e.slot + ":byte";
            break;
        }
    }
    return out;
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t len) {
    std::vector<std::uint8_t> out(len);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

// Exact k-gram substring set, the brute-force side of the similarity
// equivalence checks.
inline std::set<std::string> gram_set(const std::vector<std::uint8_t>& bytes,
                                      std::size_t k) {
    std::set<std::string> grams;
    if (bytes.size() < k) return grams;
    for (std::size_t i = 0; i + k <= bytes.size(); ++i) {
        grams.insert(std::string(reinterpret_cast<const char*>(bytes.data() + i), k));
    }
    return grams;
}

inline romlin::RomImage make_rom(std::vector<std::uint8_t> bytes,
                                 romlin::Architecture arch = romlin::Architecture::Z80,
                                 std::uint16_t base = 0) {
    return romlin::load_rom_bytes(std::move(bytes), arch, base, "test");
}

} // namespace testutil
