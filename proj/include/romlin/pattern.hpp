#pragma once

#include "romlin/rom.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace romlin {

inline constexpr std::size_t kMaxPatternBytes = 64;
inline constexpr std::size_t kDefaultLiteralFloor = 6;

// One token of a compiled pattern. CaptureAbs16 consumes two bytes of the
// match window; every other element consumes one.
struct PatternElement {
    enum class Kind { Literal, Any, CaptureAbs16, CaptureRel8, CaptureByte };

    Kind kind = Kind::Any;
    std::uint8_t literal = 0; // valid for Kind::Literal
    std::string slot;         // valid for capture kinds

    std::size_t width() const noexcept { return kind == Kind::CaptureAbs16 ? 2 : 1; }

    bool operator==(const PatternElement&) const = default;
};

struct Pattern {
    std::vector<PatternElement> elements;
    std::size_t byte_len = 0;
    std::size_t literal_count = 0;
    std::string source_text;

    bool has_captures() const noexcept {
        for (const auto& e : elements)
            if (e.kind != PatternElement::Kind::Literal && e.kind != PatternElement::Kind::Any)
                return true;
        return false;
    }
};

struct CompileOptions {
    // Patterns below this many literal bytes are rejected as too prone to
    // random matches. Test-mode callers may lower it explicitly.
    std::size_t min_literals = kDefaultLiteralFloor;
};

// DSL: whitespace-separated tokens, one element each.
//   HH           hex literal byte (case-insensitive)
//   ??           any byte
//   @name:abs16  capture a little-endian 16-bit address (2 bytes)
//   @name:rel8   capture a signed-displacement byte, resolved to an
//                absolute address as slot_address + 1 + disp (mod 0x10000)
//   @name:byte   capture one raw byte
Pattern compile_pattern(std::string_view dsl_text, CompileOptions options = {});

struct MatchHit {
    std::size_t offset = 0;     // index into rom bytes
    std::uint16_t address = 0;  // base_addr + offset
    std::map<std::string, std::uint16_t> captures;
    std::string pattern_name;

    bool operator==(const MatchHit&) const = default;
};

// All match offsets in ascending order; overlapping hits are reported.
std::vector<MatchHit> scan(const RomImage& rom, const Pattern& pattern,
                           const std::string& pattern_name = "");

} // namespace romlin
