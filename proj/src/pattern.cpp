#include "romlin/pattern.hpp"

#include "romlin/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

namespace romlin {

namespace {

bool is_hex_digit(char c) {
    return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return c - 'A' + 10;
}

bool valid_slot_name(std::string_view name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

PatternElement parse_token(const std::string& token, std::size_t position) {
    if (token == "??") {
        return {PatternElement::Kind::Any, 0, {}};
    }
    if (token.size() == 2 && is_hex_digit(token[0]) && is_hex_digit(token[1])) {
        auto value = static_cast<std::uint8_t>(hex_value(token[0]) * 16 + hex_value(token[1]));
        return {PatternElement::Kind::Literal, value, {}};
    }
    if (token.size() > 1 && token[0] == '@') {
        auto colon = token.find(':');
        if (colon == std::string::npos || colon == 1) {
            throw Error(Errc::DslSyntax, "bad capture token '" + token + "' at position " +
                                             std::to_string(position));
        }
        std::string name = token.substr(1, colon - 1);
        std::string type = token.substr(colon + 1);
        if (!valid_slot_name(name)) {
            throw Error(Errc::DslSyntax, "bad slot name in '" + token + "' at position " +
                                             std::to_string(position));
        }
        if (type == "abs16") return {PatternElement::Kind::CaptureAbs16, 0, name};
        if (type == "rel8") return {PatternElement::Kind::CaptureRel8, 0, name};
        if (type == "byte") return {PatternElement::Kind::CaptureByte, 0, name};
        throw Error(Errc::DslSyntax, "unknown capture type in '" + token + "' at position " +
                                         std::to_string(position));
    }
    throw Error(Errc::DslSyntax,
                "bad token '" + token + "' at position " + std::to_string(position));
}

} // namespace

Pattern compile_pattern(std::string_view dsl_text, CompileOptions options) {
    Pattern pattern;
    pattern.source_text = std::string(dsl_text);

    std::istringstream stream{pattern.source_text};
    std::string token;
    std::size_t position = 0;
    std::set<std::string> slot_names;
    while (stream >> token) {
        PatternElement element = parse_token(token, position);
        if (!element.slot.empty() && !slot_names.insert(element.slot).second) {
            throw Error(Errc::DuplicateSlot, "duplicate slot '" + element.slot + "'");
        }
        pattern.byte_len += element.width();
        if (element.kind == PatternElement::Kind::Literal) ++pattern.literal_count;
        pattern.elements.push_back(std::move(element));
        ++position;
    }
    if (pattern.elements.empty()) {
        throw Error(Errc::DslSyntax, "empty pattern");
    }
    if (pattern.byte_len > kMaxPatternBytes) {
        throw Error(Errc::PatternTooLong,
                    "pattern spans " + std::to_string(pattern.byte_len) + " bytes (max " +
                        std::to_string(kMaxPatternBytes) + ")");
    }
    if (pattern.literal_count < options.min_literals) {
        throw Error(Errc::WeakPattern,
                    "pattern has " + std::to_string(pattern.literal_count) +
                        " literal bytes, need at least " + std::to_string(options.min_literals));
    }
    return pattern;
}

std::vector<MatchHit> scan(const RomImage& rom, const Pattern& pattern,
                           const std::string& pattern_name) {
    const auto& bytes = rom.bytes();
    if (pattern.byte_len > bytes.size()) {
        throw Error(Errc::PatternTooLong, "pattern longer than image");
    }
    rom.require_addressable();

    // Skip ahead on the first literal when the pattern starts with one.
    const bool leads_with_literal =
        pattern.elements.front().kind == PatternElement::Kind::Literal;
    const std::uint8_t first_literal = pattern.elements.front().literal;

    std::vector<MatchHit> hits;
    const std::size_t last_offset = bytes.size() - pattern.byte_len;
    for (std::size_t offset = 0; offset <= last_offset; ++offset) {
        if (leads_with_literal) {
            const void* found = std::memchr(bytes.data() + offset, first_literal,
                                            last_offset - offset + 1);
            if (found == nullptr) break;
            offset = static_cast<std::size_t>(static_cast<const std::uint8_t*>(found) -
                                              bytes.data());
        }

        std::size_t cursor = offset;
        bool matched = true;
        for (const auto& element : pattern.elements) {
            if (element.kind == PatternElement::Kind::Literal &&
                bytes[cursor] != element.literal) {
                matched = false;
                break;
            }
            cursor += element.width();
        }
        if (!matched) continue;

        MatchHit hit;
        hit.offset = offset;
        hit.address = static_cast<std::uint16_t>(
            (static_cast<std::uint32_t>(rom.base_addr()) + offset) & 0xFFFF);
        hit.pattern_name = pattern_name;
        cursor = offset;
        for (const auto& element : pattern.elements) {
            switch (element.kind) {
            case PatternElement::Kind::CaptureAbs16:
                hit.captures[element.slot] = static_cast<std::uint16_t>(
                    bytes[cursor] | (bytes[cursor + 1] << 8));
                break;
            case PatternElement::Kind::CaptureRel8: {
                std::uint32_t slot_address =
                    static_cast<std::uint32_t>(rom.base_addr()) +
                    static_cast<std::uint32_t>(cursor);
                std::uint32_t resolved =
                    slot_address + 1 +
                    static_cast<std::uint32_t>(static_cast<std::int8_t>(bytes[cursor]));
                hit.captures[element.slot] = static_cast<std::uint16_t>(resolved & 0xFFFF);
                break;
            }
            case PatternElement::Kind::CaptureByte:
                hit.captures[element.slot] = bytes[cursor];
                break;
            default:
                break;
            }
            cursor += element.width();
        }
        hits.push_back(std::move(hit));
    }
    return hits;
}

} // namespace romlin
