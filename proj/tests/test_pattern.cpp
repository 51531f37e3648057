#include "romlin/errors.hpp"
#include "romlin/pattern.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace romlin;
using namespace testutil;

namespace {

CompileOptions test_mode() { return CompileOptions{.min_literals = 1}; }

} // namespace

TEST_CASE("token widths and literal counting") {
    Pattern p = compile_pattern("21 00 00 CD @x:abs16 C9 AF 3D");
    CHECK(p.byte_len == 9);
    CHECK(p.literal_count == 7);
    CHECK(p.elements.size() == 8);
    CHECK(p.source_text == "21 00 00 CD @x:abs16 C9 AF 3D");
}

TEST_CASE("weak patterns are rejected by the literal floor") {
    try {
        compile_pattern("CD @fpadd:abs16 EB CD @fpmul:abs16 C9");
        FAIL("expected WeakPatternError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WeakPattern);
    }
    // The same pattern compiles once the floor is explicitly lowered.
    Pattern p = compile_pattern("CD @fpadd:abs16 EB CD @fpmul:abs16 C9", test_mode());
    CHECK(p.byte_len == 8);
    CHECK(p.literal_count == 4);
}

TEST_CASE("syntax errors carry token and position") {
    try {
        compile_pattern("AA ZZ", test_mode());
        FAIL("expected DslSyntaxError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DslSyntax);
        CHECK(std::string(e.what()).find("ZZ") != std::string::npos);
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CHECK_THROWS_AS(compile_pattern("", test_mode()), Error);
    CHECK_THROWS_AS(compile_pattern("@x:abs32", test_mode()), Error);
    CHECK_THROWS_AS(compile_pattern("@:abs16", test_mode()), Error);
    CHECK_THROWS_AS(compile_pattern("F", test_mode()), Error);
    CHECK_THROWS_AS(compile_pattern("F00", test_mode()), Error);
}

TEST_CASE("hex is case-insensitive") {
    Pattern a = compile_pattern("ab cd ef AB CD EF", test_mode());
    CHECK(a.elements[0].literal == 0xAB);
    CHECK(a.elements[3].literal == 0xAB);
}

TEST_CASE("duplicate slots are rejected") {
    try {
        compile_pattern("AA @t:abs16 BB @t:byte", test_mode());
        FAIL("expected DuplicateSlotError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateSlot);
    }
}

TEST_CASE("patterns above 64 bytes are rejected") {
    std::string dsl;
    for (int i = 0; i < 65; ++i) dsl += "AA ";
    CHECK_THROWS_AS(compile_pattern(dsl, test_mode()), Error);
    std::string ok;
    for (int i = 0; i < 64; ++i) ok += "AA ";
    CHECK(compile_pattern(ok, test_mode()).byte_len == 64);
}

TEST_CASE("scan finds overlapping hits with captures") {
    // C3 @t:abs16 over [00 C3 10 20 C3 00 00 00 00 00]: two JP sites.
    auto rom = make_rom({0x00, 0xC3, 0x10, 0x20, 0xC3, 0x00, 0x00, 0x00, 0x00, 0x00});
    Pattern p = compile_pattern("C3 @t:abs16", test_mode());
    auto hits = scan(rom, p);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].offset == 1);
    CHECK(hits[0].captures.at("t") == 0x2010);
    CHECK(hits[1].offset == 4);
    CHECK(hits[1].captures.at("t") == 0x0000);
}

TEST_CASE("absent literal means no hits") {
    auto rom = make_rom(std::vector<std::uint8_t>(256, 0x11));
    Pattern p = compile_pattern("?? ?? 77 ??", test_mode());
    CHECK(scan(rom, p).empty());
}

TEST_CASE("rom equal to the pattern literals is a single hit at 0") {
    auto rom = make_rom({0xDE, 0xAD, 0xBE, 0xEF});
    Pattern p = compile_pattern("DE AD BE EF", test_mode());
    auto hits = scan(rom, p);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].offset == 0);
    CHECK(hits[0].address == 0);
}

TEST_CASE("pattern longer than image") {
    auto rom = make_rom({0x01, 0x02});
    Pattern p = compile_pattern("01 02 03", test_mode());
    try {
        scan(rom, p);
        FAIL("expected PatternTooLong");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PatternTooLong);
    }
}

TEST_CASE("rel8 capture resolves operand-relative") {
    // JR-style: opcode literal, then the displacement slot right after it.
    std::vector<std::uint8_t> bytes(0x40, 0);
    bytes[0x10] = 0x18;
    bytes[0x11] = 0xFE; // -2: resolves to slot_addr + 1 - 2 = 0x0010
    auto rom = make_rom(bytes);
    Pattern p = compile_pattern("18 @d:rel8", test_mode());
    auto hits = scan(rom, p);
    REQUIRE(!hits.empty());
    CHECK(hits[0].offset == 0x10);
    CHECK(hits[0].captures.at("d") == 0x0010);
}

TEST_CASE("capture plants resolve to planted values") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::uint8_t> bytes = random_bytes(rng, 512);
        std::uint16_t value = static_cast<std::uint16_t>(rng());
        std::size_t offset = rng() % (bytes.size() - 16);
        // Distinctive literal fence around the slot.
        bytes[offset] = 0x5A;
        bytes[offset + 1] = 0xA5;
        bytes[offset + 2] = static_cast<std::uint8_t>(value & 0xFF);
        bytes[offset + 3] = static_cast<std::uint8_t>(value >> 8);
        bytes[offset + 4] = 0x96;
        bytes[offset + 5] = 0x69;
        auto rom = make_rom(bytes);
        Pattern p = compile_pattern("5A A5 @v:abs16 96 69", test_mode());
        auto hits = scan(rom, p);
        bool found = false;
        for (const auto& hit : hits) {
            if (hit.offset == offset) {
                CHECK(hit.captures.at("v") == value);
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("scan agrees with the per-offset oracle on random inputs") {
    std::mt19937_64 rng(98765);
    for (int round = 0; round < 150; ++round) {
        std::size_t rom_len = 64 + rng() % 4096;
        std::vector<std::uint8_t> bytes = random_bytes(rng, rom_len);

        // Random element list, 1..16 elements; bias literals to a small
        // alphabet so matches actually occur.
        std::vector<OracleElem> elems;
        std::size_t n = 1 + rng() % 16;
        int slot_counter = 0;
        for (std::size_t i = 0; i < n; ++i) {
            OracleElem e;
            switch (rng() % 5) {
            case 0: e.kind = OracleElem::Any; break;
            case 1:
                e.kind = OracleElem::Abs16;
                e.slot = "s" + std::to_string(slot_counter++);
                break;
            case 2:
                e.kind = OracleElem::Rel8;
                e.slot = "s" + std::to_string(slot_counter++);
                break;
            default:
                e.kind = OracleElem::Literal;
                e.literal = static_cast<std::uint8_t>(rng() % 4);
                break;
            }
            elems.push_back(e);
        }
        bool has_literal = false;
        for (const auto& e : elems) has_literal |= e.kind == OracleElem::Literal;
        if (!has_literal) {
            elems.front().kind = OracleElem::Literal;
            elems.front().literal = static_cast<std::uint8_t>(rng() % 4);
            elems.front().slot.clear();
        }
        // Quantize the rom to the same alphabet for plenty of hits.
        for (auto& b : bytes) b = static_cast<std::uint8_t>(b % 4);

        std::uint16_t base = static_cast<std::uint16_t>(rng() % 0x8000);
        auto rom = load_rom_bytes(bytes, Architecture::Z80, base, "oracle");
        Pattern p = compile_pattern(render_dsl(elems), test_mode());
        auto got = scan(rom, p);
        auto expected = oracle_scan(bytes, base, elems);

        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].offset == expected[i].offset);
            CHECK(got[i].address == expected[i].address);
            CHECK(got[i].captures == expected[i].captures);
        }
    }
}

TEST_CASE("shift equivariance") {
    std::mt19937_64 rng(4321);
    auto bytes = random_bytes(rng, 1024);
    Pattern p = compile_pattern("12 34 ?? 56", test_mode());
    // Ensure some hits exist.
    for (std::size_t at : {10u, 500u, 900u}) {
        bytes[at] = 0x12; bytes[at + 1] = 0x34; bytes[at + 3] = 0x56;
    }
    auto base_hits = scan(make_rom(bytes), p);
    REQUIRE(!base_hits.empty());

    const std::size_t k = 7;
    std::vector<std::uint8_t> shifted(k, 0xEE); // 0xEE never begins a match here
    shifted.insert(shifted.end(), bytes.begin(), bytes.end());
    auto shifted_hits = scan(make_rom(shifted), p);
    REQUIRE(shifted_hits.size() == base_hits.size());
    for (std::size_t i = 0; i < base_hits.size(); ++i) {
        CHECK(shifted_hits[i].offset == base_hits[i].offset + k);
    }
}

TEST_CASE("arbitrary token soup either compiles or throws a typed error") {
    std::mt19937_64 rng(606060);
    const std::string alphabet = "0123456789abcdefABCDEF@:?_xz ";
    for (int round = 0; round < 500; ++round) {
        std::string dsl;
        std::size_t len = rng() % 40;
        for (std::size_t i = 0; i < len; ++i) dsl.push_back(alphabet[rng() % alphabet.size()]);
        try {
            Pattern p = compile_pattern(dsl, CompileOptions{.min_literals = 0});
            CHECK(p.byte_len >= 1);
            CHECK(p.byte_len <= kMaxPatternBytes);
        } catch (const Error& e) {
            bool typed = e.code() == Errc::DslSyntax || e.code() == Errc::DuplicateSlot ||
                         e.code() == Errc::WeakPattern || e.code() == Errc::PatternTooLong;
            CHECK(typed);
        }
    }
}

TEST_CASE("scan is deterministic") {
    std::mt19937_64 rng(2);
    auto bytes = random_bytes(rng, 4096);
    auto rom = make_rom(bytes);
    Pattern p = compile_pattern("?? 01 ??", test_mode());
    CHECK(scan(rom, p) == scan(rom, p));
}
