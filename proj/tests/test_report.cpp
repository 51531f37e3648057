#include "romlin/errors.hpp"
#include "romlin/report.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace romlin;
using testutil::make_rom;

namespace {

RoutineMap single_entry_map() {
    RoutineMap rmap;
    RoutineEntry e;
    e.routine = "FP_ADD";
    e.entry_address = 0x3014;
    e.family = Family::Microsoft;
    e.variant_tag = "v1";
    e.weight = 1;
    rmap.entries["FP_ADD"].push_back(e);
    return rmap;
}

} // namespace

TEST_CASE("asm defs format") {
    auto text = emit_defs(single_entry_map(), DefsFormat::Asm);
    CHECK(text.find("defc FP_ADD = $3014\n") != std::string::npos);
    CHECK(text.find("#define") == std::string::npos);
}

TEST_CASE("header defs format with prefix") {
    auto text = emit_defs(single_entry_map(), DefsFormat::Header, "ROM_");
    CHECK(text.find("#define ROM_FP_ADD 0x3014\n") != std::string::npos);
}

TEST_CASE("multiple addresses emit numbered symbols and a warning") {
    RoutineMap rmap = single_entry_map();
    RoutineEntry e = rmap.entries["FP_ADD"][0];
    e.entry_address = 0x4014;
    rmap.entries["FP_ADD"].push_back(e);
    auto text = emit_defs(rmap, DefsFormat::Asm);
    CHECK(text.find("; warning: FP_ADD matched 2 distinct addresses") != std::string::npos);
    CHECK(text.find("defc FP_ADD_1 = $3014") != std::string::npos);
    CHECK(text.find("defc FP_ADD_2 = $4014") != std::string::npos);
    CHECK(text.find("defc FP_ADD = $") == std::string::npos);
}

TEST_CASE("duplicate addresses collapse to one symbol") {
    RoutineMap rmap = single_entry_map();
    rmap.entries["FP_ADD"].push_back(rmap.entries["FP_ADD"][0]); // second site, same address
    auto text = emit_defs(rmap, DefsFormat::Asm);
    CHECK(text.find("defc FP_ADD = $3014\n") != std::string::npos);
    CHECK(text.find("warning") == std::string::npos);
}

TEST_CASE("slot-suffixed names are sanitized into symbols") {
    RoutineMap rmap;
    RoutineEntry e;
    e.routine = "CH_FETCH";
    e.entry_address = 0x007D;
    e.family = Family::Sinclair;
    rmap.entries["CH_FETCH.skip"].push_back(e);
    auto text = emit_defs(rmap, DefsFormat::Header);
    CHECK(text.find("#define CH_FETCH_skip 0x007D") != std::string::npos);
}

TEST_CASE("empty map refuses to emit") {
    try {
        emit_defs(RoutineMap{}, DefsFormat::Asm);
        FAIL("expected NothingToEmit");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NothingToEmit);
    }
}

TEST_CASE("reports are deterministic apart from timing") {
    auto rom = make_rom({0x11, 0x22, 0x33, 0xCD, 0x14, 0x30, 0x44, 0x55, 0x66});
    std::vector<MatchHit> hits;
    MatchHit hit;
    hit.offset = 0;
    hit.address = 0;
    hit.pattern_name = "microsoft:z80:FP_ADD:v1";
    hit.captures["t"] = 0x3014;
    hits.push_back(hit);
    auto rmap = single_entry_map();
    auto verdict = classify(rmap);

    auto a = classify_report(rom, "builtin-1", hits, rmap, verdict, 1);
    auto b = classify_report(rom, "builtin-1", hits, rmap, verdict, 99);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump(2) == b.dump(2));

    CHECK(a["rom"]["sha256"] == rom.hash_hex());
    CHECK(a["schema_version"] == kReportSchemaVersion);
    CHECK(a["hits"].size() == hits.size());
    CHECK(a["verdict"]["scores"]["microsoft"] == 1);
    CHECK(a["verdict"]["verdict"] == "original");
    CHECK(a["verdict"]["summary"] == "no known-family match");
}

TEST_CASE("verdict json always lists all three families") {
    auto verdict = classify(RoutineMap{});
    auto j = verdict_json(verdict);
    CHECK(j["scores"].size() == 3);
    CHECK(j["matched_routines"].size() == 3);
    CHECK(j["scores"]["hubasic"] == 0);
    CHECK(j["matched_routines"]["sinclair"].is_array());
}
