#include "romlin/catalog.hpp"
#include "romlin/errors.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace romlin;

namespace {

std::vector<MachineRecord> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_catalog(in, "test.csv");
}

const char* kHeader = "name,country,cpu,year,expected_lineage,rom_path\n";

} // namespace

TEST_CASE("catalog rows parse into records") {
    auto records = parse(std::string(kHeader) +
                         "Galaksija,Yugoslavia,Z80,1983,Original,\n"
                         "Primo A,Hungary,U880,1984,Microsoft,\n");
    REQUIRE(records.size() == 2);
    CHECK(records[0].name == "Galaksija");
    CHECK(records[0].expected_lineage == Lineage::Original);
    CHECK(records[0].rom_paths.empty());
    CHECK(arch_for_cpu(records[0].cpu) == Architecture::Z80);
    CHECK(records[1].expected_lineage == Lineage::Microsoft);
    // U880 is a Z80 second source
    CHECK(arch_for_cpu(records[1].cpu) == Architecture::Z80);
}

TEST_CASE("empty file yields empty list") {
    CHECK(parse("").empty());
    CHECK(parse(std::string(kHeader)).empty());
}

TEST_CASE("cpu mapping covers eastern second sources") {
    CHECK(arch_for_cpu("Z80") == Architecture::Z80);
    CHECK(arch_for_cpu("U880") == Architecture::Z80);
    CHECK(arch_for_cpu("MMN80") == Architecture::Z80);
    CHECK(arch_for_cpu("6502") == Architecture::M6502);
    CHECK(arch_for_cpu("UM6502") == Architecture::M6502);
    CHECK_FALSE(arch_for_cpu("K580").has_value());
    CHECK_FALSE(arch_for_cpu("K1801").has_value());
    CHECK_FALSE(arch_for_cpu("i8086").has_value());
    CHECK_FALSE(arch_for_cpu("CDP1802").has_value());
}

TEST_CASE("malformed rows report line numbers") {
    auto check_line = [](const std::string& body, const char* needle) {
        try {
            parse(std::string(kHeader) + body);
            FAIL("expected CatalogParseError");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::CatalogParse);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    check_line("OnlyThreeFields,x,y\n", ":2");
    check_line("Machine,Hungary,Z80,notayear,unknown,\n", "year");
    check_line("Machine,Hungary,Z80,1960,unknown,\n", "1960");
    check_line("Machine,Hungary,Z80,1984,sinclairish,\n", "expected_lineage");
    check_line("Dup,H,Z80,1984,unknown,\nDup,H,Z80,1985,unknown,\n", "duplicate");
}

TEST_CASE("missing header is an error") {
    CHECK_THROWS_AS(parse("Galaksija,Yugoslavia,Z80,1983,Original,\n"), Error);
}

TEST_CASE("quoted names and multiple rom paths") {
    auto records = parse(std::string(kHeader) +
                         "\"KC 85/2, KC 85/3\",GDR,U880,1984,unknown,a.rom;b.rom\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].name == "KC 85/2, KC 85/3");
    REQUIRE(records[0].rom_paths.size() == 2);
    CHECK(records[0].rom_paths[1] == "b.rom");
}

TEST_CASE("catalog round-trips through write and parse") {
    auto records = parse(std::string(kHeader) +
                         "Galaksija,Yugoslavia,Z80,1983,Original,\n"
                         "\"Primo A, B\",Hungary,U880,1984,Microsoft,primo.rom;primo2.rom\n"
                         "IZOT 1030,Bulgaria,i8086,1985,unknown,\n");
    std::ostringstream out;
    write_catalog(out, records);
    std::istringstream in(out.str());
    auto reparsed = parse_catalog(in, "roundtrip.csv");
    CHECK(records == reparsed);
}

TEST_CASE("random catalogs round-trip, quoting included") {
    std::mt19937_64 rng(808);
    const Lineage lineages[] = {Lineage::Microsoft, Lineage::Sinclair, Lineage::HuBasic,
                                Lineage::Original, Lineage::Unknown};
    const char* cpus[] = {"Z80", "U880", "6502", "K580", "i8086/88"};
    // Names draw from an alphabet that exercises the csv quoting path.
    const std::string alphabet = "abcXYZ 019-/(),\"";
    for (int round = 0; round < 50; ++round) {
        std::vector<MachineRecord> records;
        std::set<std::string> names;
        int count = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < count; ++i) {
            MachineRecord rec;
            do {
                rec.name.clear();
                std::size_t len = 1 + rng() % 12;
                for (std::size_t c = 0; c < len; ++c)
                    rec.name.push_back(alphabet[rng() % alphabet.size()]);
                // Trimming applies at parse; keep edges non-blank.
                rec.name.front() = 'A' + static_cast<char>(rng() % 26);
                rec.name.back() = 'a' + static_cast<char>(rng() % 26);
            } while (!names.insert(rec.name).second);
            rec.country = "Testland";
            rec.cpu = cpus[rng() % 5];
            rec.year = 1975 + static_cast<int>(rng() % 25);
            rec.expected_lineage = lineages[rng() % 5];
            std::size_t paths = rng() % 3;
            for (std::size_t p = 0; p < paths; ++p)
                rec.rom_paths.push_back("rom" + std::to_string(p) + ".bin");
            records.push_back(std::move(rec));
        }
        std::ostringstream out;
        write_catalog(out, records);
        std::istringstream in(out.str());
        auto reparsed = parse_catalog(in, "prop.csv");
        REQUIRE(records == reparsed);
    }
}
