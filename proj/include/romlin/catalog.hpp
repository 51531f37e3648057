#pragma once

#include "romlin/rom.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace romlin {

// Firmware families with shipped signature coverage.
enum class Family { Microsoft, Sinclair, HuBasic };

// What a catalog row claims about a machine's interpreter ancestry.
enum class Lineage { Microsoft, Sinclair, HuBasic, Original, Unknown };

std::string_view to_string(Family family);
std::string_view to_string(Lineage lineage);
std::optional<Family> parse_family(std::string_view text);
std::optional<Lineage> parse_lineage(std::string_view text);

struct MachineRecord {
    std::string name;
    std::string country;
    std::string cpu;
    int year = 0;
    Lineage expected_lineage = Lineage::Unknown;
    std::vector<std::string> rom_paths;

    bool operator==(const MachineRecord&) const = default;
};

// Maps catalog CPU labels onto a decodable architecture. Eastern second
// sources of the Z80 (U880, MMN80) map to Z80; UM6502 maps to 6502.
// Everything else (K580, K1801, 8086 parts, ...) is catalogable but not
// analyzable and yields nullopt.
std::optional<Architecture> arch_for_cpu(std::string_view cpu);

std::vector<MachineRecord> load_catalog(const std::filesystem::path& path);
std::vector<MachineRecord> parse_catalog(std::istream& in, const std::string& source_name);
void write_catalog(std::ostream& out, const std::vector<MachineRecord>& records);

} // namespace romlin
