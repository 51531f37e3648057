#pragma once

#include "romlin/catalog.hpp"
#include "romlin/pattern.hpp"
#include "romlin/rom.hpp"
#include "romlin/signature.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace romlin {

// One detected entry point with full provenance back to the match that
// produced it.
struct RoutineEntry {
    std::uint16_t entry_address = 0;
    Family family = Family::Microsoft;
    std::string variant_tag;
    std::size_t hit_offset = 0;
    int weight = 1;
    std::string routine; // base routine name (no slot suffix)

    bool operator==(const RoutineEntry&) const = default;
};

// Detected routine name -> entry addresses. Keys are the signature's
// routine name, suffixed ".slot" when a signature captures more than one
// slot. Lists are sorted by entry address.
struct RoutineMap {
    std::map<std::string, std::vector<RoutineEntry>> entries;

    bool empty() const noexcept { return entries.empty(); }
};

// Folds scan_all hits into a RoutineMap. A hit's captured slots become
// entry addresses; a hit from a captureless (body) signature contributes
// the match address itself. Throws ArchMismatch when the db carries no
// signatures for the image's architecture.
RoutineMap extract_entry_points(const RomImage& rom, const SignatureDb& db);

struct Thresholds {
    int t_derived = 4;
    int t_original = 1;
};

enum class VerdictKind { DerivedFrom, Original, Inconclusive };
enum class Confidence { High, Low };

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Confidence confidence);

struct LineageVerdict {
    std::map<Family, int> scores; // sum of weights over distinct matched routines
    std::map<Family, std::set<std::string>> matched_routines;
    VerdictKind kind = VerdictKind::Original;
    std::optional<Family> derived_from; // set iff kind == DerivedFrom
    Confidence confidence = Confidence::Low;
    Thresholds thresholds_used;

    // Human phrasing; Original is reported as absence of known-family
    // evidence, never as a positive originality proof.
    std::string describe() const;
};

LineageVerdict classify(const RoutineMap& rmap, Thresholds thresholds = {});

struct BatchRow {
    enum class Status { Ok, Skipped, Failed };

    MachineRecord machine;
    std::string rom_path; // empty when the machine had none
    Status status = Status::Skipped;
    std::string note; // skip/error explanation
    std::optional<LineageVerdict> verdict;
    // Agreement with expected_lineage; nullopt when no expectation exists
    // (expected unknown) or no verdict was produced.
    std::optional<bool> agreement;
};

// One row per (machine, rom_path); machines without ROM files yield a
// single skipped row. Per-machine failures become rows, never batch
// aborts. rom paths are resolved against base_dir.
std::vector<BatchRow> batch_classify(const std::vector<MachineRecord>& catalog,
                                     const SignatureDb& db, Thresholds thresholds = {},
                                     const std::filesystem::path& base_dir = ".");

} // namespace romlin
