#pragma once

#include "romlin/lineage.hpp"
#include "romlin/pattern.hpp"
#include "romlin/rom.hpp"
#include "romlin/signature.hpp"
#include "romlin/similarity.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace romlin {

inline constexpr const char* kToolName = "romlin";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// Report documents are deterministic for identical inputs: object keys
// are emitted in fixed order, lists carry their contract ordering, and
// the only volatile field is timing_ms (excluded from comparisons).
Json rom_json(const RomImage& rom);
Json hits_json(const std::vector<MatchHit>& hits);
Json routine_map_json(const RoutineMap& rmap);
Json verdict_json(const LineageVerdict& verdict);
Json similarity_json(const FingerprintSet& a, const FingerprintSet& b,
                     const SimilarityScore& score);

Json scan_report(const RomImage& rom, const std::string& db_version,
                 const std::vector<MatchHit>& hits, std::int64_t timing_ms);
Json classify_report(const RomImage& rom, const std::string& db_version,
                     const std::vector<MatchHit>& hits, const RoutineMap& rmap,
                     const LineageVerdict& verdict, std::int64_t timing_ms);
Json compare_report(const RomImage& rom_a, const RomImage& rom_b,
                    const FingerprintSet& fp_a, const FingerprintSet& fp_b,
                    const SimilarityScore& score, std::int64_t timing_ms);
Json batch_report(const std::vector<BatchRow>& rows, const std::string& db_version,
                  std::int64_t timing_ms);

enum class DefsFormat { Asm, Header };

// Symbol definitions for cross-compiler libraries: `defc NAME = $HHHH`
// (z88dk assembler dialect) or `#define NAME 0xHHHH`. A routine with
// several distinct addresses emits numbered variants after a warning
// comment. Throws NothingToEmit on an empty map.
std::string emit_defs(const RoutineMap& rmap, DefsFormat format,
                      const std::string& prefix = "");

} // namespace romlin
