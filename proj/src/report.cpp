#include "romlin/report.hpp"

#include "romlin/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

namespace romlin {

namespace {

std::string hex4(std::uint16_t value) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04X", value);
    return buf;
}

std::string symbol_name(const std::string& prefix, const std::string& routine) {
    std::string out = prefix;
    for (char c : routine) {
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    }
    return out;
}

Json thresholds_json(const Thresholds& thresholds) {
    Json j;
    j["t_derived"] = thresholds.t_derived;
    j["t_original"] = thresholds.t_original;
    return j;
}

Json report_skeleton(const std::string& db_version) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    j["db_version"] = db_version;
    return j;
}

const Family kAllFamilies[] = {Family::Microsoft, Family::Sinclair, Family::HuBasic};

} // namespace

Json rom_json(const RomImage& rom) {
    Json j;
    j["name"] = rom.source_name();
    j["sha256"] = rom.hash_hex();
    j["arch"] = std::string(to_string(rom.arch()));
    j["base_addr"] = rom.base_addr();
    j["size"] = rom.size();
    return j;
}

Json hits_json(const std::vector<MatchHit>& hits) {
    Json j = Json::array();
    for (const auto& hit : hits) {
        Json h;
        h["offset"] = hit.offset;
        h["address"] = hit.address;
        h["pattern"] = hit.pattern_name;
        Json captures = Json::object();
        for (const auto& [slot, value] : hit.captures) captures[slot] = value;
        h["captures"] = std::move(captures);
        j.push_back(std::move(h));
    }
    return j;
}

Json routine_map_json(const RoutineMap& rmap) {
    Json j;
    for (const auto& [name, entries] : rmap.entries) {
        Json list = Json::array();
        for (const auto& entry : entries) {
            Json e;
            e["address"] = entry.entry_address;
            e["family"] = std::string(to_string(entry.family));
            e["variant"] = entry.variant_tag;
            e["hit_offset"] = entry.hit_offset;
            e["weight"] = entry.weight;
            list.push_back(std::move(e));
        }
        j[name] = std::move(list);
    }
    return j;
}

Json verdict_json(const LineageVerdict& verdict) {
    Json j;
    Json scores;
    Json matched;
    for (Family family : kAllFamilies) {
        auto key = std::string(to_string(family));
        auto it = verdict.scores.find(family);
        scores[key] = it == verdict.scores.end() ? 0 : it->second;
        Json names = Json::array();
        auto mit = verdict.matched_routines.find(family);
        if (mit != verdict.matched_routines.end()) {
            for (const auto& name : mit->second) names.push_back(name);
        }
        matched[key] = std::move(names);
    }
    j["scores"] = std::move(scores);
    j["matched_routines"] = std::move(matched);
    j["verdict"] = std::string(to_string(verdict.kind));
    if (verdict.derived_from) {
        j["family"] = std::string(to_string(*verdict.derived_from));
    }
    j["confidence"] = std::string(to_string(verdict.confidence));
    j["thresholds"] = thresholds_json(verdict.thresholds_used);
    j["summary"] = verdict.describe();
    return j;
}

Json similarity_json(const FingerprintSet& a, const FingerprintSet& b,
                     const SimilarityScore& score) {
    Json j;
    j["k"] = a.k;
    j["winnow_w"] = a.winnow_w;
    j["mask_operands"] = a.masked;
    j["grams_a"] = a.hashes.size();
    j["grams_b"] = b.hashes.size();
    j["shared_grams"] = score.shared_grams;
    j["jaccard"] = Json{{"num", score.jaccard.num}, {"den", score.jaccard.den},
                        {"value", score.jaccard.value()}};
    j["containment_a_in_b"] = Json{{"num", score.containment_a_in_b.num},
                                   {"den", score.containment_a_in_b.den},
                                   {"value", score.containment_a_in_b.value()}};
    j["containment_b_in_a"] = Json{{"num", score.containment_b_in_a.num},
                                   {"den", score.containment_b_in_a.den},
                                   {"value", score.containment_b_in_a.value()}};
    return j;
}

Json scan_report(const RomImage& rom, const std::string& db_version,
                 const std::vector<MatchHit>& hits, std::int64_t timing_ms) {
    Json j = report_skeleton(db_version);
    j["rom"] = rom_json(rom);
    j["hits"] = hits_json(hits);
    j["timing_ms"] = timing_ms;
    return j;
}

Json classify_report(const RomImage& rom, const std::string& db_version,
                     const std::vector<MatchHit>& hits, const RoutineMap& rmap,
                     const LineageVerdict& verdict, std::int64_t timing_ms) {
    Json j = report_skeleton(db_version);
    j["rom"] = rom_json(rom);
    j["hits"] = hits_json(hits);
    j["routine_map"] = routine_map_json(rmap);
    j["verdict"] = verdict_json(verdict);
    j["timing_ms"] = timing_ms;
    return j;
}

Json compare_report(const RomImage& rom_a, const RomImage& rom_b,
                    const FingerprintSet& fp_a, const FingerprintSet& fp_b,
                    const SimilarityScore& score, std::int64_t timing_ms) {
    Json j = report_skeleton("");
    j.erase("db_version"); // similarity runs without a signature db
    j["rom_a"] = rom_json(rom_a);
    j["rom_b"] = rom_json(rom_b);
    j["similarity"] = similarity_json(fp_a, fp_b, score);
    j["timing_ms"] = timing_ms;
    return j;
}

Json batch_report(const std::vector<BatchRow>& rows, const std::string& db_version,
                  std::int64_t timing_ms) {
    Json j = report_skeleton(db_version);
    Json list = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["machine"] = row.machine.name;
        r["cpu"] = row.machine.cpu;
        r["expected"] = std::string(to_string(row.machine.expected_lineage));
        r["rom_path"] = row.rom_path;
        switch (row.status) {
        case BatchRow::Status::Ok: r["status"] = "ok"; break;
        case BatchRow::Status::Skipped: r["status"] = "skipped"; break;
        case BatchRow::Status::Failed: r["status"] = "failed"; break;
        }
        if (!row.note.empty()) r["note"] = row.note;
        if (row.verdict) r["verdict"] = verdict_json(*row.verdict);
        if (row.agreement) r["agreement"] = *row.agreement;
        list.push_back(std::move(r));
    }
    j["machines"] = std::move(list);
    j["timing_ms"] = timing_ms;
    return j;
}

std::string emit_defs(const RoutineMap& rmap, DefsFormat format, const std::string& prefix) {
    if (rmap.empty()) {
        throw Error(Errc::NothingToEmit, "routine map is empty, nothing to emit");
    }
    const bool is_asm = format == DefsFormat::Asm;
    const char* comment = is_asm ? ";" : "//";

    std::ostringstream out;
    out << comment << " entry points exported by " << kToolName << " " << kToolVersion
        << "\n";
    for (const auto& [name, entries] : rmap.entries) {
        std::set<std::uint16_t> addresses;
        for (const auto& entry : entries) addresses.insert(entry.entry_address);
        std::string symbol = symbol_name(prefix, name);

        auto emit_line = [&](const std::string& sym, std::uint16_t address) {
            if (is_asm) {
                out << "defc " << sym << " = $" << hex4(address) << "\n";
            } else {
                out << "#define " << sym << " 0x" << hex4(address) << "\n";
            }
        };

        if (addresses.size() == 1) {
            emit_line(symbol, *addresses.begin());
        } else {
            out << comment << " warning: " << name << " matched " << addresses.size()
                << " distinct addresses\n";
            std::size_t index = 1;
            for (std::uint16_t address : addresses) {
                emit_line(symbol + "_" + std::to_string(index), address);
                ++index;
            }
        }
    }
    return out.str();
}

} // namespace romlin
