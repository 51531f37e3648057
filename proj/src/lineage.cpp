#include "romlin/lineage.hpp"

#include "romlin/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace romlin {

namespace {

const Family kAllFamilies[] = {Family::Microsoft, Family::Sinclair, Family::HuBasic};

} // namespace

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::DerivedFrom: return "derived";
    case VerdictKind::Original: return "original";
    case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string_view to_string(Confidence confidence) {
    return confidence == Confidence::High ? "high" : "low";
}

RoutineMap extract_entry_points(const RomImage& rom, const SignatureDb& db) {
    SignatureDb usable = filter(db, rom.arch(), std::nullopt);
    if (usable.empty()) {
        throw Error(Errc::ArchMismatch,
                    "signature db has no entries for " + std::string(to_string(rom.arch())));
    }

    std::unordered_map<std::string, const Signature*> by_id;
    for (const auto& sig : usable.signatures) {
        by_id.emplace(sig.id(), &sig);
    }

    RoutineMap rmap;
    for (const auto& hit : scan_all(rom, usable)) {
        const Signature& sig = *by_id.at(hit.pattern_name);
        auto add = [&](const std::string& key, std::uint16_t address) {
            RoutineEntry entry;
            entry.entry_address = address;
            entry.family = sig.family;
            entry.variant_tag = sig.variant_tag;
            entry.hit_offset = hit.offset;
            entry.weight = sig.weight;
            entry.routine = sig.routine;
            rmap.entries[key].push_back(std::move(entry));
        };
        if (hit.captures.empty()) {
            // Body signature: the match site is the routine itself.
            add(sig.routine, hit.address);
        } else if (hit.captures.size() == 1) {
            add(sig.routine, hit.captures.begin()->second);
        } else {
            for (const auto& [slot, address] : hit.captures) {
                add(sig.routine + "." + slot, address);
            }
        }
    }
    for (auto& [key, list] : rmap.entries) {
        std::sort(list.begin(), list.end(), [](const RoutineEntry& a, const RoutineEntry& b) {
            if (a.entry_address != b.entry_address) return a.entry_address < b.entry_address;
            if (a.hit_offset != b.hit_offset) return a.hit_offset < b.hit_offset;
            return a.variant_tag < b.variant_tag;
        });
    }
    return rmap;
}

LineageVerdict classify(const RoutineMap& rmap, Thresholds thresholds) {
    if (thresholds.t_original < 0 || thresholds.t_derived <= thresholds.t_original) {
        throw Error(Errc::ParamMismatch, "need t_derived > t_original >= 0");
    }

    LineageVerdict verdict;
    verdict.thresholds_used = thresholds;

    // Duplicate sites never double-count: score by distinct base routine
    // name per family, taking the largest weight seen for that routine.
    std::map<Family, std::map<std::string, int>> routine_weight;
    for (const auto& [key, list] : rmap.entries) {
        for (const auto& entry : list) {
            int& w = routine_weight[entry.family][entry.routine];
            w = std::max(w, entry.weight);
        }
    }
    for (Family family : kAllFamilies) {
        int score = 0;
        verdict.matched_routines[family];
        for (const auto& [routine, weight] : routine_weight[family]) {
            score += weight;
            verdict.matched_routines[family].insert(routine);
        }
        verdict.scores[family] = score;
    }

    int top = 0, runner_up = 0;
    std::optional<Family> top_family;
    bool top_tied = false;
    for (Family family : kAllFamilies) {
        int score = verdict.scores[family];
        if (score > top) {
            runner_up = top;
            top = score;
            top_family = family;
            top_tied = false;
        } else if (score == top && top > 0) {
            top_tied = true;
            runner_up = top;
        } else if (score > runner_up) {
            runner_up = score;
        }
    }

    if (top <= thresholds.t_original) {
        verdict.kind = VerdictKind::Original;
    } else if (!top_tied && top_family && top >= thresholds.t_derived) {
        verdict.kind = VerdictKind::DerivedFrom;
        verdict.derived_from = top_family;
    } else {
        verdict.kind = VerdictKind::Inconclusive;
    }
    verdict.confidence =
        (rmap.empty() || top - runner_up >= 2) ? Confidence::High : Confidence::Low;
    return verdict;
}

std::string LineageVerdict::describe() const {
    switch (kind) {
    case VerdictKind::DerivedFrom:
        return "derived from " + std::string(to_string(*derived_from));
    case VerdictKind::Original:
        return "no known-family match";
    case VerdictKind::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

std::vector<BatchRow> batch_classify(const std::vector<MachineRecord>& catalog,
                                     const SignatureDb& db, Thresholds thresholds,
                                     const std::filesystem::path& base_dir) {
    std::vector<BatchRow> rows;
    for (const auto& machine : catalog) {
        if (machine.rom_paths.empty()) {
            BatchRow row;
            row.machine = machine;
            row.status = BatchRow::Status::Skipped;
            row.note = "no ROM file listed";
            rows.push_back(std::move(row));
            continue;
        }
        auto arch = arch_for_cpu(machine.cpu);
        for (const auto& path : machine.rom_paths) {
            BatchRow row;
            row.machine = machine;
            row.rom_path = path;
            if (!arch) {
                row.status = BatchRow::Status::Skipped;
                row.note = "cpu '" + machine.cpu + "' not analyzable";
                rows.push_back(std::move(row));
                continue;
            }
            try {
                RomImage rom = load_rom(base_dir / path, *arch, 0x0000);
                LineageVerdict verdict = classify(extract_entry_points(rom, db), thresholds);
                row.status = BatchRow::Status::Ok;
                if (machine.expected_lineage != Lineage::Unknown) {
                    bool agrees = false;
                    switch (verdict.kind) {
                    case VerdictKind::DerivedFrom:
                        agrees = (machine.expected_lineage == Lineage::Microsoft &&
                                  *verdict.derived_from == Family::Microsoft) ||
                                 (machine.expected_lineage == Lineage::Sinclair &&
                                  *verdict.derived_from == Family::Sinclair) ||
                                 (machine.expected_lineage == Lineage::HuBasic &&
                                  *verdict.derived_from == Family::HuBasic);
                        break;
                    case VerdictKind::Original:
                        agrees = machine.expected_lineage == Lineage::Original;
                        break;
                    case VerdictKind::Inconclusive:
                        agrees = false;
                        break;
                    }
                    row.agreement = agrees;
                }
                row.verdict = std::move(verdict);
            } catch (const Error& e) {
                row.status = BatchRow::Status::Failed;
                row.note = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace romlin
