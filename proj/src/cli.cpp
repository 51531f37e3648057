#include "romlin/cli.hpp"

#include "romlin/catalog.hpp"
#include "romlin/errors.hpp"
#include "romlin/lineage.hpp"
#include "romlin/pattern.hpp"
#include "romlin/report.hpp"
#include "romlin/rom.hpp"
#include "romlin/signature.hpp"
#include "romlin/similarity.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>

namespace romlin::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::DslSyntax:
    case Errc::WeakPattern:
    case Errc::DuplicateSlot:
    case Errc::PatternTooLong:
    case Errc::RangeError:
    case Errc::TooShort:
    case Errc::ParamMismatch:
    case Errc::ArchMismatch:
        return kExitUsage;
    case Errc::NothingToEmit:
        return kExitEmpty;
    default:
        return kExitIo;
    }
}

std::uint16_t parse_u16(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        unsigned long value = std::stoul(text, &pos, 0); // accepts 0x prefix
        if (pos != text.size() || value > 0xFFFF) throw std::out_of_range(text);
        return static_cast<std::uint16_t>(value);
    } catch (const std::exception&) {
        throw Error(Errc::ParamMismatch,
                    std::string(what) + " must be a 16-bit value, got '" + text + "'");
    }
}

Architecture parse_arch_flag(const std::string& text) {
    auto arch = parse_arch(text);
    if (!arch) {
        throw Error(Errc::ParamMismatch, "unknown architecture '" + text + "' (z80 or 6502)");
    }
    return *arch;
}

std::string hex4(std::uint16_t value) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04X", value);
    return buf;
}

void order_hits(std::vector<MatchHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const MatchHit& a, const MatchHit& b) {
        if (a.offset != b.offset) return a.offset < b.offset;
        return a.pattern_name < b.pattern_name;
    });
}

struct WindowFlags {
    std::string offset; // empty = from start
    std::string length; // empty = to end
};

// Applies --offset/--length so banked images larger than the 16-bit
// space can be analyzed without cutting the file externally.
RomImage apply_window(RomImage rom, const WindowFlags& flags, std::uint16_t base) {
    if (flags.offset.empty() && flags.length.empty()) return rom;
    std::size_t offset = 0;
    if (!flags.offset.empty()) {
        try {
            offset = std::stoul(flags.offset, nullptr, 0);
        } catch (const std::exception&) {
            throw Error(Errc::ParamMismatch, "--offset must be a byte count");
        }
    }
    std::size_t length = rom.size() > offset ? rom.size() - offset : 0;
    if (!flags.length.empty()) {
        try {
            length = std::stoul(flags.length, nullptr, 0);
        } catch (const std::exception&) {
            throw Error(Errc::ParamMismatch, "--length must be a byte count");
        }
    }
    return select_window(rom, offset, length, base);
}

void print_hits_table(std::ostream& out, const std::vector<MatchHit>& hits) {
    out << "hits: " << hits.size() << "\n";
    if (hits.empty()) return;
    out << "OFFSET  ADDRESS  PATTERN                                    CAPTURES\n";
    for (const auto& hit : hits) {
        char head[32];
        std::snprintf(head, sizeof head, "0x%04zX  0x%s   ", hit.offset,
                      hex4(hit.address).c_str());
        out << head;
        std::string pattern = hit.pattern_name;
        if (pattern.size() < 40) pattern.resize(40, ' ');
        out << pattern << "  ";
        bool first = true;
        for (const auto& [slot, value] : hit.captures) {
            if (!first) out << " ";
            out << slot << "=0x" << hex4(value);
            first = false;
        }
        out << "\n";
    }
}

void print_rom_line(std::ostream& out, const RomImage& rom) {
    out << "rom: " << rom.source_name() << "  arch: " << to_string(rom.arch())
        << "  base: 0x" << hex4(rom.base_addr()) << "  size: " << rom.size()
        << "  sha256: " << rom.hash_hex() << "\n";
}

void print_verdict(std::ostream& out, const LineageVerdict& verdict) {
    out << "scores:";
    for (const auto& [family, score] : verdict.scores) {
        out << " " << to_string(family) << "=" << score;
    }
    out << "\n";
    for (const auto& [family, names] : verdict.matched_routines) {
        if (names.empty()) continue;
        out << "matched " << to_string(family) << ":";
        for (const auto& name : names) out << " " << name;
        out << "\n";
    }
    out << "verdict: " << verdict.describe() << " (confidence "
        << to_string(verdict.confidence) << ", t_derived="
        << verdict.thresholds_used.t_derived << ", t_original="
        << verdict.thresholds_used.t_original << ")\n";
}

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
        .count();
}

// --db replaces the builtin set; --pattern adds an ad-hoc test-mode
// pattern (alone, it is scanned by itself).
int cmd_scan(const std::string& rom_path, const std::string& arch_text,
             const std::string& base_text, const WindowFlags& window,
             const std::string& db_path, const std::string& adhoc, bool json,
             std::ostream& out, std::ostream& err) {
    auto start = Clock::now();
    Architecture arch = parse_arch_flag(arch_text);
    std::uint16_t base = parse_u16(base_text, "--base");
    RomImage rom = apply_window(load_rom(rom_path, arch, base), window, base);

    SignatureDb db;
    if (!db_path.empty()) db = load_signatures(db_path);
    else if (adhoc.empty()) db = builtin_db();
    else db.db_version = "adhoc";

    std::vector<MatchHit> hits;
    if (!db.empty()) {
        SignatureDb usable = filter(db, arch, std::nullopt);
        if (usable.empty() && adhoc.empty()) {
            err << "note: '" << db.source << "' has no signatures for "
                << to_string(arch) << "\n";
        }
        hits = scan_all(rom, usable);
    }
    if (!adhoc.empty()) {
        Pattern pattern = compile_pattern(adhoc, CompileOptions{.min_literals = 1});
        auto extra = scan(rom, pattern, "adhoc");
        hits.insert(hits.end(), extra.begin(), extra.end());
        order_hits(hits);
    }
    if (json) {
        out << scan_report(rom, db.db_version, hits, elapsed_ms(start)).dump(2) << "\n";
    } else {
        print_rom_line(out, rom);
        print_hits_table(out, hits);
    }
    return kExitOk;
}

int cmd_classify_single(const std::string& rom_path, const std::string& arch_text,
                        const std::string& base_text, const WindowFlags& window,
                        const std::string& db_path, Thresholds thresholds, bool json,
                        std::ostream& out) {
    auto start = Clock::now();
    Architecture arch = parse_arch_flag(arch_text);
    std::uint16_t base = parse_u16(base_text, "--base");
    RomImage rom = apply_window(load_rom(rom_path, arch, base), window, base);
    SignatureDb db = db_path.empty() ? builtin_db() : load_signatures(db_path);
    SignatureDb usable = filter(db, arch, std::nullopt);
    if (usable.empty()) {
        throw Error(Errc::ArchMismatch,
                    "signature db has no entries for " + std::string(to_string(arch)));
    }
    auto hits = scan_all(rom, usable);
    RoutineMap rmap = extract_entry_points(rom, db);
    LineageVerdict verdict = classify(rmap, thresholds);
    if (json) {
        out << classify_report(rom, db.db_version, hits, rmap, verdict, elapsed_ms(start))
                   .dump(2)
            << "\n";
    } else {
        print_rom_line(out, rom);
        print_hits_table(out, hits);
        print_verdict(out, verdict);
    }
    return kExitOk;
}

int cmd_classify_batch(const std::string& catalog_path, const std::string& db_path,
                       Thresholds thresholds, bool json, std::ostream& out) {
    auto start = Clock::now();
    auto catalog = load_catalog(catalog_path);
    SignatureDb db = db_path.empty() ? builtin_db() : load_signatures(db_path);
    fs::path base_dir = fs::path(catalog_path).parent_path();
    if (base_dir.empty()) base_dir = ".";
    auto rows = batch_classify(catalog, db, thresholds, base_dir);
    if (json) {
        out << batch_report(rows, db.db_version, elapsed_ms(start)).dump(2) << "\n";
        return kExitOk;
    }
    out << "MACHINE                  EXPECTED    VERDICT                  AGREE\n";
    for (const auto& row : rows) {
        std::string verdict_text;
        std::string agree_text = "-";
        switch (row.status) {
        case BatchRow::Status::Ok:
            verdict_text = row.verdict->describe();
            if (row.agreement) agree_text = *row.agreement ? "yes" : "NO";
            break;
        case BatchRow::Status::Skipped:
            verdict_text = "skipped: " + row.note;
            break;
        case BatchRow::Status::Failed:
            verdict_text = "failed: " + row.note;
            break;
        }
        std::string name = row.machine.name;
        if (name.size() < 23) name.resize(23, ' ');
        std::string expected(to_string(row.machine.expected_lineage));
        if (expected.size() < 10) expected.resize(10, ' ');
        if (verdict_text.size() < 23) verdict_text.resize(23, ' ');
        out << name << "  " << expected << "  " << verdict_text << "  " << agree_text
            << "\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& arch_text, std::size_t k, std::size_t winnow_w,
                bool mask_operands, bool json, std::ostream& out) {
    auto start = Clock::now();
    Architecture arch = parse_arch_flag(arch_text);
    RomImage rom_a = load_rom(path_a, arch, 0x0000);
    RomImage rom_b = load_rom(path_b, arch, 0x0000);
    FingerprintOptions options{.k = k, .winnow_w = winnow_w, .mask_operands = mask_operands};
    FingerprintSet fp_a = fingerprint(rom_a, options);
    FingerprintSet fp_b = fingerprint(rom_b, options);
    SimilarityScore score = compare_fingerprints(fp_a, fp_b);
    if (json) {
        out << compare_report(rom_a, rom_b, fp_a, fp_b, score, elapsed_ms(start)).dump(2)
            << "\n";
    } else {
        print_rom_line(out, rom_a);
        print_rom_line(out, rom_b);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", score.jaccard.value());
        out << "jaccard: " << buf << " (" << score.jaccard.num << "/" << score.jaccard.den
            << ")\n";
        std::snprintf(buf, sizeof buf, "%.6f", score.containment_a_in_b.value());
        out << "containment a in b: " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.6f", score.containment_b_in_a.value());
        out << "containment b in a: " << buf << "\n";
        out << "shared grams: " << score.shared_grams << "\n";
    }
    return kExitOk;
}

int cmd_emit_defs(const std::string& rom_path, const std::string& arch_text,
                  const std::string& base_text, const WindowFlags& window,
                  const std::string& db_path, const std::string& format_text,
                  const std::string& prefix, std::ostream& out) {
    Architecture arch = parse_arch_flag(arch_text);
    std::uint16_t base = parse_u16(base_text, "--base");
    RomImage rom = apply_window(load_rom(rom_path, arch, base), window, base);
    SignatureDb db = db_path.empty() ? builtin_db() : load_signatures(db_path);
    RoutineMap rmap = extract_entry_points(rom, db);
    DefsFormat format;
    if (format_text == "asm") format = DefsFormat::Asm;
    else if (format_text == "header") format = DefsFormat::Header;
    else throw Error(Errc::ParamMismatch, "--format must be asm or header");
    out << emit_defs(rmap, format, prefix);
    return kExitOk;
}

int cmd_catalog_validate(const std::string& catalog_path, std::ostream& out) {
    auto catalog = load_catalog(catalog_path);
    fs::path base_dir = fs::path(catalog_path).parent_path();
    if (base_dir.empty()) base_dir = ".";
    std::size_t analyzable = 0, with_roms = 0;
    for (const auto& rec : catalog) {
        auto arch = arch_for_cpu(rec.cpu);
        if (arch) ++analyzable;
        std::string rom_state;
        if (rec.rom_paths.empty()) {
            rom_state = "no rom";
        } else {
            ++with_roms;
            std::size_t present = 0;
            for (const auto& p : rec.rom_paths) {
                if (fs::exists(base_dir / p)) ++present;
            }
            rom_state = std::to_string(present) + "/" + std::to_string(rec.rom_paths.size()) +
                        " rom files present";
        }
        out << rec.name << ": cpu=" << rec.cpu << " ("
            << (arch ? std::string(to_string(*arch)) : std::string("not analyzable"))
            << "), year=" << rec.year << ", expected=" << to_string(rec.expected_lineage)
            << ", " << rom_state << "\n";
    }
    out << catalog.size() << " records, " << analyzable << " analyzable, " << with_roms
        << " with ROM paths\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ROM routine signature scanner and firmware lineage analyzer"};
    app.require_subcommand(1);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "scan a ROM image for routine signatures");
    std::string scan_rom, scan_arch, scan_base = "0", scan_db, scan_pattern;
    WindowFlags scan_window;
    bool scan_json = false;
    scan_cmd->add_option("rom", scan_rom, "ROM file")->required();
    scan_cmd->add_option("--arch", scan_arch, "z80 or 6502")->required();
    scan_cmd->add_option("--base", scan_base, "load address (default 0)");
    scan_cmd->add_option("--offset", scan_window.offset,
                         "analyze a window starting at this byte offset");
    scan_cmd->add_option("--length", scan_window.length, "window length in bytes");
    scan_cmd->add_option("--db", scan_db, "signature file replacing the builtin set");
    scan_cmd->add_option("--pattern", scan_pattern,
                         "ad-hoc pattern DSL (test mode, literal floor 1)");
    scan_cmd->add_flag("--json", scan_json, "emit the JSON report");

    // classify
    auto* classify_cmd =
        app.add_subcommand("classify", "classify a ROM's interpreter lineage");
    std::string cls_rom, cls_arch = "z80", cls_base = "0", cls_db, cls_catalog;
    WindowFlags cls_window;
    int cls_t_derived = Thresholds{}.t_derived;
    int cls_t_original = Thresholds{}.t_original;
    bool cls_json = false;
    classify_cmd->add_option("rom", cls_rom, "ROM file (single mode)");
    classify_cmd->add_option("--arch", cls_arch, "z80 or 6502 (single mode)");
    classify_cmd->add_option("--base", cls_base, "load address (default 0)");
    classify_cmd->add_option("--offset", cls_window.offset,
                             "analyze a window starting at this byte offset");
    classify_cmd->add_option("--length", cls_window.length, "window length in bytes");
    classify_cmd->add_option("--catalog", cls_catalog, "machine catalog (batch mode)");
    classify_cmd->add_option("--db", cls_db, "signature file replacing the builtin set");
    classify_cmd->add_option("--t-derived", cls_t_derived,
                             "distinct-routine score needed for a derived verdict");
    classify_cmd->add_option("--t-original", cls_t_original,
                             "largest score still considered no-match");
    classify_cmd->add_flag("--json", cls_json, "emit the JSON report");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "k-gram similarity of two ROMs");
    std::string cmp_a, cmp_b, cmp_arch = "z80";
    std::size_t cmp_k = kDefaultGramLen, cmp_w = 0;
    bool cmp_mask = false, cmp_json = false;
    compare_cmd->add_option("rom_a", cmp_a, "first ROM")->required();
    compare_cmd->add_option("rom_b", cmp_b, "second ROM")->required();
    compare_cmd->add_option("--arch", cmp_arch, "architecture for operand masking");
    compare_cmd->add_option("--k", cmp_k, "gram length in bytes (default 16, min 4)");
    compare_cmd->add_option("--winnow", cmp_w, "winnowing window (0 = off)");
    compare_cmd->add_flag("--mask-operands", cmp_mask,
                          "zero abs call/jump operands before hashing");
    compare_cmd->add_flag("--json", cmp_json, "emit the JSON report");

    // emit-defs
    auto* defs_cmd =
        app.add_subcommand("emit-defs", "export entry points as symbol definitions");
    std::string defs_rom, defs_arch, defs_base = "0", defs_db, defs_format = "asm",
                defs_prefix;
    WindowFlags defs_window;
    defs_cmd->add_option("rom", defs_rom, "ROM file")->required();
    defs_cmd->add_option("--arch", defs_arch, "z80 or 6502")->required();
    defs_cmd->add_option("--base", defs_base, "load address (default 0)");
    defs_cmd->add_option("--offset", defs_window.offset,
                         "analyze a window starting at this byte offset");
    defs_cmd->add_option("--length", defs_window.length, "window length in bytes");
    defs_cmd->add_option("--db", defs_db, "signature file replacing the builtin set");
    defs_cmd->add_option("--format", defs_format, "asm (defc) or header (#define)");
    defs_cmd->add_option("--prefix", defs_prefix, "symbol name prefix");

    // catalog validate
    auto* catalog_cmd = app.add_subcommand("catalog", "machine catalog utilities");
    catalog_cmd->require_subcommand(1);
    auto* validate_cmd = catalog_cmd->add_subcommand("validate", "parse and check a catalog");
    std::string val_catalog;
    validate_cmd->add_option("catalog", val_catalog, "catalog csv file")->required();

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (scan_cmd->parsed()) {
            return cmd_scan(scan_rom, scan_arch, scan_base, scan_window, scan_db,
                            scan_pattern, scan_json, out, err);
        }
        if (classify_cmd->parsed()) {
            Thresholds thresholds{cls_t_derived, cls_t_original};
            if (!cls_catalog.empty()) {
                if (!cls_rom.empty()) {
                    throw Error(Errc::ParamMismatch,
                                "give either a ROM file or --catalog, not both");
                }
                return cmd_classify_batch(cls_catalog, cls_db, thresholds, cls_json, out);
            }
            if (cls_rom.empty()) {
                throw Error(Errc::ParamMismatch, "classify needs a ROM file or --catalog");
            }
            return cmd_classify_single(cls_rom, cls_arch, cls_base, cls_window, cls_db,
                                       thresholds, cls_json, out);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(cmp_a, cmp_b, cmp_arch, cmp_k, cmp_w, cmp_mask, cmp_json,
                               out);
        }
        if (defs_cmd->parsed()) {
            return cmd_emit_defs(defs_rom, defs_arch, defs_base, defs_window, defs_db,
                                 defs_format, defs_prefix, out);
        }
        if (validate_cmd->parsed()) {
            return cmd_catalog_validate(val_catalog, out);
        }
        err << "no command given\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

} // namespace romlin::cli
