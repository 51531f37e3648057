#include "romlin/catalog.hpp"

#include "romlin/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace romlin {

namespace {

std::string lowered(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trimmed(std::string_view text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

// Minimal CSV field split with double-quote support so machine names may
// contain commas.
std::vector<std::string> split_csv_line(const std::string& line, int line_no,
                                        const std::string& source) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) {
        throw Error(Errc::CatalogParse, source + ":" + std::to_string(line_no) +
                                            ": unterminated quote");
    }
    fields.push_back(field);
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace

std::string_view to_string(Family family) {
    switch (family) {
    case Family::Microsoft: return "microsoft";
    case Family::Sinclair: return "sinclair";
    case Family::HuBasic: return "hubasic";
    }
    return "?";
}

std::string_view to_string(Lineage lineage) {
    switch (lineage) {
    case Lineage::Microsoft: return "microsoft";
    case Lineage::Sinclair: return "sinclair";
    case Lineage::HuBasic: return "hubasic";
    case Lineage::Original: return "original";
    case Lineage::Unknown: return "unknown";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view text) {
    std::string t = lowered(text);
    if (t == "microsoft") return Family::Microsoft;
    if (t == "sinclair") return Family::Sinclair;
    if (t == "hubasic") return Family::HuBasic;
    return std::nullopt;
}

std::optional<Lineage> parse_lineage(std::string_view text) {
    std::string t = lowered(text);
    if (t == "microsoft") return Lineage::Microsoft;
    if (t == "sinclair") return Lineage::Sinclair;
    if (t == "hubasic") return Lineage::HuBasic;
    if (t == "original") return Lineage::Original;
    if (t == "unknown" || t.empty()) return Lineage::Unknown;
    return std::nullopt;
}

std::optional<Architecture> arch_for_cpu(std::string_view cpu) {
    std::string t = lowered(trimmed(cpu));
    if (t == "z80" || t == "u880" || t == "mmn80" || t == "lh0080") {
        return Architecture::Z80;
    }
    if (t == "6502" || t == "um6502" || t == "m6502" || t == "mos6502") {
        return Architecture::M6502;
    }
    return std::nullopt;
}

std::vector<MachineRecord> parse_catalog(std::istream& in, const std::string& source_name) {
    std::vector<MachineRecord> records;
    std::set<std::string> seen_names;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_seen) {
            // Header line is mandatory: name,country,cpu,year,expected_lineage,rom_path
            header_seen = true;
            if (lowered(t).rfind("name,", 0) != 0) {
                throw Error(Errc::CatalogParse,
                            source_name + ":" + std::to_string(line_no) +
                                ": missing catalog header line");
            }
            continue;
        }
        auto fields = split_csv_line(t, line_no, source_name);
        if (fields.size() != 6) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(fields.size()));
        }
        MachineRecord rec;
        rec.name = trimmed(fields[0]);
        rec.country = trimmed(fields[1]);
        rec.cpu = trimmed(fields[2]);
        if (rec.name.empty()) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": empty machine name");
        }
        try {
            rec.year = std::stoi(trimmed(fields[3]));
        } catch (const std::exception&) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": bad year '" +
                            fields[3] + "'");
        }
        if (rec.year < 1975 || rec.year > 1999) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": year " +
                            std::to_string(rec.year) + " outside 1975..1999");
        }
        auto lineage = parse_lineage(trimmed(fields[4]));
        if (!lineage) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": bad expected_lineage '" +
                            fields[4] + "'");
        }
        rec.expected_lineage = *lineage;
        // rom_path holds zero or more file references separated by ';'.
        std::stringstream paths(fields[5]);
        std::string p;
        while (std::getline(paths, p, ';')) {
            p = trimmed(p);
            if (!p.empty()) rec.rom_paths.push_back(p);
        }
        if (!seen_names.insert(rec.name).second) {
            throw Error(Errc::CatalogParse,
                        source_name + ":" + std::to_string(line_no) + ": duplicate machine name '" +
                            rec.name + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<MachineRecord> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoError, "cannot open catalog: " + path.string());
    }
    return parse_catalog(in, path.filename().string());
}

void write_catalog(std::ostream& out, const std::vector<MachineRecord>& records) {
    out << "name,country,cpu,year,expected_lineage,rom_path\n";
    for (const auto& rec : records) {
        std::string paths;
        for (std::size_t i = 0; i < rec.rom_paths.size(); ++i) {
            if (i) paths += ";";
            paths += rec.rom_paths[i];
        }
        out << csv_escape(rec.name) << ',' << csv_escape(rec.country) << ','
            << csv_escape(rec.cpu) << ',' << rec.year << ','
            << to_string(rec.expected_lineage) << ',' << csv_escape(paths) << '\n';
    }
}

} // namespace romlin
