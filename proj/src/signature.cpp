#include "romlin/signature.hpp"

#include "romlin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace romlin {

namespace {

std::string trimmed(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == '|') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

void check_db_invariants(const SignatureDb& db, const std::string& source_name) {
    if (db.signatures.empty()) {
        throw Error(Errc::EmptyDb, source_name + ": signature database is empty");
    }
    std::set<std::tuple<std::string, Family, Architecture, std::string>> keys;
    for (const auto& sig : db.signatures) {
        if (sig.weight < 1 || sig.weight > 10) {
            throw Error(Errc::SignatureLoad,
                        source_name + ": signature '" + sig.routine + "' weight " +
                            std::to_string(sig.weight) + " outside 1..10");
        }
        if (!keys.insert({sig.routine, sig.family, sig.arch, sig.variant_tag}).second) {
            throw Error(Errc::SignatureLoad,
                        source_name + ": duplicate signature (" + sig.routine + ", " +
                            std::string(to_string(sig.family)) + ", " +
                            std::string(to_string(sig.arch)) + ", " + sig.variant_tag + ")");
        }
    }
}

} // namespace

std::string Signature::id() const {
    std::string out(to_string(family));
    out += ':';
    out += to_string(arch);
    out += ':';
    out += routine;
    out += ':';
    out += variant_tag;
    return out;
}

SignatureDb parse_signatures(std::istream& in, const std::string& source_name) {
    SignatureDb db;
    db.source = source_name;
    db.db_version = "unversioned";

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            static const std::string kVersionTag = "# db_version:";
            if (t.rfind(kVersionTag, 0) == 0) {
                db.db_version = trimmed(t.substr(kVersionTag.size()));
            }
            continue;
        }
        auto fields = split_fields(t);
        if (fields.size() != 6) {
            throw Error(Errc::SignatureLoad,
                        source_name + ":" + std::to_string(line_no) +
                            ": expected 6 '|'-separated fields, got " +
                            std::to_string(fields.size()));
        }
        Signature sig;
        auto family = parse_family(trimmed(fields[0]));
        if (!family) {
            throw Error(Errc::SignatureLoad, source_name + ":" + std::to_string(line_no) +
                                                 ": unknown family '" + fields[0] + "'");
        }
        sig.family = *family;
        auto arch = parse_arch(trimmed(fields[1]));
        if (!arch) {
            throw Error(Errc::SignatureLoad, source_name + ":" + std::to_string(line_no) +
                                                 ": unknown arch '" + fields[1] + "'");
        }
        sig.arch = *arch;
        sig.routine = trimmed(fields[2]);
        if (sig.routine.empty()) {
            throw Error(Errc::SignatureLoad,
                        source_name + ":" + std::to_string(line_no) + ": empty routine name");
        }
        sig.variant_tag = trimmed(fields[3]);
        try {
            sig.weight = std::stoi(trimmed(fields[4]));
        } catch (const std::exception&) {
            throw Error(Errc::SignatureLoad, source_name + ":" + std::to_string(line_no) +
                                                 ": bad weight '" + fields[4] + "'");
        }
        try {
            sig.pattern = compile_pattern(trimmed(fields[5]));
        } catch (const Error& e) {
            throw Error(Errc::SignatureLoad, source_name + ":" + std::to_string(line_no) +
                                                 ": signature '" + sig.routine +
                                                 "': " + e.what());
        }
        db.signatures.push_back(std::move(sig));
    }
    check_db_invariants(db, source_name);
    return db;
}

SignatureDb load_signatures(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoError, "cannot open signature file: " + path.string());
    }
    return parse_signatures(in, path.string());
}

void write_signatures(std::ostream& out, const SignatureDb& db) {
    out << "# db_version: " << db.db_version << "\n";
    for (const auto& sig : db.signatures) {
        if (!sig.provenance.empty()) {
            out << "# " << sig.provenance << "\n";
        }
        out << to_string(sig.family) << '|' << to_string(sig.arch) << '|' << sig.routine
            << '|' << sig.variant_tag << '|' << sig.weight << '|'
            << sig.pattern.source_text << "\n";
    }
}

SignatureDb filter(const SignatureDb& db, std::optional<Architecture> arch,
                   std::optional<Family> family) {
    SignatureDb out;
    out.db_version = db.db_version;
    out.source = db.source;
    for (const auto& sig : db.signatures) {
        if (arch && sig.arch != *arch) continue;
        if (family && sig.family != *family) continue;
        out.signatures.push_back(sig);
    }
    return out;
}

std::vector<MatchHit> scan_all(const RomImage& rom, const SignatureDb& db,
                               std::size_t max_threads) {
    std::vector<std::vector<MatchHit>> per_signature(db.signatures.size());

    std::size_t workers = max_threads != 0 ? max_threads
                                           : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, db.signatures.size());

    if (workers <= 1 || db.signatures.size() < 2) {
        for (std::size_t i = 0; i < db.signatures.size(); ++i) {
            per_signature[i] = scan(rom, db.signatures[i].pattern, db.signatures[i].id());
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= db.signatures.size()) return;
                per_signature[i] = scan(rom, db.signatures[i].pattern, db.signatures[i].id());
            }
        };
        std::vector<std::future<void>> tasks;
        tasks.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            tasks.push_back(std::async(std::launch::async, worker));
        }
        for (auto& task : tasks) task.get(); // rethrows scan errors
    }

    std::vector<MatchHit> hits;
    for (auto& list : per_signature) {
        hits.insert(hits.end(), std::make_move_iterator(list.begin()),
                    std::make_move_iterator(list.end()));
    }
    std::sort(hits.begin(), hits.end(), [](const MatchHit& a, const MatchHit& b) {
        if (a.offset != b.offset) return a.offset < b.offset;
        return a.pattern_name < b.pattern_name;
    });
    return hits;
}

} // namespace romlin
