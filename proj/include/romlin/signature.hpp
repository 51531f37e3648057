#pragma once

#include "romlin/catalog.hpp"
#include "romlin/pattern.hpp"
#include "romlin/rom.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace romlin {

// A named routine pattern bound to a firmware family. variant_tag
// distinguishes alternative encodings of the same routine across ROM
// revisions; weight lets distinctive routines count for more than generic
// ones when scoring lineage.
struct Signature {
    std::string routine;
    Family family = Family::Microsoft;
    Architecture arch = Architecture::Z80;
    Pattern pattern;
    std::string variant_tag;
    int weight = 1;
    std::string provenance; // where the byte content comes from; written as a comment

    // Stable identifier used to tag match hits and order scan output.
    std::string id() const;
};

struct SignatureDb {
    std::vector<Signature> signatures;
    std::string db_version;
    std::string source; // "builtin" or the file path it was loaded from

    bool empty() const noexcept { return signatures.empty(); }
    std::size_t size() const noexcept { return signatures.size(); }
};

// Signature file format, line oriented:
//   family|arch|routine|variant_tag|weight|pattern-DSL
// '#' starts a comment; '# db_version: X' sets the version string.
SignatureDb load_signatures(const std::filesystem::path& path);
SignatureDb parse_signatures(std::istream& in, const std::string& source_name);
void write_signatures(std::ostream& out, const SignatureDb& db);

// The shipped default set. Byte content is authored from publicly
// documented ROM disassemblies and boot-screen text; each entry carries a
// provenance note.
const SignatureDb& builtin_db();

SignatureDb filter(const SignatureDb& db, std::optional<Architecture> arch,
                   std::optional<Family> family);

// Union of scan() over every signature, each hit tagged with the
// signature id; result ordered by (offset, pattern_name). Signatures may
// be scanned concurrently; the ordering contract holds regardless.
std::vector<MatchHit> scan_all(const RomImage& rom, const SignatureDb& db,
                               std::size_t max_threads = 0);

} // namespace romlin
