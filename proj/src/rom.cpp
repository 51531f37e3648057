#include "romlin/rom.hpp"

#include "romlin/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>

namespace romlin {

std::string_view to_string(Architecture arch) {
    switch (arch) {
    case Architecture::Z80: return "z80";
    case Architecture::M6502: return "6502";
    }
    return "?";
}

std::optional<Architecture> parse_arch(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "z80") return Architecture::Z80;
    if (lower == "6502" || lower == "m6502" || lower == "mos6502") return Architecture::M6502;
    return std::nullopt;
}

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len) {
    std::array<std::uint8_t, 32> digest{};
    unsigned int out_len = 0;
    if (EVP_Digest(data, len, digest.data(), &out_len, EVP_sha256(), nullptr) != 1 ||
        out_len != digest.size()) {
        throw Error(Errc::IoError, "sha256 digest failed");
    }
    return digest;
}

RomImage::RomImage(std::vector<std::uint8_t> bytes, Architecture arch,
                   std::uint16_t base_addr, std::string source_name)
    : bytes_(std::move(bytes)),
      arch_(arch),
      base_addr_(base_addr),
      source_name_(std::move(source_name)) {
    if (bytes_.empty()) {
        throw Error(Errc::EmptyRom, "ROM image is empty: " + source_name_);
    }
    if (bytes_.size() > kMaxRomBytes) {
        throw Error(Errc::WindowError,
                    "ROM image exceeds 1 MiB limit: " + source_name_);
    }
    content_hash_ = sha256(bytes_.data(), bytes_.size());
}

std::string RomImage::hash_hex() const {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : content_hash_) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0x0F]);
    }
    return out;
}

bool RomImage::address_resolvable() const noexcept {
    return static_cast<std::size_t>(base_addr_) + bytes_.size() - 1 <= 0xFFFF;
}

void RomImage::require_addressable() const {
    if (!address_resolvable()) {
        throw Error(Errc::WindowError,
                    "image does not fit the 16-bit address space; select a window first: " +
                        source_name_);
    }
}

RomImage load_rom(const std::filesystem::path& path, Architecture arch,
                  std::uint16_t base_addr) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(Errc::IoError, "not a readable ROM file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot open ROM file: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(Errc::IoError, "read failed: " + path.string());
    }
    return RomImage(std::move(bytes), arch, base_addr, path.filename().string());
}

RomImage load_rom_bytes(std::vector<std::uint8_t> bytes, Architecture arch,
                        std::uint16_t base_addr, std::string source_name) {
    return RomImage(std::move(bytes), arch, base_addr, std::move(source_name));
}

RomImage select_window(const RomImage& rom, std::size_t offset, std::size_t len,
                       std::uint16_t base_addr) {
    if (len == 0 || offset > rom.size() || len > rom.size() - offset) {
        throw Error(Errc::WindowError, "window out of range");
    }
    if (static_cast<std::size_t>(base_addr) + len - 1 > 0xFFFF) {
        throw Error(Errc::WindowError, "window does not fit the 16-bit address space");
    }
    std::vector<std::uint8_t> slice(rom.bytes().begin() + static_cast<std::ptrdiff_t>(offset),
                                    rom.bytes().begin() + static_cast<std::ptrdiff_t>(offset + len));
    return RomImage(std::move(slice), rom.arch(), base_addr, rom.source_name());
}

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::EmptyRom: return "EmptyRom";
    case Errc::IoError: return "IoError";
    case Errc::WindowError: return "WindowError";
    case Errc::CatalogParse: return "CatalogParseError";
    case Errc::TruncatedInstruction: return "TruncatedInstruction";
    case Errc::RangeError: return "RangeError";
    case Errc::DslSyntax: return "DslSyntaxError";
    case Errc::WeakPattern: return "WeakPatternError";
    case Errc::DuplicateSlot: return "DuplicateSlotError";
    case Errc::PatternTooLong: return "PatternTooLong";
    case Errc::SignatureLoad: return "SignatureLoadError";
    case Errc::EmptyDb: return "EmptyDb";
    case Errc::ArchMismatch: return "ArchMismatch";
    case Errc::TooShort: return "TooShort";
    case Errc::ParamMismatch: return "ParamMismatch";
    case Errc::NothingToEmit: return "NothingToEmit";
    }
    return "Error";
}

} // namespace romlin
