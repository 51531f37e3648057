#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace romlin {

enum class Architecture { Z80, M6502 };

std::string_view to_string(Architecture arch);

// Accepts "z80", "6502", "m6502" (case-insensitive).
std::optional<Architecture> parse_arch(std::string_view text);

inline constexpr std::size_t kMaxRomBytes = 1u << 20;

// An immutable ROM payload plus the 16-bit address it is analyzed at.
// Images larger than 64 KiB may be loaded but must be windowed down
// before any address-resolving operation touches them.
class RomImage {
public:
    RomImage(std::vector<std::uint8_t> bytes, Architecture arch,
             std::uint16_t base_addr, std::string source_name);

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::size_t size() const noexcept { return bytes_.size(); }
    Architecture arch() const noexcept { return arch_; }
    std::uint16_t base_addr() const noexcept { return base_addr_; }
    const std::string& source_name() const noexcept { return source_name_; }
    const std::array<std::uint8_t, 32>& content_hash() const noexcept { return content_hash_; }
    std::string hash_hex() const;

    // True when base_addr + size - 1 fits in 16 bits; required by every
    // operation that maps offsets to addresses.
    bool address_resolvable() const noexcept;

    // Throws WindowError unless address_resolvable().
    void require_addressable() const;

private:
    std::vector<std::uint8_t> bytes_;
    Architecture arch_;
    std::uint16_t base_addr_;
    std::string source_name_;
    std::array<std::uint8_t, 32> content_hash_;
};

RomImage load_rom(const std::filesystem::path& path, Architecture arch,
                  std::uint16_t base_addr);

RomImage load_rom_bytes(std::vector<std::uint8_t> bytes, Architecture arch,
                        std::uint16_t base_addr, std::string source_name = "<bytes>");

RomImage select_window(const RomImage& rom, std::size_t offset, std::size_t len,
                       std::uint16_t base_addr);

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len);

} // namespace romlin
