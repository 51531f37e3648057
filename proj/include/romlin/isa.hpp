#pragma once

#include "romlin/rom.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace romlin {

enum class TransferKind { CallAbs, JumpAbs, JumpRel, BranchRel, RtsReturn, Other };

std::string_view to_string(TransferKind kind);

// One classified control-transfer instruction. target is present exactly
// for the four transfer kinds that carry one; condition is empty for
// unconditional forms ("ind" marks the 6502 indirect JMP, whose target is
// the vector address, not the dereferenced destination).
struct ControlTransfer {
    TransferKind kind = TransferKind::Other;
    std::uint8_t opcode = 0;
    std::uint8_t length = 1; // 1..3 bytes
    std::optional<std::uint16_t> target;
    std::string condition;
};

// Classifies the instruction at `offset` and resolves its target address.
// Anything that is not a recognized control transfer decodes as Other with
// length 1; only a transfer cut off by the end of the image throws
// (TruncatedInstruction). Relative targets wrap mod 0x10000.
ControlTransfer decode_at(const RomImage& rom, std::size_t offset);

// Emits the canonical unconditional encoding for (kind, target) placed at
// at_address. Relative kinds throw RangeError when the displacement does
// not fit in a signed byte (computed mod 0x10000).
std::vector<std::uint8_t> encode_transfer(TransferKind kind, std::uint16_t target,
                                          std::uint16_t at_address, Architecture arch);

// True for the 3-byte absolute call/jump opcodes whose 16-bit operand the
// similarity pre-mask pass blanks out.
bool has_abs_operand(std::uint8_t opcode, Architecture arch);

} // namespace romlin
