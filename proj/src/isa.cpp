#include "romlin/isa.hpp"

#include "romlin/errors.hpp"

namespace romlin {

namespace {

constexpr std::uint16_t wrap16(std::uint32_t value) {
    return static_cast<std::uint16_t>(value & 0xFFFF);
}

constexpr std::uint16_t rel_target(std::uint16_t site, std::uint8_t disp) {
    // Displacement is relative to the byte after the 2-byte instruction.
    return wrap16(static_cast<std::uint32_t>(site) + 2 +
                  static_cast<std::uint32_t>(static_cast<std::int8_t>(disp)));
}

// Z80 condition codes in encoding order (bits 5-3 of the opcode).
const char* const kZ80Cond[8] = {"nz", "z", "nc", "c", "po", "pe", "p", "m"};

// 6502 branch conditions for opcodes 10,30,...,F0 (bits 7-6 select the
// flag, bit 5 the polarity).
const char* const k6502Branch[8] = {"pl", "mi", "vc", "vs", "cc", "cs", "ne", "eq"};

struct RawInstr {
    TransferKind kind;
    std::uint8_t length;
    std::string condition;
    bool abs_operand = false;  // 16-bit operand at bytes 1..2
    bool rel_operand = false;  // signed byte operand at byte 1
    std::uint16_t fixed_target = 0;
    bool has_fixed_target = false; // Z80 RST
};

RawInstr classify_z80(std::uint8_t op) {
    if (op == 0xCD) return {TransferKind::CallAbs, 3, "", true, false};
    if ((op & 0xC7) == 0xC4) // C4,CC,D4,DC,E4,EC,F4,FC: CALL cc,nn
        return {TransferKind::CallAbs, 3, kZ80Cond[(op >> 3) & 7], true, false};
    if (op == 0xC3) return {TransferKind::JumpAbs, 3, "", true, false};
    if ((op & 0xC7) == 0xC2) // C2,CA,D2,DA,E2,EA,F2,FA: JP cc,nn
        return {TransferKind::JumpAbs, 3, kZ80Cond[(op >> 3) & 7], true, false};
    if (op == 0x18) return {TransferKind::JumpRel, 2, "", false, true};
    if (op == 0x20 || op == 0x28 || op == 0x30 || op == 0x38) // JR cc,e
        return {TransferKind::JumpRel, 2, kZ80Cond[(op >> 3) & 3], false, true};
    if (op == 0xC9) return {TransferKind::RtsReturn, 1, ""};
    if ((op & 0xC7) == 0xC7) { // RST p: one-byte call to p = op & 0x38
        RawInstr r{TransferKind::CallAbs, 1, ""};
        r.fixed_target = static_cast<std::uint16_t>(op & 0x38);
        r.has_fixed_target = true;
        return r;
    }
    // CB/DD/ED/FD prefixed forms carry no CALL/JP/JR we care about.
    return {TransferKind::Other, 1, ""};
}

RawInstr classify_6502(std::uint8_t op) {
    if (op == 0x20) return {TransferKind::CallAbs, 3, "", true, false};  // JSR
    if (op == 0x4C) return {TransferKind::JumpAbs, 3, "", true, false};  // JMP abs
    if (op == 0x6C) return {TransferKind::JumpAbs, 3, "ind", true, false}; // JMP (ind)
    if ((op & 0x1F) == 0x10) // 10,30,50,70,90,B0,D0,F0
        return {TransferKind::BranchRel, 2, k6502Branch[op >> 5], false, true};
    if (op == 0x60) return {TransferKind::RtsReturn, 1, ""}; // RTS
    return {TransferKind::Other, 1, ""};
}

} // namespace

std::string_view to_string(TransferKind kind) {
    switch (kind) {
    case TransferKind::CallAbs: return "call-abs";
    case TransferKind::JumpAbs: return "jump-abs";
    case TransferKind::JumpRel: return "jump-rel";
    case TransferKind::BranchRel: return "branch-rel";
    case TransferKind::RtsReturn: return "return";
    case TransferKind::Other: return "other";
    }
    return "?";
}

ControlTransfer decode_at(const RomImage& rom, std::size_t offset) {
    const auto& bytes = rom.bytes();
    if (offset >= bytes.size()) {
        throw Error(Errc::TruncatedInstruction, "decode offset past end of image");
    }
    rom.require_addressable();

    std::uint8_t op = bytes[offset];
    RawInstr raw = rom.arch() == Architecture::Z80 ? classify_z80(op) : classify_6502(op);

    if (offset + raw.length > bytes.size()) {
        throw Error(Errc::TruncatedInstruction, "instruction truncated at end of image");
    }

    ControlTransfer ct;
    ct.kind = raw.kind;
    ct.opcode = op;
    ct.length = raw.length;
    ct.condition = raw.condition;
    if (raw.abs_operand) {
        ct.target = static_cast<std::uint16_t>(bytes[offset + 1] |
                                               (bytes[offset + 2] << 8));
    } else if (raw.rel_operand) {
        std::uint16_t site = wrap16(static_cast<std::uint32_t>(rom.base_addr()) +
                                    static_cast<std::uint32_t>(offset));
        ct.target = rel_target(site, bytes[offset + 1]);
    } else if (raw.has_fixed_target) {
        ct.target = raw.fixed_target;
    }
    return ct;
}

std::vector<std::uint8_t> encode_transfer(TransferKind kind, std::uint16_t target,
                                          std::uint16_t at_address, Architecture arch) {
    auto abs = [&](std::uint8_t op) {
        return std::vector<std::uint8_t>{op, static_cast<std::uint8_t>(target & 0xFF),
                                         static_cast<std::uint8_t>(target >> 8)};
    };
    auto rel = [&](std::uint8_t op) {
        std::uint16_t diff = wrap16(static_cast<std::uint32_t>(target) -
                                    static_cast<std::uint32_t>(at_address) - 2);
        if (diff > 0x007F && diff < 0xFF80) {
            throw Error(Errc::RangeError, "relative displacement out of signed 8-bit range");
        }
        return std::vector<std::uint8_t>{op, static_cast<std::uint8_t>(diff & 0xFF)};
    };

    if (arch == Architecture::Z80) {
        switch (kind) {
        case TransferKind::CallAbs: return abs(0xCD);
        case TransferKind::JumpAbs: return abs(0xC3);
        case TransferKind::JumpRel: return rel(0x18);
        case TransferKind::RtsReturn: return {0xC9};
        default: break;
        }
    } else {
        switch (kind) {
        case TransferKind::CallAbs: return abs(0x20);
        case TransferKind::JumpAbs: return abs(0x4C);
        case TransferKind::BranchRel: return rel(0xF0); // canonical branch: BEQ
        case TransferKind::RtsReturn: return {0x60};
        default: break;
        }
    }
    throw Error(Errc::RangeError,
                std::string("kind not encodable on ") + std::string(to_string(arch)));
}

bool has_abs_operand(std::uint8_t opcode, Architecture arch) {
    if (arch == Architecture::Z80) {
        RawInstr raw = classify_z80(opcode);
        return raw.abs_operand;
    }
    RawInstr raw = classify_6502(opcode);
    return raw.abs_operand;
}

} // namespace romlin
