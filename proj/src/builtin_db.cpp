#include "romlin/signature.hpp"

namespace romlin {

namespace {

struct BuiltinRow {
    Family family;
    Architecture arch;
    const char* routine;
    const char* variant;
    int weight;
    const char* dsl;
    const char* provenance;
};

// Byte content below is authored from public reference material, not
// invented: the commented 48K Sinclair ROM disassembly (Logan & O'Hara),
// the widely mirrored listings of Microsoft's 8080/Z80 and 6502 BASIC
// ports (Altair 8K, TRS-80 Level II, NASCOM, Commodore/OSI), and
// boot-screen text visible on Hu-BASIC machines. Entries marked
// "verify" encode a documented idiom rather than a byte-for-byte quote
// of one specific dump; the gated corpus suite is the ground-truth check.
const BuiltinRow kBuiltinRows[] = {
    // --- Sinclair, Z80 -------------------------------------------------
    {Family::Sinclair, Architecture::Z80, "MAIN_ENTRY", "48k", 1,
     "F3 AF 11 FF FF C3 @main:abs16",
     "Sinclair 48K reset stub at 0000: DI / XOR A / LD DE,FFFF / JP nn; the JP operand "
     "is the interpreter entry (11CB on the original ROM). Logan & O'Hara disassembly."},
    {Family::Sinclair, Architecture::Z80, "ERROR_RESTART", "48k", 1,
     "2A 5D 5C 22 5F 5C 18 ?? C3 ?? ??",
     "RST 08 error handler at 0008: LD HL,(CH_ADD) / LD (X_PTR),HL / JR; system "
     "variables 5C5D/5C5F as in the 48K ROM. Logan & O'Hara disassembly."},
    {Family::Sinclair, Architecture::Z80, "PRINT_CHAR", "48k", 1,
     "18 ?? C3 @print_char:abs16 FF FF FF FF FF 2A 5D 5C 7E",
     "RST 10 print vector at 0010 (JP nn, 15F2 on the original ROM) between the error "
     "restart tail and the 0018 get-char code; 0013-0017 are FF filler. Logan & O'Hara."},
    {Family::Sinclair, Architecture::Z80, "CH_FETCH", "48k", 1,
     "2A 5D 5C 7E CD @skip_ws:abs16 D0 CD @advance:abs16 18 ??",
     "Get-char/next-char restarts at 0018/0020: LD HL,(CH_ADD) / LD A,(HL) / CALL "
     "skip-over / RET NC / CALL ch-add+1 / JR. Captures both helper entries. Logan & O'Hara."},
    {Family::Sinclair, Architecture::Z80, "FP_CALC", "48k", 1,
     "CD 74 00 18 ?? FF FF FF C3 @calc:abs16",
     "RST 28 calculator vector at 0028 (JP nn, 335B on the original ROM), anchored on the "
     "preceding next-char code and FF filler. Logan & O'Hara. verify"},
    {Family::Sinclair, Architecture::Z80, "WORKSPACE_RESERVE", "48k", 1,
     "C5 2A 61 5C E5 C3 @reserve:abs16",
     "RST 30 make-BC-spaces at 0030: PUSH BC / LD HL,(WORKSP) / PUSH HL / JP reserve. "
     "Logan & O'Hara. verify"},
    {Family::Sinclair, Architecture::Z80, "KEYBOARD_INT", "48k", 1,
     "F5 E5 2A 78 5C 23 22 78 5C",
     "IM1 handler at 0038: PUSH AF / PUSH HL / LD HL,(FRAMES) / INC HL / LD (FRAMES),HL. "
     "Logan & O'Hara."},
    {Family::Sinclair, Architecture::Z80, "FP_CONSTANTS", "48k", 2,
     "00 00 01 00 00 80 00 00 00 00 81 49 0F DA A2 00 00 0A 00 00",
     "Calculator constant table: one, half, pi/2 (81 49 0F DA A2), ten, in the 5-byte "
     "Sinclair FP encoding. Logan & O'Hara."},

    // --- Microsoft, Z80 ------------------------------------------------
    {Family::Microsoft, Architecture::Z80, "CHRGET", "jp-z", 2,
     "23 7E FE 3A D0 FE 20 CA @chrget:abs16",
     "Next-character scanner: INC HL / LD A,(HL) / CP 3A / RET NC / CP 20 / JP Z,chrget. "
     "8080-derived form as in the Altair 8K and NASCOM listings; capture points back at "
     "the routine head."},
    {Family::Microsoft, Architecture::Z80, "CHRGET", "jr-z", 2,
     "23 7E FE 3A D0 FE 20 28 ??",
     "Same scanner with the Z80 short branch (JR Z) as assembled in the TRS-80 Level II "
     "ROM (1D78)."},
    {Family::Microsoft, Architecture::Z80, "CPDEHL", "ms-generic", 1,
     "7C 92 C0 7D 93 C9",
     "HL:DE compare helper: LD A,H / SUB D / RET NZ / LD A,L / SUB E / RET. Verbatim in "
     "TRS-80 Level II and NASCOM listings (8080 heritage)."},
    {Family::Microsoft, Architecture::Z80, "TOKEN_TABLE", "8k-order", 2,
     "C5 4E 44 C6 4F 52 CE 45 58 54 C4 41 54 41",
     "Keyword table head END/FOR/NEXT/DATA with bit 7 set on each first letter, the "
     "Altair 8K / NASCOM token order. verify"},
    {Family::Microsoft, Architecture::Z80, "TOKEN_TABLE", "trs80-order", 2,
     "C5 4E 44 C6 4F 52 D2 45 53 45 54",
     "Keyword table head END/FOR/RESET, the TRS-80 Level II token order, bit 7 on first "
     "letters. verify"},
    {Family::Microsoft, Architecture::Z80, "OPERATOR_PRECEDENCE", "ms-generic", 1,
     "79 79 7C 7C 7F 50 46",
     "Operator precedence byte table (+ - * / ^ AND OR -> 79 79 7C 7C 7F 50 46) as "
     "printed in 8K BASIC disassemblies. verify"},
    {Family::Microsoft, Architecture::Z80, "LOG_CONSTANTS", "ms-generic", 2,
     "F3 04 35 80 F3 04 35 81 00 00 80 80 18 72 31 80",
     "LOG constant run SQR(.5), SQR(2), -0.5, LN(2) in the packed 32-bit Microsoft "
     "single format (LSB-first, sign folded into the mantissa MSB). Ordering mirrors the "
     "6502 siblings. verify"},
    {Family::Microsoft, Architecture::Z80, "MEMORY_SIZE_PROMPT", "ms-generic", 1,
     "4D 45 4D 4F 52 59 20 53 49 5A 45",
     "Startup prompt text 'MEMORY SIZE' common to Altair 8K / TRS-80 Level II / NASCOM "
     "builds. Plain ASCII."},
    {Family::Microsoft, Architecture::Z80, "EXTRA_IGNORED_MSG", "ms-generic", 1,
     "45 58 54 52 41 20 49 47 4E 4F 52 45 44",
     "INPUT warning text 'EXTRA IGNORED'. Plain ASCII."},
    {Family::Microsoft, Architecture::Z80, "REDO_FROM_START_MSG", "ms-generic", 1,
     "52 45 44 4F 20 46 52 4F 4D 20 53 54 41 52 54",
     "INPUT warning text 'REDO FROM START'. Plain ASCII."},

    // --- HuBasic, Z80 --------------------------------------------------
    {Family::HuBasic, Architecture::Z80, "HU_BANNER", "x1", 3,
     "48 75 2D 42 41 53 49 43",
     "Product banner text 'Hu-BASIC' as shown at boot on Sharp X1 systems. Plain ASCII. "
     "verify"},
    {Family::HuBasic, Architecture::Z80, "HUDSON_COPYRIGHT", "upper", 2,
     "48 55 44 53 4F 4E 20 53 4F 46 54",
     "Vendor credit 'HUDSON SOFT' from the boot screen. Plain ASCII. verify"},
    {Family::HuBasic, Architecture::Z80, "HUDSON_COPYRIGHT", "mixed", 2,
     "48 75 64 73 6F 6E 20 53 6F 66 74",
     "Vendor credit 'Hudson Soft', mixed-case form. Plain ASCII. verify"},
    {Family::HuBasic, Architecture::Z80, "SYNTAX_ERROR_MSG", "x1", 1,
     "53 79 6E 74 61 78 20 65 72 72 6F 72",
     "Mixed-case message 'Syntax error' (Microsoft builds shout in upper case). Plain "
     "ASCII. verify"},
    {Family::HuBasic, Architecture::Z80, "READY_PROMPT", "x1", 1,
     "52 65 61 64 79 0D",
     "Mixed-case prompt 'Ready' followed by CR. Plain ASCII. verify"},
    {Family::HuBasic, Architecture::Z80, "BREAK_IN_MSG", "x1", 1,
     "42 72 65 61 6B 20 69 6E",
     "Mixed-case message 'Break in'. Plain ASCII. verify"},

    // --- Microsoft, 6502 -----------------------------------------------
    {Family::Microsoft, Architecture::M6502, "CHRGET", "zp", 3,
     "E6 ?? D0 02 E6 ?? AD ?? ?? C9 3A B0 0A C9 20 F0 EF 38 E9 30 38 E9 D0 60",
     "Zero-page CHRGET: INC zp / BNE +2 / INC zp / LDA abs / CMP #3A / BCS +A / CMP #20 "
     "/ BEQ -11 / SEC / SBC #30 / SEC / SBC #D0 / RTS. Identical modulo zero-page "
     "addresses across Commodore, OSI and Applesoft (per the published 6502 BASIC "
     "source tree); zp operands and the self-modified text pointer are wildcarded."},
    {Family::Microsoft, Architecture::M6502, "LOG_CONSTANTS", "5byte", 2,
     "80 35 04 F3 34 81 35 04 F3 34 80 80 00 00 00 80 31 72 17 F8",
     "LOG constant run SQR(.5), SQR(2), -0.5, LN(2) in the 5-byte unpacked format, as in "
     "the Commodore ROM disassemblies. verify"},
    {Family::Microsoft, Architecture::M6502, "ERROR_MESSAGES", "hibit-term", 2,
     "53 59 4E 54 41 D8 52 45 54 55 52 4E 20 57 49 54 48 4F 55 54 20 47 4F 53 55 C2",
     "Adjacent error strings 'SYNTAX' and 'RETURN WITHOUT GOSUB', last character bit-7 "
     "terminated, per Commodore/OSI message tables. verify"},
    {Family::Microsoft, Architecture::M6502, "EXTRA_IGNORED_MSG", "ms-generic", 1,
     "45 58 54 52 41 20 49 47 4E 4F 52 45 44",
     "INPUT warning text 'EXTRA IGNORED'. Plain ASCII."},
    {Family::Microsoft, Architecture::M6502, "REDO_FROM_START_MSG", "ms-generic", 1,
     "52 45 44 4F 20 46 52 4F 4D 20 53 54 41 52 54",
     "INPUT warning text 'REDO FROM START'. Plain ASCII."},
};

SignatureDb build_builtin() {
    SignatureDb db;
    db.db_version = "builtin-1";
    db.source = "builtin";
    for (const auto& row : kBuiltinRows) {
        Signature sig;
        sig.family = row.family;
        sig.arch = row.arch;
        sig.routine = row.routine;
        sig.variant_tag = row.variant;
        sig.weight = row.weight;
        sig.provenance = row.provenance;
        sig.pattern = compile_pattern(row.dsl); // default literal floor applies
        db.signatures.push_back(std::move(sig));
    }
    return db;
}

} // namespace

const SignatureDb& builtin_db() {
    static const SignatureDb db = build_builtin();
    return db;
}

} // namespace romlin
