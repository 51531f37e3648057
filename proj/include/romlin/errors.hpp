#pragma once

#include <stdexcept>
#include <string>

namespace romlin {

enum class Errc {
    EmptyRom,
    IoError,
    WindowError,
    CatalogParse,
    TruncatedInstruction,
    RangeError,
    DslSyntax,
    WeakPattern,
    DuplicateSlot,
    PatternTooLong,
    SignatureLoad,
    EmptyDb,
    ArchMismatch,
    TooShort,
    ParamMismatch,
    NothingToEmit,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

const char* errc_name(Errc code);

} // namespace romlin
