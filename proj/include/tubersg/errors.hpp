#pragma once

#include <stdexcept>
#include <string>

namespace tubersg {

// Failure categories surfaced by the library. The CLI maps these onto its
// exit-code contract (data/validation errors vs I/O errors).
enum class Errc {
    GridMismatch,
    InsufficientReplicates,
    InvalidWeight,
    NonPositiveBuoyancy,
    InvalidValue,
    DegenerateDesign,
    DegenerateTarget,
    InsufficientData,
    MissingChannel,
    FrequencyOutOfRange,
    RankDeficient,
    InvalidPermittivity,
    MalformedModelFile,
    UnsupportedVersion,
    ShapeMismatch,
    EmptyInput,
    DivisionByZeroTruth,
    InsufficientSamplesForType,
    ParseError,
    IoError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace tubersg
