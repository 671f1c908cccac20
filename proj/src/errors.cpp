#include "tubersg/errors.hpp"

namespace tubersg {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::InsufficientReplicates: return "InsufficientReplicates";
        case Errc::InvalidWeight: return "InvalidWeight";
        case Errc::NonPositiveBuoyancy: return "NonPositiveBuoyancy";
        case Errc::InvalidValue: return "InvalidValue";
        case Errc::DegenerateDesign: return "DegenerateDesign";
        case Errc::DegenerateTarget: return "DegenerateTarget";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::MissingChannel: return "MissingChannel";
        case Errc::FrequencyOutOfRange: return "FrequencyOutOfRange";
        case Errc::RankDeficient: return "RankDeficient";
        case Errc::InvalidPermittivity: return "InvalidPermittivity";
        case Errc::MalformedModelFile: return "MalformedModelFile";
        case Errc::UnsupportedVersion: return "UnsupportedVersion";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::DivisionByZeroTruth: return "DivisionByZeroTruth";
        case Errc::InsufficientSamplesForType: return "InsufficientSamplesForType";
        case Errc::ParseError: return "ParseError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace tubersg
