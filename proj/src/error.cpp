#include "isovolc/error.hpp"

namespace isovolc {

std::string_view kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::BadCharacteristic: return "BadCharacteristic";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::SpecialJInvariant: return "SpecialJInvariant";
    case ErrorKind::BadTrace: return "BadTrace";
    case ErrorKind::Supersingular: return "Supersingular";
    case ErrorKind::NoMatchingTwist: return "NoMatchingTwist";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::UnfactorableDiscriminant: return "UnfactorableDiscriminant";
    case ErrorKind::DivisorSupportHit: return "DivisorSupportHit";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::EmbeddingDegree: return "EmbeddingDegree";
    case ErrorKind::RandomnessExhausted: return "RandomnessExhausted";
    case ErrorKind::BadKernel: return "BadKernel";
    case ErrorKind::KernelNotRational: return "KernelNotRational";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::WrongLevel: return "WrongLevel";
    case ErrorKind::NeedExtension: return "NeedExtension";
    case ErrorKind::NeedTwist: return "NeedTwist";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::AboveSecondStability: return "AboveSecondStability";
    case ErrorKind::FloorCurve: return "FloorCurve";
    case ErrorKind::TrivialVolcano: return "TrivialVolcano";
    case ErrorKind::NotOnCrater: return "NotOnCrater";
    case ErrorKind::RampartSingleton: return "RampartSingleton";
    case ErrorKind::NeedsModPoly: return "NeedsModPoly";
    }
    return "Unknown";
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NonPrime:
    case ErrorKind::BadCharacteristic:
    case ErrorKind::ContextMismatch:
    case ErrorKind::BadInput:
    case ErrorKind::SingularCurve:
    case ErrorKind::SpecialJInvariant:
    case ErrorKind::BadTrace:
    case ErrorKind::Supersingular:
    case ErrorKind::NoMatchingTwist:
    case ErrorKind::ParseError:
    case ErrorKind::WrongLevel:
        return 2;
    case ErrorKind::FieldTooLarge:
    case ErrorKind::UnfactorableDiscriminant:
    case ErrorKind::RandomnessExhausted:
        return 4;
    default:
        return 3;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind)
{
}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace isovolc
