#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isovolc {

enum class ErrorKind {
    NonPrime,
    BadCharacteristic,
    DivisionByZero,
    ContextMismatch,
    BadInput,
    NotInSubgroup,
    SingularCurve,
    SpecialJInvariant,
    BadTrace,
    Supersingular,
    NoMatchingTwist,
    FieldTooLarge,
    UnfactorableDiscriminant,
    DivisorSupportHit,
    BadOrder,
    EmbeddingDegree,
    RandomnessExhausted,
    BadKernel,
    KernelNotRational,
    ParseError,
    WrongLevel,
    NeedExtension,
    NeedTwist,
    Degenerate,
    AboveSecondStability,
    FloorCurve,
    TrivialVolcano,
    NotOnCrater,
    RampartSingleton,
    NeedsModPoly,
};

std::string_view kind_name(ErrorKind k);

// 2 = bad input, 3 = mathematical precondition, 4 = resource limit
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace isovolc
