#pragma once

#include <stdexcept>
#include <string>

namespace altnu {

enum class ErrorKind {
    DeltaInvalid,
    ParseError,
    SizeLimit,
    NotShrinkable,
    PointOutsideRegion,
    BoxOutOfShape,
    NotNuTree,
    LengthMismatch,
    NotACover,
    NotALattice,
    CyclicCovers,
    NoUniqueMin,
    JoinMismatch,
    NotAFace,
    IncompatibleInput,
    ValidationFailed,
    UnrealizableSequence,
    NotApplicable,
    DimensionOverflow,
    FaceInvalid,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(std::string(to_string(k)) + ": " + msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace altnu
