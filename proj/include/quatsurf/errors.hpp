#pragma once

#include <stdexcept>
#include <string>

namespace quatsurf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};
struct DegenerateSpectralError : Error {
    using Error::Error;
};
struct DegenerateImmersionError : Error {
    using Error::Error;
};
struct ProfileInvalidError : Error {
    using Error::Error;
};
struct NotClosedError : Error {
    using Error::Error;
};
struct RoundSphereError : Error {
    using Error::Error;
};
struct StepTooCoarseError : Error {
    using Error::Error;
};
struct DefectiveMonodromyError : Error {
    using Error::Error;
};
struct BlowupError : Error {
    using Error::Error;
};
struct SingularEverywhereError : Error {
    using Error::Error;
};
struct NotIndependentError : Error {
    using Error::Error;
};
struct SplittingDegenerateError : Error {
    using Error::Error;
};
struct DegenerateDenominatorError : Error {
    using Error::Error;
};
struct NotSmoothError : Error {
    using Error::Error;
};
struct DependentSectionsError : Error {
    using Error::Error;
};
struct ConfigInvalidError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace quatsurf
