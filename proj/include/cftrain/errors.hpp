#pragma once

#include <stdexcept>
#include <string>

namespace cftrain {

// Base for every error raised by the library. Subclasses name the failure
// so callers (and tests) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CFTRAIN_DEFINE_ERROR(Name)             \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

CFTRAIN_DEFINE_ERROR(InvalidObject);
CFTRAIN_DEFINE_ERROR(InvalidParameter);
CFTRAIN_DEFINE_ERROR(MissingObservation);
CFTRAIN_DEFINE_ERROR(EmptyReference);
CFTRAIN_DEFINE_ERROR(EmptyDataset);
CFTRAIN_DEFINE_ERROR(CalibrationTooSmall);
CFTRAIN_DEFINE_ERROR(InvalidGrid);
CFTRAIN_DEFINE_ERROR(BadMagic);
CFTRAIN_DEFINE_ERROR(DimensionMismatch);
CFTRAIN_DEFINE_ERROR(CountMismatch);
CFTRAIN_DEFINE_ERROR(TruncatedFile);
CFTRAIN_DEFINE_ERROR(ZeroImage);
CFTRAIN_DEFINE_ERROR(InsufficientData);
CFTRAIN_DEFINE_ERROR(ConfigError);

#undef CFTRAIN_DEFINE_ERROR

} // namespace cftrain
