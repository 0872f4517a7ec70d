#pragma once

#include <stdexcept>
#include <string>

namespace sigkern {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation required at least one increment but got a length-1 sequence.
class DegenerateSequence : public Error {
public:
    using Error::Error;
};

/// Vector/matrix/feature shapes do not line up.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A parameter violates its documented range (e.g. beta <= 0, M < 1).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Kernel or feature normalization hit a nonpositive norm.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Median heuristic collapsed to bandwidth 0 (all states identical).
class DegenerateBandwidth : public Error {
public:
    using Error::Error;
};

/// Brute-force enumeration would exceed its tractability guard.
class OracleTooLarge : public Error {
public:
    using Error::Error;
};

/// Requested feature tensor exceeds the per-sequence memory guard.
class MemoryGuardExceeded : public Error {
public:
    using Error::Error;
};

/// Synthetic trajectory has zero 1-variation and cannot be rescaled.
class DegenerateTrajectory : public Error {
public:
    using Error::Error;
};

/// Malformed input file; message carries "path:line:" context.
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace sigkern
