#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace triplewell {

// Base class for every error this library reports deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller-supplied argument violates a precondition.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// The boundary function does not change sign over the supplied bracket.
class BracketError : public Error {
public:
    using Error::Error;
};

// A level scan hit its ceiling before finding the requested number of levels.
class IncompleteScanError : public Error {
public:
    IncompleteScanError(const std::string& msg, std::vector<std::string> found)
        : Error(msg), found_levels(std::move(found)) {}
    std::vector<std::string> found_levels;
};

// The working precision cannot support the requested evaluation: the
// boundary sum cancels down to rounding noise.
class PrecisionInsufficientError : public Error {
public:
    using Error::Error;
};

// Node counting disagreed between the base grid and the refined grid.
class NodeAmbiguityError : public Error {
public:
    using Error::Error;
};

// A solved level's node count contradicts its spectral index.
class NodeMismatchError : public Error {
public:
    using Error::Error;
};

// Well analysis found no minimum in the search interval.
class AnalysisError : public Error {
public:
    using Error::Error;
};

// The variational ground energy is independent of the mixing angle.
class DegenerateMinimumError : public Error {
public:
    using Error::Error;
};

// A wavefunction with zero norm cannot be normalized.
class DegenerateFunctionError : public Error {
public:
    using Error::Error;
};

}  // namespace triplewell
