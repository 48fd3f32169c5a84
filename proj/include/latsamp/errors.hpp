#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace latsamp {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLatticeError : LatticeError {
    explicit UnknownLatticeError(const std::string& name)
        : LatticeError("unknown lattice '" + name + "'"), name(name) {}
    std::string name;
};

struct SingularGeneratorError : LatticeError {
    using LatticeError::LatticeError;
};

/// The brute-force minimizer touched the edge of the coefficient box; the
/// caller should enlarge the box or reduce the query first.
struct BoxTooSmallError : LatticeError {
    using LatticeError::LatticeError;
};

/// Membership at the ends of the [packing, covering] bracket contradicts the
/// catalog constants. Points at a wrong constant or a decoder bug.
struct BracketViolationError : LatticeError {
    using LatticeError::LatticeError;
};

struct NoCrossoverError : LatticeError {
    using LatticeError::LatticeError;
};

struct MultipleCrossoverError : LatticeError {
    MultipleCrossoverError(const std::string& what, std::vector<double> candidates)
        : LatticeError(what), candidates(std::move(candidates)) {}
    std::vector<double> candidates;
};

struct ProfileIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace latsamp
