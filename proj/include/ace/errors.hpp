#pragma once

#include <stdexcept>
#include <string>

namespace ace {

/// A wheel-height pair is outside the reach of the connecting link
/// (|z_a - z_b| > l_ab). During bound propagation this signals a potential
/// wheel-drop hazard rather than a programming error.
class KinematicInfeasible : public std::runtime_error {
public:
    explicit KinematicInfeasible(const std::string& what)
        : std::runtime_error(what) {}
};

/// Roll equation arcsin argument left [-1, 1]: joint heights differ by more
/// than the differential track allows.
class AttitudeDomainError : public std::runtime_error {
public:
    explicit AttitudeDomainError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Rover model rejected at load time: the suspension limits admit a link
/// pose where the joint-height map is not monotone in the wheel heights,
/// so the closed-form interval pairings would not be conservative.
class NonMonotoneConfiguration : public std::runtime_error {
public:
    explicit NonMonotoneConfiguration(const std::string& what)
        : std::runtime_error(what) {}
};

/// Malformed or inconsistent rover model / terrain file.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Rock placement could not reach the requested coverage within the
/// rejection-sampling budget.
class PlacementFailure : public std::runtime_error {
public:
    explicit PlacementFailure(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace ace
