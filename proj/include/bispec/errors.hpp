#pragma once

#include <stdexcept>
#include <string>

namespace bispec {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A family parameter makes a closed form undefined (zero denominator,
/// q outside (0,1), rho = 0, ...).
struct degenerate_parameter_error : error {
    using error::error;
};

/// Two eigenvalues that must differ coincide; the triangular descent
/// system has no unique solution.
struct eigenvalue_collision_error : error {
    using error::error;
};

/// An operation that requires a pure-parity polynomial received a mixed one.
struct parity_error : error {
    using error::error;
};

/// Kernel transform U_n -> V_n needs U_n(0) != 0.
struct kernel_undefined_error : error {
    using error::error;
};

/// An assembled operator realization produced a non-cancelling negative
/// power, or is requested for a family without one.
struct realization_error : error {
    using error::error;
};

/// Malformed textual input (rational strings, JSON payloads).
struct parse_error : error {
    using error::error;
};

}  // namespace bispec
