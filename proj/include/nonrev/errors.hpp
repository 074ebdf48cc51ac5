#pragma once

#include <stdexcept>
#include <string>

namespace nonrev {

// Base class for all library errors. CLI maps these to exit code 1 with a
// machine-readable error object; usage errors are handled separately.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual std::string kind() const { return "Error"; }
};

#define NONREV_ERROR(Name)                                  \
  struct Name : Error {                                     \
    using Error::Error;                                     \
    std::string kind() const override { return #Name; }     \
  }

// Chain construction / input data invalid (negative rates, bad indices, ...).
NONREV_ERROR(InvalidSpec);
// Null space of the generator is not one-dimensional, or the computed
// stationary vector is not strictly positive (reducible chain).
NONREV_ERROR(SingularSystem);
// Explicit integrator produced a significantly negative density entry.
NONREV_ERROR(StepTooLarge);
// An edge carries a positive rate in one direction and zero in the other.
NONREV_ERROR(ZeroRate);
// A density vanishes on a state that force formulas need to be positive.
NONREV_ERROR(ZeroDensity);
// Reference measure has a zero entry (not absolutely continuous).
NONREV_ERROR(ZeroReference);
// The two-edge level-set restoration equation has no solution.
NONREV_ERROR(LevelSetInfeasible);
// A supplied iso-dissipation force is not on the required level set.
NONREV_ERROR(NotOnLevelSet);
// Iterative solver failed to reach the requested residual.
NONREV_ERROR(NoConvergence);
// Midpoint convexity probe failed for a Hamiltonian part.
NONREV_ERROR(NonConvexPart);
// Symmetry probe H(xi) == H(dS - xi) failed.
NONREV_ERROR(NotReversible);
// Grid-sup oracle argmax landed on the search boundary.
NONREV_ERROR(RangeClipped);
// Trajectory has no usable content.
NONREV_ERROR(EmptyTrajectory);
// A simulated jump used an edge whose reverse rate is zero.
NONREV_ERROR(InfiniteContribution);

#undef NONREV_ERROR

}  // namespace nonrev
