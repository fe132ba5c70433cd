#pragma once

#include <stdexcept>
#include <string>

namespace quatem {

/// Base class of every error raised by the toolkit.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (bad flag, malformed file, unknown family).
class config_error : public error {
 public:
  using error::error;
};

/// A numerical precondition of an operation does not hold.
class precondition_error : public error {
 public:
  using error::error;
};

/// Kernel evaluated at its pole.
class singularity_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// Evaluation point too close to the boundary for the surface quadrature.
class near_singularity_error : public precondition_error {
 public:
  near_singularity_error(double distance, double min_distance)
      : precondition_error("evaluation point at distance " +
                           std::to_string(distance) +
                           " from the boundary; at least " +
                           std::to_string(min_distance) + " required"),
        distance_(distance),
        min_distance_(min_distance) {}

  double distance() const noexcept { return distance_; }
  double min_distance() const noexcept { return min_distance_; }

 private:
  double distance_;
  double min_distance_;
};

/// Mesh is not a closed, consistently oriented 2-manifold.
class topology_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// Requested discretization exceeds the memory budget.
class capacity_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// Medium parameters hit a pole of the wavenumbers (k*beta = +-1).
class resonance_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

}  // namespace quatem
