#pragma once

// Fibers of the Kato-Nakayama map of a simple blowup: over a point of
// (S^1)^L the fiber is { r in R_{>=0}^L, z in C^{I\L} : |r|^2 + |z|^2 = 1 },
// a convex cone intersected with the unit sphere.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace logkn::blowfiber {

/// Local data of a simple blowup after shrinking to the center: |I| index
/// directions, of which the ones in L lie in the boundary divisor.
struct BlowupLocalData {
  std::size_t index_count = 0;
  std::vector<std::size_t> log_indices;  // subset of {0, ..., index_count - 1}
};

/// Model of the fiber in R^L x C^{I\L} = R^{nL + 2 nC}. Real coordinates are
/// ordered r_1..r_nL, then Re z_1, Im z_1, ..., Re z_nC, Im z_nC.
/// `orthant_signs[i]` is the sign constraint on r_i: +1 for the genuine model
/// (r_i >= 0); test shams may flip it.
struct FiberModel {
  std::size_t log_count = 0;      // nL
  std::size_t complex_count = 0;  // nC
  std::vector<int> orthant_signs;

  std::size_t ambient_dimension() const noexcept { return log_count + 2 * complex_count; }
  /// Intrinsic dimension nL + 2 nC - 1 of the sphere section.
  std::size_t dimension() const noexcept { return ambient_dimension() - 1; }
  bool empty() const noexcept { return log_count == 0 && complex_count == 0; }
  bool contains(const std::vector<double>& point, double tolerance) const;
};

inline constexpr double kSphereTolerance = 1e-9;
inline constexpr int kSegmentSteps = 100;

/// Throws CenterNotInDivisor when L is empty, InvalidArgument when L is not
/// a subset of I or repeats an index.
FiberModel fiber_of_simple_blowup(const BlowupLocalData& data);

struct ContractibilityCertificate {
  bool structural_ok = false;  // the cone is R_{>=0}^L x C^{I\L}
  bool sampled_ok = false;     // every sampled segment stayed in the set
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<std::vector<double>> first_violation;

  bool passed() const noexcept { return structural_ok && sampled_ok; }
};

/// Structural check plus star-shapedness sampling about c = (r_1 = 1):
/// for each random p in the set, the renormalized segment (1-t) c + t p,
/// t = k / 100, must stay in the set. Deterministic in `seed`.
/// Throws EmptyModel on a model with no coordinates.
ContractibilityCertificate verify_contractibility(const FiberModel& model, std::size_t samples,
                                                  std::uint64_t seed);

}  // namespace logkn::blowfiber
