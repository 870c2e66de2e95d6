#include "logkn/blowfiber.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "logkn/error.hpp"

namespace logkn::blowfiber {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Uniform point of the model: a Gaussian vector folded into the model's
// orthant on the r-coordinates, then normalized.
std::vector<double> sample_point(const FiberModel& model, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> p(model.ambient_dimension());
  for (;;) {
    for (auto& x : p) x = gauss(rng);
    for (std::size_t i = 0; i < model.log_count; ++i)
      p[i] = model.orthant_signs[i] * std::fabs(p[i]);
    const double n = norm(p);
    if (n > 1e-12) {
      for (auto& x : p) x /= n;
      return p;
    }
  }
}

}  // namespace

bool FiberModel::contains(const std::vector<double>& point, double tolerance) const {
  if (point.size() != ambient_dimension()) return false;
  if (std::fabs(norm(point) - 1.0) > tolerance) return false;
  for (std::size_t i = 0; i < log_count; ++i)
    if (orthant_signs[i] * point[i] < -tolerance) return false;
  return true;
}

FiberModel fiber_of_simple_blowup(const BlowupLocalData& data) {
  if (data.log_indices.empty()) {
    throw Error(ErrorCode::CenterNotInDivisor, "the blowup center must lie in the divisor (L is empty)");
  }
  std::set<std::size_t> seen;
  for (auto i : data.log_indices) {
    if (i >= data.index_count) throw Error(ErrorCode::InvalidArgument, "L is not a subset of I");
    if (!seen.insert(i).second) throw Error(ErrorCode::InvalidArgument, "L repeats an index");
  }
  FiberModel model;
  model.log_count = data.log_indices.size();
  model.complex_count = data.index_count - model.log_count;
  model.orthant_signs.assign(model.log_count, 1);
  return model;
}

ContractibilityCertificate verify_contractibility(const FiberModel& model, std::size_t samples,
                                                  std::uint64_t seed) {
  if (model.empty()) throw Error(ErrorCode::EmptyModel, "fiber model has no coordinates");
  if (model.orthant_signs.size() != model.log_count) {
    throw Error(ErrorCode::InvalidArgument, "one orthant sign per log coordinate is required");
  }
  ContractibilityCertificate cert;
  cert.samples = samples;
  // An intersection of half-spaces r_i >= 0 through the origin is a convex
  // cone; it is proper because L is nonempty.
  cert.structural_ok = model.log_count >= 1 &&
                       std::all_of(model.orthant_signs.begin(), model.orthant_signs.end(),
                                   [](int s) { return s == 1; });

  // r_1 = 1 (Re z_1 = 1 for a model without log directions)
  std::vector<double> center(model.ambient_dimension(), 0.0);
  center[0] = 1.0;
  auto record = [&](const std::vector<double>& bad) {
    if (cert.violations++ == 0) cert.first_violation = bad;
  };
  if (!model.contains(center, kSphereTolerance)) record(center);

  std::mt19937_64 rng(seed);
  std::vector<double> q(model.ambient_dimension());
  for (std::size_t s = 0; s < samples; ++s) {
    const auto p = sample_point(model, rng);
    for (int k = 0; k <= kSegmentSteps; ++k) {
      const double t = static_cast<double>(k) / kSegmentSteps;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = (1.0 - t) * center[i] + t * p[i];
      const double n = norm(q);
      if (n < 1e-12) {
        record(q);
        break;
      }
      for (auto& x : q) x /= n;
      if (!model.contains(q, kSphereTolerance)) {
        record(q);
        break;
      }
    }
  }
  cert.sampled_ok = cert.violations == 0;
  return cert;
}

}  // namespace logkn::blowfiber
