#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ppe/aniso/solver.hpp"

namespace ppe::analysis {

inline constexpr std::size_t apriori_count = 11;

/// Names of the uniformly bounded quantities, in storage order.
const std::array<std::string_view, apriori_count>& apriori_names();

/// Accumulates the bounded quantities along one anisotropic run.
class AprioriSeries {
 public:
  explicit AprioriSeries(double eps) : eps_(eps) {}
  void add(const aniso::AnisoState& s);

  /// sup_t for the L-infinity-in-time group, sqrt(int_0^T .) for the rest.
  std::array<double, apriori_count> values() const;
  double eps() const { return eps_; }

 private:
  double eps_;
  std::vector<double> t_;
  std::vector<std::array<double, apriori_count>> rows_;
};

struct AprioriSummary {
  double eps = 0.0;
  std::string fingerprint;  // identifies everything but eps
  std::array<double, apriori_count> values{};
};

struct AprioriVerdict {
  std::array<double, apriori_count> small_max{};  // max over the two smallest eps
  std::array<double, apriori_count> ref_max{};    // max over the remaining eps
  std::array<double, apriori_count> ratio{};
  bool pass = false;
};

/// No growth as eps decreases: for every quantity the maximum over the two
/// smallest eps is at most `factor` times the maximum over all other eps.
/// Needs at least three distinct eps sharing one fingerprint.
AprioriVerdict apriori_check(const std::vector<AprioriSummary>& runs, double factor = 1.5);

}  // namespace ppe::analysis
