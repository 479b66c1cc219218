#pragma once

#include <utility>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

// Walk state at one time step: a finitely supported map position -> Spinor,
// stored densely over [-radius, radius] with an explicit offset.
class AmplitudeField {
 public:
  AmplitudeField() = default;

  // Zero field with the given time stamp and storage radius.
  AmplitudeField(long t, long radius)
      : t_(t), radius_(radius), values_(2 * radius + 1) {}

  // Adopts existing storage; values.size() must equal 2*radius + 1.
  AmplitudeField(long t, long radius, std::vector<Spinor> values)
      : t_(t), radius_(radius), values_(std::move(values)) {}

  // t = 0 field with all amplitude at the origin.
  static AmplitudeField localized(const Spinor& origin, long radius) {
    AmplitudeField f(0, radius);
    f.set(0, origin);
    return f;
  }

  long time() const { return t_; }
  long radius() const { return radius_; }

  Spinor at(long x) const {
    if (x < -radius_ || x > radius_) return {};
    return values_[static_cast<std::size_t>(x + radius_)];
  }

  void set(long x, const Spinor& v) {
    values_[static_cast<std::size_t>(x + radius_)] = v;
  }

  const std::vector<Spinor>& values() const { return values_; }

  // Total probability, summed in ascending-x order.
  double norm_sq() const {
    double total = 0.0;
    for (const Spinor& v : values_) total += v.norm_sq();
    return total;
  }

  bool empty() const { return values_.empty(); }

 private:
  long t_ = 0;
  long radius_ = 0;
  std::vector<Spinor> values_;
};

// Discrete probability distribution over positions at one time step.
// Entries are ascending in x; zero-probability sites are omitted.
struct DistTable {
  long t = 0;
  std::vector<std::pair<long, double>> entries;

  double total() const {
    double sum = 0.0;
    for (const auto& [x, p] : entries) sum += p;
    return sum;
  }
};

// True iff t is one of the m kick times tau+1, 2(tau+1), ..., m(tau+1).
bool is_kick_time(long t, long tau, int m);

// One evolution step: psi_t(x) = L psi_{t-1}(x+1) + R psi_{t-1}(x-1) with
// (L,R) = (P1,Q1) on a kick step and (P,Q) otherwise.
AmplitudeField step(const AmplitudeField& field, const CoinSet& coins,
                    bool use_kick);

// Runs the full schedule from the origin-localized initial state to t_final.
AmplitudeField evolve_to(const WalkParams& params, long t_final);

// Per-site probabilities <psi(x)|psi(x)>. Throws EmptyState on a field with
// no amplitude anywhere.
DistTable probabilities(const AmplitudeField& field);

}  // namespace qwalk
