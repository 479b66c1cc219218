#include "qwalk/evolve.hpp"

#include <algorithm>

namespace qwalk {

namespace {

// One step over raw storage indexed by x + radius. Sites with |x| > t_new are
// left untouched; callers guarantee they are already zero there.
void step_kernel(const std::vector<Spinor>& src, long radius, const Mat2& left,
                 const Mat2& right, long t_new, std::vector<Spinor>& dst) {
  auto src_at = [&](long x) -> Spinor {
    if (x < -radius || x > radius) return {};
    return src[static_cast<std::size_t>(x + radius)];
  };
  long reach = std::min(t_new, radius);
  for (long x = -reach; x <= reach; ++x)
    dst[static_cast<std::size_t>(x + radius)] =
        left * src_at(x + 1) + right * src_at(x - 1);
}

}  // namespace

bool is_kick_time(long t, long tau, int m) {
  long period = tau + 1;
  if (t < period || t > static_cast<long>(m) * period) return false;
  return t % period == 0;
}

AmplitudeField step(const AmplitudeField& field, const CoinSet& coins,
                    bool use_kick) {
  long t_new = field.time() + 1;
  long radius = std::max(field.radius(), t_new);
  std::vector<Spinor> out(static_cast<std::size_t>(2 * radius + 1));
  // Re-stage the source at the output radius so indices line up.
  std::vector<Spinor> src(out.size());
  for (long x = -field.radius(); x <= field.radius(); ++x)
    src[static_cast<std::size_t>(x + radius)] = field.at(x);
  step_kernel(src, radius, use_kick ? coins.P1 : coins.P,
              use_kick ? coins.Q1 : coins.Q, t_new, out);
  return AmplitudeField(t_new, radius, std::move(out));
}

AmplitudeField evolve_to(const WalkParams& params, long t_final) {
  CoinSet coins = coin_matrices(params.theta);
  long radius = std::max(t_final, 0L);
  std::size_t size = static_cast<std::size_t>(2 * radius + 1);
  std::vector<Spinor> cur(size), next(size);
  cur[static_cast<std::size_t>(radius)] = {params.alpha, params.beta};
  for (long t = 1; t <= t_final; ++t) {
    bool kick = is_kick_time(t, params.tau, params.m);
    // `next` last held the field of time t-2 (support <= t-2), so every stale
    // site lies inside the overwritten range |x| <= t.
    step_kernel(cur, radius, kick ? coins.P1 : coins.P,
                kick ? coins.Q1 : coins.Q, t, next);
    std::swap(cur, next);
  }
  return AmplitudeField(t_final, radius, std::move(cur));
}

DistTable probabilities(const AmplitudeField& field) {
  if (field.empty() || field.norm_sq() == 0.0)
    throw EmptyState("amplitude field has no support");
  DistTable dist;
  dist.t = field.time();
  for (long x = -field.radius(); x <= field.radius(); ++x) {
    double p = field.at(x).norm_sq();
    if (p > 0.0) dist.entries.emplace_back(x, p);
  }
  return dist;
}

}  // namespace qwalk
