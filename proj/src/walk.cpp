#include "pamlab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pamlab/stats.hpp"

namespace pamlab {

WalkParams make_walk_params(int m, double delta, double zeta) {
  const KernelParams kp = make_kernel_params(m, delta);
  if (m < 2) throw std::invalid_argument("make_walk_params: m must be >= 2");
  WalkParams wp;
  wp.m = m;
  wp.delta = delta;
  wp.zeta = zeta;
  wp.c_oo = kp.c_oo;
  wp.c_oy = kp.c_oy;
  wp.c_yo = kp.c_yo;
  wp.r = std::sqrt(kp.c_oy * kp.c_yo) / kp.c_oo;
  wp.rho = kp.c_oy * kp.c_yo / (kp.c_oo * kp.c_oo);
  const auto [b1, b2] = b_bounds(zeta, kp.chi);
  wp.b1 = b1;
  wp.b2 = b2;
  return wp;
}

WalkSample sample_walk_S(RngStream& s, int k, const WalkParams& wp) {
  if (k < 1) throw std::invalid_argument("sample_walk_S: k must be >= 1");
  WalkSample out;
  out.positions.resize(static_cast<std::size_t>(k) + 1);
  double pos = wp.b1 + (wp.b2 - wp.b1) * s.uniform();
  out.positions[0] = pos;
  out.stayed = true;
  int prev_sign = 0;
  for (int i = 1; i <= k; ++i) {
    const double x = s.laplace();
    pos += x;
    out.positions[static_cast<std::size_t>(i)] = pos;
    if (pos < wp.b1 || pos > wp.b2) out.stayed = false;
    const int sign = x > 0.0 ? 1 : -1;
    if (i >= 2 && sign != prev_sign) ++out.sign_flips;
    prev_sign = sign;
  }
  return out;
}

McEstimate mc_ld_expectation(RngStream& s, int k, const WalkParams& wp,
                             std::int64_t reps) {
  if (reps < 1) throw std::invalid_argument("mc_ld_expectation: reps must be >= 1");
  OnlineStats acc;
  const double half_log_rho = 0.5 * std::log(wp.rho);
  for (std::int64_t i = 0; i < reps; ++i) {
    const WalkSample w = sample_walk_S(s, k, wp);
    acc.add(w.stayed ? std::exp(half_log_rho * w.sign_flips) : 0.0);
  }
  return {acc.mean(), acc.standard_error(), reps};
}

namespace {

// one T-walk trajectory; returns true when every T_i stays in the band
bool t_walk_stays(RngStream& s, int k, const WalkParams& wp) {
  double pos = wp.b1 + (wp.b2 - wp.b1) * s.uniform();
  double sign = (s.u64() & 1ULL) ? 1.0 : -1.0;
  const double flip_p = wp.r / (1.0 + wp.r);
  for (int i = 1; i <= k; ++i) {
    if (i >= 2 && s.uniform() < flip_p) sign = -sign;
    pos += sign * s.exponential();
    if (pos < wp.b1 || pos > wp.b2) return false;
  }
  return true;
}

}  // namespace

IdentityResult mc_identity_T(RngStream& s, int k, const WalkParams& wp,
                             std::int64_t reps) {
  if (reps < 1) throw std::invalid_argument("mc_identity_T: reps must be >= 1");
  OnlineStats lhs;
  for (std::int64_t i = 0; i < reps; ++i) {
    const WalkSample w = sample_walk_S(s, k, wp);
    lhs.add(w.stayed ? std::pow(wp.r, w.sign_flips) : 0.0);
  }
  OnlineStats stay;
  for (std::int64_t i = 0; i < reps; ++i) stay.add(t_walk_stays(s, k, wp) ? 1.0 : 0.0);
  const double coef = std::pow(0.5 * (1.0 + wp.r), k - 1);
  IdentityResult res;
  res.lhs = lhs.mean();
  res.lhs_se = lhs.standard_error();
  res.rhs = coef * stay.mean();
  res.rhs_se = coef * stay.standard_error();
  const double se = std::sqrt(res.lhs_se * res.lhs_se + res.rhs_se * res.rhs_se);
  res.z = res.lhs == res.rhs ? 0.0 : (res.lhs - res.rhs) / se;
  return res;
}

std::vector<double> sample_B_increments(RngStream& s, std::int64_t count,
                                        const WalkParams& wp) {
  if (count < 1) throw std::invalid_argument("sample_B_increments: count must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double flip_p = wp.r / (1.0 + wp.r);
  double sign = (s.u64() & 1ULL) ? 1.0 : -1.0;
  double block = s.exponential();  // |A_1|
  while (static_cast<std::int64_t>(out.size()) < count) {
    if (s.uniform() < flip_p) {
      out.push_back(sign * block);
      sign = -sign;
      block = s.exponential();
    } else {
      block += s.exponential();
    }
  }
  return out;
}

McEstimate mc_stay_probability_R(RngStream& s, int k, const WalkParams& wp,
                                 std::int64_t reps) {
  if (k < 0 || reps < 1)
    throw std::invalid_argument("mc_stay_probability_R: bad arguments");
  if (k == 0) return {1.0, 0.0, reps};  // X_0 starts inside the band
  OnlineStats acc;
  for (std::int64_t rep = 0; rep < reps; ++rep) {
    double pos = wp.b1 + (wp.b2 - wp.b1) * s.uniform();
    double sign = (s.u64() & 1ULL) ? 1.0 : -1.0;
    bool ok = true;
    for (int i = 1; i <= k && ok; ++i) {
      // |B| ~ Exp(mean (1+r)/r), signs alternating
      pos += sign * s.exponential() * (1.0 + wp.r) / wp.r;
      sign = -sign;
      if (pos < wp.b1 || pos > wp.b2) ok = false;
    }
    acc.add(ok ? 1.0 : 0.0);
  }
  return {acc.mean(), acc.standard_error(), reps};
}

namespace {

// systematic resampling of indices proportional to weights
std::vector<int> resample(RngStream& s, const std::vector<double>& w, int count) {
  double total = 0.0;
  for (const double x : w) total += x;
  std::vector<int> picks;
  picks.reserve(static_cast<std::size_t>(count));
  const double step = total / static_cast<double>(count);
  double pos = s.uniform() * step;
  double cum = 0.0;
  std::size_t i = 0;
  for (int c = 0; c < count; ++c) {
    while (cum + w[i] < pos && i + 1 < w.size()) cum += w[i++];
    picks.push_back(static_cast<int>(i));
    pos += step;
  }
  return picks;
}

}  // namespace

std::vector<double> smc_log_ld_expectation(RngStream& s, int k_max,
                                           const WalkParams& wp, int particles) {
  if (k_max < 1 || particles < 2)
    throw std::invalid_argument("smc_log_ld_expectation: bad arguments");
  std::vector<double> pos(static_cast<std::size_t>(particles));
  std::vector<int> prev_sign(static_cast<std::size_t>(particles), 0);
  for (auto& x : pos) x = wp.b1 + (wp.b2 - wp.b1) * s.uniform();

  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(k_max));
  double log_prod = 0.0;
  const double sqrt_rho = std::sqrt(wp.rho);
  std::vector<double> weights(static_cast<std::size_t>(particles));
  std::vector<double> npos(static_cast<std::size_t>(particles));
  std::vector<int> nsign(static_cast<std::size_t>(particles));
  for (int k = 1; k <= k_max; ++k) {
    double wsum = 0.0;
    for (int i = 0; i < particles; ++i) {
      const double x = s.laplace();
      const double p = pos[static_cast<std::size_t>(i)] + x;
      const int sg = x > 0.0 ? 1 : -1;
      double w = (p >= wp.b1 && p <= wp.b2) ? 1.0 : 0.0;
      if (k >= 2 && sg != prev_sign[static_cast<std::size_t>(i)]) w *= sqrt_rho;
      weights[static_cast<std::size_t>(i)] = w;
      npos[static_cast<std::size_t>(i)] = p;
      nsign[static_cast<std::size_t>(i)] = sg;
      wsum += w;
    }
    if (wsum <= 0.0) {
      logs.insert(logs.end(), static_cast<std::size_t>(k_max - k + 1),
                  -std::numeric_limits<double>::infinity());
      return logs;
    }
    log_prod += std::log(wsum / static_cast<double>(particles));
    logs.push_back(log_prod);
    const auto picks = resample(s, weights, particles);
    for (int i = 0; i < particles; ++i) {
      pos[static_cast<std::size_t>(i)] = npos[static_cast<std::size_t>(picks[static_cast<std::size_t>(i)])];
      prev_sign[static_cast<std::size_t>(i)] = nsign[static_cast<std::size_t>(picks[static_cast<std::size_t>(i)])];
    }
  }
  return logs;
}

std::vector<double> smc_log_stay_R(RngStream& s, int k_max, const WalkParams& wp,
                                   int particles) {
  if (k_max < 1 || particles < 2)
    throw std::invalid_argument("smc_log_stay_R: bad arguments");
  std::vector<double> pos(static_cast<std::size_t>(particles));
  std::vector<double> sign(static_cast<std::size_t>(particles));
  for (int i = 0; i < particles; ++i) {
    pos[static_cast<std::size_t>(i)] = wp.b1 + (wp.b2 - wp.b1) * s.uniform();
    sign[static_cast<std::size_t>(i)] = (s.u64() & 1ULL) ? 1.0 : -1.0;
  }
  const double mean_b = (1.0 + wp.r) / wp.r;
  std::vector<double> logs;
  double log_prod = 0.0;
  std::vector<double> weights(static_cast<std::size_t>(particles));
  std::vector<double> npos(static_cast<std::size_t>(particles));
  std::vector<double> nsign(static_cast<std::size_t>(particles));
  for (int k = 1; k <= k_max; ++k) {
    double wsum = 0.0;
    for (int i = 0; i < particles; ++i) {
      const double p = pos[static_cast<std::size_t>(i)] +
                       sign[static_cast<std::size_t>(i)] * s.exponential() * mean_b;
      const double w = (p >= wp.b1 && p <= wp.b2) ? 1.0 : 0.0;
      weights[static_cast<std::size_t>(i)] = w;
      npos[static_cast<std::size_t>(i)] = p;
      nsign[static_cast<std::size_t>(i)] = -sign[static_cast<std::size_t>(i)];
      wsum += w;
    }
    if (wsum <= 0.0) {
      logs.insert(logs.end(), static_cast<std::size_t>(k_max - k + 1),
                  -std::numeric_limits<double>::infinity());
      return logs;
    }
    log_prod += std::log(wsum / static_cast<double>(particles));
    logs.push_back(log_prod);
    const auto picks = resample(s, weights, particles);
    for (int i = 0; i < particles; ++i) {
      pos[static_cast<std::size_t>(i)] = npos[static_cast<std::size_t>(picks[static_cast<std::size_t>(i)])];
      sign[static_cast<std::size_t>(i)] = nsign[static_cast<std::size_t>(picks[static_cast<std::size_t>(i)])];
    }
  }
  return logs;
}

}  // namespace pamlab
