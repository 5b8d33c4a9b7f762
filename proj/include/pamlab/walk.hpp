#pragma once

#include <cstdint>
#include <vector>

#include "pamlab/rng.hpp"
#include "pamlab/spectral.hpp"

namespace pamlab {

// Constants of the confined-walk representation at truncation zeta.
// r = sqrt(c_OY c_YO) / c_OO; the walk lives in the band [b1, b2].
struct WalkParams {
  int m = 2;
  double delta = 1.0;
  double zeta = 0.05;
  double c_oo = 0.0, c_oy = 0.0, c_yo = 0.0;
  double r = 0.0;
  double rho = 0.0;  // c_OY c_YO / c_OO^2
  double b1 = 0.0, b2 = 0.0;
};

WalkParams make_walk_params(int m, double delta, double zeta);

struct WalkSample {
  std::vector<double> positions;  // S_0 .. S_k
  int sign_flips = 0;             // N(k)
  bool stayed = false;            // all S_i within [b1, b2]
};

// S_0 = X_0 ~ U[b1, b2]; S_l = S_{l-1} + Laplace(1) afterwards.
WalkSample sample_walk_S(RngStream& s, int k, const WalkParams& wp);

struct McEstimate {
  double value = 0.0;
  double se = 0.0;
  std::int64_t reps = 0;
};

// E[ rho^(N(k)/2) 1{walk stays} ] by direct Monte Carlo.
McEstimate mc_ld_expectation(RngStream& s, int k, const WalkParams& wp,
                             std::int64_t reps);

struct IdentityResult {
  double lhs = 0.0, lhs_se = 0.0;
  double rhs = 0.0, rhs_se = 0.0;
  double z = 0.0;
};

// Exact distributional identity: E[r^N(k) 1{S stays}] equals
// ((1+r)/2)^(k-1) P(T stays), T built from exponential increments whose signs
// flip with probability r/(1+r). Both sides estimated independently.
IdentityResult mc_identity_T(RngStream& s, int k, const WalkParams& wp,
                             std::int64_t reps);

// Block sums of the T-walk increments between sign changes; consecutive
// values alternate in sign and |B| is Exponential with mean (1+r)/r.
std::vector<double> sample_B_increments(RngStream& s, std::int64_t count,
                                        const WalkParams& wp);

// P(b1 <= R_i <= b2 for 0 <= i <= k), R the block walk started at X_0.
McEstimate mc_stay_probability_R(RngStream& s, int k, const WalkParams& wp,
                                 std::int64_t reps);

// Fixed-population splitting estimators. The stay probabilities decay
// geometrically (about e^-2.5 per step at zeta = 0.05), so direct sampling
// sees zero survivors beyond k ~ 8; a particle population conditioned on
// survival recovers log E[rho^(N(k)/2) 1{stay}] for all k.
// Returns log estimates indexed k = 1..k_max.
std::vector<double> smc_log_ld_expectation(RngStream& s, int k_max,
                                           const WalkParams& wp, int particles);
std::vector<double> smc_log_stay_R(RngStream& s, int k_max, const WalkParams& wp,
                                   int particles);

}  // namespace pamlab
