#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pamlab/graph.hpp"
#include "pamlab/local_limit.hpp"
#include "pamlab/rng.hpp"

namespace pamlab {

// Exact shortest-path distance on the undirected simple projection
// (parallel edges traversed once). Bidirectional level expansion.
std::optional<std::int64_t> bfs_distance(const LabeledGraph& g, Vertex u, Vertex v);

struct DistanceStats {
  Vertex n = 0;
  int m = 0;
  double delta = 0.0;
  Variant variant = Variant::d;
  int pairs = 0;
  int unreachable = 0;
  double mean = 0.0;
  double median = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
  std::vector<std::int64_t> histogram;  // histogram[d] = #pairs at distance d
  double log_nu_n = 0.0;                // NaN when delta <= 0
  double ratio = 0.0;                   // mean / log_nu(n)
};

DistanceStats typical_distance_stats(const LabeledGraph& g, int pairs, RngStream& s);

struct ScalingRow {
  Vertex n = 0;
  int pairs = 0;
  double mean = 0.0;
  double median = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
  double log_nu_n = 0.0;
  double ratio = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  bool slope_defined = false;
  double slope = 0.0;       // regression of mean distance on ln n
  double intercept = 0.0;
  double expected_slope = 0.0;  // 1 / ln(nu)
};

ScalingResult scaling_experiment(Variant variant, int m, double delta,
                                 const std::vector<Vertex>& n_list, int pairs,
                                 RngStream& s,
                                 Construction construction = Construction::sequential);

// Hill estimate of the power-law exponent tau over the largest
// top_fraction of the degree sequence.
double degree_tail_exponent(const LabeledGraph& g, double top_fraction);
double hill_tail_exponent(std::vector<double> values, double top_fraction);

struct LocalLimitDiag {
  double tv_degree = 0.0;     // degree distribution, degrees <= 30
  double tv_ball_size = 0.0;  // |B_r| distribution, sizes capped at 64; 0 when r = 0
};

LocalLimitDiag local_convergence_diagnostic(const LabeledGraph& g, int ppt_reps, int r,
                                            RngStream& s);

}  // namespace pamlab
