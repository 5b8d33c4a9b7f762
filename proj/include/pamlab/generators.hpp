#pragma once

#include <functional>
#include <utility>

#include "pamlab/graph.hpp"
#include "pamlab/rng.hpp"

namespace pamlab {

// Beta parameter schedule (alpha_j, beta_j) for the urn weights, j >= 2.
struct UrnSchedule {
  std::function<double(Vertex)> alpha;
  std::function<double(Vertex)> beta;

  // alpha = m + delta, beta_j = (2j-3)m + delta(j-1); matches sequential PA(d)
  static UrnSchedule variant_d(int m, double delta);
  // alpha = 1 + delta/m, beta_j = (2 + delta/m)(j-1); self-loop urn behind PA(a)
  static UrnSchedule variant_a_m1(int m, double delta);
};

// Sequential PA(d): starts from two vertices joined by m labeled edges, each
// new vertex attaches m out-edges degree-plus-delta proportionally.
LabeledGraph generate_pad(Vertex n, int m, double delta, RngStream& s);

// Polya urn graph. allow_self_loops=false draws targets from [0, S_{l-1})
// (PU, targets strictly older); true draws from [0, S_l) (SPU, self-loops
// possible). Vertex 1 carries no out-edge here.
std::pair<LabeledGraph, UrnWeights> generate_polya_urn(Vertex n, int m, double delta,
                                                       RngStream& s,
                                                       bool allow_self_loops,
                                                       const UrnSchedule& schedule);

// Sequential m = 1 models from the collapsing construction.
LabeledGraph generate_pa1(Vertex n, double delta, Variant variant, RngStream& s);

// Merges blocks of m consecutive vertices; out-edge j of block l keeps label j.
LabeledGraph collapse(const LabeledGraph& g, int m);

LabeledGraph generate(Variant variant, Vertex n, int m, double delta,
                      Construction construction, RngStream& s);

// Attachment probability of the (placed+1)-th out-edge of vertex n+1 hitting i,
// given current degrees of [n] (after `placed` edges of n+1 landed).
double next_edge_probability(const std::vector<std::int64_t>& degrees, Vertex n, int m,
                             double delta, int placed, Vertex i);

// Weights (psi, phi, S) for a schedule; S accumulates in log space.
UrnWeights draw_urn_weights(Vertex n, RngStream& s, const UrnSchedule& schedule);

}  // namespace pamlab
