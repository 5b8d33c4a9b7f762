#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pamlab/graph.hpp"

namespace pamlab {

struct KernelParams;  // spectral.hpp

// E[psi^p (1-psi)^q] for psi ~ Beta(alpha, beta):
// (alpha+p-1)_p (beta+q-1)_q / (alpha+beta+p+q-1)_{p+q}, falling factorials.
double beta_moment(double alpha, double beta, int p, int q);

// Per-vertex occupation statistics of an edge set. q_s is piecewise constant
// between endpoint ages, so it is stored as runs.
struct PathStats {
  int k = 0;  // step count when built from a path, else edge count
  std::map<Vertex, int> p;                          // s -> #edges with older end s
  std::vector<std::pair<Vertex, Vertex>> q_runs;    // [lo, hi] with constant q > 0
  std::vector<int> q_values;
  int n_oy = 0;  // consecutive label pairs (O,Y) along a path
  int n_yo = 0;

  int p_at(Vertex s) const;
  int q_at(Vertex s) const;
};

PathStats path_stats(const std::vector<EdgeTriple>& edge_set, Vertex n);
PathStats path_stats(const std::vector<Vertex>& path, Vertex n);

std::string validate_edge_set(const std::vector<EdgeTriple>& edges, Vertex n);

bool is_good_edge_set(const std::vector<EdgeTriple>& edges, Vertex n, Vertex min_age,
                      const KernelParams& params);

// P(all edges of the set are present in PA(d)) with the variant-d weight
// schedule: the product over vertices of beta moments.
double edge_set_probability(const std::vector<EdgeTriple>& edges, Vertex n, int m,
                            double delta);

// Number of edge-labeled self-avoiding paths over a vertex path:
// m^(k - N_YO) (m-1)^N_YO.
std::int64_t count_labelings(const std::vector<Vertex>& path, int m);

// Exhaustive law of the sequential PA(d) attachment process. Keys are the
// canonical edge list; probabilities sum to one.
std::map<std::vector<EdgeTriple>, double> enumerate_sequential_law(Vertex n, int m,
                                                                   double delta);

// Exact marginal P(E present) read off an enumerated law.
double enumerated_marginal(const std::map<std::vector<EdgeTriple>, double>& law,
                           const std::vector<EdgeTriple>& edges);

struct PathCountOptions {
  Vertex min_age = 1;
  std::vector<Vertex> forbidden_interior;
  bool edge_labeled = true;  // count parallel labeled edges as distinct steps
};

// Self-avoiding k-step path count between two vertex sets; DFS, k <= 12.
std::int64_t count_realized_paths(const LabeledGraph& g,
                                  const std::vector<Vertex>& from_set,
                                  const std::vector<Vertex>& to_set, int k,
                                  const PathCountOptions& opt = {});

}  // namespace pamlab
