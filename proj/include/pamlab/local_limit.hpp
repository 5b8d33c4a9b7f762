#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pamlab/graph.hpp"
#include "pamlab/rng.hpp"

namespace pamlab {

enum class NodeLabel : char { root = 'r', old_side = 'O', young_side = 'Y' };

struct PptNode {
  double mark = 0.0;
  NodeLabel label = NodeLabel::root;
  int edge_mark = 0;  // mark of the edge to the parent; 0 at the root
  int parent = -1;
  int depth = 0;
  std::vector<int> children;  // ordering defines the Ulam-Harris word
};

struct PptTree {
  int m = 0;
  double delta = 0.0;
  std::vector<PptNode> nodes;  // nodes[0] is the root
  bool truncated = false;      // node_cap hit before the requested depth

  std::string ulam_word(int node) const;
  int root_degree() const { return static_cast<int>(nodes[0].children.size()); }
};

// Multi-type branching tree of age marks. Children of a node split into the
// deterministic older block (m at the root and at O-nodes, m-1 at Y-nodes,
// marks U^(1/chi) * A) and a Poisson crop of younger nodes on [A, 1].
// root_mark, when given, pins the root's age; otherwise it is U(0,1].
PptTree sample_ppt(RngStream& s, int m, double delta, int depth,
                   std::int64_t node_cap = 1'000'000,
                   std::optional<double> root_mark = std::nullopt);

std::string serialize_ppt(const PptTree& t);

struct NeighborhoodNode {
  Vertex vertex = 0;
  int parent = -1;  // index into nodes
  std::int32_t edge_label = 0;
  int depth = 0;
};

// Breadth-first exploration of the r-ball around a root. is_tree is false
// when the subgraph induced on the ball carries any extra edge (multi-edge,
// cross edge or self-loop); the BFS tree is still returned.
struct NeighborhoodTree {
  Vertex root = 0;
  int radius = 0;
  bool is_tree = true;
  std::vector<NeighborhoodNode> nodes;
  std::vector<int> leaves;  // node indices without children

  std::size_t size() const { return nodes.size(); }
};

NeighborhoodTree extract_neighborhood(const LabeledGraph& g, Vertex v, int r);

struct GoodPairResult {
  bool distinct_labels_in_range = false;  // (a)
  bool sizes_bounded = false;             // (b)
  bool enough_mid_leaves = false;         // (c)
  bool leaves_at_full_depth = false;      // (d)
  bool edge_labels_in_range = false;      // (e)
  bool younger_slots_complete = false;    // (f)
  bool trees = false;

  bool good() const {
    return trees && distinct_labels_in_range && sizes_bounded && enough_mid_leaves &&
           leaves_at_full_depth && edge_labels_in_range && younger_slots_complete;
  }
};

GoodPairResult is_good_pair(const NeighborhoodTree& t1, const NeighborhoodTree& t2,
                            Vertex n, int m, double eta, double zeta, std::int64_t M,
                            int r);

bool is_good_weights(const UrnWeights& w, const std::vector<Vertex>& vertex_set,
                     Vertex n);

}  // namespace pamlab
