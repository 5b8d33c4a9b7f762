#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pamlab {

using Vertex = std::int64_t;

enum class Variant : char { a = 'a', b = 'b', d = 'd' };
enum class Construction : char { sequential = 's', urn = 'u' };

char variant_letter(Variant v);
Variant variant_from_letter(char c);

// The i-th out-edge of `younger` attaches to `older`. In every generated
// graph older <= younger, except the variant-b seed edge (1,1,2) at m = 1.
struct EdgeTriple {
  Vertex younger = 0;
  std::int32_t label = 0;
  Vertex older = 0;

  friend bool operator==(const EdgeTriple&, const EdgeTriple&) = default;
  friend auto operator<=>(const EdgeTriple&, const EdgeTriple&) = default;
};

struct AdjEntry {
  Vertex to = 0;
  std::int32_t label = 0;
  bool out = false;  // true when the adjacency owner is the younger endpoint
};

// Beta weights of the urn construction together with the interval partition
// of [0,1): phi_j = psi_j * prod_{i>j}(1-psi_i), S_l = sum_{j<=l} phi_j.
struct UrnWeights {
  std::vector<double> psi;  // 1-based, psi[1] = 1
  std::vector<double> phi;  // 1-based
  std::vector<double> S;    // S[0] = 0, ..., S[n] = 1
  Vertex n() const { return static_cast<Vertex>(psi.size()) - 1; }
};

class LabeledGraph {
 public:
  Vertex n = 0;
  int m = 1;
  double delta = 0.0;
  Variant variant = Variant::d;
  Construction construction = Construction::sequential;
  std::uint64_t seed = 0;
  std::vector<EdgeTriple> edges;
  std::vector<double> psi;  // optional urn weights, 1-based when present

  // Builds the CSR adjacency; must be called after edges change.
  void finalize();
  bool finalized() const { return !offsets_.empty(); }

  std::span<const AdjEntry> neighbors(Vertex v) const;
  std::int64_t degree(Vertex v) const;  // self-loops count twice
  std::int64_t degree_sum() const;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<AdjEntry> adj_;
};

// Checks the structural invariants for the graph's variant; returns an empty
// string when valid, otherwise a description of the first violation.
std::string validate_graph(const LabeledGraph& g);

bool is_connected(const LabeledGraph& g);

}  // namespace pamlab
