#include "pamlab/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace pamlab {

char variant_letter(Variant v) { return static_cast<char>(v); }

Variant variant_from_letter(char c) {
  switch (c) {
    case 'a': return Variant::a;
    case 'b': return Variant::b;
    case 'd': return Variant::d;
    default: throw std::invalid_argument("unknown variant letter");
  }
}

void LabeledGraph::finalize() {
  offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
  for (const auto& e : edges) {
    ++offsets_[static_cast<std::size_t>(e.younger) + 1];
    ++offsets_[static_cast<std::size_t>(e.older) + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adj_.assign(static_cast<std::size_t>(offsets_.back()), AdjEntry{});
  std::vector<std::int64_t> pos(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    adj_[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.younger)]++)] =
        AdjEntry{e.older, e.label, true};
    adj_[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.older)]++)] =
        AdjEntry{e.younger, e.label, false};
  }
}

std::span<const AdjEntry> LabeledGraph::neighbors(Vertex v) const {
  const auto lo = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
  const auto hi = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
  return {adj_.data() + lo, hi - lo};
}

std::int64_t LabeledGraph::degree(Vertex v) const {
  return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
}

std::int64_t LabeledGraph::degree_sum() const { return offsets_.back(); }

std::string validate_graph(const LabeledGraph& g) {
  if (g.n < 1) return "graph must have at least one vertex";
  if (g.m < 1) return "m must be at least 1";
  std::set<std::pair<Vertex, std::int32_t>> slots;
  std::vector<int> out_count(static_cast<std::size_t>(g.n) + 1, 0);
  for (const auto& e : g.edges) {
    if (e.younger < 1 || e.younger > g.n || e.older < 1 || e.older > g.n)
      return "edge endpoint out of range";
    if (e.label < 1 || e.label > g.m) return "edge label out of range";
    if (!slots.insert({e.younger, e.label}).second)
      return "duplicate (younger, label) slot";
    ++out_count[static_cast<std::size_t>(e.younger)];
    const bool b_seed = g.variant == Variant::b && g.m == 1 && e.younger == 1 &&
                        e.older == 2;
    if (b_seed) continue;
    switch (g.variant) {
      case Variant::d:
        if (e.older > e.younger - 1) return "variant d edge must attach strictly older";
        break;
      case Variant::a:
      case Variant::b:
        // collapsed graphs keep in-block attachments as self-loops
        if (e.older > e.younger) return "edge must not attach to a younger vertex";
        break;
    }
  }
  // out-degree rule per variant; the urn constructions leave vertex 1 bare
  const Vertex first_full =
      g.variant == Variant::d ? 2 : (g.variant == Variant::b && g.m == 1 ? 3 : 2);
  for (Vertex v = first_full; v <= g.n; ++v)
    if (out_count[static_cast<std::size_t>(v)] != g.m)
      return "vertex lacks its full set of labeled out-edges";
  if (g.variant == Variant::a || (g.variant == Variant::b && g.m > 1)) {
    const int c1 = out_count[1];
    if (c1 != 0 && c1 != g.m) return "vertex 1 must carry zero or m out-edges";
  }
  return {};
}

bool is_connected(const LabeledGraph& g) {
  if (g.n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<Vertex> stack{1};
  seen[1] = 1;
  std::int64_t visited = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const auto& a : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(a.to)]) {
        seen[static_cast<std::size_t>(a.to)] = 1;
        ++visited;
        stack.push_back(a.to);
      }
    }
  }
  return visited == g.n;
}

}  // namespace pamlab
