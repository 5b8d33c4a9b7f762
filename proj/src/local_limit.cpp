#include "pamlab/local_limit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pamlab {

namespace {

// distinct edge marks for the deterministic children, optionally excluding
// the mark already used by the parent edge
std::vector<int> draw_marks(RngStream& s, int m, int count, int exclude) {
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i)
    if (i != exclude) pool.push_back(i);
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    const auto j = i + static_cast<std::size_t>(
                           s.uniform_int(static_cast<std::int64_t>(pool.size() - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace

std::string PptTree::ulam_word(int node) const {
  if (node == 0) return "0";
  std::vector<int> path;
  int cur = node;
  while (cur != 0) {
    const auto& sibs = nodes[static_cast<std::size_t>(nodes[static_cast<std::size_t>(cur)].parent)].children;
    const auto it = std::find(sibs.begin(), sibs.end(), cur);
    path.push_back(static_cast<int>(it - sibs.begin()) + 1);
    cur = nodes[static_cast<std::size_t>(cur)].parent;
  }
  std::ostringstream os;
  os << 0;
  for (auto it = path.rbegin(); it != path.rend(); ++it) os << '.' << *it;
  return os.str();
}

PptTree sample_ppt(RngStream& s, int m, double delta, int depth,
                   std::int64_t node_cap, std::optional<double> root_mark) {
  if (depth < 0) throw std::invalid_argument("sample_ppt: depth must be nonnegative");
  if (node_cap < 1) throw std::invalid_argument("sample_ppt: node_cap must be positive");
  if (m < 1 || !(delta > -static_cast<double>(m)))
    throw std::invalid_argument("sample_ppt: invalid model parameters");
  const double chi =
      (static_cast<double>(m) + delta) / (2.0 * static_cast<double>(m) + delta);

  PptTree t;
  t.m = m;
  t.delta = delta;
  PptNode root;
  root.mark = root_mark.value_or(s.uniform_pos());
  t.nodes.push_back(root);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const PptNode node = t.nodes[static_cast<std::size_t>(cur)];
    if (node.depth >= depth) continue;

    const bool young = node.label == NodeLabel::young_side;
    const int old_children = young ? m - 1 : m;
    const double gamma_shape = node.label == NodeLabel::old_side
                                   ? static_cast<double>(m) + delta + 1.0
                                   : static_cast<double>(m) + delta;

    std::vector<std::pair<double, int>> kids;  // (mark, edge mark)
    const auto marks = draw_marks(s, m, old_children, young ? node.edge_mark : 0);
    for (int i = 0; i < old_children; ++i) {
      const double a = std::pow(s.uniform_pos(), 1.0 / chi) * node.mark;
      kids.emplace_back(a, marks[static_cast<std::size_t>(i)]);
    }
    const std::size_t n_old = kids.size();
    if (node.mark < 1.0) {
      const double gam = s.gamma(gamma_shape, 1.0);
      for (const double x : sample_ppt_points(s, gam, node.mark, chi))
        kids.emplace_back(x, static_cast<int>(s.uniform_int(m)) + 1);
    }

    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (static_cast<std::int64_t>(t.nodes.size()) >= node_cap) {
        t.truncated = true;
        break;
      }
      PptNode child;
      child.mark = kids[i].first;
      child.label = i < n_old ? NodeLabel::old_side : NodeLabel::young_side;
      child.edge_mark = kids[i].second;
      child.parent = cur;
      child.depth = node.depth + 1;
      const int idx = static_cast<int>(t.nodes.size());
      t.nodes.push_back(child);
      t.nodes[static_cast<std::size_t>(cur)].children.push_back(idx);
      queue.push_back(idx);
    }
    if (t.truncated) break;
  }
  return t;
}

std::string serialize_ppt(const PptTree& t) {
  std::ostringstream os;
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
    const auto& n = t.nodes[static_cast<std::size_t>(i)];
    os << t.ulam_word(i) << ' ';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", n.mark);
    os << buf << ' ';
    os << (n.label == NodeLabel::root ? "root"
                                      : (n.label == NodeLabel::old_side ? "O" : "Y"));
    if (n.label == NodeLabel::root)
      os << " -";
    else
      os << ' ' << n.edge_mark;
    os << '\n';
  }
  return os.str();
}

NeighborhoodTree extract_neighborhood(const LabeledGraph& g, Vertex v, int r) {
  if (v < 1 || v > g.n) throw std::invalid_argument("extract_neighborhood: bad root");
  NeighborhoodTree t;
  t.root = v;
  t.radius = r;
  t.nodes.push_back({v, -1, 0, 0});
  std::unordered_map<Vertex, int> index{{v, 0}};
  std::deque<int> queue{0};
  std::int64_t tree_edges = 0;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const auto node = t.nodes[static_cast<std::size_t>(cur)];
    if (node.depth >= r) continue;
    for (const auto& a : g.neighbors(node.vertex)) {
      auto it = index.find(a.to);
      if (it == index.end()) {
        const int idx = static_cast<int>(t.nodes.size());
        t.nodes.push_back({a.to, cur, a.label, node.depth + 1});
        index.emplace(a.to, idx);
        queue.push_back(idx);
        ++tree_edges;
      }
    }
  }
  // count all edges of the induced ball; anything beyond the BFS tree makes a cycle
  std::int64_t induced = 0;
  for (const auto& nd : t.nodes)
    for (const auto& a : g.neighbors(nd.vertex))
      if (a.out && index.count(a.to)) ++induced;
  t.is_tree = induced == tree_edges;

  std::vector<char> has_child(t.nodes.size(), 0);
  for (const auto& nd : t.nodes)
    if (nd.parent >= 0) has_child[static_cast<std::size_t>(nd.parent)] = 1;
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
    if (!has_child[static_cast<std::size_t>(i)]) t.leaves.push_back(i);
  return t;
}

GoodPairResult is_good_pair(const NeighborhoodTree& t1, const NeighborhoodTree& t2,
                            Vertex n, int m, double eta, double zeta, std::int64_t M,
                            int r) {
  if (!(eta > 0.0 && eta <= 0.1) || !(zeta > 0.0 && zeta <= 0.1))
    throw std::invalid_argument("is_good_pair: eta and zeta must lie in (0, 1/10]");
  if (M < 1 || r < 0) throw std::invalid_argument("is_good_pair: M, r out of range");

  GoodPairResult res;
  res.trees = t1.is_tree && t2.is_tree;

  // (a) distinct vertex labels, all in [eta n, n]
  std::set<Vertex> seen;
  bool distinct = true, in_range = true;
  for (const auto* t : {&t1, &t2})
    for (const auto& nd : t->nodes) {
      if (!seen.insert(nd.vertex).second) distinct = false;
      if (nd.vertex < static_cast<Vertex>(std::ceil(eta * static_cast<double>(n))) ||
          nd.vertex > n)
        in_range = false;
    }
  res.distinct_labels_in_range = distinct && in_range;

  // (b)
  res.sizes_bounded = static_cast<std::int64_t>(t1.size()) <= M &&
                      static_cast<std::int64_t>(t2.size()) <= M;

  // (c) at least (3/2)^r leaves labeled in [4 zeta n, (1-3 zeta) n]
  const double need = std::pow(1.5, r);
  const double lo = 4.0 * zeta * static_cast<double>(n);
  const double hi = (1.0 - 3.0 * zeta) * static_cast<double>(n);
  auto mid_leaves = [&](const NeighborhoodTree& t) {
    std::int64_t c = 0;
    for (const int leaf : t.leaves) {
      const Vertex x = t.nodes[static_cast<std::size_t>(leaf)].vertex;
      if (static_cast<double>(x) >= lo && static_cast<double>(x) <= hi) ++c;
    }
    return static_cast<double>(c);
  };
  res.enough_mid_leaves = mid_leaves(t1) >= need && mid_leaves(t2) >= need;

  // (d)
  auto full_depth = [&](const NeighborhoodTree& t) {
    for (const int leaf : t.leaves)
      if (t.nodes[static_cast<std::size_t>(leaf)].depth != r) return false;
    return true;
  };
  res.leaves_at_full_depth = full_depth(t1) && full_depth(t2);

  // (e)
  auto labels_ok = [&](const NeighborhoodTree& t) {
    for (const auto& nd : t.nodes)
      if (nd.parent >= 0 && (nd.edge_label < 1 || nd.edge_label > m)) return false;
    return true;
  };
  res.edge_labels_in_range = labels_ok(t1) && labels_ok(t2);

  // (f) each non-leaf is the younger endpoint of exactly one edge per label
  auto slots_ok = [&](const NeighborhoodTree& t) {
    std::vector<std::vector<int>> counts(t.nodes.size(),
                                         std::vector<int>(static_cast<std::size_t>(m) + 1, 0));
    for (const auto& nd : t.nodes) {
      if (nd.parent < 0) continue;
      const auto& par = t.nodes[static_cast<std::size_t>(nd.parent)];
      const bool child_is_younger = nd.vertex > par.vertex;
      const auto younger_idx = child_is_younger
                                   ? static_cast<std::size_t>(&nd - t.nodes.data())
                                   : static_cast<std::size_t>(nd.parent);
      if (nd.edge_label >= 1 && nd.edge_label <= m)
        ++counts[younger_idx][static_cast<std::size_t>(nd.edge_label)];
    }
    std::vector<char> leaf(t.nodes.size(), 0);
    for (const int l : t.leaves) leaf[static_cast<std::size_t>(l)] = 1;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      if (leaf[i]) continue;
      for (int j = 1; j <= m; ++j)
        if (counts[i][static_cast<std::size_t>(j)] != 1) return false;
    }
    return true;
  };
  res.younger_slots_complete = slots_ok(t1) && slots_ok(t2);
  return res;
}

bool is_good_weights(const UrnWeights& w, const std::vector<Vertex>& vertex_set,
                     Vertex n) {
  double sum = 0.0;
  for (const Vertex v : vertex_set) {
    if (v < 1 || v > w.n()) throw std::invalid_argument("is_good_weights: vertex out of range");
    sum += w.psi[static_cast<std::size_t>(v)];
  }
  const double ln = std::log(static_cast<double>(n));
  return 1.0 - sum >= std::exp(-1.0 / (ln * ln));
}

}  // namespace pamlab
