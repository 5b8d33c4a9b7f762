#include "pamlab/path_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pamlab/generators.hpp"
#include "pamlab/spectral.hpp"

namespace pamlab {

double beta_moment(double alpha, double beta, int p, int q) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("beta_moment: parameters must be positive");
  if (p < 0 || q < 0) throw std::invalid_argument("beta_moment: p, q must be >= 0");
  // paired numerator/denominator ratios; every factor stays in (0, 1]
  double result = 1.0;
  for (int i = 0; i < p; ++i)
    result *= (alpha + static_cast<double>(p - 1 - i)) /
              (alpha + beta + static_cast<double>(p + q - 1 - i));
  for (int j = 0; j < q; ++j)
    result *= (beta + static_cast<double>(q - 1 - j)) /
              (alpha + beta + static_cast<double>(q - 1 - j));
  return result;
}

int PathStats::p_at(Vertex s) const {
  const auto it = p.find(s);
  return it == p.end() ? 0 : it->second;
}

int PathStats::q_at(Vertex s) const {
  for (std::size_t i = 0; i < q_runs.size(); ++i)
    if (s >= q_runs[i].first && s <= q_runs[i].second) return q_values[i];
  return 0;
}

std::string validate_edge_set(const std::vector<EdgeTriple>& edges, Vertex n) {
  std::set<std::pair<Vertex, std::int32_t>> slots;
  for (const auto& e : edges) {
    if (e.younger < 1 || e.younger > n || e.older < 1 || e.older > n)
      return "edge endpoint out of range";
    if (e.older > e.younger - 1) return "older endpoint must precede younger";
    if (e.label < 1) return "labels start at 1";
    if (!slots.insert({e.younger, e.label}).second)
      return "duplicate (younger, label) slot";
  }
  return {};
}

namespace {

void fill_pq(PathStats& st, const std::vector<EdgeTriple>& edges) {
  for (const auto& e : edges) ++st.p[e.older];
  // q_s = #edges with s strictly inside (older, younger); sweep a diff array
  std::map<Vertex, int> diff;
  for (const auto& e : edges) {
    if (e.younger - e.older >= 2) {
      diff[e.older + 1] += 1;
      diff[e.younger] -= 1;
    }
  }
  int cur = 0;
  Vertex run_start = 0;
  for (auto it = diff.begin(); it != diff.end(); ++it) {
    if (cur > 0) {
      st.q_runs.emplace_back(run_start, it->first - 1);
      st.q_values.push_back(cur);
    }
    cur += it->second;
    run_start = it->first;
  }
}

}  // namespace

PathStats path_stats(const std::vector<EdgeTriple>& edge_set, Vertex n) {
  if (const auto err = validate_edge_set(edge_set, n); !err.empty())
    throw std::invalid_argument("path_stats: " + err);
  PathStats st;
  st.k = static_cast<int>(edge_set.size());
  fill_pq(st, edge_set);
  return st;
}

PathStats path_stats(const std::vector<Vertex>& path, Vertex n) {
  if (path.size() < 2) throw std::invalid_argument("path_stats: path needs >= 1 step");
  std::vector<EdgeTriple> edges;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Vertex a = path[i - 1], b = path[i];
    if (a == b) throw std::invalid_argument("path_stats: path has a self-loop step");
    edges.push_back({std::max(a, b), static_cast<std::int32_t>(i), std::min(a, b)});
  }
  PathStats st;
  st.k = static_cast<int>(path.size()) - 1;
  if (const auto err = validate_edge_set(edges, n); !err.empty())
    throw std::invalid_argument("path_stats: " + err);
  fill_pq(st, edges);
  // direction labels: O for a step down in age, Y for a step up
  std::vector<char> lb(path.size(), 0);
  for (std::size_t i = 1; i < path.size(); ++i)
    lb[i] = path[i] > path[i - 1] ? 'Y' : 'O';
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (lb[i] == 'O' && lb[i + 1] == 'Y') ++st.n_oy;
    if (lb[i] == 'Y' && lb[i + 1] == 'O') ++st.n_yo;
  }
  return st;
}

bool is_good_edge_set(const std::vector<EdgeTriple>& edges, Vertex n, Vertex min_age,
                      const KernelParams& params) {
  std::map<Vertex, int> appearances;
  for (const auto& e : edges) {
    ++appearances[e.younger];
    ++appearances[e.older];
  }
  for (const auto& [v, c] : appearances) {
    if (c > 4) return false;
    if (v < min_age) return false;
  }
  const double limit = 4.0 * std::log(static_cast<double>(n)) / std::log(params.nu);
  return static_cast<double>(edges.size()) <= limit;
}

double edge_set_probability(const std::vector<EdgeTriple>& edges, Vertex n, int m,
                            double delta) {
  if (const auto err = validate_edge_set(edges, n); !err.empty())
    throw std::invalid_argument("edge_set_probability: " + err);
  for (const auto& e : edges)
    if (e.label > m) throw std::invalid_argument("edge_set_probability: label exceeds m");
  if (edges.empty()) return 1.0;

  const double alpha = static_cast<double>(m) + delta;
  const double c = 2.0 * static_cast<double>(m) + delta;
  const double d0 = -(3.0 * static_cast<double>(m) + delta);
  const auto beta_s = [&](Vertex s) { return c * static_cast<double>(s) + d0; };

  PathStats st = path_stats(edges, n);

  double result = 1.0;
  // vertices carrying a psi power; psi_1 = 1 contributes nothing
  for (const auto& [s, ps] : st.p) {
    if (s == 1) continue;
    result *= beta_moment(alpha, beta_s(s), ps, st.q_at(s));
  }
  // runs of constant q, skipping the vertices already handled above
  constexpr Vertex kDirectRun = 4096;
  for (std::size_t ri = 0; ri < st.q_runs.size(); ++ri) {
    const auto [lo, hi] = st.q_runs[ri];
    const int qv = st.q_values[ri];
    if ((hi - lo + 1) <= kDirectRun) {
      for (Vertex s = lo; s <= hi; ++s) {
        if (s == 1 || st.p.count(s)) continue;
        result *= beta_moment(alpha, beta_s(s), 0, qv);
      }
    } else {
      const Vertex a = std::max<Vertex>(lo, 2);
      double log_run = 0.0;
      for (int i = 0; i < qv; ++i) {
        const double u = (d0 + static_cast<double>(qv - 1 - i)) / c;
        const double w = alpha / c;
        log_run += std::lgamma(static_cast<double>(hi) + 1.0 + u) -
                   std::lgamma(static_cast<double>(a) + u) +
                   std::lgamma(static_cast<double>(a) + u + w) -
                   std::lgamma(static_cast<double>(hi) + 1.0 + u + w);
      }
      double run_value = std::exp(log_run);
      for (const auto& [s, ps] : st.p)  // divide out the individually handled s
        if (s >= a && s <= hi) run_value /= beta_moment(alpha, beta_s(s), 0, qv);
      if (lo == 1) { /* s = 1 impossible inside an interval; nothing to strip */ }
      result *= run_value;
    }
  }
  return result;
}

std::int64_t count_labelings(const std::vector<Vertex>& path, int m) {
  if (path.size() < 2) throw std::invalid_argument("count_labelings: need k >= 1");
  std::set<Vertex> distinct(path.begin(), path.end());
  if (distinct.size() != path.size())
    throw std::invalid_argument("count_labelings: path must be self-avoiding");
  const int k = static_cast<int>(path.size()) - 1;
  int n_yo = 0;
  for (int i = 1; i + 1 <= k; ++i) {
    const bool up1 = path[static_cast<std::size_t>(i)] > path[static_cast<std::size_t>(i) - 1];
    const bool up2 = path[static_cast<std::size_t>(i) + 1] > path[static_cast<std::size_t>(i)];
    if (up1 && !up2) ++n_yo;
  }
  std::int64_t result = 1;
  for (int i = 0; i < k - n_yo; ++i) result *= m;
  for (int i = 0; i < n_yo; ++i) result *= (m - 1);
  return result;
}

std::map<std::vector<EdgeTriple>, double> enumerate_sequential_law(Vertex n, int m,
                                                                   double delta) {
  if (n < 2 || m < 1 || !(delta > -static_cast<double>(m)))
    throw std::invalid_argument("enumerate_sequential_law: bad parameters");
  double states = 1.0;
  for (Vertex v = 3; v <= n; ++v)
    states *= std::pow(static_cast<double>(v - 1), m);
  if (states > 1e6)
    throw std::length_error("enumerate_sequential_law: state space exceeds 1e6");

  std::map<std::vector<EdgeTriple>, double> law;
  std::vector<EdgeTriple> edges;
  std::vector<std::int64_t> degrees(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= m; ++i) edges.push_back({2, i, 1});
  degrees[1] = m;
  degrees[2] = m;

  auto recurse = [&](auto&& self, Vertex v, int slot, double prob) -> void {
    if (v > n) {
      law[edges] += prob;
      return;
    }
    if (slot == m) {
      degrees[static_cast<std::size_t>(v)] += m;  // out-edges of v now final
      self(self, v + 1, 0, prob);
      degrees[static_cast<std::size_t>(v)] -= m;
      return;
    }
    for (Vertex i = 1; i <= v - 1; ++i) {
      const double pr = next_edge_probability(degrees, v - 1, m, delta, slot, i);
      edges.push_back({v, slot + 1, i});
      ++degrees[static_cast<std::size_t>(i)];
      self(self, v, slot + 1, prob * pr);
      --degrees[static_cast<std::size_t>(i)];
      edges.pop_back();
    }
  };
  recurse(recurse, 3, 0, 1.0);
  return law;
}

double enumerated_marginal(const std::map<std::vector<EdgeTriple>, double>& law,
                           const std::vector<EdgeTriple>& edges) {
  double total = 0.0;
  for (const auto& [outcome, prob] : law) {
    bool all = true;
    for (const auto& e : edges) {
      if (std::find(outcome.begin(), outcome.end(), e) == outcome.end()) {
        all = false;
        break;
      }
    }
    if (all) total += prob;
  }
  return total;
}

std::int64_t count_realized_paths(const LabeledGraph& g,
                                  const std::vector<Vertex>& from_set,
                                  const std::vector<Vertex>& to_set, int k,
                                  const PathCountOptions& opt) {
  if (k < 0 || k > 12)
    throw std::length_error("count_realized_paths: k must lie in [0, 12]");
  std::vector<char> in_to(static_cast<std::size_t>(g.n) + 1, 0);
  for (const Vertex v : to_set)
    if (v >= 1 && v <= g.n) in_to[static_cast<std::size_t>(v)] = 1;
  std::vector<char> forbidden(static_cast<std::size_t>(g.n) + 1, 0);
  for (const Vertex v : opt.forbidden_interior)
    if (v >= 1 && v <= g.n) forbidden[static_cast<std::size_t>(v)] = 1;
  std::vector<char> visited(static_cast<std::size_t>(g.n) + 1, 0);

  std::int64_t total = 0;
  // grouped neighbor multiplicities, rebuilt per vertex visit (k is small)
  auto grouped = [&](Vertex v) {
    std::unordered_map<Vertex, std::int64_t> mult;
    for (const auto& a : g.neighbors(v)) ++mult[a.to];
    return mult;
  };

  auto dfs = [&](auto&& self, Vertex u, int depth, std::int64_t ways) -> void {
    if (depth == k) {
      if (in_to[static_cast<std::size_t>(u)]) total += ways;
      return;
    }
    for (const auto& [w, mult] : grouped(u)) {
      if (w == u || w < opt.min_age) continue;
      if (visited[static_cast<std::size_t>(w)]) continue;
      if (depth + 1 < k && forbidden[static_cast<std::size_t>(w)]) continue;
      visited[static_cast<std::size_t>(w)] = 1;
      self(self, w, depth + 1, ways * (opt.edge_labeled ? mult : 1));
      visited[static_cast<std::size_t>(w)] = 0;
    }
  };

  std::set<Vertex> starts(from_set.begin(), from_set.end());
  for (const Vertex u : starts) {
    if (u < 1 || u > g.n || u < opt.min_age) continue;
    visited[static_cast<std::size_t>(u)] = 1;
    dfs(dfs, u, 0, 1);
    visited[static_cast<std::size_t>(u)] = 0;
  }
  return total;
}

}  // namespace pamlab
