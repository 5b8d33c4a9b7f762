#include "pamlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "pamlab/generators.hpp"
#include "pamlab/spectral.hpp"
#include "pamlab/stats.hpp"

namespace pamlab {

std::optional<std::int64_t> bfs_distance(const LabeledGraph& g, Vertex u, Vertex v) {
  if (u < 1 || u > g.n || v < 1 || v > g.n)
    throw std::invalid_argument("bfs_distance: vertex out of range");
  if (u == v) return 0;
  // alternating level expansion from both ends; the first meeting level pair
  // is optimal because both frontiers grow one level at a time
  std::unordered_map<Vertex, std::int32_t> du{{u, 0}}, dv{{v, 0}};
  std::vector<Vertex> fu{u}, fv{v};
  std::int64_t ru = 0, rv = 0;
  while (!fu.empty() && !fv.empty()) {
    const bool expand_u = fu.size() <= fv.size();
    auto& frontier = expand_u ? fu : fv;
    auto& mine = expand_u ? du : dv;
    auto& other = expand_u ? dv : du;
    auto& depth = expand_u ? ru : rv;
    ++depth;
    std::vector<Vertex> next;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const Vertex x : frontier) {
      for (const auto& a : g.neighbors(x)) {
        if (mine.count(a.to)) continue;
        mine.emplace(a.to, static_cast<std::int32_t>(depth));
        next.push_back(a.to);
        const auto it = other.find(a.to);
        if (it != other.end())
          best = std::min<std::int64_t>(best, depth + it->second);
      }
    }
    if (best != std::numeric_limits<std::int64_t>::max()) return best;
    frontier.swap(next);
  }
  return std::nullopt;
}

DistanceStats typical_distance_stats(const LabeledGraph& g, int pairs, RngStream& s) {
  if (pairs < 1) throw std::invalid_argument("typical_distance_stats: pairs must be >= 1");
  DistanceStats st;
  st.n = g.n;
  st.m = g.m;
  st.delta = g.delta;
  st.variant = g.variant;
  st.pairs = pairs;
  std::vector<double> ds;
  ds.reserve(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i) {
    Vertex u = s.uniform_int(g.n) + 1;
    Vertex v = s.uniform_int(g.n) + 1;
    while (v == u) v = s.uniform_int(g.n) + 1;  // diagonal resampled
    const auto d = bfs_distance(g, u, v);
    if (!d) {
      ++st.unreachable;
      continue;
    }
    ds.push_back(static_cast<double>(*d));
    if (static_cast<std::size_t>(*d) >= st.histogram.size())
      st.histogram.resize(static_cast<std::size_t>(*d) + 1, 0);
    ++st.histogram[static_cast<std::size_t>(*d)];
  }
  if (!ds.empty()) {
    OnlineStats acc;
    for (const double d : ds) acc.add(d);
    st.mean = acc.mean();
    st.median = percentile(ds, 0.5);
    st.p10 = percentile(ds, 0.1);
    st.p90 = percentile(ds, 0.9);
  }
  if (g.delta > 0.0 && g.m >= 2) {
    st.log_nu_n = std::log(static_cast<double>(g.n)) / std::log(nu_closed_form(g.m, g.delta));
    st.ratio = st.mean / st.log_nu_n;
  } else {
    st.log_nu_n = std::numeric_limits<double>::quiet_NaN();
    st.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return st;
}

ScalingResult scaling_experiment(Variant variant, int m, double delta,
                                 const std::vector<Vertex>& n_list, int pairs,
                                 RngStream& s, Construction construction) {
  if (n_list.empty()) throw std::invalid_argument("scaling_experiment: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("scaling_experiment: n list must increase");
  ScalingResult res;
  std::vector<double> xs, ys;
  for (const Vertex n : n_list) {
    LabeledGraph g = generate(variant, n, m, delta, construction, s);
    const DistanceStats st = typical_distance_stats(g, pairs, s);
    res.rows.push_back({n, pairs, st.mean, st.median, st.p10, st.p90, st.log_nu_n,
                        st.ratio});
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(st.mean);
  }
  if (m >= 2 && delta > 0.0)
    res.expected_slope = 1.0 / std::log(nu_closed_form(m, delta));
  if (n_list.size() >= 2) {
    const LinearFit f = linear_fit(xs, ys);
    res.slope_defined = true;
    res.slope = f.slope;
    res.intercept = f.intercept;
  }
  return res;
}

double hill_tail_exponent(std::vector<double> values, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 0.1))
    throw std::invalid_argument("hill_tail_exponent: top_fraction must lie in (0, 0.1]");
  const auto k = static_cast<std::size_t>(top_fraction * static_cast<double>(values.size()));
  if (k < 10 || k + 1 > values.size())
    throw std::length_error("hill_tail_exponent: too few tail points");
  std::partial_sort(values.begin(),
                    values.begin() + static_cast<std::ptrdiff_t>(k + 1), values.end(),
                    std::greater<double>());
  const double ref = values[k];
  if (!(ref > 0.0)) throw std::length_error("hill_tail_exponent: nonpositive tail");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(values[i] / ref);
  if (acc <= 0.0) throw std::length_error("hill_tail_exponent: degenerate tail");
  // Hill slope estimates the ccdf index tau - 1
  return 1.0 + static_cast<double>(k) / acc;
}

double degree_tail_exponent(const LabeledGraph& g, double top_fraction) {
  std::vector<double> degs;
  degs.reserve(static_cast<std::size_t>(g.n));
  for (Vertex v = 1; v <= g.n; ++v)
    degs.push_back(static_cast<double>(g.degree(v)));
  return hill_tail_exponent(std::move(degs), top_fraction);
}

LocalLimitDiag local_convergence_diagnostic(const LabeledGraph& g, int ppt_reps, int r,
                                            RngStream& s) {
  if (r < 0 || r > 2)
    throw std::invalid_argument("local_convergence_diagnostic: r must lie in {0,1,2}");
  if (ppt_reps < 1)
    throw std::invalid_argument("local_convergence_diagnostic: ppt_reps must be >= 1");
  LocalLimitDiag diag;
  if (r == 0) return diag;  // no statistic at radius zero

  constexpr int kMaxDegree = 30;
  constexpr int kMaxBall = 64;
  std::vector<double> gdeg(kMaxDegree + 1, 0.0), pdeg(kMaxDegree + 1, 0.0);
  std::vector<double> gball(kMaxBall + 1, 0.0), pball(kMaxBall + 1, 0.0);

  for (Vertex v = 1; v <= g.n; ++v) {
    const std::int64_t d = g.degree(v);
    if (d <= kMaxDegree) gdeg[static_cast<std::size_t>(d)] += 1.0;
  }
  for (double& x : gdeg) x /= static_cast<double>(g.n);

  const int ball_samples = std::min<std::int64_t>(g.n, 20000);
  for (int i = 0; i < ball_samples; ++i) {
    const Vertex v = s.uniform_int(g.n) + 1;
    const auto t = extract_neighborhood(g, v, r);
    const auto size = std::min<std::size_t>(t.size(), kMaxBall);
    gball[size] += 1.0;
  }
  for (double& x : gball) x /= static_cast<double>(ball_samples);

  for (int i = 0; i < ppt_reps; ++i) {
    const PptTree t = sample_ppt(s, g.m, g.delta, r, 200000);
    const int d = t.root_degree();
    if (d <= kMaxDegree) pdeg[static_cast<std::size_t>(d)] += 1.0;
    const auto size = std::min<std::size_t>(t.nodes.size(), kMaxBall);
    pball[size] += 1.0;
  }
  for (double& x : pdeg) x /= static_cast<double>(ppt_reps);
  for (double& x : pball) x /= static_cast<double>(ppt_reps);

  diag.tv_degree = tv_distance(gdeg, pdeg);
  diag.tv_ball_size = tv_distance(gball, pball);
  return diag;
}

}  // namespace pamlab
