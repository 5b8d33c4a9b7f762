#include "pamlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pamlab {

namespace {

// Fenwick tree over positive real vertex weights; supports the delta < 0
// regime where the endpoint-list mixture has no probabilistic meaning.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0.0) {}

  void add(std::size_t i, double w) {
    for (; i < tree_.size(); i += i & (~i + 1)) tree_[i] += w;
  }

  double total() const {
    double s = 0.0;
    std::size_t i = tree_.size() - 1;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // smallest index whose prefix sum exceeds u
  std::size_t find(double u) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) < tree_.size()) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] < u) {
        u -= tree_[next];
        pos = next;
      }
    }
    return pos + 1;
  }

 private:
  std::vector<double> tree_;
};

void check_pa_params(Vertex n, Vertex n_min, int m, double delta) {
  if (n < n_min) throw std::invalid_argument("graph size too small for this variant");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(delta > -static_cast<double>(m)))
    throw std::invalid_argument("delta must exceed -m");
}

}  // namespace

UrnSchedule UrnSchedule::variant_d(int m, double delta) {
  return {[m, delta](Vertex) { return static_cast<double>(m) + delta; },
          [m, delta](Vertex j) {
            return static_cast<double>(2 * j - 3) * m +
                   delta * static_cast<double>(j - 1);
          }};
}

UrnSchedule UrnSchedule::variant_a_m1(int m, double delta) {
  const double dm = delta / static_cast<double>(m);
  return {[dm](Vertex) { return 1.0 + dm; },
          [dm](Vertex j) { return (2.0 + dm) * static_cast<double>(j - 1); }};
}

LabeledGraph generate_pad(Vertex n, int m, double delta, RngStream& s) {
  check_pa_params(n, 2, m, delta);
  LabeledGraph g;
  g.n = n;
  g.m = m;
  g.delta = delta;
  g.variant = Variant::d;
  g.construction = Construction::sequential;
  g.seed = s.seed();
  g.edges.reserve(static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(m));

  std::vector<Vertex> endpoints;  // one entry per unit of degree
  endpoints.reserve(2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    g.edges.push_back({2, i, 1});
    endpoints.push_back(2);
    endpoints.push_back(1);
  }

  const bool negative = delta < 0.0;
  WeightTree tree(negative ? static_cast<std::size_t>(n) : 0);
  if (negative) {
    tree.add(1, m + delta);
    tree.add(2, m + delta);
  }

  for (Vertex v = 3; v <= n; ++v) {
    const double size = static_cast<double>(v - 1);
    for (int j = 0; j < m; ++j) {
      Vertex target;
      if (!negative) {
        const double degree_mass = static_cast<double>(2 * (v - 2) * m + j);
        const double total = degree_mass + size * delta + 0.0;
        if (s.uniform() * total < degree_mass) {
          do {
            target = endpoints[static_cast<std::size_t>(
                s.uniform_int(static_cast<std::int64_t>(endpoints.size())))];
          } while (target == v);
        } else {
          target = s.uniform_int(v - 1) + 1;
        }
      } else {
        const double total = static_cast<double>(2 * (v - 2) * m + j) + size * delta;
        target = static_cast<Vertex>(tree.find(s.uniform() * total));
      }
      g.edges.push_back({v, j + 1, target});
      endpoints.push_back(v);
      endpoints.push_back(target);
      if (negative) tree.add(static_cast<std::size_t>(target), 1.0);
    }
    if (negative) tree.add(static_cast<std::size_t>(v), m + delta);
  }
  g.finalize();
  return g;
}

UrnWeights draw_urn_weights(Vertex n, RngStream& s, const UrnSchedule& schedule) {
  if (n < 1) throw std::invalid_argument("urn weights need n >= 1");
  UrnWeights w;
  w.psi.assign(static_cast<std::size_t>(n) + 1, 0.0);
  w.psi[1] = 1.0;
  for (Vertex j = 2; j <= n; ++j) {
    const double a = schedule.alpha(j);
    const double b = schedule.beta(j);
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("urn schedule produced non-positive parameters");
    w.psi[static_cast<std::size_t>(j)] = s.beta(a, b);
  }
  // suffix log-products keep phi_j ~ 1/n^2 well away from underflow
  std::vector<double> suffix(static_cast<std::size_t>(n) + 2, 0.0);
  for (Vertex j = n; j >= 2; --j)
    suffix[static_cast<std::size_t>(j)] =
        suffix[static_cast<std::size_t>(j) + 1] +
        std::log1p(-w.psi[static_cast<std::size_t>(j)]);
  w.S.assign(static_cast<std::size_t>(n) + 1, 0.0);
  w.phi.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (Vertex l = 1; l <= n; ++l)
    w.S[static_cast<std::size_t>(l)] = std::exp(suffix[static_cast<std::size_t>(l) + 1]);
  for (Vertex j = 1; j <= n; ++j)
    w.phi[static_cast<std::size_t>(j)] =
        w.psi[static_cast<std::size_t>(j)] *
        std::exp(suffix[static_cast<std::size_t>(j) + 1]);
  return w;
}

std::pair<LabeledGraph, UrnWeights> generate_polya_urn(Vertex n, int m, double delta,
                                                       RngStream& s,
                                                       bool allow_self_loops,
                                                       const UrnSchedule& schedule) {
  check_pa_params(n, 2, m, delta);
  UrnWeights w = draw_urn_weights(n, s, schedule);
  LabeledGraph g;
  g.n = n;
  g.m = m;
  g.delta = delta;
  g.variant = allow_self_loops ? Variant::a : Variant::d;
  g.construction = Construction::urn;
  g.seed = s.seed();
  g.edges.reserve(static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(m));
  const auto begin = w.S.begin() + 1;
  for (Vertex l = 2; l <= n; ++l) {
    const double limit = allow_self_loops ? w.S[static_cast<std::size_t>(l)]
                                          : w.S[static_cast<std::size_t>(l) - 1];
    for (int i = 1; i <= m; ++i) {
      const double u = s.uniform() * limit;
      const auto end = begin + static_cast<std::ptrdiff_t>(l);
      auto it = std::upper_bound(begin, end, u);
      if (it == end) --it;  // u equal to the last boundary within rounding
      const Vertex j = static_cast<Vertex>(it - begin) + 1;
      g.edges.push_back({l, i, j});
    }
  }
  g.psi.assign(w.psi.begin(), w.psi.end());
  g.finalize();
  return {std::move(g), std::move(w)};
}

LabeledGraph generate_pa1(Vertex n, double delta, Variant variant, RngStream& s) {
  if (variant == Variant::d)
    throw std::invalid_argument("generate_pa1 covers variants a and b");
  if (!(delta > -1.0)) throw std::invalid_argument("delta must exceed -1");
  if (variant == Variant::a ? n < 1 : n < 2)
    throw std::invalid_argument("graph size too small for this variant");

  LabeledGraph g;
  g.n = n;
  g.m = 1;
  g.delta = delta;
  g.variant = variant;
  g.construction = Construction::sequential;
  g.seed = s.seed();

  std::vector<Vertex> endpoints;
  const bool negative = delta < 0.0;
  WeightTree tree(negative ? static_cast<std::size_t>(n) : 0);
  Vertex start;
  if (variant == Variant::a) {
    g.edges.push_back({1, 1, 1});
    endpoints.push_back(1);
    endpoints.push_back(1);
    if (negative) tree.add(1, 2.0 + delta);
    start = 2;
  } else {
    g.edges.push_back({1, 1, 2});  // seed exception: out-edge of 1 to younger 2
    g.edges.push_back({2, 1, 1});
    endpoints.insert(endpoints.end(), {1, 2, 2, 1});
    if (negative) {
      tree.add(1, 2.0 + delta);
      tree.add(2, 2.0 + delta);
    }
    start = 3;
  }

  for (Vertex v = start; v <= n; ++v) {
    const double size = static_cast<double>(v - 1);
    Vertex target;
    if (variant == Variant::a) {
      const double total = size * (2.0 + delta) + 1.0 + delta;
      const double x = s.uniform() * total;
      if (x < 1.0 + delta) {
        target = v;  // fresh self-loop
      } else if (!negative) {
        if (x < 1.0 + delta + 2.0 * size) {
          target = endpoints[static_cast<std::size_t>(
              s.uniform_int(static_cast<std::int64_t>(endpoints.size())))];
        } else {
          target = s.uniform_int(v - 1) + 1;
        }
      } else {
        target = static_cast<Vertex>(tree.find(x - (1.0 + delta)));
      }
    } else {
      const double total = size * (2.0 + delta);
      const double x = s.uniform() * total;
      if (!negative) {
        if (x < 2.0 * size) {
          target = endpoints[static_cast<std::size_t>(
              s.uniform_int(static_cast<std::int64_t>(endpoints.size())))];
        } else {
          target = s.uniform_int(v - 1) + 1;
        }
      } else {
        target = static_cast<Vertex>(tree.find(x));
      }
    }
    g.edges.push_back({v, 1, target});
    endpoints.push_back(v);
    endpoints.push_back(target);
    if (negative) {
      if (target == v) {
        tree.add(static_cast<std::size_t>(v), 2.0 + delta);
      } else {
        tree.add(static_cast<std::size_t>(target), 1.0);
        tree.add(static_cast<std::size_t>(v), 1.0 + delta);
      }
    }
  }
  g.finalize();
  return g;
}

LabeledGraph collapse(const LabeledGraph& g, int m) {
  if (g.m != 1) throw std::invalid_argument("collapse expects an m = 1 graph");
  if (m < 1 || g.n % m != 0)
    throw std::invalid_argument("collapse needs n divisible by m");
  LabeledGraph out;
  out.n = g.n / m;
  out.m = m;
  out.delta = g.delta * static_cast<double>(m);
  out.variant = g.variant;
  out.construction = g.construction;
  out.seed = g.seed;
  out.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    const Vertex block = (e.younger - 1) / m + 1;
    const auto label = static_cast<std::int32_t>((e.younger - 1) % m + 1);
    out.edges.push_back({block, label, (e.older - 1) / m + 1});
  }
  out.finalize();
  return out;
}

LabeledGraph generate(Variant variant, Vertex n, int m, double delta,
                      Construction construction, RngStream& s) {
  check_pa_params(n, variant == Variant::a ? 1 : 2, m, delta);
  switch (variant) {
    case Variant::d:
      if (construction == Construction::sequential) return generate_pad(n, m, delta, s);
      return generate_polya_urn(n, m, delta, s, false, UrnSchedule::variant_d(m, delta))
          .first;
    case Variant::a: {
      if (construction == Construction::sequential) {
        LabeledGraph pre = generate_pa1(n * m, delta / m, Variant::a, s);
        return collapse(pre, m);
      }
      auto [pre, weights] = generate_polya_urn(n * m, 1, delta / m, s, true,
                                               UrnSchedule::variant_a_m1(m, delta));
      pre.variant = Variant::a;
      pre.edges.insert(pre.edges.begin(), EdgeTriple{1, 1, 1});  // seed self-loop
      pre.delta = delta / m;
      pre.finalize();
      LabeledGraph out = collapse(pre, m);
      out.construction = Construction::urn;
      return out;
    }
    case Variant::b: {
      if (construction == Construction::urn)
        throw std::invalid_argument(
            "variant b has no urn construction here; use sequential");
      LabeledGraph pre = generate_pa1(n * m, delta / m, Variant::b, s);
      return collapse(pre, m);
    }
  }
  throw std::logic_error("unreachable");
}

double next_edge_probability(const std::vector<std::int64_t>& degrees, Vertex n, int m,
                             double delta, int placed, Vertex i) {
  if (i < 1 || i > n) throw std::domain_error("next_edge_probability: vertex out of range");
  if (placed < 0 || placed >= m)
    throw std::invalid_argument("next_edge_probability: placed must lie in [0, m)");
  const double z = static_cast<double>(2 * (n - 1) * m + placed) +
                   static_cast<double>(n) * delta;
  return (static_cast<double>(degrees[static_cast<std::size_t>(i)]) + delta) / z;
}

}  // namespace pamlab
