#include "pamlab/cli_lib.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pamlab/experiments.hpp"
#include "pamlab/generators.hpp"
#include "pamlab/io.hpp"
#include "pamlab/local_limit.hpp"
#include "pamlab/path_oracle.hpp"
#include "pamlab/spectral.hpp"
#include "pamlab/stats.hpp"
#include "pamlab/walk.hpp"

namespace pamlab {

namespace {

constexpr const char* kVersion = "pamlab v1";

std::string config_echo(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command << " variant=" << variant_letter(c.variant)
     << " construction=" << (c.construction == Construction::sequential ? "seq" : "urn")
     << " n=" << c.n << " m=" << c.m << " delta=" << format_double(c.delta)
     << " seed=" << c.seed << " stream=" << c.stream << " reps=" << c.reps
     << " pairs=" << c.pairs << " zeta=" << format_double(c.zeta)
     << " grid=" << c.grid << " k=" << c.k << " mode=" << c.mode
     << " threads=" << c.threads;
  return os.str();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void emit(const RunConfig& c, const Table& t, std::ostream& os) {
  if (c.format == "json") {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = config_echo(c);
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json r = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
      j["rows"].push_back(r);
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "# " << kVersion << " " << config_echo(c) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? ',' : '\n');
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? ',' : '\n');
}

int with_output(const RunConfig& c, const std::function<void(std::ostream&)>& fn) {
  if (c.output.empty()) {
    fn(std::cout);
    return 0;
  }
  std::string path = c.output;
  if (path.front() != '/') path = default_output_dir() + "/" + path;
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "cannot open output file " << path << "\n";
    return 2;
  }
  fn(os);
  return 0;
}

std::string fmt(double x) { return format_double(x); }

// deterministic chunked Monte Carlo: 64 fixed streams regardless of the
// thread count, merged in chunk order
template <class Fn>
OnlineStats chunked_mc(std::uint64_t seed, std::uint64_t stream_base,
                       std::int64_t reps, int threads, Fn per_replica) {
  constexpr int kChunks = 64;
  std::vector<OnlineStats> parts(kChunks);
  std::vector<std::thread> pool;
  std::int64_t done = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  for (int cidx = 0; cidx < kChunks; ++cidx) {
    const std::int64_t count = reps / kChunks + (cidx < reps % kChunks ? 1 : 0);
    ranges.emplace_back(done, count);
    done += count;
  }
  std::atomic<int> next{0};
  const int workers = std::max(1, threads);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int cidx = next.fetch_add(1);
        if (cidx >= kChunks) return;
        RngStream s(seed, stream_base + static_cast<std::uint64_t>(cidx));
        for (std::int64_t i = 0; i < ranges[static_cast<std::size_t>(cidx)].second; ++i)
          parts[static_cast<std::size_t>(cidx)].add(per_replica(s));
      }
    });
  for (auto& th : pool) th.join();
  OnlineStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

int cmd_generate(const RunConfig& c) {
  RngStream s(c.seed, c.stream);
  LabeledGraph g = generate(c.variant, c.n, c.m, c.delta, c.construction, s);
  return with_output(c, [&](std::ostream& os) { os << serialize_graph(g); });
}

int cmd_ppt(const RunConfig& c) {
  RngStream s(c.seed, c.stream);
  const PptTree t = sample_ppt(s, c.m, c.delta, c.depth, c.cap);
  return with_output(c, [&](std::ostream& os) {
    os << "# " << kVersion << " " << config_echo(c)
       << (t.truncated ? " truncated=1" : " truncated=0") << "\n";
    os << serialize_ppt(t);
  });
}

int cmd_spectrum(const RunConfig& c) {
  const KernelParams p = make_kernel_params(c.m, c.delta);
  Table t;
  t.columns = {"mode", "m", "delta", "zeta", "N", "radius", "closed_form", "rel_error"};
  auto add_row = [&](const std::string& mode, double zeta, double radius) {
    const double ref = p.nu;
    t.rows.push_back({mode, std::to_string(c.m), fmt(c.delta), fmt(zeta),
                      std::to_string(c.grid), fmt(radius), fmt(ref),
                      fmt((radius - ref) / ref)});
  };
  if (c.mode == "plain" || c.mode == "augmented") {
    const auto A = c.mode == "plain"
                       ? discretize_plain(p, c.grid)
                       : OperatorMatrix::discretize(KernelMode::augmented, p, 0.0,
                                                    c.grid, kPlainDomainFloor, 1.0, true);
    add_row(c.mode, 0.0, spectral_radius_estimate(A).radius);
  } else if (c.mode == "trunc") {
    const auto A = discretize_trunc(p, c.zeta, c.grid);
    add_row(c.mode, c.zeta, spectral_radius_estimate(A).radius);
  } else if (c.mode == "tilde") {
    const auto A = discretize_tilde(p, c.zeta, c.grid);
    add_row(c.mode, c.zeta, spectral_radius_estimate(A).radius);
  } else if (c.mode == "curve") {
    for (const auto& [z, nu_z] :
         nu_zeta_curve(p, {0.1, 0.03, 0.01, 0.003}, c.grid))
      add_row("trunc", z, nu_z);
  } else {
    std::cerr << "unknown spectrum mode '" << c.mode << "'\n";
    return 2;
  }
  return with_output(c, [&](std::ostream& os) { emit(c, t, os); });
}

int cmd_walk(const RunConfig& c) {
  const WalkParams wp = make_walk_params(c.m, c.delta, c.zeta);
  Table t;
  t.columns = {"k", "estimator", "value", "se", "reps", "zeta", "m", "delta"};
  auto row = [&](int k, const std::string& name, double v, double se,
                 std::int64_t reps) {
    t.rows.push_back({std::to_string(k), name, fmt(v), fmt(se), std::to_string(reps),
                      fmt(c.zeta), std::to_string(c.m), fmt(c.delta)});
  };

  const auto ld = chunked_mc(c.seed, c.stream, c.reps, c.threads, [&](RngStream& s) {
    const WalkSample w = sample_walk_S(s, c.k, wp);
    return w.stayed ? std::pow(wp.rho, 0.5 * w.sign_flips) : 0.0;
  });
  row(c.k, "ld_expectation", ld.mean(), ld.standard_error(), ld.count());

  RngStream s_id(c.seed, c.stream + 1000);
  const IdentityResult idr = mc_identity_T(s_id, c.k, wp, c.reps);
  row(c.k, "identity_lhs", idr.lhs, idr.lhs_se, c.reps);
  row(c.k, "identity_rhs", idr.rhs, idr.rhs_se, c.reps);
  row(c.k, "identity_z", idr.z, 0.0, c.reps);

  RngStream s_b(c.seed, c.stream + 2000);
  const auto bs = sample_B_increments(s_b, std::min<std::int64_t>(c.reps, 200000), wp);
  OnlineStats absb;
  for (const double b : bs) absb.add(std::abs(b));
  row(0, "mean_abs_B", absb.mean(), absb.standard_error(), absb.count());

  RngStream s_r(c.seed, c.stream + 3000);
  const McEstimate rstay = mc_stay_probability_R(s_r, c.k, wp, c.reps);
  row(c.k, "stay_R", rstay.value, rstay.se, rstay.reps);
  return with_output(c, [&](std::ostream& os) { emit(c, t, os); });
}

int cmd_distances(const RunConfig& c) {
  RngStream s(c.seed, c.stream);
  LabeledGraph g = generate(c.variant, c.n, c.m, c.delta, c.construction, s);
  const DistanceStats st = typical_distance_stats(g, c.pairs, s);
  Table t;
  t.columns = {"n", "pairs", "mean", "median", "p10", "p90", "log_nu_n", "ratio"};
  t.rows.push_back({std::to_string(st.n), std::to_string(st.pairs), fmt(st.mean),
                    fmt(st.median), fmt(st.p10), fmt(st.p90), fmt(st.log_nu_n),
                    fmt(st.ratio)});
  return with_output(c, [&](std::ostream& os) { emit(c, t, os); });
}

int cmd_scaling(const RunConfig& c) {
  RngStream s(c.seed, c.stream);
  std::vector<Vertex> ns = c.n_list;
  if (ns.empty()) ns = {1000, 10000, 100000, 1000000};
  const ScalingResult res =
      scaling_experiment(c.variant, c.m, c.delta, ns, c.pairs, s, c.construction);
  Table t;
  t.columns = {"n", "pairs", "mean", "median", "p10", "p90", "log_nu_n", "ratio",
               "slope", "expected_slope"};
  for (const auto& r : res.rows)
    t.rows.push_back({std::to_string(r.n), std::to_string(r.pairs), fmt(r.mean),
                      fmt(r.median), fmt(r.p10), fmt(r.p90), fmt(r.log_nu_n),
                      fmt(r.ratio), res.slope_defined ? fmt(res.slope) : "",
                      fmt(res.expected_slope)});
  return with_output(c, [&](std::ostream& os) { emit(c, t, os); });
}

// numeric oracle for the beta moment: adaptive Simpson on
// x^(a-1)(1-x)^(b-1) x^p (1-x)^q / B(a,b)
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fb, double fm, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

double beta_moment_by_integration(double a, double b, int p, int q) {
  const double logB = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  auto f = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp((a + p - 1.0) * std::log(x) + (b + q - 1.0) * std::log1p(-x) -
                    logB);
  };
  // panels bracketing the density spike at a/(a+b); a flat initial grid can
  // miss all of the mass when b >> a
  const double mu = a / (a + b);
  std::vector<double> cuts{0.0, 1.0, 0.5};
  for (int k = -6; k <= 6; ++k) {
    const double left = mu * std::pow(2.0, k);
    if (left > 0.0 && left < 1.0) cuts.push_back(left);
    const double right = 1.0 - (1.0 - mu) * std::pow(2.0, -std::abs(k));
    if (right > 0.0 && right < 1.0) cuts.push_back(right);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double m = 0.5 * (lo + hi);
    total += simpson(f, lo, hi, f(lo), f(hi), f(m), 1e-13, 40);
  }
  return total;
}

int cmd_validate(const RunConfig& c) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  {  // stream determinism
    RngStream a(7, 0), b(7, 0);
    bool same = true;
    for (int i = 0; i < 1000; ++i) same = same && a.u64() == b.u64();
    check("rng determinism", same, "");
  }
  {  // urn partition identities
    RngStream s(c.seed, 11);
    const auto w = draw_urn_weights(10000, s, UrnSchedule::variant_d(2, 1.0));
    double phi_sum = 0.0;
    for (Vertex j = 1; j <= w.n(); ++j) phi_sum += w.phi[static_cast<std::size_t>(j)];
    const double e1 = std::abs(w.S.back() - 1.0);
    const double e2 = std::abs(phi_sum - 1.0);
    check("urn partition identities", e1 <= 1e-12 && e2 <= 1e-12,
          "S_n err " + fmt(e1) + ", sum phi err " + fmt(e2));
  }
  {  // closed-form identity
    RngStream s(c.seed, 12);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int m = 2 + static_cast<int>(s.uniform_int(5));
      const double delta = 5.0 * s.uniform_pos();
      const KernelParams p = make_kernel_params(m, delta);
      const double alt = 2.0 / (2.0 * p.chi - 1.0) *
                         (p.c_oo + std::sqrt(p.c_oy * p.c_yo));
      worst = std::max(worst, std::abs(alt - p.nu) / p.nu);
    }
    check("nu closed-form identity", worst <= 1e-12, "max rel err " + fmt(worst));
  }
  {  // beta moment against quadrature
    double worst = 0.0;
    for (const Vertex s : {Vertex{2}, Vertex{10}, Vertex{100}})
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
          const double alpha = 3.0;
          const double beta = static_cast<double>((2 * s - 3) * 2) + 1.0 * (s - 1);
          worst = std::max(worst, std::abs(beta_moment(alpha, beta, p, q) -
                                           beta_moment_by_integration(alpha, beta, p, q)));
        }
    check("beta moment vs quadrature", worst <= 1e-9, "max abs err " + fmt(worst));
  }
  {  // urn sampling matches the enumerated sequential law
    const std::int64_t reps = c.quick ? 30000 : 300000;
    const double tol = c.quick ? 0.04 : 0.02;
    bool ok = true;
    std::string detail;
    for (const auto& [n, m] : std::vector<std::pair<Vertex, int>>{{3, 1}, {3, 2}}) {
      const auto law = enumerate_sequential_law(n, m, 1.0);
      std::map<std::vector<EdgeTriple>, double> freq;
      RngStream s(c.seed, 13);
      for (std::int64_t i = 0; i < reps; ++i) {
        auto [g, w] = generate_polya_urn(n, m, 1.0, s, false,
                                         UrnSchedule::variant_d(m, 1.0));
        freq[g.edges] += 1.0 / static_cast<double>(reps);
      }
      double tv = 0.0;
      for (const auto& [key, pr] : law) tv += std::abs(pr - freq[key]);
      for (const auto& [key, pr] : freq)
        if (!law.count(key)) tv += pr;
      tv *= 0.5;
      detail += "n=" + std::to_string(n) + ",m=" + std::to_string(m) + ": tv=" +
                fmt(tv) + " ";
      ok = ok && tv < tol;
    }
    check("urn vs sequential law", ok, detail);
  }
  {  // exact path probability three ways
    const std::vector<EdgeTriple> path{{3, 1, 1}, {3, 2, 2}};
    const double formula = edge_set_probability(path, 3, 2, 1.0);
    const auto law = enumerate_sequential_law(3, 2, 1.0);
    const double enumerated = enumerated_marginal(law, path);
    RngStream s(c.seed, 14);
    const std::int64_t reps = c.quick ? 20000 : 200000;
    OnlineStats hit;
    for (std::int64_t i = 0; i < reps; ++i) {
      auto [g, w] =
          generate_polya_urn(3, 2, 1.0, s, false, UrnSchedule::variant_d(2, 1.0));
      bool has = true;
      for (const auto& e : path)
        has = has && std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end();
      hit.add(has ? 1.0 : 0.0);
    }
    const double z = std::abs(hit.mean() - formula) /
                     std::max(hit.standard_error(), 1e-12);
    const bool ok = std::abs(formula - 3.0 / 14.0) <= 1e-12 &&
                    std::abs(enumerated - formula) <= 1e-12 && z < 4.0;
    check("path probability triple", ok,
          "formula=" + fmt(formula) + " enum=" + fmt(enumerated) + " z=" + fmt(z));
  }
  {  // walk identity
    const WalkParams wp = make_walk_params(2, 1.0, 0.05);
    RngStream s(c.seed, 15);
    const IdentityResult idr = mc_identity_T(s, 5, wp, c.quick ? 50000 : 400000);
    check("walk identity k=5", std::abs(idr.z) < 4.0, "z=" + fmt(idr.z));
  }
  {  // block increments exponential
    const WalkParams wp = make_walk_params(2, 1.0, 0.05);
    RngStream s(c.seed, 16);
    const auto bs = sample_B_increments(s, c.quick ? 20000 : 100000, wp);
    std::vector<double> absb;
    for (const double b : bs) absb.push_back(std::abs(b));
    const double ks = ks_exponential(absb, (1.0 + wp.r) / wp.r);
    check("block increment law", ks < (c.quick ? 0.02 : 0.01), "ks=" + fmt(ks));
  }
  {  // graph file round trip
    RngStream s(c.seed, 17);
    LabeledGraph g = generate_pad(200, 2, 1.5, s);
    const std::string text = serialize_graph(g);
    const LabeledGraph h = parse_graph(text);
    check("graph round trip", serialize_graph(h) == text && h.edges == g.edges, "");
  }

  std::cout << (failures == 0 ? "validate: all checks passed\n"
                              : "validate: " + std::to_string(failures) +
                                    " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

std::string default_output_dir() {
  const char* env = std::getenv("PAMLAB_OUT");
  return env && *env ? env : ".";
}

std::string RunConfig::validate() const {
  if (m < 1) return "m must be >= 1";
  if (!(delta > -static_cast<double>(m))) return "delta must exceed -m";
  if (command == "generate" || command == "distances" || command == "scaling") {
    if (n < (variant == Variant::a ? 1 : 2)) return "n too small for variant";
    if (variant == Variant::b && construction == Construction::urn)
      return "variant b supports only the sequential construction";
  }
  if (command == "spectrum") {
    if (grid < 2) return "grid must be >= 2";
    if (mode == "trunc" || mode == "tilde")
      if (!(zeta > 0.0 && zeta <= 0.1)) return "zeta must lie in (0, 1/10]";
  }
  if (command == "walk") {
    if (!(zeta > 0.0 && zeta <= 0.1)) return "zeta must lie in (0, 1/10]";
    if (k < 1) return "k must be >= 1";
    if (reps < 1) return "reps must be >= 1";
    if (m < 2) return "walk statistics need m >= 2";
  }
  if (command == "ppt" && depth < 0) return "depth must be >= 0";
  if (format != "csv" && format != "json") return "format must be csv or json";
  if (threads < 1) return "threads must be >= 1";
  return {};
}

int run(const RunConfig& config) {
  const std::string err = config.validate();
  if (!err.empty()) {
    std::cerr << "invalid configuration: " << err << "\n";
    return 2;
  }
  try {
    if (config.command == "generate") return cmd_generate(config);
    if (config.command == "ppt") return cmd_ppt(config);
    if (config.command == "spectrum") return cmd_spectrum(config);
    if (config.command == "walk") return cmd_walk(config);
    if (config.command == "distances") return cmd_distances(config);
    if (config.command == "scaling") return cmd_scaling(config);
    if (config.command == "validate") return cmd_validate(config);
  } catch (const std::exception& e) {
    std::cerr << config.command << ": " << e.what() << "\n";
    return 1;
  }
  std::cerr << "unknown command '" << config.command << "'\n";
  return 2;
}

}  // namespace pamlab
