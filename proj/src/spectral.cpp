#include "pamlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pamlab {

KernelParams make_kernel_params(int m, double delta) {
  if (m < 1) throw std::invalid_argument("make_kernel_params: m must be >= 1");
  if (!(delta > -static_cast<double>(m)))
    throw std::invalid_argument("make_kernel_params: delta must exceed -m");
  KernelParams p;
  p.m = m;
  p.delta = delta;
  const double md = static_cast<double>(m) + delta;
  const double tm = 2.0 * static_cast<double>(m) + delta;
  p.chi = md / tm;
  p.c_oo = static_cast<double>(m) * md / tm;
  p.c_oy = static_cast<double>(m) * (md + 1.0) / tm;
  p.c_yo = static_cast<double>(m - 1) * md / tm;
  p.c_yy = p.c_oo;
  p.nu = delta > 0.0 ? nu_closed_form(m, delta)
                     : std::numeric_limits<double>::quiet_NaN();
  return p;
}

double nu_closed_form(int m, double delta) {
  if (m < 2) throw std::domain_error("nu_closed_form: m must be >= 2");
  if (!(delta > 0.0)) throw std::domain_error("nu_closed_form: delta must be positive");
  const double md = static_cast<double>(m) + delta;
  return 2.0 *
         (static_cast<double>(m) * md +
          std::sqrt(static_cast<double>(m) * static_cast<double>(m - 1) * md *
                    (md + 1.0))) /
         delta;
}

std::pair<double, double> b_bounds(double zeta, double chi) {
  if (!(zeta > 0.0 && zeta <= 0.1))
    throw std::invalid_argument("b_bounds: zeta must lie in (0, 1/10]");
  const double c = chi - 0.5;
  return {c * std::log(1.0 / (1.0 - zeta)), c * std::log(1.0 / (3.0 * zeta))};
}

double kernel_eval(double x, TypeLabel s, double y, TypeLabel t,
                   const KernelParams& p, KernelMode mode, double zeta) {
  const auto cst = [&](TypeLabel a, TypeLabel b) {
    if (a == TypeLabel::O) return b == TypeLabel::O ? p.c_oo : p.c_oy;
    return b == TypeLabel::O ? p.c_yo : p.c_yy;
  };
  switch (mode) {
    case KernelMode::plain:
    case KernelMode::trunc:
    case KernelMode::augmented: {
      if (!(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0))
        throw std::domain_error("kernel_eval: x, y must lie in (0, 1]");
      double v = 0.0;
      if (x != y) {
        const bool on = (x > y && t == TypeLabel::O) || (x < y && t == TypeLabel::Y);
        if (on)
          v = cst(s, t) / (std::pow(std::max(x, y), p.chi) *
                           std::pow(std::min(x, y), 1.0 - p.chi));
      } else if (mode == KernelMode::augmented && t == TypeLabel::O) {
        v = p.c_oy / x;
      }
      if (mode == KernelMode::trunc) {
        const double a = 3.0 * zeta, b = 1.0 - zeta;
        if (x < a || x > b || y < a || y > b) return 0.0;
      }
      return v;
    }
    case KernelMode::tilde: {
      if (x < 0.0 || y < 0.0)
        throw std::domain_error("kernel_eval: tilde mode needs x, y >= 0");
      const auto [b1, b2] = b_bounds(zeta, p.chi);
      if (x < b1 || x > b2 || y < b1 || y > b2) return 0.0;
      const bool on = (x < y && t == TypeLabel::O) || (x > y && t == TypeLabel::Y) ||
                      (x == y);
      if (!on) return 0.0;
      return cst(s, t) * std::exp(-std::abs(x - y));
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

double clip_lo(double lo, double a) { return std::max(lo, a); }
double clip_hi(double hi, double b) { return std::min(hi, b); }

// integral of x^(-e) over [lo, hi], 0 < e < 1
double int_pow(double lo, double hi, double e) {
  if (hi <= lo) return 0.0;
  return (std::pow(hi, 1.0 - e) - std::pow(lo, 1.0 - e)) / (1.0 - e);
}

// (1/w) iint_{lo<y<x<hi} x^(-chi) y^(chi-1) dy dx, w the full cell width
double diag_pow(double lo, double hi, double chi, double w) {
  if (hi <= lo) return 0.0;
  const double inner =
      (hi - lo) - std::pow(lo, chi) * (std::pow(hi, 1.0 - chi) - std::pow(lo, 1.0 - chi)) /
                      (1.0 - chi);
  return inner / (chi * w);
}

double diag_exp(double lo, double hi, double w) {
  if (hi <= lo) return 0.0;
  return ((hi - lo) - (1.0 - std::exp(lo - hi))) / w;
}

}  // namespace

struct OperatorBuilder {
  static OperatorMatrix structured(KernelMode mode, const KernelParams& p, double zeta,
                                   int N, double lo, double hi, bool log_mesh) {
    OperatorMatrix A;
    A.N_ = N;
    A.structured_ = true;
    A.edges_.resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(N);
      A.edges_[static_cast<std::size_t>(i)] =
          log_mesh ? std::exp(std::log(lo) * (1.0 - t) + std::log(hi) * t)
                   : lo + (hi - lo) * t;
    }
    A.edges_.back() = hi;
    A.widths_.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
      A.widths_[static_cast<std::size_t>(i)] =
          A.edges_[static_cast<std::size_t>(i) + 1] - A.edges_[static_cast<std::size_t>(i)];

    A.coef_[0][0] = p.c_oo;
    A.coef_[0][1] = p.c_oy;
    A.coef_[1][0] = p.c_yo;
    A.coef_[1][1] = p.c_yy;
    A.int_lower_.assign(static_cast<std::size_t>(N), 0.0);
    A.int_upper_.assign(static_cast<std::size_t>(N), 0.0);
    A.diag_.assign(static_cast<std::size_t>(N), 0.0);

    const bool power = mode != KernelMode::tilde;
    A.flip_ = !power;
    double wa = -std::numeric_limits<double>::infinity();
    double wb = std::numeric_limits<double>::infinity();
    if (mode == KernelMode::trunc) {
      wa = 3.0 * zeta;
      wb = 1.0 - zeta;
    }
    for (int i = 0; i < N; ++i) {
      const double cl = clip_lo(A.edges_[static_cast<std::size_t>(i)], wa);
      const double ch = clip_hi(A.edges_[static_cast<std::size_t>(i) + 1], wb);
      const double w = A.widths_[static_cast<std::size_t>(i)];
      if (ch <= cl) continue;
      if (power) {
        A.int_lower_[static_cast<std::size_t>(i)] = int_pow(cl, ch, p.chi);
        A.int_upper_[static_cast<std::size_t>(i)] = int_pow(cl, ch, 1.0 - p.chi);
        A.diag_[static_cast<std::size_t>(i)] = diag_pow(cl, ch, p.chi, w);
      } else {
        A.int_lower_[static_cast<std::size_t>(i)] = std::exp(-cl) - std::exp(-ch);
        A.int_upper_[static_cast<std::size_t>(i)] = std::exp(ch) - std::exp(cl);
        A.diag_[static_cast<std::size_t>(i)] = diag_exp(cl, ch, w);
      }
    }
    if (mode == KernelMode::augmented) {
      A.aug_diag_.assign(static_cast<std::size_t>(N), 0.0);
      for (int i = 0; i < N; ++i)
        A.aug_diag_[static_cast<std::size_t>(i)] =
            p.c_oy *
            std::log(A.edges_[static_cast<std::size_t>(i) + 1] /
                     A.edges_[static_cast<std::size_t>(i)]) /
            A.widths_[static_cast<std::size_t>(i)];
    }
    return A;
  }
};

OperatorMatrix OperatorMatrix::discretize(KernelMode mode, const KernelParams& params,
                                          double zeta, int N, double lo, double hi,
                                          bool log_mesh) {
  if (N < 2) throw std::invalid_argument("discretize: N must be >= 2");
  if (!(hi > lo)) throw std::invalid_argument("discretize: empty domain");
  return OperatorBuilder::structured(mode, params, zeta, N, lo, hi, log_mesh);
}

OperatorMatrix OperatorMatrix::from_kernel(const KernelFn& k, int N, double lo,
                                           double hi) {
  if (N < 1) throw std::invalid_argument("from_kernel: N must be >= 1");
  OperatorMatrix A;
  A.N_ = N;
  A.edges_.resize(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i)
    A.edges_[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N);
  A.widths_.assign(static_cast<std::size_t>(N), (hi - lo) / static_cast<double>(N));

  // 8-point Gauss-Legendre per axis
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                               -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                               0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  A.dense_.assign(2 * static_cast<std::size_t>(N),
                  std::vector<double>(2 * static_cast<std::size_t>(N), 0.0));
  const TypeLabel types[2] = {TypeLabel::O, TypeLabel::Y};
  for (int i = 0; i < N; ++i) {
    const double xl = A.edges_[static_cast<std::size_t>(i)];
    const double xh = A.edges_[static_cast<std::size_t>(i) + 1];
    for (int j = 0; j < N; ++j) {
      const double yl = A.edges_[static_cast<std::size_t>(j)];
      const double yh = A.edges_[static_cast<std::size_t>(j) + 1];
      for (int si = 0; si < 2; ++si)
        for (int ti = 0; ti < 2; ++ti) {
          double acc = 0.0;
          for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
              const double x = 0.5 * (xl + xh) + 0.5 * (xh - xl) * gx[a];
              const double y = 0.5 * (yl + yh) + 0.5 * (yh - yl) * gx[b];
              acc += gw[a] * gw[b] * k(x, types[si], y, types[ti]);
            }
          acc *= 0.25 * (xh - xl) * (yh - yl);
          A.dense_[static_cast<std::size_t>(si * N + i)]
                  [static_cast<std::size_t>(ti * N + j)] =
              acc / A.widths_[static_cast<std::size_t>(i)];
        }
    }
  }
  return A;
}

OperatorMatrix OperatorMatrix::from_dense(std::vector<std::vector<double>> entries) {
  OperatorMatrix A;
  const int twoN = static_cast<int>(entries.size());
  if (twoN < 2 || twoN % 2 != 0)
    throw std::invalid_argument("from_dense: need a 2N x 2N matrix");
  A.N_ = twoN / 2;
  A.edges_.resize(static_cast<std::size_t>(A.N_) + 1);
  for (int i = 0; i <= A.N_; ++i)
    A.edges_[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(A.N_);
  A.widths_.assign(static_cast<std::size_t>(A.N_), 1.0 / static_cast<double>(A.N_));
  A.dense_ = std::move(entries);
  return A;
}

double OperatorMatrix::cell_width(int i) const {
  return widths_[static_cast<std::size_t>(i)];
}

double OperatorMatrix::entry(int i, TypeLabel s, int j, TypeLabel t) const {
  if (!structured_) {
    const int si = s == TypeLabel::O ? 0 : 1;
    const int ti = t == TypeLabel::O ? 0 : 1;
    return dense_[static_cast<std::size_t>(si * N_ + i)]
                 [static_cast<std::size_t>(ti * N_ + j)];
  }
  const int si = s == TypeLabel::O ? 0 : 1;
  const double w = widths_[static_cast<std::size_t>(i)];
  double v = 0.0;
  const bool t_is_o = t == TypeLabel::O;
  // orientation of the t=O triangle: rows above columns for the power kernel,
  // below for the exponential one
  const bool o_in_lower = !flip_;
  if (i == j) {
    v = coef_[si][t_is_o ? 0 : 1] * diag_[static_cast<std::size_t>(i)];
  } else {
    const bool row_above = i > j;
    if (t_is_o == (row_above == o_in_lower)) {
      const double heavy = int_lower_[static_cast<std::size_t>(row_above ? i : j)];
      const double light = int_upper_[static_cast<std::size_t>(row_above ? j : i)];
      v = coef_[si][t_is_o ? 0 : 1] * heavy * light / w;
    }
  }
  if (!aug_diag_.empty() && t_is_o && i == j)
    v += aug_diag_[static_cast<std::size_t>(i)];
  return v;
}

void OperatorMatrix::apply(const std::vector<double>& f, std::vector<double>& out) const {
  const std::size_t n = static_cast<std::size_t>(N_);
  out.assign(2 * n, 0.0);
  if (!structured_) {
    for (std::size_t r = 0; r < 2 * n; ++r) {
      double acc = 0.0;
      const auto& row = dense_[r];
      for (std::size_t c = 0; c < 2 * n; ++c) acc += row[c] * f[c];
      out[r] = acc;
    }
    return;
  }
  // h_t(i) = sum_j W_t(i, j) f_t(j) via prefix/suffix sums over the factored
  // triangles; out mixes the two components through the coefficient table.
  std::vector<double> h_o(n, 0.0), h_y(n, 0.0);
  auto triangle = [&](const double* src, std::vector<double>& h, bool lower) {
    if (lower) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = int_lower_[i] * acc / widths_[i] + diag_[i] * src[i];
        acc += int_upper_[i] * src[i];
      }
    } else {
      double acc = 0.0;
      for (std::size_t i = n; i-- > 0;) {
        h[i] = int_upper_[i] * acc / widths_[i] + diag_[i] * src[i];
        acc += int_lower_[i] * src[i];
      }
    }
  };
  const double* fo = f.data();
  const double* fy = f.data() + n;
  triangle(fo, h_o, !flip_);
  triangle(fy, h_y, flip_);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = coef_[0][0] * h_o[i] + coef_[0][1] * h_y[i];
    out[n + i] = coef_[1][0] * h_o[i] + coef_[1][1] * h_y[i];
  }
  if (!aug_diag_.empty())
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += aug_diag_[i] * fo[i];
      out[n + i] += aug_diag_[i] * fo[i];
    }
}

double OperatorMatrix::inner(const std::vector<double>& f,
                             const std::vector<double>& g) const {
  const std::size_t n = static_cast<std::size_t>(N_);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += widths_[i] * (f[i] * g[i] + f[n + i] * g[n + i]);
  return s;
}

RadiusResult spectral_radius_estimate(const OperatorMatrix& A, double tol,
                                      int max_iter) {
  std::vector<double> v = A.ones();
  std::vector<double> w;
  double prev = -1.0;
  double vnorm = std::sqrt(A.inner(v, v));
  for (int it = 1; it <= max_iter; ++it) {
    A.apply(v, w);
    const double wnorm = std::sqrt(A.inner(w, w));
    if (wnorm == 0.0) return {0.0, it};
    const double lam = wnorm / vnorm;
    for (auto& x : w) x /= wnorm;
    v.swap(w);
    vnorm = 1.0;
    if (it > 5 && std::abs(lam - prev) <= tol * std::max(lam, 1e-300))
      return {lam, it};
    prev = lam;
  }
  throw IterationError("spectral_radius_estimate: no convergence", prev);
}

std::vector<double> log_inner_sequence(const OperatorMatrix& A, int k_max) {
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(k_max) + 1);
  std::vector<double> v = A.ones();
  std::vector<double> ones = A.ones();
  std::vector<double> w;
  double scale = 0.0;
  logs.push_back(std::log(A.inner(ones, v)));
  for (int k = 1; k <= k_max; ++k) {
    A.apply(v, w);
    double mx = 0.0;
    for (const double x : w) mx = std::max(mx, std::abs(x));
    if (mx == 0.0) {
      logs.push_back(-std::numeric_limits<double>::infinity());
      v.assign(v.size(), 0.0);
      continue;
    }
    for (auto& x : w) x /= mx;
    scale += std::log(mx);
    v.swap(w);
    logs.push_back(scale + std::log(A.inner(ones, v)));
  }
  return logs;
}

double inner_one_Tk_one(const OperatorMatrix& A, int k) {
  if (k < 0) throw std::invalid_argument("inner_one_Tk_one: k must be >= 0");
  return std::exp(log_inner_sequence(A, k).back());
}

OperatorMatrix discretize_plain(const KernelParams& params, int N, double eps0) {
  return OperatorMatrix::discretize(KernelMode::plain, params, 0.0, N, eps0, 1.0, true);
}

OperatorMatrix discretize_trunc(const KernelParams& params, double zeta, int N,
                                bool full_domain) {
  if (full_domain)
    return OperatorMatrix::discretize(KernelMode::trunc, params, zeta, N, 0.0, 1.0,
                                      false);
  return OperatorMatrix::discretize(KernelMode::trunc, params, zeta, N, 3.0 * zeta,
                                    1.0 - zeta, false);
}

OperatorMatrix discretize_tilde(const KernelParams& params, double zeta, int N) {
  const auto [b1, b2] = b_bounds(zeta, params.chi);
  return OperatorMatrix::discretize(KernelMode::tilde, params, zeta, N, b1, b2, false);
}

std::vector<std::pair<double, double>> nu_zeta_curve(const KernelParams& params,
                                                     const std::vector<double>& zetas,
                                                     int N, int max_iter) {
  std::vector<std::pair<double, double>> curve;
  for (const double z : zetas) {
    if (!(z > 0.0 && z <= 0.1))
      throw std::invalid_argument("nu_zeta_curve: zeta must lie in (0, 1/10]");
    const auto A = discretize_trunc(params, z, N);
    curve.emplace_back(z, spectral_radius_estimate(A, 1e-10, max_iter).radius);
  }
  return curve;
}

}  // namespace pamlab
