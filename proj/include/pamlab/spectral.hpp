#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pamlab {

enum class TypeLabel : char { O = 'O', Y = 'Y' };

// Parameter bundle behind every kernel computation. chi in (1/2, 1) for
// delta > 0; the coefficient table couples the O/Y type transitions.
struct KernelParams {
  int m = 2;
  double delta = 1.0;
  double chi = 0.0;
  double c_oo = 0.0, c_oy = 0.0, c_yo = 0.0, c_yy = 0.0;
  double nu = 0.0;  // closed-form spectral radius (NaN when delta <= 0)
};

KernelParams make_kernel_params(int m, double delta);

// nu = 2 (m(m+delta) + sqrt(m(m-1)(m+delta)(m+1+delta))) / delta, m >= 2.
double nu_closed_form(int m, double delta);

// Band of the exponential-kernel representation:
// b1 = (chi - 1/2) log(1/(1-zeta)), b2 = (chi - 1/2) log(1/(3 zeta)).
std::pair<double, double> b_bounds(double zeta, double chi);

enum class KernelMode { plain, trunc, tilde, augmented };

// Pointwise kernel value.
//  plain:     c_st (1{x>y,t=O} + 1{x<y,t=Y}) / ((x v y)^chi (x ^ y)^(1-chi))
//  trunc:     plain restricted to x, y in [3 zeta, 1 - zeta]
//  tilde:     c_st (1{x<y,t=O} + 1{x>y,t=Y}) e^(-|x-y|) on [b1, b2]^2
//  augmented: plain plus c_OY 1{x=y,t=O} / x
double kernel_eval(double x, TypeLabel s, double y, TypeLabel t,
                   const KernelParams& params, KernelMode mode, double zeta = 0.0);

class IterationError : public std::runtime_error {
 public:
  IterationError(const std::string& what, double last)
      : std::runtime_error(what), last_estimate(last) {}
  double last_estimate;
};

// Cell-averaged discretization of an integral kernel on a 1-d mesh with two
// type components. entry((i,s),(j,t)) = (1/w_i) * iint_{cell_i x cell_j} K;
// functions are stored as [O block | Y block] of cell averages, and
// inner(f,g) = sum_i w_i (fO_i gO_i + fY_i gY_i).
//
// The named modes use the separable structure of the kernel on each side of
// the diagonal, so apply() runs in O(N) via prefix sums and the full matrix
// is never stored. A dense fallback covers arbitrary kernels in tests.
class OperatorMatrix {
 public:
  static OperatorMatrix discretize(KernelMode mode, const KernelParams& params,
                                   double zeta, int N, double lo, double hi,
                                   bool log_mesh);
  // dense quadrature build from an arbitrary kernel (s, t explicit)
  using KernelFn = std::function<double(double, TypeLabel, double, TypeLabel)>;
  static OperatorMatrix from_kernel(const KernelFn& k, int N, double lo, double hi);
  // dense build from an explicit 2N x 2N matrix over a uniform mesh on [0,1]
  static OperatorMatrix from_dense(std::vector<std::vector<double>> entries);

  int size() const { return N_; }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  double cell_width(int i) const;
  double entry(int i, TypeLabel s, int j, TypeLabel t) const;

  void apply(const std::vector<double>& f, std::vector<double>& out) const;
  double inner(const std::vector<double>& f, const std::vector<double>& g) const;
  std::vector<double> ones() const { return std::vector<double>(2 * N_, 1.0); }

 private:
  int N_ = 0;
  std::vector<double> edges_;   // N+1 mesh edges
  std::vector<double> widths_;  // N cell widths
  // factored representation (named modes)
  bool structured_ = false;
  bool flip_ = false;  // tilde orients t=O toward larger coordinates
  double coef_[2][2] = {{0, 0}, {0, 0}};  // c_st, indexed [s][t]
  std::vector<double> int_lower_;  // per-cell integral of the heavy factor
  std::vector<double> int_upper_;  // per-cell integral of the light factor
  std::vector<double> diag_;       // per-cell triangular self integral / w
  std::vector<double> aug_diag_;   // augmented diagonal addition / w
  // dense fallback
  std::vector<std::vector<double>> dense_;

  friend struct OperatorBuilder;
};

struct RadiusResult {
  double radius = 0.0;
  int iterations = 0;
};

// Perron root by power iteration from the all-ones start. Throws
// IterationError carrying the last estimate when max_iter is exhausted.
RadiusResult spectral_radius_estimate(const OperatorMatrix& A, double tol = 1e-10,
                                      int max_iter = 100000);

// <1, A^k 1> with the grid inner product; internally log-rescaled.
double inner_one_Tk_one(const OperatorMatrix& A, int k);
std::vector<double> log_inner_sequence(const OperatorMatrix& A, int k_max);

// Default domain floor for the plain kernel; the restriction error of the
// Perron root decays only like 1/log^2(1/eps0), hence the extreme value.
inline constexpr double kPlainDomainFloor = 1e-250;

OperatorMatrix discretize_plain(const KernelParams& params, int N,
                                double eps0 = kPlainDomainFloor);
OperatorMatrix discretize_trunc(const KernelParams& params, double zeta, int N,
                                bool full_domain = false);
OperatorMatrix discretize_tilde(const KernelParams& params, double zeta, int N);

std::vector<std::pair<double, double>> nu_zeta_curve(const KernelParams& params,
                                                     const std::vector<double>& zetas,
                                                     int N, int max_iter = 100000);

}  // namespace pamlab
