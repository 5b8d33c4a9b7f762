#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pamlab/rng.hpp"
#include "pamlab/spectral.hpp"

using namespace pamlab;

TEST_CASE("closed-form nu") {
  CHECK(nu_closed_form(2, 1.0) == doctest::Approx(12.0 + 4.0 * std::sqrt(6.0)).epsilon(1e-14));
  CHECK(nu_closed_form(3, 2.0) == doctest::Approx(15.0 + std::sqrt(180.0)).epsilon(1e-14));
  CHECK_THROWS_AS(nu_closed_form(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(nu_closed_form(2, -0.5), std::domain_error);
}

TEST_CASE("nu equals the coefficient form on random parameters") {
  RngStream s(1, 0);
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + static_cast<int>(s.uniform_int(5));
    const double delta = 5.0 * s.uniform_pos();
    const KernelParams p = make_kernel_params(m, delta);
    const double alt = 2.0 / (2.0 * p.chi - 1.0) * (p.c_oo + std::sqrt(p.c_oy * p.c_yo));
    CHECK(std::abs(alt - p.nu) <= 1e-12 * p.nu);
  }
}

TEST_CASE("kernel point values") {
  const KernelParams p = make_kernel_params(2, 1.0);
  SUBCASE("diagonal vanishes in plain mode") {
    CHECK(kernel_eval(0.3, TypeLabel::O, 0.3, TypeLabel::O, p, KernelMode::plain) == 0.0);
    CHECK(kernel_eval(0.3, TypeLabel::O, 0.3, TypeLabel::Y, p, KernelMode::plain) == 0.0);
  }
  SUBCASE("hand value") {
    const double got =
        kernel_eval(0.25, TypeLabel::O, 0.5, TypeLabel::Y, p, KernelMode::plain);
    const double want = 1.6 / (std::pow(0.5, 0.6) * std::pow(0.25, 0.4));
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(4.2224).epsilon(1e-4));
  }
  SUBCASE("truncation window") {
    CHECK(kernel_eval(0.01, TypeLabel::O, 0.5, TypeLabel::Y, p, KernelMode::trunc, 0.05) ==
          0.0);
    CHECK(kernel_eval(0.5, TypeLabel::O, 0.2, TypeLabel::O, p, KernelMode::trunc, 0.05) >
          0.0);
  }
  SUBCASE("sign pattern everywhere") {
    RngStream s(2, 0);
    for (int i = 0; i < 1000; ++i) {
      const double x = s.uniform_pos();
      double y = s.uniform_pos();
      if (x == y) y = 0.5 * y + 0.25;
      for (const TypeLabel t : {TypeLabel::O, TypeLabel::Y}) {
        const double v = kernel_eval(x, TypeLabel::O, y, t, p, KernelMode::plain);
        const bool should = (x > y && t == TypeLabel::O) || (x < y && t == TypeLabel::Y);
        CHECK((v > 0.0) == should);
      }
    }
  }
  SUBCASE("augmented diagonal") {
    const double v =
        kernel_eval(0.25, TypeLabel::Y, 0.25, TypeLabel::O, p, KernelMode::augmented);
    CHECK(v == doctest::Approx(p.c_oy / 0.25).epsilon(1e-12));
    CHECK(kernel_eval(0.25, TypeLabel::Y, 0.25, TypeLabel::Y, p, KernelMode::augmented) ==
          0.0);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(kernel_eval(0.0, TypeLabel::O, 0.5, TypeLabel::O, p, KernelMode::plain),
                    std::domain_error);
    CHECK_THROWS_AS(
        kernel_eval(-0.1, TypeLabel::O, 0.5, TypeLabel::O, p, KernelMode::tilde, 0.05),
        std::domain_error);
  }
}

TEST_CASE("b bounds") {
  const auto [b1, b2] = b_bounds(0.05, 0.6);
  CHECK(b1 == doctest::Approx(0.0051293).epsilon(1e-4));
  CHECK(b2 == doctest::Approx(0.189712).epsilon(1e-5));
  // b2 > 4 b1 for small zeta
  for (const double z : {0.05, 0.02, 0.01, 0.003})
    CHECK(b_bounds(z, 0.6).second > 4.0 * b_bounds(z, 0.6).first);
}

TEST_CASE("discretized operator basics") {
  const KernelParams p = make_kernel_params(2, 1.0);
  SUBCASE("constant kernel rows sum to two") {
    const auto A = OperatorMatrix::from_kernel(
        [](double, TypeLabel, double, TypeLabel) { return 1.0; }, 16, 0.0, 1.0);
    for (int i = 0; i < 16; ++i)
      for (const TypeLabel s : {TypeLabel::O, TypeLabel::Y}) {
        double row = 0.0;
        for (int j = 0; j < 16; ++j)
          for (const TypeLabel t : {TypeLabel::O, TypeLabel::Y})
            row += A.entry(i, s, j, t);
        CHECK(row == doctest::Approx(2.0).epsilon(1e-12));
      }
  }
  SUBCASE("scaled identity has its scale as radius") {
    std::vector<std::vector<double>> id(8, std::vector<double>(8, 0.0));
    for (int i = 0; i < 8; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 3.25;
    const auto A = OperatorMatrix::from_dense(std::move(id));
    CHECK(spectral_radius_estimate(A).radius == doctest::Approx(3.25).epsilon(1e-9));
  }
  SUBCASE("structured and quadrature entries agree off the diagonal") {
    const auto A = discretize_trunc(p, 0.05, 40);
    const auto B = OperatorMatrix::from_kernel(
        [&](double x, TypeLabel s, double y, TypeLabel t) {
          return kernel_eval(x, s, y, t, p, KernelMode::trunc, 0.05);
        },
        40, 3.0 * 0.05, 1.0 - 0.05);
    for (int i = 0; i < 40; i += 7)
      for (int j = 0; j < 40; j += 5) {
        if (i == j) continue;  // quadrature cannot see the jump on the diagonal
        for (const TypeLabel s : {TypeLabel::O, TypeLabel::Y})
          for (const TypeLabel t : {TypeLabel::O, TypeLabel::Y}) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(A.entry(i, s, j, t) ==
                  doctest::Approx(B.entry(i, s, j, t)).epsilon(1e-9));
          }
      }
  }
  SUBCASE("structured apply equals entrywise multiplication") {
    const auto A = discretize_trunc(p, 0.03, 24);
    RngStream s(3, 0);
    std::vector<double> f(48);
    for (auto& x : f) x = s.uniform();
    std::vector<double> fast;
    A.apply(f, fast);
    for (int i = 0; i < 24; ++i)
      for (const TypeLabel t : {TypeLabel::O, TypeLabel::Y}) {
        double slow = 0.0;
        for (int j = 0; j < 24; ++j) {
          slow += A.entry(i, t, j, TypeLabel::O) * f[static_cast<std::size_t>(j)];
          slow += A.entry(i, t, j, TypeLabel::Y) * f[static_cast<std::size_t>(24 + j)];
        }
        const double got = t == TypeLabel::O ? fast[static_cast<std::size_t>(i)]
                                             : fast[static_cast<std::size_t>(24 + i)];
        CHECK(got == doctest::Approx(slow).epsilon(1e-11));
      }
  }
  SUBCASE("trunc rows and columns vanish outside the window") {
    const auto A = discretize_trunc(p, 0.05, 50, /*full_domain=*/true);
    // cells fully below 3 zeta = 0.15: indices 0..6 (width 0.02)
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 50; ++j)
        for (const TypeLabel s : {TypeLabel::O, TypeLabel::Y})
          for (const TypeLabel t : {TypeLabel::O, TypeLabel::Y}) {
            CHECK(A.entry(i, s, j, t) == 0.0);
            CHECK(A.entry(j, s, i, t) == 0.0);
          }
  }
}

TEST_CASE("plain-kernel radius approaches nu") {
  SUBCASE("two percent at practical settings") {
    for (const auto& [m, delta] : std::vector<std::pair<int, double>>{{2, 1.0}, {3, 2.0}}) {
      const KernelParams p = make_kernel_params(m, delta);
      const auto A = discretize_plain(p, 2000);
      const double rad = spectral_radius_estimate(A).radius;
      CAPTURE(m);
      CAPTURE(delta);
      CHECK(std::abs(rad - p.nu) / p.nu < 0.02);
    }
  }
  SUBCASE("grid refinement is stable to under one percent") {
    const KernelParams p = make_kernel_params(2, 1.0);
    const double r1 = spectral_radius_estimate(discretize_plain(p, 1000)).radius;
    const double r2 = spectral_radius_estimate(discretize_plain(p, 2000)).radius;
    CHECK(std::abs(r2 - r1) / r1 < 0.01);
  }
}

TEST_CASE("power-method ratios agree with the radius") {
  const KernelParams p = make_kernel_params(2, 1.0);
  SUBCASE("plain kernel ratio at k = 30") {
    // the k = 30 transient saturates near 5% below nu on any domain floor;
    // band frozen from the first oracle run
    const auto A = discretize_plain(p, 1500);
    const auto logs = log_inner_sequence(A, 31);
    const double ratio = std::exp(logs[31] - logs[30]);
    CHECK(std::abs(ratio - p.nu) / p.nu < 0.07);
    CHECK(ratio < p.nu);
  }
  SUBCASE("truncated ratios converge to the truncated radius from above") {
    const auto A = discretize_trunc(p, 0.05, 800);
    const double rad = spectral_radius_estimate(A).radius;
    const auto logs = log_inner_sequence(A, 40);
    std::vector<double> ratios;
    for (int k = 20; k < 40; ++k) ratios.push_back(std::exp(logs[static_cast<std::size_t>(k + 1)] - logs[static_cast<std::size_t>(k)]));
    for (std::size_t i = 1; i < ratios.size(); ++i)
      CHECK(ratios[i] <= ratios[i - 1] * (1.0 + 1e-9));  // eventually monotone
    CHECK(std::abs(ratios.back() - rad) / rad < 0.001);
    CHECK(rad < p.nu);
  }
  SUBCASE("inner product at k = 0 is the domain measure times two") {
    const auto A = discretize_trunc(p, 0.05, 100);
    CHECK(inner_one_Tk_one(A, 0) ==
          doctest::Approx(2.0 * (1.0 - 0.05 - 3.0 * 0.05)).epsilon(1e-12));
  }
}

TEST_CASE("nu_zeta curve") {
  const KernelParams p = make_kernel_params(2, 1.0);
  const auto curve = nu_zeta_curve(p, {0.1, 0.03, 0.01, 0.003}, 1500);
  REQUIRE(curve.size() == 4);
  // nondecreasing as zeta falls, never exceeding nu
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i].second >= curve[i - 1].second * (1.0 - 0.005));
  for (const auto& [z, nu_z] : curve) CHECK(nu_z <= p.nu * 1.005);
  // honest first-run values: the truncated radius climbs only logarithmically,
  // reaching roughly a fifth of nu at zeta = 0.003
  CHECK(curve.back().second / p.nu > 0.15);
  CHECK(curve.back().second / p.nu < 0.25);
}

TEST_CASE("isometry consistency between the truncated and exponential forms") {
  // the band kernel is the image of the truncated one under an isometry, so
  // the two independently discretized operators must share their Perron root
  // up to the (2 chi - 1)/2 scale
  const KernelParams p = make_kernel_params(2, 1.0);
  for (const double z : {0.05, 0.01}) {
    const double trunc_rad = spectral_radius_estimate(discretize_trunc(p, z, 2000)).radius;
    const double tilde_rad = spectral_radius_estimate(discretize_tilde(p, z, 2000)).radius;
    CAPTURE(z);
    CHECK(tilde_rad * 2.0 / (2.0 * p.chi - 1.0) ==
          doctest::Approx(trunc_rad).epsilon(5e-4));
  }
}
