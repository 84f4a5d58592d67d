#include <doctest.h>

#include "oracles.hpp"
#include "ptorus/coords.hpp"
#include "ptorus/errors.hpp"

using namespace ptorus;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// Nearest-root continuation of √(α²β² − 4(α² + β²)) along β: 2 → β in many
// small steps, starting from −4i.
Complex fine_gamma(Complex alpha, Complex beta, int steps = 20000) {
  Complex s{0.0, -4.0};
  for (int k = 1; k <= steps; ++k) {
    const Complex b = 2.0 + (static_cast<double>(k) / steps) * (beta - 2.0);
    const Complex r = std::sqrt(alpha * alpha * b * b - 4.0 * (alpha * alpha + b * b));
    s = std::abs(r - s) < std::abs(r + s) ? r : -r;
  }
  return 0.5 * (alpha * beta + s);
}

}  // namespace

TEST_CASE("complex_length examples") {
  CHECK(std::abs(complex_length(2.2552519304127342) - 1.0) < 1e-12);
  const Complex w{0.3, 0.3};
  CHECK(std::abs(complex_length(2.0 * std::cosh(0.5 * w)) - w) < 1e-12);

  SUBCASE("square-root asymptotics near 2") {
    double previous = 1.0;
    for (double eps : {1e-4, 1e-6}) {
      const Complex z = 2.0 + std::polar(eps, 0.7);
      const Complex lam = complex_length(z);
      const Complex approx = 2.0 * std::sqrt(z - 2.0);
      CHECK(std::abs(lam) / std::abs(approx) == doctest::Approx(1.0).epsilon(1e-2));
      const double ratio = std::abs(lam - approx) / eps;
      CHECK(ratio < previous);
      previous = ratio;
    }
    CHECK(previous < 1e-3);
  }
}

TEST_CASE("complex_length domain") {
  for (Complex z : {Complex{1.0, 0.0}, Complex{2.0, 0.0}, Complex{0.5, 0.0}, Complex{-1.0, 0.3}, Complex{0.0, 4.0}}) {
    CHECK_THROWS_AS(complex_length(z), DomainError);
  }
  CHECK_NOTHROW(complex_length(Complex{2.0000001, 0.0}));
  CHECK_NOTHROW(complex_length(Complex{1.0, 1e-9}));
}

TEST_CASE("complex_length inverts 2cosh(w/2) on the strip") {
  oracle::Rng rng(11);
  for (int k = 0; k < 10000; ++k) {
    const Complex w{rng.uniform(1e-3, 6.0), rng.uniform(-kPi + 1e-3, kPi - 1e-3)};
    const Complex z = 2.0 * std::cosh(0.5 * w);
    const Complex back = complex_length(z);
    CHECK(back.real() > 0.0);
    CHECK(std::abs(back - w) < 1e-10 * (1.0 + std::abs(z)));
    CHECK(std::abs(2.0 * std::cosh(0.5 * back) - z) < 1e-10 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("gamma_branch") {
  oracle::Rng rng(12);
  SUBCASE("anchor at beta = 2") {
    for (int k = 0; k < 100; ++k) {
      const Complex alpha = rng.complex_in_box(10.0);
      CHECK(std::abs(gamma_branch({alpha, 2.0}) - (alpha - 2.0 * kI)) < 1e-10);
    }
  }
  SUBCASE("alpha = 0 gives -i beta") {
    for (int k = 0; k < 100; ++k) {
      const Complex beta{rng.uniform(0.05, 6.0), rng.uniform(-6.0, 6.0)};
      CHECK(std::abs(gamma_branch({0.0, beta}) + kI * beta) < 1e-10);
    }
  }
  SUBCASE("Markov equation, root sum, and agreement with fine continuation") {
    int checked = 0;
    while (checked < 200) {
      const TraceCoords tc{rng.complex_in_box(6.0), Complex{rng.uniform(0.5, 4.0), rng.uniform(-1.5, 1.5)}};
      Complex g;
      try {
        g = gamma_branch(tc);
      } catch (const BranchError&) {
        continue;
      }
      ++checked;
      const TraceTriple t{tc.alpha, tc.beta, g};
      CHECK(std::abs(t.markov_residual()) < 1e-8 * (1.0 + std::norm(g) + std::norm(tc.alpha) * std::norm(tc.beta)));
      const auto [g1, g2] = gamma_roots(tc);
      CHECK(rel(g1 + g2, tc.alpha * tc.beta) < 1e-8);
      CHECK(rel(g, fine_gamma(tc.alpha, tc.beta)) < 1e-8);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(gamma_branch({1.0, Complex{-0.5, 1.0}}), DomainError);
    // α = 3: critical β² = 4α²/(α² − 4) = 36/5
    const double critical = std::sqrt(36.0 / 5.0);
    CHECK_THROWS_AS(gamma_branch({3.0, critical}), DomainError);
    CHECK_THROWS_AS(gamma_branch({3.0, 2.0 + 2.0 * (critical - 2.0)}, 2), BranchError);
  }
}

TEST_CASE("realize_triple") {
  const TraceTriple t1{2.0 * kI, 2.0, 0.0};
  const auto r1 = realize_triple(t1);
  CHECK(std::abs(r1.A.trace() - t1.x) < 1e-8);
  CHECK(std::abs(r1.B.trace() - t1.y) < 1e-8);
  CHECK(std::abs(compose(r1.A, r1.B).trace() - t1.z) < 1e-8);

  const TraceTriple t2{0.0, 2.0, -2.0 * kI};
  CHECK(std::abs(t2.markov_residual()) == 0.0);
  const TraceTriple got = realize_triple(t2).traces();
  CHECK(std::abs(got.x - t2.x) < 1e-8);
  CHECK(std::abs(got.y - t2.y) < 1e-8);
  CHECK(std::abs(got.z - t2.z) < 1e-8);

  oracle::Rng rng(13);
  for (int k = 0; k < 500; ++k) {
    const TraceCoords tc{rng.complex_in_box(5.0), rng.complex_in_box(5.0)};
    const auto [g1, g2] = gamma_roots(tc);
    const TraceTriple t{tc.alpha, tc.beta, k % 2 ? g1 : g2};
    if (std::abs(t.z - 2.0) < 1e-6 || std::abs(t.z + 2.0) < 1e-6) continue;
    const auto rep = realize_triple(t);
    const TraceTriple back = rep.traces();
    const double scale = 1.0 + std::abs(t.z);
    CHECK(std::abs(back.x - t.x) < 1e-8 * scale);
    CHECK(std::abs(back.y - t.y) < 1e-8 * scale);
    CHECK(std::abs(back.z - t.z) < 1e-8 * scale);
    CHECK(std::abs(rep.commutator_trace() + 2.0) < 1e-7 * scale * scale);
    CHECK(std::abs(rep.A.det() - 1.0) < 1e-9);
    CHECK(std::abs(rep.B.det() - 1.0) < 1e-9);
  }

  CHECK_THROWS_AS(realize_triple({3.0, 3.0, 2.0}), DomainError);
  CHECK_THROWS_AS(realize_triple({1.0, 1.0, 1.0}), DomainError);
  // Huge z forces |ξ| ≈ |z| > 1e8.
  const Complex y{3.4e8, 0.0};
  const auto [big, small] = gamma_roots({3.0, y});
  CHECK_THROWS_AS(realize_triple({3.0, y, std::abs(big) > std::abs(small) ? big : small}), DegenerateError);
}

TEST_CASE("rho_alpha, sigma_mu, hat_sigma") {
  const auto r0 = rho_alpha(0.0);
  CHECK(r0.A == UnitDetMatrix{0.0, -kI, -kI, 0.0});
  CHECK(r0.A.det() == Complex{1.0, 0.0});
  CHECK(r0.B == UnitDetMatrix{1.0, 2.0, 0.0, 1.0});

  oracle::Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const Complex alpha = rng.complex_in_box(8.0);
    const auto r = rho_alpha(alpha);
    CHECK(std::abs(compose(r.A, r.B).trace() - (alpha - 2.0 * kI)) < 1e-13);
    CHECK(std::abs(r.commutator_trace() + 2.0) < 1e-9);

    const Complex mu = rng.complex_in_box(8.0);
    const auto s = sigma_mu(mu);
    const auto rr = rho_alpha(-kI * mu);
    CHECK(s.A == rr.A);
    CHECK(s.B == rr.B);
    CHECK(s.A.trace() == -kI * mu);
  }
  CHECK(sigma_mu(0.0).A == UnitDetMatrix{0.0, -kI, -kI, 0.0});

  const Complex mu{0.4, 1.7};
  const Complex zeta{0.3, 2.6};
  const auto hs = hat_sigma(mu, zeta);
  CHECK(hs.C == UnitDetMatrix{1.0, zeta, 0.0, 1.0});
  for (int k = -100; k <= 100; ++k) {
    const UnitDetMatrix word = compose(power(hs.C, -k), hs.rep.A);
    const UnitDetMatrix expected{-kI * (mu - static_cast<double>(k) * zeta), -kI, -kI, 0.0};
    CHECK(psl_distance(word, expected) < 1e-10);
    CHECK(psl_distance(word, sigma_mu(mu - static_cast<double>(k) * zeta).A) < 1e-10);
  }
  CHECK(compose(power(hs.C, 0), hs.rep.A) == sigma_mu(mu).A);
  CHECK(hat_sigma(mu, 0.0).C == UnitDetMatrix::identity());
  CHECK(commutator(hs.rep.B, hs.C) == UnitDetMatrix::identity());
}

TEST_CASE("eta and theta") {
  const auto e = eta({1.0, 0.0});
  CHECK(std::abs(e.B.trace() - 2.2552519304127342) < 1e-12);
  CHECK(std::abs(e.A.det() - 1.0) < 1e-12);

  oracle::Rng rng(15);
  for (int k = 0; k < 100; ++k) {
    const FNCoords fn{{rng.uniform(0.05, 3.0), rng.uniform(-3.0, 3.0)}, rng.complex_in_box(3.0)};
    REQUIRE(fn.valid());
    const auto rep = eta(fn);
    const auto th = theta(fn);
    const Complex ta = rep.A.trace(), tb = rep.B.trace();
    const Complex half = 0.5 * fn.lambda;
    const Complex coth = std::cosh(half) / std::sinh(half);
    const Complex expected_a2 = 4.0 * coth * coth * std::pow(std::cosh(0.5 * fn.tau), 2);
    const Complex expected_b2 = 4.0 * std::pow(std::cosh(half), 2);
    CHECK(rel(ta * ta, expected_a2) < 1e-8);
    CHECK(rel(tb * tb, expected_b2) < 1e-8);
    CHECK(rel(ta * ta, th.alpha * th.alpha) < 1e-8);
    CHECK(rel(tb * tb, th.beta * th.beta) < 1e-8);
    CHECK(std::abs(rep.commutator_trace() + 2.0) < 1e-8 * (1.0 + std::norm(ta)));
    CHECK(rel(h_lam(fn.lambda, g_lam(fn.lambda, fn.tau)), th.alpha) < 1e-9);
    CHECK(rel(f_lam(fn.lambda, fn.tau), th.alpha) < 1e-12);
  }

  CHECK(std::abs(theta({Complex{0.8, 0.1}, kPi * kI}).alpha) < 1e-14);
  for (double lam : {0.1, 0.5, 1.0, 3.0}) {
    const auto th = theta({lam, 0.0});
    CHECK(th.alpha.imag() == 0.0);
    CHECK(th.beta.imag() == 0.0);
    CHECK(th.alpha.real() > 2.0);
    CHECK(th.beta.real() > 2.0);
  }
  CHECK_THROWS_AS(eta({2.0 * kPi * kI, 0.0}), DegenerateError);
  CHECK_FALSE(FNCoords{2.0 * kPi * kI, 0.0}.valid());
  CHECK(FNCoords{Complex{0.0, kPi}, 0.0}.valid());
}

TEST_CASE("g_lam and h_lam") {
  const Complex lambda{0.01, 0.01};
  CHECK(std::abs(g_lam(lambda, kPi * kI)) == 0.0);
  CHECK(std::abs(h_lam(lambda, 0.0)) == 0.0);
  CHECK(std::abs(g_lam(lambda, g_lam_inverse(lambda, Complex{1.5, -2.0})) - Complex{1.5, -2.0}) < 1e-12);

  double worst = 0.0;
  for (int i = -200; i <= 200; ++i) {
    for (int j = -200; j <= 200; ++j) {
      const Complex z{i * 0.05, j * 0.05};
      if (std::abs(z) > 10.0) continue;
      worst = std::max(worst, std::abs(h_lam(lambda, z) - kI * z));
    }
  }
  CHECK(worst < 0.05);
}

TEST_CASE("map_F") {
  const Complex z{1.2, -0.4};
  const auto [first, second] = map_F(z, 2.0);
  CHECK(first == kI * z);
  CHECK(second.is_infinite());

  const auto [f0, s0] = map_F(0.0, 2.0 * std::cosh(0.5));
  CHECK(f0 == Complex{0.0, 0.0});
  REQUIRE_FALSE(s0.is_infinite());
  CHECK(std::abs(s0.value() - 4.0 * kPi * kI) < 1e-12);

  CHECK(map_F(1.0, Complex{3.0, 1.0}).first == kI);
  CHECK_THROWS_AS(map_F(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(map_F(0.0, -3.0), DomainError);
}

TEST_CASE("TraceTriple surface check") {
  CHECK(TraceTriple{3.0, 3.0, 3.0}.on_markov_surface());
  CHECK_FALSE(TraceTriple{0.0, 0.0, 0.0}.on_markov_surface());
  CHECK_FALSE(TraceTriple{1.0, 1.0, 1.0}.on_markov_surface());
}
