#include <doctest.h>

#include <array>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "ptorus/discreteness.hpp"
#include "ptorus/errors.hpp"

using namespace ptorus;

namespace {

TraceTriple apply_path(TraceTriple t, const std::vector<Slot>& path) {
  for (Slot s : path) t = neighbor(t, s);
  return t;
}

}  // namespace

TEST_CASE("neighbor exchanges one root of the Markov equation") {
  const Complex alpha{0.7, 2.3};
  const TraceTriple t{alpha, 2.0, alpha - 2.0 * kI};
  const TraceTriple n = neighbor(t, Slot::Z);
  CHECK(std::abs(n.x - alpha) == 0.0);
  CHECK(std::abs(n.y - 2.0) == 0.0);
  CHECK(std::abs(n.z - (alpha + 2.0 * kI)) < 1e-14);

  oracle::Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const TraceTriple r = oracle::random_triple(rng, 5.0);
    for (Slot s : {Slot::X, Slot::Y, Slot::Z}) {
      const TraceTriple once = neighbor(r, s);
      const TraceTriple twice = neighbor(once, s);
      CHECK(std::abs(twice.x - r.x) < 1e-12 * (1.0 + std::abs(r.x)) * 100);
      CHECK(std::abs(twice.y - r.y) < 1e-12 * (1.0 + std::abs(r.y)) * 100);
      CHECK(std::abs(twice.z - r.z) < 1e-12 * (1.0 + std::abs(r.z)) * 100);
      const double scale = std::norm(once.x) + std::norm(once.y) + std::norm(once.z) + 1.0;
      CHECK(std::abs(once.markov_residual()) < 1e-6 * scale);
    }
  }
}

TEST_CASE("elliptic certificate band") {
  const double tau = 1e-3;
  CHECK(is_elliptic_certificate(1.2, tau));
  CHECK(is_elliptic_certificate(Complex{-1.5, 0.5e-3}, tau));
  CHECK_FALSE(is_elliptic_certificate(Complex{1.2, 2e-3}, tau));
  CHECK_FALSE(is_elliptic_certificate(2.0, tau));
  CHECK_FALSE(is_elliptic_certificate(-2.0, tau));
  CHECK_FALSE(is_elliptic_certificate(1.9995, tau));
  CHECK_FALSE(is_elliptic_certificate(3.0, tau));
}

TEST_CASE("scan parameter validity") {
  ScanParams p;
  CHECK(p.valid());
  CHECK(p.max_depth == 200);
  CHECK(p.delta == doctest::Approx(0.01));
  CHECK(p.tau_real == doctest::Approx(1e-3));
  p.max_depth = 0;
  CHECK_FALSE(p.valid());
  p = {};
  p.delta = 0.0;
  CHECK_FALSE(p.valid());
  p = {};
  p.tau_real = -1.0;
  CHECK_FALSE(p.valid());
}

TEST_CASE("scan examples") {
  SUBCASE("Wright strip point is never a member") {
    CHECK(code_of(membership_maskit(Complex{0.0, 0.5})) != VerdictCode::PresumedMember);
  }
  SUBCASE("deep interior of the Maskit slice") {
    const Verdict v = membership_maskit(Complex{0.0, 4.0});
    REQUIRE(std::holds_alternative<PresumedMember>(v));
    CHECK(std::get<PresumedMember>(v).depth_scanned <= ScanParams{}.max_depth);
  }
  SUBCASE("a root coordinate already in (−2, 2) is certified at depth zero") {
    const Complex x = 1.2;
    const Complex y{3.0, 1.0};
    const Complex disc = std::sqrt(x * x * y * y - 4.0 * (x * x + y * y));
    const Verdict v = scan({x, y, 0.5 * (x * y + disc)});
    REQUIRE(std::holds_alternative<ExteriorCertified>(v));
    const auto& c = std::get<ExteriorCertified>(v);
    CHECK(c.path.empty());
    CHECK(std::abs(c.witness_trace - 1.2) == 0.0);
  }
  SUBCASE("non-finite input is flagged") {
    const Verdict v = scan({std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0});
    CHECK(code_of(v) == VerdictCode::Error);
  }
}

TEST_CASE("certified witnesses are genuine and reachable along the reported path") {
  oracle::Rng rng(23);
  const ScanParams p;
  int certified = 0;
  for (int k = 0; k < 500; ++k) {
    const TraceTriple t = oracle::random_triple(rng, 4.0);
    const Verdict v = scan(t, p);
    if (const auto* c = std::get_if<ExteriorCertified>(&v)) {
      ++certified;
      CHECK(is_elliptic_certificate(c->witness_trace, p.tau_real));
      const TraceTriple w = c->witness_triple;
      CHECK((w.x == c->witness_trace || w.y == c->witness_trace || w.z == c->witness_trace));
      const TraceTriple replay = apply_path(t, c->path);
      CHECK(replay.x == w.x);
      CHECK(replay.y == w.y);
      CHECK(replay.z == w.z);
    }
  }
  CHECK(certified > 100);
}

TEST_CASE("certificate permanence under depth increase") {
  oracle::Rng rng(31);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const TraceTriple t = oracle::random_triple(rng, 4.0);
    bool seen = false;
    for (int depth : {1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) {
      ScanParams p;
      p.max_depth = depth;
      const bool cert = code_of(scan(t, p)) == VerdictCode::ExteriorCertified;
      if (seen) {
        CHECK_MESSAGE(cert, "lost certificate at depth " << depth);
        ++checked;
      }
      seen = seen || cert;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("verdicts are invariant under sign flips and permutations") {
  oracle::Rng rng(47);
  for (int k = 0; k < 1000; ++k) {
    const TraceTriple t = oracle::random_triple(rng, 4.0);
    const VerdictCode v = code_of(scan(t));
    const std::array<TraceTriple, 8> variants{{
        {-t.x, -t.y, t.z},
        {-t.x, t.y, -t.z},
        {t.x, -t.y, -t.z},
        {t.y, t.x, t.z},
        {t.x, t.z, t.y},
        {t.z, t.y, t.x},
        {t.y, t.z, t.x},
        {t.z, t.x, t.y},
    }};
    for (const TraceTriple& u : variants) CHECK(code_of(scan(u)) == v);
  }
}

TEST_CASE("verdicts agree on both roots for the third trace") {
  oracle::Rng rng(53);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const Complex a = rng.complex_in_box(4.0);
    const Complex b = rng.complex_in_box(4.0);
    const auto [g1, g2] = gamma_roots({a, b});
    if (code_of(scan({a, b, g1})) != code_of(scan({a, b, g2}))) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("pruning never loses a certificate") {
  oracle::Rng rng(61);
  for (int k = 0; k < 200; ++k) {
    const TraceTriple t = oracle::random_triple(rng, 4.0);
    ScanParams pruned;
    pruned.max_depth = 12;
    ScanParams full = pruned;
    full.prune = false;
    full.max_nodes = 1u << 20;
    const VerdictCode a = code_of(scan(t, pruned));
    const VerdictCode b = code_of(scan(t, full));
    const bool truth = oracle::brute_has_certificate(t, 12, pruned.tau_real);
    CHECK((b == VerdictCode::ExteriorCertified) == truth);
    CHECK((a == VerdictCode::ExteriorCertified) == truth);
    if (b == VerdictCode::ExteriorCertified) CHECK(a != VerdictCode::PresumedMember);
  }
}

TEST_CASE("membership wrappers") {
  oracle::Rng rng(71);
  SUBCASE("Maskit scan matches the linear slice at beta = 2") {
    for (int k = 0; k < 200; ++k) {
      const Complex mu{rng.uniform(-3.0, 3.0), rng.uniform(-4.0, 4.0)};
      CHECK(code_of(membership_maskit(mu)) == code_of(membership_trace(-kI * mu, 2.0)));
    }
  }
  SUBCASE("symmetries of the trace coordinates") {
    for (int k = 0; k < 200; ++k) {
      const Complex a = rng.complex_in_box(4.0);
      const Complex b{rng.uniform(0.1, 4.0), rng.uniform(-4.0, 4.0)};
      const VerdictCode v = code_of(membership_trace(a, b));
      CHECK(code_of(membership_trace(-a, b)) == v);
      if (a.real() > 0.0) CHECK(code_of(membership_trace(b, a)) == v);
    }
  }
  SUBCASE("coordinate failures are flagged") {
    CHECK(code_of(membership_trace(1.0, -1.0)) == VerdictCode::Error);
    CHECK(code_of(membership_fn(2.0 * kPi * kI, 0.3)) == VerdictCode::Error);
  }
}
