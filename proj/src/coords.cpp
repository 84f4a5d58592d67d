#include "ptorus/coords.hpp"

#include <cmath>
#include <sstream>

#include "ptorus/errors.hpp"

namespace ptorus {

namespace {

double norm2(Complex z) { return std::norm(z); }

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

Complex discriminant(Complex alpha, Complex beta) {
  const Complex a2 = alpha * alpha;
  const Complex b2 = beta * beta;
  return a2 * b2 - 4.0 * (a2 + b2);
}

double discriminant_scale(Complex alpha, Complex beta) {
  const double a2 = norm2(alpha);
  const double b2 = norm2(beta);
  return a2 * b2 + 4.0 * (a2 + b2);
}

constexpr double kCriticalTol = 1e-14;
constexpr int kMaxRefine = 8;

// Continue s ≈ √D along β(t) = β0 + t(β1 − β0), t ∈ [t0, t1]. The sign is chosen
// by nearest neighbour; a step whose two candidates are not clearly separated is
// halved until it is, or the branch is declared lost.
Complex continue_root(Complex alpha, Complex beta0, Complex beta1, double t0, double t1, Complex s,
                      int depth) {
  const Complex beta = beta0 + t1 * (beta1 - beta0);
  const Complex disc = discriminant(alpha, beta);
  if (std::abs(disc) <= kCriticalTol * discriminant_scale(alpha, beta)) {
    throw BranchError("gamma_branch: path meets the critical locus at beta=" + fmt(beta));
  }
  const Complex r = std::sqrt(disc);
  const double near = std::min(std::abs(r - s), std::abs(r + s));
  const double far = std::max(std::abs(r - s), std::abs(r + s));
  if (near > 0.5 * far) {
    if (depth >= kMaxRefine) {
      throw BranchError("gamma_branch: continuation ambiguous near beta=" + fmt(beta));
    }
    const double tm = 0.5 * (t0 + t1);
    const Complex mid = continue_root(alpha, beta0, beta1, t0, tm, s, depth + 1);
    return continue_root(alpha, beta0, beta1, tm, t1, mid, depth + 1);
  }
  return std::abs(r - s) <= std::abs(r + s) ? r : -r;
}

}  // namespace

bool TraceTriple::on_markov_surface() const {
  const double scale = 1.0 + norm2(x) + norm2(y) + norm2(z);
  if (std::abs(x) < 1e-9 && std::abs(y) < 1e-9 && std::abs(z) < 1e-9) return false;
  return std::abs(markov_residual()) <= 1e-6 * scale;
}

bool TraceCoords::valid() const {
  if (!(beta.real() > 0.0)) return false;
  return std::abs(discriminant(alpha, beta)) > kCriticalTol * discriminant_scale(alpha, beta);
}

bool FNCoords::valid() const {
  // distance from λ to 2πiZ
  const double k = std::round(lambda.imag() / (2.0 * kPi));
  const Complex nearest{0.0, 2.0 * kPi * k};
  return std::abs(lambda - nearest) > 1e-9 && std::isfinite(tau.real()) && std::isfinite(tau.imag());
}

TraceTriple PuncturedTorusRep::traces() const { return {A.trace(), B.trace(), compose(A, B).trace()}; }

Complex PuncturedTorusRep::commutator_trace() const { return commutator(A, B).trace(); }

bool in_complex_length_domain(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (!(z.real() > 0.0)) return false;
  if (z.imag() == 0.0 && z.real() <= 2.0) return false;
  return true;
}

Complex complex_length(Complex z) {
  if (!in_complex_length_domain(z)) {
    throw DomainError("complex_length: " + fmt(z) + " is outside Re z > 0 minus the slit (0, 2]");
  }
  // acosh(s) = log(s + √(s−1)·√(s+1)); the split square root avoids cancellation near s = 1.
  const Complex s = 0.5 * z;
  Complex u = std::log(s + std::sqrt(s - 1.0) * std::sqrt(s + 1.0));
  if (u.real() < 0.0) u = -u;
  // 2cosh(w/2) has period 4πi in w; for Re z > 0 the fold leaves Im w in (−π, π).
  Complex w = 2.0 * u;
  w.imag(std::remainder(w.imag(), 4.0 * kPi));
  if (w.imag() <= -kPi) w.imag(w.imag() + 4.0 * kPi);
  return w;
}

Complex gamma_branch(const TraceCoords& tc, int steps) {
  if (!tc.valid()) {
    throw DomainError("gamma_branch: (" + fmt(tc.alpha) + ", " + fmt(tc.beta) +
                      ") needs Re beta > 0 and a non-critical pair");
  }
  if (steps < 1) steps = 1;
  const Complex start{2.0, 0.0};
  Complex s{0.0, -4.0};
  for (int k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) / steps;
    const double t1 = static_cast<double>(k) / steps;
    s = continue_root(tc.alpha, start, tc.beta, t0, t1, s, 0);
  }
  return 0.5 * (tc.alpha * tc.beta + s);
}

std::pair<Complex, Complex> gamma_roots(const TraceCoords& tc) {
  const Complex r = std::sqrt(discriminant(tc.alpha, tc.beta));
  const Complex ab = tc.alpha * tc.beta;
  return {0.5 * (ab + r), 0.5 * (ab - r)};
}

PuncturedTorusRep realize_triple(const TraceTriple& t) {
  if (!t.on_markov_surface()) {
    throw DomainError("realize_triple: triple is not on the Markov surface");
  }
  if (std::abs(t.z - 2.0) <= 1e-12 || std::abs(t.z + 2.0) <= 1e-12) {
    throw DomainError("realize_triple: z = ±2 is not supported by this construction");
  }
  // ξ² + zξ + 1 = 0; the roots are reciprocal, take the larger one.
  const Complex r = std::sqrt(t.z * t.z - 4.0);
  Complex xi = 0.5 * (-t.z + r);
  const Complex other = 0.5 * (-t.z - r);
  if (std::abs(other) > std::abs(xi)) xi = other;
  const double m = std::abs(xi);
  if (!(m >= 1e-8 && m <= 1e8)) {
    throw DegenerateError("realize_triple: |xi| = " + std::to_string(m) + " out of range");
  }
  PuncturedTorusRep rep;
  rep.A = {t.x, 1.0, -1.0, 0.0};
  rep.B = {0.0, xi, -1.0 / xi, t.y};
  return rep;
}

PuncturedTorusRep rho_alpha(Complex alpha) {
  return {{alpha, -kI, -kI, 0.0}, {1.0, 2.0, 0.0, 1.0}};
}

PuncturedTorusRep sigma_mu(Complex mu) { return rho_alpha(-kI * mu); }

HatSigma hat_sigma(Complex mu, Complex zeta) { return {sigma_mu(mu), {1.0, zeta, 0.0, 1.0}}; }

PuncturedTorusRep eta(const FNCoords& fn) {
  const Complex half = 0.5 * fn.lambda;
  const Complex sh = std::sinh(half);
  if (std::abs(sh) < 1e-12) {
    throw DegenerateError("eta: sinh(lambda/2) vanishes at lambda=" + fmt(fn.lambda));
  }
  const Complex ch = std::cosh(half);
  const Complex et = std::exp(0.5 * fn.tau);
  const Complex eti = 1.0 / et;
  PuncturedTorusRep rep;
  rep.A = {et * ch / sh, -et / sh, -eti / sh, eti * ch / sh};
  rep.B = {std::exp(half), 0.0, 0.0, std::exp(-half)};
  return rep;
}

TraceCoords theta(const FNCoords& fn) {
  const Complex half = 0.5 * fn.lambda;
  const Complex sh = std::sinh(half);
  if (std::abs(sh) < 1e-12) {
    throw DegenerateError("theta: sinh(lambda/2) vanishes at lambda=" + fmt(fn.lambda));
  }
  const Complex ch = std::cosh(half);
  return {2.0 * (ch / sh) * std::cosh(0.5 * fn.tau), 2.0 * ch};
}

Complex f_lam(Complex lambda, Complex z) {
  const Complex half = 0.5 * lambda;
  return 2.0 * (std::cosh(half) / std::sinh(half)) * std::cosh(0.5 * z);
}

Complex g_lam(Complex lambda, Complex z) { return (2.0 / lambda) * (z - kPi * kI); }

Complex g_lam_inverse(Complex lambda, Complex w) { return 0.5 * lambda * w + kPi * kI; }

Complex h_lam(Complex lambda, Complex z) {
  const Complex half = 0.5 * lambda;
  return 2.0 * kI * (std::cosh(half) / std::sinh(half)) * std::sinh(0.25 * lambda * z);
}

std::pair<Complex, ExtComplex> map_F(Complex z, Complex w) {
  if (w == Complex{2.0, 0.0}) return {kI * z, ExtComplex::infinity()};
  if (!in_complex_length_domain(w)) {
    throw DomainError("map_F: w=" + fmt(w) + " must lie in Re w > 0 off (0, 2), or equal 2");
  }
  return {kI * z, ExtComplex{4.0 * kPi * kI / complex_length(w)}};
}

}  // namespace ptorus
