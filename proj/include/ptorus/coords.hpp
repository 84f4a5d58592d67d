#pragma once

#include <utility>

#include "ptorus/mobius.hpp"

namespace ptorus {

/// Traces (x, y, z) = (tr A, tr B, tr AB) of a lift of a punctured-torus
/// representation. Points of the Markov surface x² + y² + z² = xyz.
struct TraceTriple {
  Complex x, y, z;

  /// x² + y² + z² − xyz.
  Complex markov_residual() const { return x * x + y * y + z * z - x * y * z; }
  /// Markov residual within 1e-6·(1 + |x|² + |y|² + |z|²), and not the origin.
  bool on_markov_surface() const;

  friend bool operator==(const TraceTriple&, const TraceTriple&) = default;
};

/// Trace coordinates (α, β) = (tr A, tr B); the third trace is gamma_branch().
struct TraceCoords {
  Complex alpha, beta;

  /// Re β > 0 and (α, β) off the critical locus α²β² = 4(α² + β²).
  bool valid() const;
};

/// Complex Fenchel-Nielsen coordinates: length λ ∉ 2πiZ and twist τ.
struct FNCoords {
  Complex lambda, tau;

  bool valid() const;
};

/// Images of the generators a, b.
struct PuncturedTorusRep {
  UnitDetMatrix A, B;

  TraceTriple traces() const;
  /// tr[A, B]; −2 for a genuine punctured-torus representation.
  Complex commutator_trace() const;
};

/// Complex length: the solution w of 2·cosh(w/2) = z with Re w > 0 and
/// −π < Im w ≤ π. Defined for Re z > 0 off the slit (0, 2].
Complex complex_length(Complex z);

/// True when complex_length(z) is defined.
bool in_complex_length_domain(Complex z);

/// Default number of continuation steps for gamma_branch().
inline constexpr int kBranchSteps = 64;

/// The third trace γ(α, β) = ½(αβ + √(α²β² − 4(α² + β²))), with the square
/// root continued along the segment β: 2 → β starting from √(−16) = −4i at
/// β = 2. Throws DomainError for invalid coordinates and BranchError when
/// the continuation passes too close to the critical locus.
Complex gamma_branch(const TraceCoords& tc, int steps = kBranchSteps);

/// The two roots of γ² − αβγ + α² + β² = 0, principal square root first.
std::pair<Complex, Complex> gamma_roots(const TraceCoords& tc);

/// A representation with the given trace triple:
/// A = [[x, 1], [−1, 0]], B = [[0, ξ], [−1/ξ, y]] with ξ² + zξ + 1 = 0, |ξ| ≥ 1.
/// Throws DomainError if the triple is off the Markov surface or z ≈ ±2,
/// DegenerateError if |ξ| leaves [1e-8, 1e8].
PuncturedTorusRep realize_triple(const TraceTriple& t);

/// ρ_α(a) = [[α, −i], [−i, 0]], ρ_α(b) = [[1, 2], [0, 1]].
PuncturedTorusRep rho_alpha(Complex alpha);

/// Maskit slice family: σ_μ = ρ_{−iμ}.
PuncturedTorusRep sigma_mu(Complex mu);

/// σ_μ extended by the parabolic C = [[1, ζ], [0, 1]] commuting with B.
struct HatSigma {
  PuncturedTorusRep rep;
  UnitDetMatrix C;
};
HatSigma hat_sigma(Complex mu, Complex zeta);

/// Twisted Fenchel-Nielsen representation η_{λ,τ}:
///   η(a) = diag(e^{τ/2}, e^{−τ/2}) · (1/sinh(λ/2)) [[cosh(λ/2), −1], [−1, cosh(λ/2)]]
///   η(b) = diag(e^{λ/2}, e^{−λ/2})
/// Throws DegenerateError when |sinh(λ/2)| < 1e-12.
PuncturedTorusRep eta(const FNCoords& fn);

/// Θ(λ, τ) = (2·coth(λ/2)·cosh(τ/2), 2·cosh(λ/2)). Not checked against TraceCoords::valid().
TraceCoords theta(const FNCoords& fn);

/// f_λ(z) = 2·coth(λ/2)·cosh(z/2).
Complex f_lam(Complex lambda, Complex z);
/// g_λ(z) = (2/λ)(z − πi).
Complex g_lam(Complex lambda, Complex z);
/// g_λ⁻¹(w) = λw/2 + πi.
Complex g_lam_inverse(Complex lambda, Complex w);
/// h_λ = f_λ ∘ g_λ⁻¹, i.e. 2i·coth(λ/2)·sinh(λz/4).
Complex h_lam(Complex lambda, Complex z);

/// F(z, w) = (iz, 4πi/λ(w)), with F(z, 2) = (iz, ∞). Throws DomainError
/// unless w = 2 or complex_length(w) is defined.
std::pair<Complex, ExtComplex> map_F(Complex z, Complex w);

}  // namespace ptorus
