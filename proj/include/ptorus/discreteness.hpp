#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "ptorus/coords.hpp"

namespace ptorus {

/// Tuning for the trace-tree scan.
struct ScanParams {
  int max_depth = 200;
  /// Margin above 2 required by the closed-form bound on chains around a
  /// coordinate of modulus < 2.
  double delta = 0.01;
  /// Half-width of the "real" band and inset from ±2 for elliptic certificates.
  double tau_real = 1e-3;
  double trace_cap = 1e12;
  /// Visited-node budget; exceeding it at a level boundary ends the scan as ExteriorLikely.
  std::size_t max_nodes = 20000;
  /// Escape and trace-cap pruning. Off only for oracle comparisons.
  bool prune = true;

  bool valid() const { return max_depth >= 1 && delta > 0.0 && tau_real > 0.0 && trace_cap > 0.0; }
};

enum class Slot : std::uint8_t { X = 0, Y = 1, Z = 2 };

/// Vertex of the trace tree. entered_via is the coordinate replaced on the
/// edge from the parent; the root has none.
struct FareyNode {
  TraceTriple triple;
  int depth = 0;
  bool has_parent = false;
  Slot entered_via = Slot::X;
};

/// Some visited trace is real within tau_real and lies strictly inside (−2, 2):
/// an elliptic primitive element. `path` is the exchange sequence from the
/// scanned triple to the triple containing `witness_trace`.
struct ExteriorCertified {
  TraceTriple witness_triple;
  Complex witness_trace;
  std::vector<Slot> path;
};

/// The frontier survived to max_depth or outgrew max_nodes. `flagged` marks a
/// coordinate-construction failure upstream of the scan.
struct ExteriorLikely {
  std::size_t frontier_size = 0;
  bool flagged = false;
};

/// Every branch was pruned as escaping before max_depth.
struct PresumedMember {
  int depth_scanned = 0;
};

using Verdict = std::variant<ExteriorCertified, ExteriorLikely, PresumedMember>;

/// Raster cell code; also the order of precedence when combining verdicts
/// except that Error is reported separately.
enum class VerdictCode : std::uint8_t { PresumedMember = 0, ExteriorLikely = 1, ExteriorCertified = 2, Error = 3 };

VerdictCode code_of(const Verdict& v);
std::string_view name_of(VerdictCode c);

/// Replace one coordinate by the other root of the Markov equation in it,
/// e.g. slot Z: (x, y, z) ↦ (x, y, xy − z). An involution.
TraceTriple neighbor(const TraceTriple& t, Slot slot);

/// True when t is an elliptic certificate: |Im t| ≤ tau and −2 + tau < Re t < 2 − tau.
bool is_elliptic_certificate(Complex t, double tau);

/// Breadth-first scan of the trace tree rooted at t, level by level, skipping
/// edges whose subtree provably keeps every trace at modulus ≥ 2.
Verdict scan(const TraceTriple& t, const ScanParams& p = {});

/// Scan of (α, β, γ(α, β)). Coordinate failures come back as flagged ExteriorLikely.
Verdict membership_trace(Complex alpha, Complex beta, const ScanParams& p = {});
/// Scan of the traces of σ_μ: (−iμ, 2, −iμ − 2i).
Verdict membership_maskit(Complex mu, const ScanParams& p = {});
/// Scan of the traces of η_{λ,τ}.
Verdict membership_fn(Complex lambda, Complex tau, const ScanParams& p = {});

}  // namespace ptorus
