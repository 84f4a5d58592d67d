#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptorus/slices.hpp"

namespace ptorus {

/// λ_n = t_n·e^{iθ}, θ ∈ (−π/2, π/2), t_n decreasing to 0.
struct Horocyclic {
  double theta = kPi / 4;
  std::vector<double> scales;
};

/// λ_n = 2πi/(m_n + ξ), Im ξ ≥ 0, m_n strictly increasing positive integers.
struct Tangential {
  Complex xi;
  std::vector<long> schedule;
};

/// λ on the arc of |z − 1| = 1 through 0 with Im λ = v, v ∈ (0, 1].
/// The limit raster needs the user-supplied ξ.
struct CircleTangential {
  std::vector<double> im_values;
  Complex xi;
};

using SequenceSpec = std::variant<Horocyclic, Tangential, CircleTangential>;

/// The λ_n of a spec. Throws DomainError if the spec is malformed.
std::vector<Complex> sequence_lambdas(const SequenceSpec& spec);

/// ζ of the predicted limit iM(ζ): 2ξ for tangential specs, none for horocyclic.
std::optional<Complex> limit_zeta(const SequenceSpec& spec);

enum class ApproachKind { Horocyclic, Tangential, Indeterminate };

struct Classification {
  ApproachKind kind = ApproachKind::Indeterminate;
  /// w_n = |Im(2πi/λ_n)|.
  std::vector<double> w;
};

/// Horocyclic when the tail of w_n is non-decreasing and ends above
/// `horo_threshold`; tangential when the tail stays below `tan_bound`.
/// The tail is the last half of the sequence (at least two terms).
/// Throws DomainError if some Re λ_n ≤ 0 or |λ_last| ≥ |λ_first|/10.
Classification classify(const std::vector<Complex>& lambdas, double horo_threshold = 100.0, double tan_bound = 20.0);

/// B_n = [[e^{λ/2}, 2], [0, e^{−λ/2}]] with λ = 2πi/(m + ξ).
UnitDetMatrix cyclic_generator(Complex xi, long m);

/// psl_distance(B_n^{−m}, [[1, 2ξ], [0, 1]]). Throws DegenerateError if |mλ| > 50.
double cyclic_limit_check(Complex xi, long m);

/// psl_distance(B_n, [[1, 2], [0, 1]]).
double cyclic_hypothesis_distance(Complex xi, long m);

/// Symmetric Hausdorff distance between the PresumedMember cell centers of two
/// rasters on the same grid; 0 when both are empty, +∞ when exactly one is.
/// Throws DomainError on a window or resolution mismatch.
double hausdorff(const SliceRaster& a, const SliceRaster& b);

/// Squared distance from every cell center to the nearest member cell center,
/// by separable exact Euclidean distance transform. +∞ everywhere if no members.
std::vector<double> member_distance_field(const SliceRaster& r);

struct ConvergenceRow {
  int n = 0;
  Complex lambda;
  Complex beta;
  double hausdorff_to_limit = 0.0;
  double member_area = 0.0;
  std::size_t member_cells = 0;
  std::size_t error_cells = 0;
  /// Empty unless rendering this row failed.
  std::string error;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<SliceRaster> rasters;  // parallel to rows; empty raster for failed rows
  SliceRaster limit;
};

/// Render L(β_n) for each λ_n and the predicted limit (iM for horocyclic,
/// iM(2ξ) otherwise) on a square window centered at 0, and tabulate Hausdorff
/// distance and member area per row.
ConvergenceReport run_experiment(const SequenceSpec& spec, const Window& w, int nx, int ny, const ScanParams& p = {},
                                 int k_max = kDefaultZetaTerms, const RenderOptions& opts = {});

/// CSV text: n,lambda_re,lambda_im,beta_re,beta_im,hausdorff,member_area,member_cells,error_cells
std::string encode_csv(const ConvergenceReport& report);

/// Writes the CSV and every raster as <stem>_n<k>.pgm/.json and <stem>_limit.pgm/.json next to it.
void write_report(const ConvergenceReport& report, const std::filesystem::path& csv);

}  // namespace ptorus
