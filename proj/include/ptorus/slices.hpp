#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ptorus/discreteness.hpp"

namespace ptorus {

/// Axis-aligned rectangle in C.
struct Window {
  Complex center;
  double width = 1.0;
  double height = 1.0;

  bool valid() const { return width > 0.0 && height > 0.0 && std::isfinite(width) && std::isfinite(height); }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Per-class cell counts.
struct VerdictCounts {
  std::size_t member = 0, likely = 0, certified = 0, error = 0;
  friend bool operator==(const VerdictCounts&, const VerdictCounts&) = default;
};

/// What a raster depicts; complex parameters are stored as named values.
struct RasterMeta {
  std::string kind;
  std::vector<std::pair<std::string, Complex>> complex_params;
  std::vector<std::pair<std::string, double>> real_params;
  ScanParams scan;

  friend bool operator==(const RasterMeta& a, const RasterMeta& b);
};

/// Grid of verdict codes, row-major with row j = 0 at the bottom. Cell (i, j)
/// is sampled at
///   center + ((i + 0.5)/nx − 0.5)·width + i·((j + 0.5)/ny − 0.5)·height.
struct SliceRaster {
  Window window;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> cells;
  RasterMeta meta;

  VerdictCode at(int i, int j) const { return static_cast<VerdictCode>(cells[index(i, j)]); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  Complex sample_point(int i, int j) const;
  double cell_width() const { return window.width / nx; }
  double cell_height() const { return window.height / ny; }
  double cell_diagonal() const { return std::hypot(cell_width(), cell_height()); }
  VerdictCounts counts() const;
  /// Area of the PresumedMember cells.
  double member_area() const;

  friend bool operator==(const SliceRaster& a, const SliceRaster& b) {
    return a.window == b.window && a.nx == b.nx && a.ny == b.ny && a.cells == b.cells && a.meta == b.meta;
  }
};

/// Sample point of cell (i, j) in an nx × ny grid over w.
Complex sample_point(const Window& w, int nx, int ny, int i, int j);

/// Rendering knobs that do not change the output.
struct RenderOptions {
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Fill an nx × ny grid by calling `verdict` on each sample point. Rows are
/// distributed over workers; the result is independent of the thread count.
SliceRaster render(const Window& w, int nx, int ny, const std::function<VerdictCode(Complex)>& verdict,
                   const RenderOptions& opts = {});

/// Default number of translates on each side for the horizontal slice.
inline constexpr int kDefaultZetaTerms = 16;

/// Linear slice L(β) over α. β = 2 is accepted and agrees with iM.
SliceRaster raster_linear(Complex beta, const Window& w, int nx, int ny, const ScanParams& p = {},
                          const RenderOptions& opts = {});

/// Maskit slice over μ.
SliceRaster raster_maskit(const Window& w, int nx, int ny, const ScanParams& p = {}, const RenderOptions& opts = {});

/// Horizontal slice M(ζ) = ∩_{|k| ≤ K} (kζ + M), Im ζ > 0. A cell is a member
/// only if every translate μ − kζ is; otherwise it takes the strongest
/// exclusion found (certified over likely, error last).
SliceRaster raster_m_zeta(Complex zeta, int k_max, const Window& w, int nx, int ny, const ScanParams& p = {},
                          const RenderOptions& opts = {});

/// L̃(λ) over the twist τ, or with `hat` the normalized L̂(λ) = g_λ(L̃(λ)).
SliceRaster raster_fn(Complex lambda, const Window& w, int nx, int ny, const ScanParams& p = {}, bool hat = false,
                      const RenderOptions& opts = {});

/// Grid rotation taking a raster of M to one of iM: the cell at α copies the
/// source cell at −iα. Needs a square window centered at 0 with nx = ny.
SliceRaster rotate_raster_iM(const SliceRaster& maskit);

/// iM(ζ), rendered as rotate_raster_iM(raster_m_zeta(...)).
SliceRaster raster_iM_zeta(Complex zeta, int k_max, const Window& w, int nx, int ny, const ScanParams& p = {},
                           const RenderOptions& opts = {});

/// Gray level of each code in the PGM output.
std::uint8_t gray_of(VerdictCode c);

/// Binary P5 image plus JSON sidecar. Throws IoError naming the failing path.
void write_raster(const SliceRaster& r, const std::filesystem::path& pgm, const std::filesystem::path& meta);
SliceRaster read_raster(const std::filesystem::path& pgm, const std::filesystem::path& meta);

/// PGM bytes of a raster (top row first).
std::string encode_pgm(const SliceRaster& r);
/// JSON sidecar text.
std::string encode_meta(const SliceRaster& r);

}  // namespace ptorus
