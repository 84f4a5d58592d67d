#include "ptorus/slices.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ptorus/errors.hpp"

namespace ptorus {

bool operator==(const RasterMeta& a, const RasterMeta& b) {
  const auto& s = a.scan;
  const auto& t = b.scan;
  return a.kind == b.kind && a.complex_params == b.complex_params && a.real_params == b.real_params &&
         s.max_depth == t.max_depth && s.delta == t.delta && s.tau_real == t.tau_real &&
         s.trace_cap == t.trace_cap && s.max_nodes == t.max_nodes && s.prune == t.prune;
}

Complex sample_point(const Window& w, int nx, int ny, int i, int j) {
  const double u = (i + 0.5) / nx - 0.5;
  const double v = (j + 0.5) / ny - 0.5;
  return w.center + Complex{u * w.width, v * w.height};
}

Complex SliceRaster::sample_point(int i, int j) const { return ptorus::sample_point(window, nx, ny, i, j); }

VerdictCounts SliceRaster::counts() const {
  VerdictCounts c;
  for (std::uint8_t v : cells) {
    switch (static_cast<VerdictCode>(v)) {
      case VerdictCode::PresumedMember: ++c.member; break;
      case VerdictCode::ExteriorLikely: ++c.likely; break;
      case VerdictCode::ExteriorCertified: ++c.certified; break;
      default: ++c.error; break;
    }
  }
  return c;
}

double SliceRaster::member_area() const {
  return static_cast<double>(counts().member) * cell_width() * cell_height();
}

SliceRaster render(const Window& w, int nx, int ny, const std::function<VerdictCode(Complex)>& verdict,
                   const RenderOptions& opts) {
  if (!w.valid()) throw DomainError("render: window width and height must be positive");
  if (nx < 1 || ny < 1) throw DomainError("render: grid dimensions must be positive");
  SliceRaster r;
  r.window = w;
  r.nx = nx;
  r.ny = ny;
  r.cells.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);

  unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(ny));

  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int j = next_row.fetch_add(1); j < ny; j = next_row.fetch_add(1)) {
      for (int i = 0; i < nx; ++i) {
        r.cells[r.index(i, j)] = static_cast<std::uint8_t>(verdict(sample_point(w, nx, ny, i, j)));
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return r;
}

SliceRaster raster_linear(Complex beta, const Window& w, int nx, int ny, const ScanParams& p,
                          const RenderOptions& opts) {
  const bool parabolic = beta == Complex{2.0, 0.0};
  if (!(beta.real() > 0.0) || (!parabolic && beta.imag() == 0.0 && beta.real() <= 2.0)) {
    throw DomainError("raster_linear: beta must satisfy Re beta > 0 and lie off (0, 2)");
  }
  SliceRaster r = render(w, nx, ny, [&](Complex alpha) { return code_of(membership_trace(alpha, beta, p)); }, opts);
  r.meta = {"linear", {{"beta", beta}}, {}, p};
  return r;
}

SliceRaster raster_maskit(const Window& w, int nx, int ny, const ScanParams& p, const RenderOptions& opts) {
  SliceRaster r = render(w, nx, ny, [&](Complex mu) { return code_of(membership_maskit(mu, p)); }, opts);
  r.meta = {"maskit", {}, {}, p};
  return r;
}

namespace {

VerdictCode horizontal_verdict(Complex mu, Complex zeta, int k_max, const ScanParams& p) {
  bool likely = false;
  bool error = false;
  // |k| ascending: the nearest translates decide most exterior cells.
  for (int m = 0; m <= 2 * k_max; ++m) {
    const int k = (m % 2 == 0) ? m / 2 : -(m + 1) / 2;
    switch (code_of(membership_maskit(mu - static_cast<double>(k) * zeta, p))) {
      case VerdictCode::ExteriorCertified: return VerdictCode::ExteriorCertified;
      case VerdictCode::ExteriorLikely: likely = true; break;
      case VerdictCode::Error: error = true; break;
      default: break;
    }
  }
  if (likely) return VerdictCode::ExteriorLikely;
  if (error) return VerdictCode::Error;
  return VerdictCode::PresumedMember;
}

}  // namespace

SliceRaster raster_m_zeta(Complex zeta, int k_max, const Window& w, int nx, int ny, const ScanParams& p,
                          const RenderOptions& opts) {
  if (!(zeta.imag() > 0.0)) throw DomainError("raster_m_zeta: needs Im zeta > 0");
  if (k_max < 0) throw DomainError("raster_m_zeta: K must be non-negative");
  SliceRaster r = render(w, nx, ny, [&](Complex mu) { return horizontal_verdict(mu, zeta, k_max, p); }, opts);
  r.meta = {"m_zeta", {{"zeta", zeta}}, {{"kmax", static_cast<double>(k_max)}}, p};
  return r;
}

SliceRaster raster_fn(Complex lambda, const Window& w, int nx, int ny, const ScanParams& p, bool hat,
                      const RenderOptions& opts) {
  if (!FNCoords{lambda, 0.0}.valid()) throw DomainError("raster_fn: lambda must avoid 2 pi i Z");
  SliceRaster r = render(
      w, nx, ny,
      [&](Complex z) {
        const Complex tau = hat ? g_lam_inverse(lambda, z) : z;
        return code_of(membership_fn(lambda, tau, p));
      },
      opts);
  r.meta = {hat ? "fn_hat" : "fn", {{"lambda", lambda}}, {}, p};
  return r;
}

SliceRaster rotate_raster_iM(const SliceRaster& src) {
  if (src.nx != src.ny || src.window.width != src.window.height || src.window.center != Complex{0.0, 0.0}) {
    throw DomainError("rotate_raster_iM: needs a square grid on a square window centered at 0");
  }
  const int n = src.nx;
  SliceRaster out = src;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // α = h(u + iv) ↦ −iα = h(v − iu)
      out.cells[out.index(i, j)] = src.cells[src.index(j, n - 1 - i)];
    }
  }
  out.meta.kind = "i" + (src.meta.kind == "maskit" ? std::string("M") : src.meta.kind);
  return out;
}

SliceRaster raster_iM_zeta(Complex zeta, int k_max, const Window& w, int nx, int ny, const ScanParams& p,
                           const RenderOptions& opts) {
  if (nx != ny || w.width != w.height || w.center != Complex{0.0, 0.0}) {
    throw DomainError("raster_iM_zeta: needs a square grid on a square window centered at 0");
  }
  return rotate_raster_iM(raster_m_zeta(zeta, k_max, w, nx, ny, p, opts));
}

}  // namespace ptorus
