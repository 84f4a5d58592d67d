#include "ptorus/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ptorus/errors.hpp"

namespace ptorus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Lower envelope of parabolas: out[p] = min_q (spacing²·(p − q)² + f[q]).
void edt_1d(const std::vector<double>& f, std::vector<double>& out, double spacing2, std::vector<int>& v,
            std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  auto meet = [&](int q, int r) {
    return ((f[q] + spacing2 * q * q) - (f[r] + spacing2 * r * r)) / (2.0 * spacing2 * (q - r));
  };
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s = meet(q, v[k]);
    while (s <= z[k]) s = meet(q, v[--k]);
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  out.assign(n, kInf);
  if (k < 0) return;
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double d = q - v[j];
    out[q] = spacing2 * d * d + f[v[j]];
  }
}

double directed(const SliceRaster& from, const std::vector<double>& field) {
  double worst = 0.0;
  for (std::size_t k = 0; k < from.cells.size(); ++k) {
    if (static_cast<VerdictCode>(from.cells[k]) == VerdictCode::PresumedMember) worst = std::max(worst, field[k]);
  }
  return std::sqrt(worst);
}

}  // namespace

std::vector<Complex> sequence_lambdas(const SequenceSpec& spec) {
  return std::visit(
      overloaded{
          [](const Horocyclic& h) {
            if (!(std::abs(h.theta) < 0.5 * kPi)) throw DomainError("horocyclic: theta must lie in (-pi/2, pi/2)");
            std::vector<Complex> out;
            for (std::size_t n = 0; n < h.scales.size(); ++n) {
              if (!(h.scales[n] > 0.0) || (n > 0 && !(h.scales[n] < h.scales[n - 1]))) {
                throw DomainError("horocyclic: scales must be positive and strictly decreasing");
              }
              out.push_back(std::polar(h.scales[n], h.theta));
            }
            return out;
          },
          [](const Tangential& t) {
            if (t.xi.imag() < 0.0) throw DomainError("tangential: needs Im xi >= 0");
            std::vector<Complex> out;
            for (std::size_t n = 0; n < t.schedule.size(); ++n) {
              if (t.schedule[n] < 1 || (n > 0 && t.schedule[n] <= t.schedule[n - 1])) {
                throw DomainError("tangential: schedule must be strictly increasing positive integers");
              }
              out.push_back(2.0 * kPi * kI / (static_cast<double>(t.schedule[n]) + t.xi));
            }
            return out;
          },
          [](const CircleTangential& c) {
            std::vector<Complex> out;
            for (double v : c.im_values) {
              // The arc of |z − 1| = 1 through 0 only reaches Im z = 1.
              if (!(v > 0.0 && v <= 1.0)) throw DomainError("circle: imaginary parts must lie in (0, 1]");
              // 1 − √(1 − v²) without cancellation
              out.emplace_back(v * v / (1.0 + std::sqrt(1.0 - v * v)), v);
            }
            return out;
          },
      },
      spec);
}

std::optional<Complex> limit_zeta(const SequenceSpec& spec) {
  if (const auto* t = std::get_if<Tangential>(&spec)) return 2.0 * t->xi;
  if (const auto* c = std::get_if<CircleTangential>(&spec)) return 2.0 * c->xi;
  return std::nullopt;
}

Classification classify(const std::vector<Complex>& lambdas, double horo_threshold, double tan_bound) {
  if (lambdas.size() < 2) throw DomainError("classify: needs at least two terms");
  for (Complex l : lambdas) {
    if (!(l.real() > 0.0)) throw DomainError("classify: every lambda must have positive real part");
  }
  if (!(std::abs(lambdas.back()) < std::abs(lambdas.front()) / 10.0)) {
    throw DomainError("classify: sequence does not visibly tend to 0 (|last| >= |first|/10)");
  }
  Classification c;
  for (Complex l : lambdas) c.w.push_back(std::abs((2.0 * kPi * kI / l).imag()));
  const std::size_t tail = std::max<std::size_t>(2, (c.w.size() + 1) / 2);
  const auto first = c.w.end() - static_cast<std::ptrdiff_t>(tail);
  const bool increasing = std::is_sorted(first, c.w.end());
  if (increasing && c.w.back() > horo_threshold) {
    c.kind = ApproachKind::Horocyclic;
  } else if (*std::max_element(first, c.w.end()) < tan_bound) {
    c.kind = ApproachKind::Tangential;
  }
  return c;
}

UnitDetMatrix cyclic_generator(Complex xi, long m) {
  const Complex lambda = 2.0 * kPi * kI / (static_cast<double>(m) + xi);
  return {std::exp(0.5 * lambda), 2.0, 0.0, std::exp(-0.5 * lambda)};
}

double cyclic_limit_check(Complex xi, long m) {
  const Complex lambda = 2.0 * kPi * kI / (static_cast<double>(m) + xi);
  if (std::abs(static_cast<double>(m) * lambda) > 50.0) {
    throw DegenerateError("cyclic_limit_check: |m lambda| exceeds 50");
  }
  const UnitDetMatrix limit{1.0, 2.0 * xi, 0.0, 1.0};
  return psl_distance(power(cyclic_generator(xi, m), -m), limit);
}

double cyclic_hypothesis_distance(Complex xi, long m) {
  return psl_distance(cyclic_generator(xi, m), {1.0, 2.0, 0.0, 1.0});
}

std::vector<double> member_distance_field(const SliceRaster& r) {
  const int nx = r.nx;
  const int ny = r.ny;
  std::vector<double> field(r.cells.size(), kInf);
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    if (static_cast<VerdictCode>(r.cells[k]) == VerdictCode::PresumedMember) field[k] = 0.0;
  }
  const double dx2 = r.cell_width() * r.cell_width();
  const double dy2 = r.cell_height() * r.cell_height();
  std::vector<double> line, out, z;
  std::vector<int> v;
  for (int i = 0; i < nx; ++i) {
    line.resize(ny);
    for (int j = 0; j < ny; ++j) line[j] = field[r.index(i, j)];
    edt_1d(line, out, dy2, v, z);
    for (int j = 0; j < ny; ++j) field[r.index(i, j)] = out[j];
  }
  for (int j = 0; j < ny; ++j) {
    line.resize(nx);
    for (int i = 0; i < nx; ++i) line[i] = field[r.index(i, j)];
    edt_1d(line, out, dx2, v, z);
    for (int i = 0; i < nx; ++i) field[r.index(i, j)] = out[i];
  }
  return field;
}

double hausdorff(const SliceRaster& a, const SliceRaster& b) {
  if (!(a.window == b.window) || a.nx != b.nx || a.ny != b.ny) {
    throw DomainError("hausdorff: rasters must share window and resolution");
  }
  const std::size_t ma = a.counts().member;
  const std::size_t mb = b.counts().member;
  if (ma == 0 && mb == 0) return 0.0;
  if (ma == 0 || mb == 0) return kInf;
  return std::max(directed(a, member_distance_field(b)), directed(b, member_distance_field(a)));
}

ConvergenceReport run_experiment(const SequenceSpec& spec, const Window& w, int nx, int ny, const ScanParams& p,
                                 int k_max, const RenderOptions& opts) {
  const std::vector<Complex> lambdas = sequence_lambdas(spec);
  ConvergenceReport report;
  const std::optional<Complex> zeta = limit_zeta(spec);
  report.limit = zeta ? raster_iM_zeta(*zeta, k_max, w, nx, ny, p, opts)
                      : rotate_raster_iM(raster_maskit(w, nx, ny, p, opts));

  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    ConvergenceRow row;
    row.n = static_cast<int>(n) + 1;
    row.lambda = lambdas[n];
    row.beta = 2.0 * std::cosh(0.5 * lambdas[n]);
    try {
      SliceRaster r = raster_linear(row.beta, w, nx, ny, p, opts);
      r.meta.complex_params.emplace_back("lambda", row.lambda);
      const VerdictCounts c = r.counts();
      row.member_cells = c.member;
      row.error_cells = c.error;
      row.member_area = r.member_area();
      row.hausdorff_to_limit = hausdorff(r, report.limit);
      report.rasters.push_back(std::move(r));
    } catch (const std::exception& e) {
      row.error = e.what();
      row.hausdorff_to_limit = std::numeric_limits<double>::quiet_NaN();
      report.rasters.emplace_back();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string encode_csv(const ConvergenceReport& report) {
  std::string out = "n,lambda_re,lambda_im,beta_re,beta_im,hausdorff,member_area,member_cells,error_cells\n";
  auto num = [](double x) -> std::string {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  };
  for (const ConvergenceRow& r : report.rows) {
    out += std::to_string(r.n) + "," + num(r.lambda.real()) + "," + num(r.lambda.imag()) + "," + num(r.beta.real()) +
           "," + num(r.beta.imag()) + "," + num(r.hausdorff_to_limit) + "," + num(r.member_area) + "," +
           std::to_string(r.member_cells) + "," + std::to_string(r.error_cells) + "\n";
  }
  return out;
}

void write_report(const ConvergenceReport& report, const std::filesystem::path& csv) {
  {
    std::ofstream out(csv, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + csv.string() + " for writing");
    out << encode_csv(report);
    if (!out) throw IoError("write failed for " + csv.string());
  }
  const std::filesystem::path dir = csv.parent_path();
  const std::string stem = csv.stem().string();
  for (std::size_t n = 0; n < report.rows.size(); ++n) {
    if (!report.rows[n].error.empty()) continue;
    const std::string base = stem + "_n" + std::to_string(report.rows[n].n);
    write_raster(report.rasters[n], dir / (base + ".pgm"), dir / (base + ".json"));
  }
  write_raster(report.limit, dir / (stem + "_limit.pgm"), dir / (stem + "_limit.json"));
}

}  // namespace ptorus
