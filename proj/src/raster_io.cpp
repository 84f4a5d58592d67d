#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptorus/errors.hpp"
#include "ptorus/slices.hpp"

namespace ptorus {

using json = nlohmann::ordered_json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

VerdictCode code_from_gray(std::uint8_t g) {
  for (auto c : {VerdictCode::PresumedMember, VerdictCode::ExteriorLikely, VerdictCode::ExteriorCertified,
                 VerdictCode::Error}) {
    if (gray_of(c) == g) return c;
  }
  throw IoError("unexpected gray level " + std::to_string(g));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::uint8_t gray_of(VerdictCode c) {
  switch (c) {
    case VerdictCode::PresumedMember: return 96;
    case VerdictCode::ExteriorLikely: return 200;
    case VerdictCode::ExteriorCertified: return 255;
    default: return 0;
  }
}

std::string encode_pgm(const SliceRaster& r) {
  std::string out = "P5\n" + std::to_string(r.nx) + " " + std::to_string(r.ny) + "\n255\n";
  out.reserve(out.size() + r.cells.size());
  // j runs upward; image rows run downward.
  for (int j = r.ny - 1; j >= 0; --j) {
    for (int i = 0; i < r.nx; ++i) out.push_back(static_cast<char>(gray_of(r.at(i, j))));
  }
  return out;
}

std::string encode_meta(const SliceRaster& r) {
  json params = json::object();
  for (const auto& [name, z] : r.meta.complex_params) params[name] = complex_json(z);
  for (const auto& [name, x] : r.meta.real_params) params[name] = x;
  const VerdictCounts c = r.counts();
  json j = {
      {"kind", r.meta.kind},
      {"parameters", params},
      {"window", {{"center", complex_json(r.window.center)}, {"width", r.window.width}, {"height", r.window.height}}},
      {"nx", r.nx},
      {"ny", r.ny},
      {"scan",
       {{"max_depth", r.meta.scan.max_depth},
        {"delta", r.meta.scan.delta},
        {"tau_real", r.meta.scan.tau_real},
        {"trace_cap", r.meta.scan.trace_cap},
        {"max_nodes", r.meta.scan.max_nodes},
        {"prune", r.meta.scan.prune}}},
      {"counts", {{"member", c.member}, {"likely", c.likely}, {"certified", c.certified}, {"error", c.error}}},
  };
  return j.dump(2) + "\n";
}

void write_raster(const SliceRaster& r, const std::filesystem::path& pgm, const std::filesystem::path& meta) {
  spit(pgm, encode_pgm(r));
  spit(meta, encode_meta(r));
}

SliceRaster read_raster(const std::filesystem::path& pgm, const std::filesystem::path& meta) {
  SliceRaster r;
  try {
    const json j = json::parse(slurp(meta));
    r.meta.kind = j.at("kind").get<std::string>();
    for (const auto& [name, value] : j.at("parameters").items()) {
      if (value.is_array()) {
        r.meta.complex_params.emplace_back(name, complex_from(value));
      } else {
        r.meta.real_params.emplace_back(name, value.get<double>());
      }
    }
    const json& w = j.at("window");
    r.window = {complex_from(w.at("center")), w.at("width").get<double>(), w.at("height").get<double>()};
    r.nx = j.at("nx").get<int>();
    r.ny = j.at("ny").get<int>();
    const json& s = j.at("scan");
    r.meta.scan.max_depth = s.at("max_depth").get<int>();
    r.meta.scan.delta = s.at("delta").get<double>();
    r.meta.scan.tau_real = s.at("tau_real").get<double>();
    r.meta.scan.trace_cap = s.at("trace_cap").get<double>();
    r.meta.scan.max_nodes = s.value("max_nodes", ScanParams{}.max_nodes);
    r.meta.scan.prune = s.value("prune", true);
  } catch (const json::exception& e) {
    throw IoError("malformed metadata in " + meta.string() + ": " + e.what());
  }

  const std::string bytes = slurp(pgm);
  std::istringstream in(bytes);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (!in || magic != "P5" || maxval != 255 || w != r.nx || h != r.ny) {
    throw IoError("bad PGM header in " + pgm.string());
  }
  in.get();  // single whitespace after maxval
  const auto offset = static_cast<std::size_t>(in.tellg());
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() != offset + n) throw IoError("truncated or oversized PGM data in " + pgm.string());
  r.cells.resize(n);
  try {
    for (int row = 0; row < h; ++row) {
      for (int i = 0; i < w; ++i) {
        const auto g = static_cast<std::uint8_t>(bytes[offset + static_cast<std::size_t>(row) * w + i]);
        r.cells[r.index(i, h - 1 - row)] = static_cast<std::uint8_t>(code_from_gray(g));
      }
    }
  } catch (const IoError& e) {
    throw IoError(pgm.string() + ": " + e.what());
  }
  return r;
}

}  // namespace ptorus
