#include "ptorus/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptorus/errors.hpp"
#include "ptorus/limits.hpp"
#include "ptorus/slices.hpp"

namespace ptorus::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string center;
  double width = 0.0;
  double height = 0.0;
  int nx = 512;
  int ny = 512;
  int depth = ScanParams{}.max_depth;
  double delta = ScanParams{}.delta;
  double tol = ScanParams{}.tau_real;
  double cap = ScanParams{}.trace_cap;
  std::size_t max_nodes = ScanParams{}.max_nodes;
  std::string out;
  std::string meta;
  std::string csv;
  unsigned threads = 0;
  std::string config;
};

struct Specific {
  std::string beta, lambda, alpha, zeta, xi;
  int kmax = kDefaultZetaTerms;
  bool hat = false;
  std::string mode;
  double theta = kPi / 4;
  std::string scales;
  std::string circle;
  long mstart = 1;
  long count = 4;
  std::string schedule = "linear";
  long nmax = 10000;
};

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::complex<double> complex_flag(const std::string& text, const char* name) {
  try {
    return parse_complex(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("--") + name + " expects RE,IM but got '" + text + "'");
  }
}

std::vector<double> real_list(const std::string& text, const char* name) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("--") + name + " expects comma-separated reals but got '" + text + "'");
    }
  }
  return values;
}

// Config keys become flags placed ahead of the command-line flags; with
// take-last semantics the command line wins.
std::vector<std::string> config_tokens(const std::string& path, std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + " must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand") {
      if (subcommand.empty()) subcommand = value.get<std::string>();
      continue;
    }
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_string()) {
      tokens.insert(tokens.end(), {flag, value.get<std::string>()});
    } else if (value.is_number_integer()) {
      tokens.insert(tokens.end(), {flag, std::to_string(value.get<long long>())});
    } else if (value.is_number()) {
      tokens.insert(tokens.end(), {flag, format_number(value.get<double>())});
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& x : value) {
        if (!joined.empty()) joined += ",";
        joined += x.is_string() ? x.get<std::string>() : format_number(x.get<double>());
      }
      tokens.insert(tokens.end(), {flag, joined});
    } else {
      throw UsageError("config key '" + key + "' has an unsupported value");
    }
  }
  return tokens;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--center", c.center, "window center RE,IM");
  sub->add_option("--width", c.width, "window width")->check(CLI::PositiveNumber);
  sub->add_option("--height", c.height, "window height")->check(CLI::PositiveNumber);
  sub->add_option("--nx", c.nx, "columns")->check(CLI::PositiveNumber);
  sub->add_option("--ny", c.ny, "rows")->check(CLI::PositiveNumber);
  sub->add_option("--depth", c.depth, "scan depth")->check(CLI::PositiveNumber);
  sub->add_option("--delta", c.delta, "chain escape margin")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "real-trace tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--cap", c.cap, "trace modulus cap")->check(CLI::PositiveNumber);
  sub->add_option("--max-nodes", c.max_nodes, "visited-node budget per cell");
  sub->add_option("--out", c.out, "PGM output path");
  sub->add_option("--meta", c.meta, "JSON sidecar path");
  sub->add_option("--csv", c.csv, "CSV output path");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  sub->add_option("--config", c.config, "JSON config file; flags take precedence");
}

ScanParams scan_params(const Common& c) {
  ScanParams p;
  p.max_depth = c.depth;
  p.delta = c.delta;
  p.tau_real = c.tol;
  p.trace_cap = c.cap;
  p.max_nodes = c.max_nodes;
  return p;
}

Window window_of(const Common& c, Window fallback) {
  Window w = fallback;
  if (!c.center.empty()) w.center = complex_flag(c.center, "center");
  if (c.width > 0.0) w.width = c.width;
  if (c.height > 0.0) w.height = c.height;
  else if (c.width > 0.0) w.height = c.width;
  return w;
}

void emit(const SliceRaster& r, const Common& c, const std::string& default_stem, std::ostream& out) {
  const std::string pgm = c.out.empty() ? default_stem + ".pgm" : c.out;
  const std::string meta = c.meta.empty() ? std::filesystem::path(pgm).replace_extension(".json").string() : c.meta;
  write_raster(r, pgm, meta);
  const VerdictCounts n = r.counts();
  out << r.meta.kind << " " << r.nx << "x" << r.ny << " member=" << n.member << " likely=" << n.likely
      << " certified=" << n.certified << " error=" << n.error << " -> " << pgm << "\n";
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw std::invalid_argument("not a number: " + text);
  char comma = 0;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw std::invalid_argument("expected RE,IM: " + text);
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing characters: " + text);
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite value: " + text);
  return {re, im};
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Render slices of once-punctured torus deformation spaces"};
  app.set_version_flag("--version", std::string(PTORUS_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common c;
  Specific s;

  auto* maskit = app.add_subcommand("maskit", "Maskit slice M over mu");
  add_common(maskit, c);

  auto* linear = app.add_subcommand("linear", "Linear slice L(beta) over alpha");
  add_common(linear, c);
  auto* beta_opt = linear->add_option("--beta", s.beta, "fixed second trace RE,IM");
  auto* lambda_opt = linear->add_option("--lambda", s.lambda, "complex length of the fixed trace RE,IM");
  auto* alpha_opt = linear->add_option("--alpha", s.alpha, "fixed first trace RE,IM (window ranges over beta)");
  beta_opt->excludes(lambda_opt)->excludes(alpha_opt);
  lambda_opt->excludes(alpha_opt);

  auto* mzeta = app.add_subcommand("mzeta", "Horizontal slice M(zeta)");
  add_common(mzeta, c);
  mzeta->add_option("--zeta", s.zeta, "translation RE,IM with Im > 0")->required();
  mzeta->add_option("--kmax", s.kmax, "translates on each side")->check(CLI::NonNegativeNumber);

  auto* fn = app.add_subcommand("fn", "Fenchel-Nielsen slice over the twist");
  add_common(fn, c);
  fn->add_option("--lambda", s.lambda, "complex length RE,IM")->required();
  fn->add_flag("--hat", s.hat, "render the normalized slice g_lambda(L~(lambda))");

  auto* converge = app.add_subcommand("converge", "Linear slices along a sequence beta_n -> 2");
  add_common(converge, c);
  converge->add_option("--mode", s.mode, "horo | tan | circle")
      ->required()
      ->check(CLI::IsMember({"horo", "tan", "circle"}));
  converge->add_option("--theta", s.theta, "direction of the horocyclic rays");
  converge->add_option("--scales", s.scales, "horocyclic scales t1,t2,...");
  converge->add_option("--xi", s.xi, "tangential limit offset RE,IM");
  converge->add_option("--mstart", s.mstart, "first m_n")->check(CLI::PositiveNumber);
  converge->add_option("--count", s.count, "number of terms")->check(CLI::PositiveNumber);
  converge->add_option("--schedule", s.schedule, "linear (m, m+1, ...) | doubling (m, 2m, 4m, ...)")
      ->check(CLI::IsMember({"linear", "doubling"}));
  converge->add_option("--circle", s.circle, "imaginary parts on |z-1|=1");
  converge->add_option("--kmax", s.kmax, "translates for the limit horizontal slice");

  auto* cyclic = app.add_subcommand("cyclic", "Check B_n^{-m_n} -> [[1,2xi],[0,1]]");
  cyclic->add_option("--xi", s.xi, "offset RE,IM")->required();
  cyclic->add_option("--nmax", s.nmax, "largest n (powers of ten from 10)")->check(CLI::PositiveNumber);
  cyclic->add_option("--csv", c.csv, "CSV output path");

  std::vector<std::string> args = raw_args;
  try {
    // Config merge: find --config and the subcommand before CLI11 sees anything.
    std::string config_path;
    for (std::size_t k = 0; k + 1 < args.size(); ++k) {
      if (args[k] == "--config") config_path = args[k + 1];
    }
    if (!config_path.empty()) {
      std::string subcommand;
      if (!args.empty() && args[0].rfind("--", 0) != 0) subcommand = args[0];
      const bool given = !subcommand.empty();
      std::vector<std::string> injected = config_tokens(config_path, subcommand);
      if (subcommand.empty()) throw UsageError("no subcommand on the command line or in the config");
      std::vector<std::string> merged{subcommand};
      merged.insert(merged.end(), injected.begin(), injected.end());
      merged.insert(merged.end(), args.begin() + (given ? 1 : 0), args.end());
      args = std::move(merged);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << PTORUS_VERSION << "\n";
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << e.what() << "\n" << app.help();
      return kUsage;
    }

    RenderOptions opts;
    opts.threads = c.threads;
    const ScanParams p = scan_params(c);

    if (maskit->parsed()) {
      SliceRaster r = raster_maskit(window_of(c, {{0.0, 0.0}, 8.0, 8.0}), c.nx, c.ny, p, opts);
      emit(r, c, "maskit", out);
    } else if (linear->parsed()) {
      if (s.beta.empty() && s.lambda.empty() && s.alpha.empty()) {
        throw UsageError("linear needs one of --beta, --lambda, --alpha");
      }
      SliceRaster r;
      if (!s.alpha.empty()) {
        // The slice in β at fixed α equals L(α) by the (α, β) ↦ (β, α) symmetry.
        const Complex alpha = complex_flag(s.alpha, "alpha");
        r = raster_linear(alpha, window_of(c, {{2.0, 0.0}, 0.2, 0.2}), c.nx, c.ny, p, opts);
        r.meta.kind = "linear_alpha";
        r.meta.complex_params = {{"alpha", alpha}};
      } else {
        Complex beta;
        if (!s.lambda.empty()) {
          const Complex lambda = complex_flag(s.lambda, "lambda");
          beta = 2.0 * std::cosh(0.5 * lambda);
          r = raster_linear(beta, window_of(c, {{0.0, 0.0}, 24.0, 24.0}), c.nx, c.ny, p, opts);
          r.meta.complex_params.emplace_back("lambda", lambda);
        } else {
          beta = complex_flag(s.beta, "beta");
          r = raster_linear(beta, window_of(c, {{0.0, 0.0}, 24.0, 24.0}), c.nx, c.ny, p, opts);
        }
      }
      emit(r, c, r.meta.kind, out);
    } else if (mzeta->parsed()) {
      const Complex zeta = complex_flag(s.zeta, "zeta");
      SliceRaster r = raster_m_zeta(zeta, s.kmax, window_of(c, {{0.0, 0.0}, 8.0, 8.0}), c.nx, c.ny, p, opts);
      emit(r, c, "mzeta", out);
    } else if (fn->parsed()) {
      const Complex lambda = complex_flag(s.lambda, "lambda");
      const Window fallback = s.hat ? Window{{0.0, 0.0}, 8.0, 8.0} : Window{{0.0, kPi}, 2.0 * kPi, 2.0 * kPi};
      SliceRaster r = raster_fn(lambda, window_of(c, fallback), c.nx, c.ny, p, s.hat, opts);
      emit(r, c, r.meta.kind, out);
    } else if (converge->parsed()) {
      SequenceSpec spec;
      if (s.mode == "horo") {
        if (s.scales.empty()) throw UsageError("converge --mode horo needs --scales");
        spec = Horocyclic{s.theta, real_list(s.scales, "scales")};
      } else if (s.mode == "tan") {
        if (s.xi.empty()) throw UsageError("converge --mode tan needs --xi");
        Tangential t{complex_flag(s.xi, "xi"), {}};
        long m = s.mstart;
        for (long k = 0; k < s.count; ++k) {
          t.schedule.push_back(m);
          m = s.schedule == "doubling" ? 2 * m : m + 1;
        }
        spec = t;
      } else {
        if (s.xi.empty() || s.circle.empty()) throw UsageError("converge --mode circle needs --circle and --xi");
        spec = CircleTangential{real_list(s.circle, "circle"), complex_flag(s.xi, "xi")};
      }
      const std::string csv = c.csv.empty() ? "converge.csv" : c.csv;
      const ConvergenceReport report =
          run_experiment(spec, window_of(c, {{0.0, 0.0}, 24.0, 24.0}), c.nx, c.ny, p, s.kmax, opts);
      write_report(report, csv);
      out << encode_csv(report);
    } else if (cyclic->parsed()) {
      const Complex xi = complex_flag(s.xi, "xi");
      std::string table = "n,distance,hypothesis_distance\n";
      for (long n = 10; n <= s.nmax; n *= 10) {
        table += std::to_string(n) + "," + format_number(cyclic_limit_check(xi, n)) + "," +
                 format_number(cyclic_hypothesis_distance(xi, n)) + "\n";
        if (n > s.nmax / 10) break;
      }
      if (!c.csv.empty()) {
        std::ofstream f(c.csv, std::ios::binary | std::ios::trunc);
        if (!(f << table)) throw IoError("cannot write " + c.csv);
      }
      out << table;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const BranchError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const DegenerateError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ptorus::cli
