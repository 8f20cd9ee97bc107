// Command-line front end: spectra, radial bases, separable products,
// verification and family identification.
//
// Exit status: 0 success, 1 verification or numerical failure, 2 usage or
// construction error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "biharm/biharm.hpp"

namespace biharm {
namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

/// Shortest round-trip decimal text, independent of the locale.
std::string num(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

/// CSV goes to --out when given, else to stdout; notes go wherever the CSV is not.
struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* csv = &std::cout;
  std::ostream* notes = &std::cerr;

  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw DomainError("cannot write '" + path + "'");
    csv = file.get();
    notes = &std::cout;
  }
};

void write_metadata(const std::string& out, const nlohmann::json& meta, std::ostream& fallback) {
  if (out.empty()) {
    fallback << meta.dump(2) << '\n';
    return;
  }
  std::ofstream f(out + ".json");
  if (!f) throw DomainError("cannot write '" + out + ".json'");
  f << meta.dump(2) << '\n';
}

struct WarpChoice {
  WarpFunction warp;
  std::string label;
};

/// --sigma: r, sin, sinh, or an expression in r (domain (0, inf) unless given).
WarpChoice parse_sigma(const std::string& s, const std::vector<double>& domain) {
  if (s == "r") return {WarpFunction::euclidean(), "r"};
  if (s == "sin") return {WarpFunction::spherical(), "sin"};
  if (s == "sinh") return {WarpFunction::hyperbolic(), "sinh"};
  Interval dom{0.0, std::numeric_limits<double>::infinity()};
  if (!domain.empty()) {
    if (domain.size() != 2) throw DomainError("--domain takes lo,hi");
    dom = {domain[0], domain[1]};
  }
  const UnivariateFn f = parse_univariate(s, "r");
  return {WarpFunction(WarpTag::kCustom, f, dom), s};
}

std::optional<ClosedFormKind> closed_kind(const ModelSpace& space) {
  const int m = space.dimension();
  switch (space.warp().tag()) {
    case WarpTag::kEuclidean: return ClosedFormKind::kEuclidean;
    case WarpTag::kSpherical:
      if (m == 2 || m == 3) return ClosedFormKind::kSpherical;
      break;
    case WarpTag::kHyperbolic:
      if (m == 2 || m == 3) return ClosedFormKind::kHyperbolic;
      break;
    case WarpTag::kCustom: break;
  }
  return std::nullopt;
}

QuadratureConfig quadrature_from(const Config& c, std::optional<double> r0) {
  QuadratureConfig q;
  q.abs_tol = c.abs_tol;
  q.rel_tol = c.rel_tol;
  q.base_point = r0;
  return q;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  int m = 0;
  int kmax = 0;
  std::vector<int> orders;
};

int cmd_spectrum(const SpectrumArgs& a, const Config& cfg) {
  const auto rows = spectra(a.m, a.kmax, a.orders);
  if (cfg.format == "json") {
    std::cout << nlohmann::json{{"m", a.m}, {"entries", rows}}.dump(2) << '\n';
    return kOk;
  }
  const char sep = cfg.format == "csv" ? ',' : '\t';
  std::cout << "k" << sep << "lambda" << sep << "mu" << sep << "nu";
  for (int j : a.orders) std::cout << sep << "lambda^" << j;
  std::cout << '\n';
  for (const auto& e : rows) {
    std::cout << e.k << sep << num(e.laplace) << sep << num(e.bi) << sep << num(e.buckling);
    for (int j : a.orders) std::cout << sep << num(e.k_laplacian.at(j));
    std::cout << '\n';
  }
  if (cfg.format != "csv") {
    for (const auto& e : rows)
      if (e.k == 1)
        for (int j : a.orders)
          std::cout << "first nonzero eigenvalue of the " << j << "-Laplacian: " << num(e.k_laplacian.at(j)) << '\n';
    if (a.kmax >= 2)
      std::cout << "degree-2 buckling eigenvalue 2(m+1) = " << num(degree2_buckling_eigenvalue(a.m)) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RadialArgs {
  std::string sigma = "r";
  std::vector<double> domain;
  int m = 0;
  std::optional<double> r0;
  std::optional<int> samples;
  std::string out;
  bool check = false;
};

int cmd_radial_basis(const RadialArgs& a, const Config& cfg) {
  const WarpChoice w = parse_sigma(a.sigma, a.domain);
  const ModelSpace space(a.m, w.warp);
  const RadialBasis basis = radial_biharmonic_basis(space, quadrature_from(cfg, a.r0));
  const int n = a.samples.value_or(cfg.samples);
  if (n < 2) throw DomainError("--samples must be >= 2");

  Sink sink(a.out);
  *sink.csv << "r,w1,w2,w3,w4\n";
  for (double r : linspace(basis.working.lo, basis.working.hi, static_cast<std::size_t>(n))) {
    *sink.csv << num(r);
    for (const auto& f : basis.functions) *sink.csv << ',' << num(f(r));
    *sink.csv << '\n';
  }

  nlohmann::json meta{{"sigma", w.label},
                      {"m", a.m},
                      {"r0", basis.base},
                      {"tolerances", {{"abs_tol", cfg.abs_tol}, {"rel_tol", cfg.rel_tol}}},
                      {"working", {basis.working.lo, basis.working.hi}},
                      {"labels", basis.labels}};
  int status = kOk;
  if (a.check) {
    double worst = 0;
    for (const auto& f : basis.functions)
      for (double r : linspace(basis.working.lo, basis.working.hi, 50))
        worst = std::max(worst, std::abs(bilaplacian_radial(space, f, r)));
    const bool residual_ok = worst < cfg.tau;
    meta["bilaplacian_residual"] = worst;
    bool span_ok = true;
    if (const auto kind = closed_kind(space)) {
      const RadialBasis closed = closed_form_basis(*kind, a.m, quadrature_from(cfg, std::nullopt));
      const auto grid = linspace(basis.working.lo, basis.working.hi, 40);
      const double fwd = span_match(basis, closed, grid);
      const double back = span_match(closed, basis, grid);
      span_ok = fwd < cfg.tau && back < cfg.tau;
      meta["closed_form"] = {{"name", closed.name}, {"labels", closed.labels}, {"span_residual", std::max(fwd, back)}};
    } else {
      meta["closed_form"] = nullptr;
    }
    const bool pass = residual_ok && span_ok;
    meta["check"] = pass ? "PASS" : "FAIL";
    *sink.notes << (pass ? "PASS" : "FAIL") << ": bilaplacian residual " << num(worst);
    if (meta["closed_form"].is_object())
      *sink.notes << ", span residual " << num(meta["closed_form"]["span_residual"].get<double>()) << " against "
                  << meta["closed_form"]["name"].get<std::string>();
    else
      *sink.notes << " (no closed form for this space)";
    *sink.notes << '\n';
    if (!pass) status = kVerificationFailure;
  }
  write_metadata(a.out, meta, *sink.notes);
  return status;
}

// ---------------------------------------------------------------------------

struct SeparableArgs {
  std::string sigma = "r";
  std::vector<double> domain;
  int m = 0;
  int k = 0;
  std::vector<double> coeffs;
  int harmonic = 0;
  int angles = 8;
  std::optional<int> samples;
  std::optional<double> r0;
  std::string mode = "auto";
  std::string out;
};

int cmd_separable(const SeparableArgs& a, const Config& cfg) {
  if (a.k < 1) throw DomainError("--k must be >= 1");
  if (a.coeffs.size() != 4) throw DomainError("--coeffs takes four values c1,c2,c3,c4");
  if (a.angles < 1) throw DomainError("--angles must be >= 1");
  const WarpChoice w = parse_sigma(a.sigma, a.domain);
  const ModelSpace space(a.m, w.warp);
  const auto harmonics = harmonic_basis(a.m, a.k);
  if (a.harmonic < 0 || a.harmonic >= static_cast<int>(harmonics.size()))
    throw DomainError("--harmonic must be in 0.." + std::to_string(harmonics.size() - 1));
  const SphericalHarmonic& v = harmonics[static_cast<std::size_t>(a.harmonic)];

  SeparableOptions opts;
  opts.quadrature = quadrature_from(cfg, a.r0);
  if (a.mode == "closed") opts.mode = SolveMode::kClosedForm;
  else if (a.mode == "numeric") opts.mode = SolveMode::kNumeric;
  else if (a.mode != "auto") throw DomainError("--mode must be auto, closed or numeric");
  const SeparableBiharmonic b = build(space, a.k, v, {a.coeffs[0], a.coeffs[1], a.coeffs[2], a.coeffs[3]}, opts);

  const int n = a.samples.value_or(cfg.samples);
  if (n < 2) throw DomainError("--samples must be >= 2");
  std::vector<Point> dirs;
  if (a.m == 2) {
    for (int j = 0; j < a.angles; ++j) {
      const double t = 2.0 * std::numbers::pi * j / a.angles;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
  } else {
    dirs = sample_sphere(a.m - 1, static_cast<std::size_t>(a.angles), cfg.seed);
  }

  Sink sink(a.out);
  *sink.csv << "r,theta_index,value\n";
  double scale = 0, worst = 0, vmax = 0;
  for (const auto& d : dirs) vmax = std::max(vmax, std::abs(v(std::span<const double>(d))));
  for (double r : linspace(b.working().lo, b.working().hi, static_cast<std::size_t>(n))) {
    worst = std::max(worst, std::abs(b.bilaplacian_factor(r)) * vmax);
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double val = b(r, dirs[j]);
      scale = std::max(scale, std::abs(val));
      *sink.csv << num(r) << ',' << j << ',' << num(val) << '\n';
    }
  }
  const bool pass = worst < cfg.tau * (1.0 + scale);
  nlohmann::json meta{{"sigma", w.label},
                      {"m", a.m},
                      {"k", a.k},
                      {"c1", a.coeffs[0]},
                      {"c2", a.coeffs[1]},
                      {"c3", a.coeffs[2]},
                      {"c4", a.coeffs[3]},
                      {"harmonic", v.poly().to_string()},
                      {"source", to_string(b.pair().source)},
                      {"working", {b.working().lo, b.working().hi}},
                      {"max_bilaplacian", worst},
                      {"scale", scale},
                      {"check", pass ? "PASS" : "FAIL"}};
  if (a.m != 2) {
    nlohmann::json jd = nlohmann::json::array();
    for (const auto& d : dirs) jd.push_back(d);
    meta["directions"] = jd;
  }
  *sink.notes << (pass ? "PASS" : "FAIL") << ": max |Delta^2 p| = " << num(worst) << " (scale " << num(scale) << ")\n";
  write_metadata(a.out, meta, *sink.notes);
  return pass ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  bool catalog = false;
  std::string field;
  std::string space;
  std::string expect;
  double cap = 0.2;
};

Subject field_subject(const VerifyArgs& a, const Config& cfg) {
  const std::string& s = a.space;
  auto dim_after = [&s](std::size_t prefix) {
    const std::string tail = s.substr(prefix);
    int m = 0;
    const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), m);
    if (ec != std::errc() || end != tail.data() + tail.size() || m < 1)
      throw DomainError("cannot read the dimension in --space '" + s + "'");
    return m;
  };
  const auto count = static_cast<std::size_t>(cfg.samples);
  if (s.rfind("radial-", 0) == 0) {
    const auto dash = s.find('-', 7);
    if (dash == std::string::npos) throw DomainError("--space radial-<r|sin|sinh>-<m>");
    const ModelSpace space(dim_after(dash + 1), parse_sigma(s.substr(7, dash - 7), {}).warp);
    return {model_radial_probe(space, parse_univariate(a.field, "r")),
            Sampler::radial(default_working_interval(space.warp().tag()), count)};
  }
  if (s.rfind("sphere", 0) == 0 || s.rfind("S", 0) == 0) {
    const int m = dim_after(s[0] == 'S' ? 1 : 6);
    std::vector<Cap> caps;
    if (a.cap > 0) caps = detail::polar_caps(m, a.cap);
    return {sphere_probe(SphereFunction::project(m, parse_field(a.field, m + 1))),
            Sampler::sphere(m, count, cfg.seed, caps)};
  }
  if (s.rfind("euclidean", 0) == 0 || s.rfind("R", 0) == 0) {
    const int m = dim_after(s[0] == 'R' ? 1 : 9);
    return {euclidean_probe(parse_field(a.field, m)), Sampler::annulus(m, {0.3, 2.5}, count, cfg.seed)};
  }
  throw DomainError("unknown --space '" + s + "' (sphereM, euclideanM, radial-<sigma>-M)");
}

int cmd_verify(const VerifyArgs& a, const Config& cfg) {
  QuadratureConfig q = quadrature_from(cfg, std::nullopt);
  if (a.catalog) {
    const CatalogRun run = run_catalog(cfg.tau, static_cast<std::size_t>(cfg.samples), cfg.seed, q);
    if (cfg.format == "json") {
      std::cout << nlohmann::json(run).dump(2) << '\n';
    } else {
      std::cout << format_table(run);
      std::size_t failed = 0;
      for (const auto& r : run.results)
        if (!r.pass) {
          ++failed;
          std::cerr << "FAIL " << r.name << ": " << r.diagnostics << '\n';
        }
      std::cout << (run.results.size() - failed) << "/" << run.results.size() << " entries PASS\n";
    }
    return run.all_passed() ? kOk : kVerificationFailure;
  }
  if (a.field.empty() || a.space.empty()) throw DomainError("verify needs --catalog or both --field and --space");
  const Subject subj = field_subject(a, cfg);
  const ResidualReport rep = classify(subj.probe, subj.sampler, cfg.tau);
  bool pass = rep.verdict != Verdict::kNotBiharmonic;
  if (!a.expect.empty()) pass = rep.verdict == verdict_from_string(a.expect);
  if (cfg.format == "json") {
    nlohmann::json j{{"field", a.field}, {"space", a.space}, {"report", rep}, {"pass", pass}};
    if (!a.expect.empty()) j["expected"] = a.expect;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "field      " << a.field << "\nspace      " << a.space << "\nverdict    " << to_string(rep.verdict)
              << "\nmax|Lap|   " << num(rep.max_laplacian) << "\nmean Lap   " << num(rep.laplacian_average)
              << "\nmax|BiLap| " << num(rep.max_bilaplacian) << "\nscale      " << num(rep.scale)
              << "\nsamples    " << rep.samples << " (" << rep.excluded << " excluded)\n"
              << (pass ? "PASS" : "FAIL") << '\n';
  }
  if (!pass) std::cerr << "FAIL " << a.field << " on " << a.space << ": " << to_string(rep.verdict) << '\n';
  return pass ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------------------

/// Reads x1..xm,value rows (header row first).
void read_samples(const std::string& path, int m, std::vector<Point>& pts, std::vector<double>& vals) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      const std::string cell = detail::trim(line.substr(pos, comma - pos));
      double v = 0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || end != cell.data() + cell.size())
        throw DomainError(path + ":" + std::to_string(lineno) + ": not a number '" + cell + "'");
      row.push_back(v);
      pos = comma + 1;
    }
    if (static_cast<int>(row.size()) != m + 1)
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(m + 1) + " columns");
    vals.push_back(row.back());
    row.pop_back();
    pts.push_back(std::move(row));
  }
  if (pts.empty()) throw DomainError("'" + path + "' holds no samples");
}

int cmd_classify(int m, const std::string& path) {
  std::vector<Point> pts;
  std::vector<double> vals;
  read_samples(path, m, pts, vals);
  const FamilyFit fit = fit_family(pts, vals, m);
  nlohmann::json j = fit;
  j["in_family"] = fit.residual < 1e-6 && fit.constraints_ok;
  std::cout << j.dump(2) << '\n';
  return kOk;
}

}  // namespace
}  // namespace biharm

int main(int argc, char** argv) {
  using namespace biharm;
  CLI::App app{"Biharmonic functions, bi-eigenfunctions and buckling eigenfunctions on model spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::map<std::string, std::string> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  app.add_option("--config", config_file, "key = value config file (default: $BIHARM_CONFIG)");
  flag("--tau", "tau", "verification tolerance");
  flag("--abs-tol", "abs_tol", "quadrature absolute tolerance");
  flag("--rel-tol", "rel_tol", "quadrature relative tolerance");
  flag("--seed", "seed", "sampler seed");
  flag("--format", "format", "json, csv or table");
  flag("--default-samples", "samples", "default sample count");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Laplace, bi-Laplace, buckling and k-Laplacian spectra of S^m");
  spectrum->add_option("--m", sa.m, "sphere dimension")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--kmax", sa.kmax, "largest degree")->required()->check(CLI::NonNegativeNumber);
  spectrum->add_option("--k-laplacian", sa.orders, "k-Laplacian order (repeatable)")->check(CLI::PositiveNumber);

  RadialArgs ra;
  auto* radial = app.add_subcommand("radial-basis", "four-function radial biharmonic basis on a model space");
  radial->add_option("--sigma", ra.sigma, "r, sin, sinh or an expression in r");
  radial->add_option("--domain", ra.domain, "lo,hi of a custom sigma")->delimiter(',');
  radial->add_option("--m", ra.m, "dimension")->required();
  radial->add_option("--r0", ra.r0, "base point of the integrals");
  radial->add_option("--samples", ra.samples, "number of sampled radii");
  radial->add_option("--out", ra.out, "CSV path (metadata goes to <out>.json)");
  radial->add_flag("--check", ra.check, "verify residuals and compare with closed forms");

  SeparableArgs pa;
  auto* separable = app.add_subcommand("separable", "biharmonic products u(r) v_k(theta)");
  separable->add_option("--sigma", pa.sigma, "r, sin, sinh or an expression in r");
  separable->add_option("--domain", pa.domain, "lo,hi of a custom sigma")->delimiter(',');
  separable->add_option("--m", pa.m, "dimension")->required();
  separable->add_option("--k", pa.k, "degree of the spherical harmonic")->required();
  separable->add_option("--coeffs", pa.coeffs, "c1,c2,c3,c4")->required()->delimiter(',');
  separable->add_option("--harmonic", pa.harmonic, "index into the degree-k harmonic basis");
  separable->add_option("--angles", pa.angles, "number of directions in the theta grid");
  separable->add_option("--samples", pa.samples, "number of sampled radii");
  separable->add_option("--r0", pa.r0, "base point of the integrals");
  separable->add_option("--mode", pa.mode, "auto, closed or numeric");
  separable->add_option("--out", pa.out, "CSV path (metadata goes to <out>.json)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "classify a field or run the example catalog");
  verify->add_flag("--catalog", va.catalog, "run every catalog entry");
  verify->add_option("--field", va.field, "expression in x1..xn, r, theta");
  verify->add_option("--space", va.space, "sphereM, euclideanM or radial-<r|sin|sinh>-M");
  verify->add_option("--expect", va.expect, "expected verdict");
  verify->add_option("--cap", va.cap, "radius of the excluded polar caps on spheres");

  int cm = 0;
  std::string samples_file;
  auto* classify = app.add_subcommand("classify", "fit samples against the positive-Laplacian family");
  classify->add_option("--m", cm, "dimension")->required()->check(CLI::Range(2, 64));
  classify->add_option("--samples", samples_file, "CSV of x1..xm,value")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::optional<std::string> file;
    if (!config_file.empty()) file = config_file;
    else if (auto env = process_env("BIHARM_CONFIG")) file = *env;
    const Config cfg = resolve_config(flags, file);
    if (spectrum->parsed()) return cmd_spectrum(sa, cfg);
    if (radial->parsed()) return cmd_radial_basis(ra, cfg);
    if (separable->parsed()) return cmd_separable(pa, cfg);
    if (verify->parsed()) return cmd_verify(va, cfg);
    if (classify->parsed()) return cmd_classify(cm, samples_file);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
