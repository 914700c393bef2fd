// Command-line front end: config ingestion, command dispatch, reproducible
// CSV/JSON export with a run manifest.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "symspec/classify.hpp"
#include "symspec/oracle.hpp"
#include "symspec/resolvent.hpp"

using nlohmann::json;
using namespace symspec;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  double tol = 1e-8;
  double nu0 = 1e-1;
  double nu_ratio = 0.5;
  int nu_count = 15;
  long n_max = 1L << 20;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";
};

struct Config {
  std::optional<SymplecticSystem> system;
  std::optional<JacobiModel> jacobi;
  std::optional<HerglotzModel> synthetic;
  BoundaryMatrix alpha = BoundaryMatrix::from_angle(1.5707963267948966);
  std::optional<BoundaryMatrix> alpha_hat;
  json raw;
};

ScalarSeq parse_seq(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError(path + ": expected {\"kind\": ...}");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return ScalarSeq::constant(j.at("value").get<double>());
  if (kind == "affine")
    return ScalarSeq::affine(j.value("base", 0.0), j.value("slope", 0.0));
  if (kind == "periodic")
    return ScalarSeq::periodic(j.at("values").get<std::vector<double>>());
  if (kind == "table") {
    const std::string tail = j.value("tail", "");
    if (tail != "repeat-last" && tail != "error")
      throw ConfigError(path + ".tail: expected \"repeat-last\" or \"error\"");
    return ScalarSeq::table(j.at("values").get<std::vector<double>>(),
                            tail == "repeat-last" ? ScalarSeq::Tail::RepeatLast
                                                  : ScalarSeq::Tail::Error);
  }
  throw ConfigError(path + ".kind: unknown");
}

Complex parse_entry(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  throw ConfigError(path + ": expected number or [re, im]");
}

BoundaryMatrix parse_alpha(const json& j, const std::string& path) {
  if (j.contains("angle")) return BoundaryMatrix::from_angle(j.at("angle").get<double>());
  if (j.contains("matrix")) {
    const json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty())
      throw ConfigError(path + ".matrix: expected rows");
    const int n = int(rows.size());
    Mat m(n, 2 * n);
    for (int r = 0; r < n; ++r) {
      const json& row = rows.at(size_t(r));
      if (!row.is_array() || int(row.size()) != 2 * n)
        throw ConfigError(path + ".matrix: row " + std::to_string(r) +
                          " must have 2n entries");
      for (int c = 0; c < 2 * n; ++c)
        m(r, c) = parse_entry(row.at(size_t(c)), path + ".matrix");
    }
    try {
      return BoundaryMatrix(m);
    } catch (const StructureError&) {
      throw ConfigError(path + ": not in Gamma");
    }
  }
  throw ConfigError(path + ": expected \"angle\" or \"matrix\"");
}

Config parse_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file: " + file);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad JSON: ") + e.what());
  }

  Config cfg;
  cfg.raw = j;
  if (!j.contains("model")) throw ConfigError("model: missing");
  const json& jm = j.at("model");
  const std::string type = jm.value("type", "");
  if (type == "jacobi") {
    JacobiModel m;
    if (jm.contains("a")) m.a = parse_seq(jm.at("a"), "model.a");
    if (jm.contains("b")) m.b = parse_seq(jm.at("b"), "model.b");
    if (jm.contains("w")) m.w = parse_seq(jm.at("w"), "model.w");
    m.label = jm.value("label", "jacobi");
    cfg.jacobi = m;
    cfg.system = jacobi_to_symplectic(m);
  } else if (type == "free_jacobi") {
    cfg.jacobi = free_jacobi_model();
    cfg.system = jacobi_to_symplectic(*cfg.jacobi);
  } else if (type == "oscillator") {
    cfg.jacobi = oscillator_model(jm.value("c", 1.0));
    cfg.system = jacobi_to_symplectic(*cfg.jacobi);
  } else if (type == "one_jump") {
    const auto bm =
        builtin_model("one_jump_synthetic", jm.value("c", 1.0), jm.value("t0", 0.0));
    cfg.synthetic = bm.synthetic;
  } else if (type == "synthetic") {
    const int n = 1;
    std::vector<double> breaks;
    std::vector<Mat> incs;
    if (jm.contains("jumps"))
      for (const auto& e : jm.at("jumps")) {
        breaks.push_back(e.at("t").get<double>());
        Mat c(n, n);
        c(0, 0) = e.at("c").get<double>();
        incs.push_back(c);
      }
    Mat m0(n, n), m1(n, n);
    m0(0, 0) = jm.value("m0", 0.0);
    m1(0, 0) = jm.value("m1", 0.0);
    try {
      cfg.synthetic = HerglotzModel(
          m0, m1, StepSpectralFunction(n, breaks, incs), jm.value("semicircle", 0.0));
    } catch (const BadInput& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  } else {
    throw ConfigError("model.type: unknown");
  }

  if (j.contains("alpha")) cfg.alpha = parse_alpha(j.at("alpha"), "alpha");
  if (j.contains("alpha_hat"))
    cfg.alpha_hat = parse_alpha(j.at("alpha_hat"), "alpha_hat");
  return cfg;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Run {
  RunOptions opts;
  Config cfg;
  std::string command;
  std::string hash;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  NuSchedule sched() const { return NuSchedule{opts.nu0, opts.nu_ratio, opts.nu_count}; }

  LimitMOptions limit_opts() const {
    LimitMOptions lo;
    lo.tol = opts.tol;
    lo.n_max = opts.n_max;
    lo.probe_seed = opts.seed;
    return lo;
  }

  ClassifyOptions classify_opts() const {
    ClassifyOptions co;
    co.sched = sched();
    return co;
  }

  std::unique_ptr<MFunction> mfunction() const {
    if (cfg.synthetic) return std::make_unique<HerglotzMFunction>(*cfg.synthetic);
    return std::make_unique<SystemMFunction>(*cfg.system, cfg.alpha, limit_opts());
  }

  const SymplecticSystem& need_system() const {
    if (!cfg.system)
      throw ConfigError("model: this command needs a half-line system model");
    return *cfg.system;
  }

  std::filesystem::path out_path(const std::string& name) const {
    return std::filesystem::path(opts.out_dir) / name;
  }

  void compute_hash(const std::string& extra) {
    json id;
    id["version"] = "0.1.0";
    id["command"] = command;
    id["config"] = cfg.raw;
    id["tol"] = opts.tol;
    id["nu0"] = opts.nu0;
    id["nu_ratio"] = opts.nu_ratio;
    id["nu_count"] = opts.nu_count;
    id["n_max"] = opts.n_max;
    id["seed"] = opts.seed;
    id["args"] = extra;
    hash = hex64(fnv1a(id.dump()));
  }

  void write_manifest(const json& extra = json::object()) const {
    json m;
    m["tool"] = "symspec";
    m["version"] = "0.1.0";
    m["command"] = command;
    m["config_hash"] = hash;
    m["seed"] = opts.seed;
    m["tolerances"] = {{"tol", opts.tol}};
    m["nu_schedule"] = {{"nu0", opts.nu0}, {"ratio", opts.nu_ratio},
                        {"count", opts.nu_count}};
    m["n_max"] = opts.n_max;
    m["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count();
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = *it;
    std::ofstream out(out_path("manifest.json"));
    out << m.dump(2) << "\n";
  }

  std::ofstream open_csv(const std::string& name) const {
    std::ofstream out(out_path(name));
    out << "# manifest: " << hash << "\n";
    return out;
  }
};

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Complex parse_complex(std::string s) {
  // forms: "1.5", "2i", "-1e-3i", "0.3+0.4i", "1-2i"
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw ConfigError("empty complex literal");
  if (s.back() != 'i') return Complex(std::stod(s), 0.0);
  s.pop_back();  // strip i
  // split at the last +/- that is not an exponent sign and not leading
  for (size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      const double re = std::stod(s.substr(0, p));
      std::string im = s.substr(p);
      if (im == "+" || im == "-") im += "1";
      return Complex(re, std::stod(im));
    }
  }
  if (s.empty() || s == "+") return Complex(0, 1);
  if (s == "-") return Complex(0, -1);
  return Complex(0.0, std::stod(s));
}

json record_json(const ClassificationRecord& r) {
  json j;
  j["lambda0"] = r.lambda0;
  j["verdict"] = to_string(r.verdict);
  j["L_hat"] = mat_json(r.l_hat);
  j["L_residual"] = r.l_residual;
  j["eps_L"] = r.eps_l;
  if (r.k_minus1) j["K_minus1"] = mat_json(*r.k_minus1);
  if (r.density) j["density_hat"] = mat_json(*r.density);
  j["density_divergent"] = r.density_divergent;
  j["density_residual"] = r.density_residual;
  j["refined_lambda"] = r.refined_lambda;
  j["flank_low"] = r.flank_low;
  j["flank_high"] = r.flank_high;
  j["nu_used"] = r.nu_used;
  return j;
}

void spectrum_row(std::ostream& os, const ClassificationRecord& r) {
  const double l_re = r.l_hat.empty() ? 0.0 : r.l_hat(0, 0).real();
  const double l_im = r.l_hat.empty() ? 0.0 : r.l_hat(0, 0).imag();
  const double km = r.k_minus1 ? (*r.k_minus1)(0, 0).real() : 0.0;
  const double dens = r.density ? (*r.density)(0, 0).real()
                                : std::numeric_limits<double>::quiet_NaN();
  os << fmt(r.lambda0) << ',' << to_string(r.verdict) << ',' << fmt(l_re) << ','
     << fmt(l_im) << ',' << fmt(km) << ',' << fmt(dens) << ','
     << fmt(r.l_residual) << "\n";
}

int cmd_validate(Run& run, long k_max, long n0) {
  const auto& sys = run.need_system();
  const auto rep = validate_system(sys, k_max, std::max(run.opts.tol, 1e-12));
  AtkinsonResult atk;
  bool atk_ok = false;
  std::string atk_err;
  try {
    atk = check_atkinson(sys, n0);
    atk_ok = atk.positive;
  } catch (const Error& e) {
    atk_err = e.what();
  }

  json j;
  j["manifest"] = run.hash;
  j["pass"] = rep.pass && atk_ok;
  j["checks"] = json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"worst_residual", c.worst_residual},
                           {"first_bad_k", c.first_bad_k}});
  j["atkinson"] = {{"positive", atk_ok},
                   {"min_eig", atk_ok || atk_err.empty() ? atk.min_eig : 0.0}};
  if (!atk_err.empty()) j["atkinson"]["error"] = atk_err;
  std::ofstream out(run.out_path("validate.json"));
  out << j.dump(2) << "\n";
  run.write_manifest();
  return (rep.pass && atk_ok) ? 0 : 1;
}

int cmd_mfun(Run& run, const std::string& lambda_str, double re0, double re1,
             int re_n, double im0, double im1, int im_n) {
  const auto mf = run.mfunction();
  if (!lambda_str.empty()) {
    const Complex la = parse_complex(lambda_str);
    const auto ev = mf->eval(la);
    json j;
    j["manifest"] = run.hash;
    j["lambda"] = complex_json(la);
    j["value"] = mat_json(ev.value);
    j["converged"] = ev.converged;
    j["N_used"] = ev.n_used;
    j["diameter"] = ev.diameter;
    std::ofstream out(run.out_path("mfun.json"));
    out << j.dump(2) << "\n";
    run.write_manifest();
    return 0;
  }
  auto out = run.open_csv("mfun.csv");
  out << "re,im,M_re,M_im,N_used,diameter\n";
  for (int i = 0; i < re_n; ++i)
    for (int k = 0; k < im_n; ++k) {
      const double re = re_n == 1 ? re0 : re0 + (re1 - re0) * i / double(re_n - 1);
      const double im = im_n == 1 ? im0 : im0 + (im1 - im0) * k / double(im_n - 1);
      const auto ev = mf->eval({re, im});
      out << fmt(re) << ',' << fmt(im) << ',' << fmt(ev.value(0, 0).real()) << ','
          << fmt(ev.value(0, 0).imag()) << ',' << ev.n_used << ','
          << fmt(ev.diameter) << "\n";
    }
  run.write_manifest();
  return 0;
}

int cmd_classify(Run& run, double lambda0) {
  const auto mf = run.mfunction();
  const auto rec = classify_point(*mf, lambda0, run.classify_opts());
  json j = record_json(rec);
  j["manifest"] = run.hash;
  std::ofstream out(run.out_path("classification.json"));
  out << j.dump(2) << "\n";
  run.write_manifest();
  return 0;
}

int cmd_spectrum(Run& run, double a, double b, int resolution) {
  const auto mf = run.mfunction();
  const auto map = scan_spectrum(*mf, a, b, resolution, run.classify_opts());

  if (run.opts.format == "json") {
    json j;
    j["manifest"] = run.hash;
    j["records"] = json::array();
    for (const auto& r : map.records) j["records"].push_back(record_json(r));
    j["eigenvalues"] = json::array();
    for (const auto& e : map.eigenvalues)
      j["eigenvalues"].push_back({{"lambda", e.lambda},
                                  {"K_minus1", mat_json(e.k_minus1)},
                                  {"residual", e.residual}});
    std::ofstream out(run.out_path("spectrum.json"));
    out << j.dump(2) << "\n";
  } else {
    auto out = run.open_csv("spectrum.csv");
    out << "lambda0,verdict,L_re,L_im,Kminus1,density_im,residual\n";
    for (const auto& r : map.records) spectrum_row(out, r);
    auto eout = run.open_csv("eigenvalues.csv");
    eout << "lambda,Kminus1,residual\n";
    for (const auto& e : map.eigenvalues)
      eout << fmt(e.lambda) << ',' << fmt(e.k_minus1(0, 0).real()) << ','
           << fmt(e.residual) << "\n";
  }

  int undetermined = 0;
  for (const auto& r : map.records)
    if (r.verdict == SpectrumVerdict::Undetermined) ++undetermined;
  run.write_manifest({{"undetermined", undetermined},
                      {"eigenvalues", map.eigenvalues.size()}});
  return 2 * undetermined > int(map.records.size()) ? 2 : 0;
}

int cmd_tau(Run& run, double t1, double t2, int bins, double nu) {
  const auto mf = run.mfunction();
  auto out = run.open_csv("tau.csv");
  out << "t1,t2,increment\n";
  for (int i = 0; i < bins; ++i) {
    const double a = t1 + (t2 - t1) * i / double(bins);
    const double b = t1 + (t2 - t1) * (i + 1) / double(bins);
    const Mat inc = tau_increment(*mf, a, b, nu);
    out << fmt(a) << ',' << fmt(b) << ',' << fmt(inc(0, 0).real()) << "\n";
  }
  run.write_manifest();
  return 0;
}

int cmd_resolve(Run& run, const std::string& lambda_str, long n_out) {
  const auto& sys = run.need_system();
  const Complex la = parse_complex(lambda_str);

  WeightedSequence f;
  Mat xi(sys.n(), 1);
  const json& raw = run.cfg.raw;
  if (raw.contains("f")) {
    const json& jf = raw.at("f");
    f.k0 = jf.value("k0", 0);
    for (const auto& entry : jf.at("values")) {
      Mat v(sys.dim(), 1);
      if (int(entry.size()) != sys.dim())
        throw ConfigError("f.values: each entry needs 2n components");
      for (int c = 0; c < sys.dim(); ++c)
        v(c, 0) = parse_entry(entry.at(size_t(c)), "f.values");
      f.values.push_back(v);
    }
  }
  if (raw.contains("xi")) {
    const json& jx = raw.at("xi");
    if (int(jx.size()) != sys.n()) throw ConfigError("xi: needs n components");
    for (int c = 0; c < sys.n(); ++c)
      xi(c, 0) = parse_entry(jx.at(size_t(c)), "xi");
  }

  const auto z = resolve_bvp(sys, run.cfg.alpha, la, f, xi, n_out);
  const double defect = bvp_defect(sys, la, z, f);

  auto out = run.open_csv("resolve.csv");
  out << "k";
  for (int c = 0; c < sys.dim(); ++c) out << ",z" << c << "_re,z" << c << "_im";
  out << "\n";
  for (Index k = 0; k <= z.last(); ++k) {
    out << k;
    for (int c = 0; c < sys.dim(); ++c)
      out << ',' << fmt(z.at(k)(c, 0).real()) << ',' << fmt(z.at(k)(c, 0).imag());
    out << "\n";
  }
  const auto nz = seminorm(sys, z, 0, z.last());
  const double nf =
      f.values.empty() ? 0.0 : seminorm(sys, f, f.k0, f.last()).norm;
  run.write_manifest({{"defect", defect},
                      {"solution_norm", nz.norm},
                      {"data_norm", nf}});
  return 0;
}

int cmd_oracle(Run& run, long size, double angle, double a, double b,
               int resolution) {
  const auto& sys = run.need_system();
  if (!run.cfg.jacobi) throw ConfigError("model: oracle needs a jacobi model");
  const auto eigs = jacobi_truncation_eigs(*run.cfg.jacobi, size, angle);
  auto out = run.open_csv("oracle.csv");
  out << "index,eigenvalue\n";
  for (size_t i = 0; i < eigs.size(); ++i)
    out << i << ',' << fmt(eigs[i]) << "\n";

  if (a < b) {
    DetScanOptions dopts;
    if (resolution > 1) dopts.grid_points = resolution;
    const auto roots = det_root_scan(sys, run.cfg.alpha,
                                     BoundaryMatrix::from_angle(1.5707963267948966),
                                     size, a, b, dopts);
    auto rout = run.open_csv("det_roots.csv");
    rout << "lambda,suspect\n";
    for (const auto& r : roots)
      rout << fmt(r.lambda) << ',' << (r.suspect ? 1 : 0) << "\n";
  }
  run.write_manifest({{"size", size}});
  return 0;
}

int cmd_interlace(Run& run, double a, double b, int resolution) {
  const auto& sys = run.need_system();
  if (!run.cfg.alpha_hat)
    throw ConfigError("alpha_hat: required for the interlace command");
  const auto rep = interlace_check(sys, run.cfg.alpha, *run.cfg.alpha_hat, a, b,
                                   resolution, run.classify_opts());
  json j;
  j["manifest"] = run.hash;
  j["m"] = rep.m;
  j["count_bound_ok"] = rep.count_bound_ok;
  j["pigeonhole_ok"] = rep.pigeonhole_ok;
  j["scalar_case"] = rep.scalar_case;
  j["scalar_strict_ok"] = rep.scalar_strict_ok;
  j["inconclusive"] = rep.inconclusive;
  j["gap_counts"] = rep.gap_counts;
  j["eigs_alpha"] = rep.eigs_alpha;
  j["eigs_alpha_hat"] = rep.eigs_alpha_hat;
  std::ofstream out(run.out_path("interlace.json"));
  out << j.dump(2) << "\n";
  run.write_manifest();
  return rep.inconclusive ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-line spectral classification through the boundary function"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions opts;
  app.add_option("-c,--config", config_path, "JSON configuration file")
      ->required();
  app.add_option("--tol", opts.tol, "limit tolerance");
  app.add_option("--nu0", opts.nu0, "boundary schedule start");
  app.add_option("--nu-ratio", opts.nu_ratio, "boundary schedule ratio");
  app.add_option("--nu-count", opts.nu_count, "boundary schedule length");
  app.add_option("--nmax", opts.n_max, "window cap for the half-line limit");
  app.add_option("--seed", opts.seed, "seed for pseudorandom probes");
  app.add_option("--out-dir", opts.out_dir, "output directory");
  app.add_option("--format", opts.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "structural identities");
  long k_max = 200, n0 = 8;
  validate->add_option("--kmax", k_max, "validation window");
  validate->add_option("--n0", n0, "positivity window");

  auto* mfun = app.add_subcommand("mfun", "boundary function values");
  std::string lambda_str;
  double re0 = -3, re1 = 3, im0 = 1, im1 = 1;
  int re_n = 0, im_n = 1;
  mfun->add_option("--lambda", lambda_str, "complex point, e.g. 0+1i");
  mfun->add_option("--re-min", re0);
  mfun->add_option("--re-max", re1);
  mfun->add_option("--re-count", re_n);
  mfun->add_option("--im-min", im0);
  mfun->add_option("--im-max", im1);
  mfun->add_option("--im-count", im_n);

  auto* classify = app.add_subcommand("classify", "classify a real point");
  double lambda0 = 0.0;
  classify->add_option("--lambda0", lambda0, "real spectral point")->required();

  auto* spectrum = app.add_subcommand("spectrum", "classify a real interval");
  std::vector<double> range{-3.0, 3.0};
  int resolution = 61;
  spectrum->add_option("--range", range, "interval [a, b]")->expected(2);
  spectrum->add_option("--resolution", resolution, "grid points");

  auto* tau = app.add_subcommand("tau", "spectral function increments");
  double t1 = -1, t2 = 1, tau_nu = 4e-3;
  int bins = 1;
  tau->add_option("--t1", t1)->required();
  tau->add_option("--t2", t2)->required();
  tau->add_option("--bins", bins);
  tau->add_option("--nu", tau_nu);

  auto* resolve = app.add_subcommand("resolve", "boundary value problem");
  std::string resolve_lambda = "0+1i";
  long n_out = 200;
  resolve->add_option("--lambda", resolve_lambda)->required();
  resolve->add_option("--n-out", n_out);

  auto* oracle = app.add_subcommand("oracle", "finite-section eigenvalues");
  long size = 100;
  double oracle_angle = 1.5707963267948966;
  double det_a = 0, det_b = -1;
  int det_res = 0;
  oracle->add_option("--size", size);
  oracle->add_option("--angle", oracle_angle);
  oracle->add_option("--det-a", det_a);
  oracle->add_option("--det-b", det_b);
  oracle->add_option("--det-resolution", det_res);

  auto* interlace = app.add_subcommand("interlace", "two-boundary eigenvalue counts");
  std::vector<double> il_range{0.0, 6.0};
  int il_res = 61;
  interlace->add_option("--range", il_range, "interval [a, b]")->expected(2);
  interlace->add_option("--resolution", il_res);

  CLI11_PARSE(app, argc, argv);

  try {
    Run run;
    run.opts = opts;
    run.cfg = parse_config(config_path);
    std::filesystem::create_directories(opts.out_dir);

    // The run identity covers the config content and semantic flags; where
    // the files land or the config lives does not change the computation.
    std::ostringstream extra;
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--out-dir" || arg == "-c" || arg == "--config") {
        ++i;
        continue;
      }
      extra << arg << ' ';
    }
    run.command = app.get_subcommands().front()->get_name();
    run.compute_hash(extra.str());

    if (validate->parsed()) return cmd_validate(run, k_max, n0);
    if (mfun->parsed())
      return cmd_mfun(run, lambda_str, re0, re1, re_n == 0 ? 61 : re_n, im0, im1,
                      im_n);
    if (classify->parsed()) return cmd_classify(run, lambda0);
    if (spectrum->parsed()) return cmd_spectrum(run, range[0], range[1], resolution);
    if (tau->parsed()) return cmd_tau(run, t1, t2, bins, tau_nu);
    if (resolve->parsed()) return cmd_resolve(run, resolve_lambda, n_out);
    if (oracle->parsed())
      return cmd_oracle(run, size, oracle_angle, det_a, det_b, det_res);
    if (interlace->parsed()) return cmd_interlace(run, il_range[0], il_range[1], il_res);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
