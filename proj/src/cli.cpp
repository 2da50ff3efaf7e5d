#include "armchair/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "armchair/errors.hpp"
#include "armchair/flatband.hpp"
#include "armchair/json_writer.hpp"
#include "armchair/resonance.hpp"
#include "armchair/spectrum.hpp"
#include "armchair/threads.hpp"
#include "json.hpp"

namespace armchair::cli {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct RunConfig {
  std::string potential;
  int N = 1;
  std::vector<int> ks;  // empty = all
  double range_lo = 0.0, range_hi = 100.0;
  int grid = 512;
  std::string out = "-";
  std::string format;  // "", "json", "csv"
  std::optional<Rect> rect;
  bool has_family = false;
  double fam_v = 0.0, fam_eps = 0.0;
  int fam_k = -1, fam_N = -1, fam_n = 0;
  int n_dirichlet = 5;
  std::optional<double> lambda;
  bool plot_data = false;
  int plot_points = 400;
};

std::vector<double> split_reals(const std::string& text, char sep,
                                const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw parse_error("bad " + what + ": '" + text + "'");
    out.push_back(v);
  }
  return out;
}

void parse_range(const std::string& text, RunConfig& cfg) {
  auto v = split_reals(text, ':', "range (want a:b)");
  if (v.size() != 2) throw parse_error("range must be a:b");
  cfg.range_lo = v[0];
  cfg.range_hi = v[1];
}

Rect parse_rect(const std::string& text) {
  auto v = split_reals(text, ':', "rect (want re0:re1:im0:im1)");
  if (v.size() != 4) throw parse_error("rect must be re0:re1:im0:im1");
  return Rect{v[0], v[1], v[2], v[3]};
}

void parse_family_tokens(const std::vector<std::string>& tokens,
                         RunConfig& cfg) {
  std::string joined;
  for (const auto& t : tokens) joined += t + ",";
  std::stringstream ss(joined);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw parse_error("delta-family token '" + tok + "' is not key=value");
    std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    char* end = nullptr;
    double v = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      throw parse_error("delta-family value '" + val + "' is not a number");
    if (key == "v") cfg.fam_v = v;
    else if (key == "eps") cfg.fam_eps = v;
    else if (key == "k") cfg.fam_k = static_cast<int>(v);
    else if (key == "N") cfg.fam_N = static_cast<int>(v);
    else if (key == "n") cfg.fam_n = static_cast<int>(v);
    else throw parse_error("unknown delta-family key '" + key + "'");
  }
  cfg.has_family = true;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("config parse error in '" + path + "': " + e.what());
  }
  if (j.contains("potential")) cfg.potential = j["potential"].get<std::string>();
  if (j.contains("N")) cfg.N = j["N"].get<int>();
  if (j.contains("k")) {
    cfg.ks.clear();
    if (j["k"].is_array())
      for (const auto& v : j["k"]) cfg.ks.push_back(v.get<int>());
    else
      cfg.ks.push_back(j["k"].get<int>());
  }
  if (j.contains("range")) {
    if (j["range"].is_array() && j["range"].size() == 2) {
      cfg.range_lo = j["range"][0].get<double>();
      cfg.range_hi = j["range"][1].get<double>();
    } else {
      parse_range(j["range"].get<std::string>(), cfg);
    }
  }
  if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("rect")) {
    if (j["rect"].is_array() && j["rect"].size() == 4)
      cfg.rect = Rect{j["rect"][0].get<double>(), j["rect"][1].get<double>(),
                      j["rect"][2].get<double>(), j["rect"][3].get<double>()};
    else
      cfg.rect = parse_rect(j["rect"].get<std::string>());
  }
  if (j.contains("delta_family")) {
    const auto& f = j["delta_family"];
    cfg.fam_v = f.value("v", 0.0);
    cfg.fam_eps = f.value("eps", 0.0);
    cfg.fam_k = f.value("k", -1);
    cfg.fam_N = f.value("N", -1);
    cfg.fam_n = f.value("n", 0);
    cfg.has_family = true;
  }
  if (j.contains("n_dirichlet")) cfg.n_dirichlet = j["n_dirichlet"].get<int>();
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("plot_data")) cfg.plot_data = j["plot_data"].get<bool>();
  if (j.contains("plot_points")) cfg.plot_points = j["plot_points"].get<int>();
}

std::string resolve_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  auto dot = cfg.out.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = cfg.out.substr(dot + 1);
    if (ext == "csv") return "csv";
  }
  return "json";
}

void finalize_common(RunConfig& cfg) {
  if (cfg.has_family) {
    if (cfg.fam_N < 1 || cfg.fam_k < 0)
      throw parse_error("delta-family needs at least v=, eps=, k=, N=");
    cfg.potential = "delta_family v=" + fmt17(cfg.fam_v) +
                    " eps=" + fmt17(cfg.fam_eps) + " k=" +
                    std::to_string(cfg.fam_k) + " N=" + std::to_string(cfg.fam_N);
    cfg.N = cfg.fam_N;
    if (cfg.ks.empty()) cfg.ks.push_back(cfg.fam_k);
  }
  if (cfg.potential.empty()) throw parse_error("no potential given");
  if (cfg.N < 1) throw parse_error("N must be >= 1");
  if (cfg.ks.empty())
    for (int k = 0; k < cfg.N; ++k) cfg.ks.push_back(k);
  std::sort(cfg.ks.begin(), cfg.ks.end());
  cfg.ks.erase(std::unique(cfg.ks.begin(), cfg.ks.end()), cfg.ks.end());
  for (int k : cfg.ks)
    if (k < 0 || k >= cfg.N) throw parse_error("k values must lie in [0, N)");
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw parse_error("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void emit_potential_header(JsonWriter& w, const RunConfig& cfg,
                           const std::string& command) {
  w.kv("command", command);
  w.kv("potential", cfg.potential);
  w.kv("N", cfg.N);
}

int cmd_bands(const RunConfig& cfg, std::ostream& fallback) {
  auto q = Potential::parse(cfg.potential);
  if (!(cfg.range_lo < cfg.range_hi)) throw parse_error("empty λ range");
  if (cfg.grid < 16) throw parse_error("grid must be >= 16");
  OutputSink sink(cfg.out, fallback);
  std::string fmt = resolve_format(cfg);

  if (cfg.plot_data) {
    // (λ, F_{k,1}, F_{k,2}) triples for band-diagram plotting
    std::vector<std::vector<BranchSample>> rows(cfg.ks.size());
    parallel_for(static_cast<int>(cfg.ks.size()), [&](int i) {
      rows[i] = branch_samples(q, TubeParams(cfg.N, cfg.ks[i]), cfg.range_lo,
                               cfg.range_hi, cfg.plot_points);
    });
    if (fmt == "csv") {
      sink.stream() << "k,lambda,re_f1,im_f1,re_f2,im_f2\n";
      for (size_t i = 0; i < cfg.ks.size(); ++i)
        for (const auto& s : rows[i])
          sink.stream() << cfg.ks[i] << "," << fmt17(s.lambda) << ","
                        << fmt17(s.f1.real()) << "," << fmt17(s.f1.imag())
                        << "," << fmt17(s.f2.real()) << ","
                        << fmt17(s.f2.imag()) << "\n";
    } else {
      JsonWriter w(sink.stream());
      w.begin_object();
      emit_potential_header(w, cfg, "plot-data");
      w.key("ks").begin_array();
      for (size_t i = 0; i < cfg.ks.size(); ++i) {
        w.begin_object();
        w.kv("k", cfg.ks[i]);
        w.key("samples").begin_array();
        for (const auto& s : rows[i]) {
          w.begin_array();
          w.value(s.lambda);
          w.value(s.f1.real());
          w.value(s.f1.imag());
          w.value(s.f2.real());
          w.value(s.f2.imag());
          w.end_array();
        }
        w.end_array();
        w.end_object();
      }
      w.end_array();
      w.end_object();
      sink.stream() << "\n";
    }
    return 0;
  }

  std::vector<KSpectrum> per_k(cfg.ks.size());
  parallel_for(static_cast<int>(cfg.ks.size()), [&](int i) {
    per_k[i] = bands_for_k(q, TubeParams(cfg.N, cfg.ks[i]), cfg.range_lo,
                           cfg.range_hi, cfg.grid);
  });
  auto flats = flat_bands(q, cfg.range_lo, cfg.range_hi);
  std::vector<std::pair<double, double>> ivs;
  for (const auto& ks : per_k)
    for (const auto& b : ks.bands) ivs.emplace_back(b.lo, b.hi);
  auto ac_union = merge_intervals(std::move(ivs));

  if (fmt == "csv") {
    sink.stream() << "kind,k,branch,lo,hi,lo_type,hi_type,n,mu\n";
    for (const auto& ks : per_k)
      for (const auto& b : ks.bands)
        sink.stream() << "band," << ks.k << "," << b.branch << ","
                      << fmt17(b.lo) << "," << fmt17(b.hi) << ","
                      << edge_type_name(b.lo_type) << ","
                      << edge_type_name(b.hi_type) << ",,\n";
    for (const auto& f : flats)
      sink.stream() << "flat,,,,,,," << f.n << "," << fmt17(f.mu) << "\n";
  } else {
    JsonWriter w(sink.stream());
    w.begin_object();
    emit_potential_header(w, cfg, "bands");
    w.key("range").begin_array().value(cfg.range_lo).value(cfg.range_hi)
        .end_array();
    w.kv("grid", cfg.grid);
    w.key("ks").begin_array();
    for (const auto& ks : per_k) {
      w.begin_object();
      w.kv("k", ks.k);
      w.kv("degenerate", ks.degenerate);
      w.key("bands").begin_array();
      for (const auto& b : ks.bands) {
        w.begin_object();
        w.kv("lo", b.lo);
        w.kv("hi", b.hi);
        w.kv("branch", b.branch);
        w.kv("lo_type", edge_type_name(b.lo_type));
        w.kv("hi_type", edge_type_name(b.hi_type));
        w.end_object();
      }
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.key("flat_bands").begin_array();
    for (const auto& f : flats) {
      w.begin_object();
      w.kv("n", f.n);
      w.kv("mu", f.mu);
      w.end_object();
    }
    w.end_array();
    w.key("ac_union").begin_array();
    for (const auto& iv : ac_union)
      w.begin_array().value(iv.first).value(iv.second).end_array();
    w.end_array();
    w.end_object();
    sink.stream() << "\n";
  }
  return 0;
}

const char* kind_name(Resonance::Kind k) {
  switch (k) {
    case Resonance::Kind::real_simple: return "real";
    case Resonance::Kind::real_double: return "real-double";
    case Resonance::Kind::complex_point: return "complex-pair";
  }
  return "?";
}

int cmd_resonances(const RunConfig& cfg, std::ostream& fallback) {
  auto q = Potential::parse(cfg.potential);
  if (!cfg.rect) throw parse_error("resonances needs --rect re0:re1:im0:im1");
  OutputSink sink(cfg.out, fallback);
  std::string fmt = resolve_format(cfg);

  struct KResult {
    int k;
    std::vector<Resonance> zeros;
  };
  std::vector<KResult> results(cfg.ks.size());
  parallel_for(static_cast<int>(cfg.ks.size()), [&](int i) {
    TubeParams p(cfg.N, cfg.ks[i]);
    results[i] = {cfg.ks[i], complex_resonances(q, p, *cfg.rect)};
  });

  if (fmt == "csv") {
    sink.stream() << "k,re,im,kind,multiplicity,residual\n";
    for (const auto& r : results)
      for (const auto& z : r.zeros)
        sink.stream() << r.k << "," << fmt17(z.lambda.real()) << ","
                      << fmt17(z.lambda.imag()) << "," << kind_name(z.kind)
                      << "," << z.multiplicity << "," << fmt17(z.residual)
                      << "\n";
    return 0;
  }

  JsonWriter w(sink.stream());
  w.begin_object();
  emit_potential_header(w, cfg, "resonances");
  w.key("rect").begin_array().value(cfg.rect->re_lo).value(cfg.rect->re_hi)
      .value(cfg.rect->im_lo).value(cfg.rect->im_hi).end_array();
  w.key("ks").begin_array();
  for (const auto& r : results) {
    w.begin_object();
    w.kv("k", r.k);
    int count = 0;
    for (const auto& z : r.zeros) count += z.multiplicity;
    w.kv("count", count);
    w.key("resonances").begin_array();
    for (const auto& z : r.zeros) {
      w.begin_object();
      w.kv("re", z.lambda.real());
      w.kv("im", z.lambda.imag());
      w.kv("kind", kind_name(z.kind));
      w.kv("multiplicity", z.multiplicity);
      w.kv("residual", z.residual);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  if (cfg.has_family && cfg.fam_n >= 1) {
    TubeParams p(cfg.fam_N, cfg.fam_k);
    auto [minus, plus] = delta_asymptotics(p, cfg.fam_n, cfg.fam_eps);
    w.key("asymptotic").begin_object();
    w.kv("n", cfg.fam_n);
    w.kv("eps", cfg.fam_eps);
    w.kv("v", cfg.fam_v);
    w.key("pair").begin_array();
    w.begin_array().value(minus.real()).value(minus.imag()).end_array();
    w.begin_array().value(plus.real()).value(plus.imag()).end_array();
    w.end_array();
    w.end_object();
  }
  w.end_object();
  sink.stream() << "\n";
  return 0;
}

int cmd_flatbands(const RunConfig& cfg, std::ostream& fallback) {
  auto q = Potential::parse(cfg.potential);
  if (cfg.n_dirichlet < 1) throw parse_error("n-dirichlet must be >= 1");
  OutputSink sink(cfg.out, fallback);
  std::string fmt = resolve_format(cfg);

  // enough Dirichlet eigenvalues: they sit near (πn)² for large n
  double guess = std::max(50.0, 2.0 * M_PI * M_PI * cfg.n_dirichlet *
                                    cfg.n_dirichlet) +
                 10.0 * q.density_bound() + 10.0 * q.total_coupling();
  std::vector<double> mus;
  for (int tries = 0; tries < 4; ++tries) {
    mus = dirichlet_eigenvalues(q, guess);
    if (static_cast<int>(mus.size()) >= cfg.n_dirichlet) break;
    guess *= 2.0;
  }
  if (static_cast<int>(mus.size()) < cfg.n_dirichlet)
    throw numerical_error("could not bracket the requested Dirichlet count");
  mus.resize(cfg.n_dirichlet);

  if (fmt == "csv") {
    sink.stream() << "k,n,mu,case,kirchhoff_residual,vertex_residual\n";
    for (int k : cfg.ks) {
      TubeParams p(cfg.N, k);
      for (size_t i = 0; i < mus.size(); ++i) {
        auto [psi1, psi2] = build_psi(q, mus[i], p);
        double kr = std::max(kirchhoff_residual(psi1.coeffs, q, mus[i], p),
                             kirchhoff_residual(psi2.coeffs, q, mus[i], p));
        double vr = std::max(vertex_value_residual(psi1.coeffs, q, mus[i]),
                             vertex_value_residual(psi2.coeffs, q, mus[i]));
        sink.stream() << k << "," << i + 1 << "," << fmt17(mus[i]) << ","
                      << (psi1.case_b ? "b" : "a") << "," << fmt17(kr) << ","
                      << fmt17(vr) << "\n";
      }
    }
    return 0;
  }

  JsonWriter w(sink.stream());
  w.begin_object();
  emit_potential_header(w, cfg, "flatbands");
  w.key("ks").begin_array();
  for (int k : cfg.ks) {
    TubeParams p(cfg.N, k);
    w.begin_object();
    w.kv("k", k);
    w.key("eigenfunctions").begin_array();
    for (size_t i = 0; i < mus.size(); ++i) {
      auto [psi1, psi2] = build_psi(q, mus[i], p);
      w.begin_object();
      w.kv("n", static_cast<int>(i) + 1);
      w.kv("mu", mus[i]);
      w.kv("case", psi1.case_b ? "b" : "a");
      w.key("kappa1").begin_array().value(psi1.kappa1.real())
          .value(psi1.kappa1.imag()).end_array();
      w.key("kappa2").begin_array().value(psi1.kappa2.real())
          .value(psi1.kappa2.imag()).end_array();
      w.key("psi").begin_array();
      for (const auto* psi : {&psi1, &psi2}) {
        w.begin_object();
        w.kv("nu", psi == &psi1 ? 1 : 2);
        w.kv("kirchhoff_residual",
             kirchhoff_residual(psi->coeffs, q, mus[i], p));
        w.kv("vertex_residual", vertex_value_residual(psi->coeffs, q, mus[i]));
        w.key("coeffs").begin_array();
        for (const auto& [cell, rowv] : psi->coeffs) {
          w.begin_object();
          w.kv("cell", cell);
          w.key("values").begin_array();
          for (const auto& v : rowv)
            w.begin_array().value(v.real()).value(v.imag()).end_array();
          w.end_array();
          w.end_object();
        }
        w.end_array();
        w.end_object();
      }
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  sink.stream() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& fallback) {
  auto q = Potential::parse(cfg.potential);
  if (!cfg.lambda) throw parse_error("verify needs --lambda <real>");
  OutputSink sink(cfg.out, fallback);
  std::string fmt = resolve_format(cfg);

  auto h = fundamental_solutions(q, *cfg.lambda);
  double wr = wronskian_residual(h);
  std::vector<IdentityReport> reports(cfg.ks.size());
  parallel_for(static_cast<int>(cfg.ks.size()), [&](int i) {
    reports[i] = verify_identities(h, TubeParams(cfg.N, cfg.ks[i]));
  });

  if (fmt == "csv") {
    sink.stream() << "k,det,trace0,trace_k,trace0_sq,trace_k_sq,symplectic,"
                     "oracle,wronskian\n";
    for (size_t i = 0; i < cfg.ks.size(); ++i) {
      const auto& r = reports[i];
      sink.stream() << cfg.ks[i] << "," << fmt17(r.det) << ","
                    << fmt17(r.trace0) << "," << fmt17(r.trace_k) << ","
                    << fmt17(r.trace0_sq) << "," << fmt17(r.trace_k_sq) << ","
                    << fmt17(r.symplectic) << "," << fmt17(r.oracle) << ","
                    << fmt17(wr) << "\n";
    }
    return 0;
  }

  JsonWriter w(sink.stream());
  w.begin_object();
  emit_potential_header(w, cfg, "verify");
  w.kv("lambda", *cfg.lambda);
  w.kv("wronskian", wr);
  w.key("reports").begin_array();
  for (size_t i = 0; i < cfg.ks.size(); ++i) {
    const auto& r = reports[i];
    w.begin_object();
    w.kv("k", cfg.ks[i]);
    w.kv("det", r.det);
    w.kv("trace0", r.trace0);
    w.kv("trace_k", r.trace_k);
    w.kv("trace0_sq", r.trace0_sq);
    w.kv("trace_k_sq", r.trace_k_sq);
    w.kv("symplectic", r.symplectic);
    w.kv("oracle", r.oracle);
    w.kv("max", r.max());
    w.end_object();
  }
  w.end_array();
  w.end_object();
  sink.stream() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"spectral data of Schrödinger operators on armchair nanotube "
               "graphs: bands, flat bands, resonances, identity checks"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path, range_str, rect_str;
  std::vector<std::string> family_tokens;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags win)");
    sub->add_option("--potential", flags.potential,
                    "potential spec ('zero' | 'poly [a,b] c0 c1 ..' | "
                    "'delta g=.. a=..'; ';' separates directives)");
    sub->add_option("--N", flags.N, "hexagons around the circumference");
    sub->add_option("--k", flags.ks, "fiber indices (default: all)");
    sub->add_option("--out", flags.out, "output path, '-' for stdout");
    sub->add_option("--format", flags.format, "json|csv");
    return sub;
  };

  auto* bands = add_common(app.add_subcommand(
      "bands", "absolutely continuous bands and flat bands"));
  bands->add_option("--range", range_str, "λ range a:b");
  bands->add_option("--grid", flags.grid, "scan grid size (>= 16)");
  bands->add_flag("--plot-data", flags.plot_data,
                  "emit (λ, F_k1, F_k2) samples instead of bands");
  bands->add_option("--plot-points", flags.plot_points,
                    "sample count for --plot-data");

  auto* resonances = add_common(app.add_subcommand(
      "resonances", "zeros of ρ_k in a complex rectangle"));
  resonances->add_option("--rect", rect_str, "rectangle re0:re1:im0:im1");
  resonances->add_option("--delta-family", family_tokens,
                         "v=.. eps=.. k=.. N=.. [n=..] delta potential family")
      ->expected(-1);

  auto* flatbands = add_common(app.add_subcommand(
      "flatbands", "flat-band eigenfunctions at Dirichlet eigenvalues"));
  flatbands->add_option("--n-dirichlet", flags.n_dirichlet,
                        "number of Dirichlet eigenvalues");

  double lambda_flag = 0.0;
  auto* verify = add_common(app.add_subcommand(
      "verify", "monodromy identity residual report"));
  verify->add_option("--lambda", lambda_flag, "spectral parameter λ");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    // flags override config values
    auto* sub = app.get_subcommands().front();
    if (sub->count("--potential")) cfg.potential = flags.potential;
    if (sub->count("--N")) cfg.N = flags.N;
    if (sub->count("--k")) cfg.ks = flags.ks;
    if (sub->count("--out")) cfg.out = flags.out;
    if (sub->count("--format")) cfg.format = flags.format;
    if (sub == bands) {
      if (sub->count("--range")) parse_range(range_str, cfg);
      if (sub->count("--grid")) cfg.grid = flags.grid;
      if (sub->count("--plot-data")) cfg.plot_data = flags.plot_data;
      if (sub->count("--plot-points")) cfg.plot_points = flags.plot_points;
    }
    if (sub == resonances) {
      if (sub->count("--rect")) cfg.rect = parse_rect(rect_str);
      if (sub->count("--delta-family")) parse_family_tokens(family_tokens, cfg);
    }
    if (sub == flatbands && sub->count("--n-dirichlet"))
      cfg.n_dirichlet = flags.n_dirichlet;
    if (sub == verify && sub->count("--lambda")) cfg.lambda = lambda_flag;

    finalize_common(cfg);

    if (sub == bands) return cmd_bands(cfg, out);
    if (sub == resonances) return cmd_resonances(cfg, out);
    if (sub == flatbands) return cmd_flatbands(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const parse_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace armchair::cli
