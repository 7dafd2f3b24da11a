#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "dtfe/analytic.hpp"
#include "dtfe/estimators.hpp"
#include "dtfe/io.hpp"
#include "dtfe/montecarlo.hpp"
#include "dtfe/pointprocess.hpp"
#include "dtfe/quadrature.hpp"
#include "dtfe/verify.hpp"

// Exit codes: 0 success, 1 verification failure, 2 usage or configuration
// error, 3 runtime failure (io, degenerate input, quadrature).

namespace {

using dtfe::IntensityFunction;
using dtfe::Point;
using dtfe::PointPattern;
using dtfe::Window;

Window window_from(const std::vector<double>& bounds) {
  if (bounds.size() == 2) return Window::interval(bounds[0], bounds[1]);
  if (bounds.size() == 4)
    return Window::rect(bounds[0], bounds[1], bounds[2], bounds[3]);
  throw std::invalid_argument("--window takes 2 (interval) or 4 (rectangle) "
                              "numbers");
}

Point point_from(int dim, const std::vector<double>& coords) {
  if (coords.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("expected one coordinate per dimension");
  Point p{coords[0], 0.0};
  if (dim == 2) p[1] = coords[1];
  return p;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PointPattern load_pattern(const std::string& path) {
  const std::string text = read_all(path);
  std::istringstream in(text);
  return dtfe::read_pattern_csv(in);
}

PointPattern sample_pattern(const IntensityFunction& f, double bound,
                            const Window& w, dtfe::Rng& rng) {
  if (f.is_constant())
    return dtfe::sample_homogeneous_poisson(f.constant_rate(), w, rng);
  const double b = bound > 0.0 ? bound : f.upper_bound(w);
  if (f.lower_bound(w) < 0.0)
    throw dtfe::InvalidRate("intensity is negative on the window");
  return dtfe::sample_inhomogeneous_poisson(f, b, w, rng);
}

int cmd_simulate(const std::string& intensity, double bound,
                 const std::vector<double>& window, std::uint64_t seed,
                 std::uint64_t stream, const std::string& out) {
  const Window w = window_from(window);
  const IntensityFunction f = IntensityFunction::parse(intensity);
  dtfe::Rng rng(seed, stream);
  const PointPattern pat = sample_pattern(f, bound, w, rng);
  OutputFile file(out);
  dtfe::write_pattern_csv(file.stream(), pat);
  return 0;
}

int cmd_tessellate(const std::string& in, const std::string& out) {
  const PointPattern pat = load_pattern(in);
  const dtfe::Tessellation tess = dtfe::build_delaunay(pat);
  OutputFile file(out);
  file.stream() << dtfe::tessellation_json(tess).dump(2) << "\n";
  return 0;
}

void write_double_csv(std::ostream& out, double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  out << s.str();
}

int cmd_estimate(const std::string& in, const std::vector<double>& window,
                 int grid, const std::vector<double>& at, double bandwidth,
                 const std::string& out) {
  const Window w = window_from(window);
  const PointPattern pat = load_pattern(in);
  if (pat.dim != w.dim)
    throw std::invalid_argument("pattern and window dimensions differ");
  const dtfe::IntensityEstimate est = dtfe::dtfe_field(pat, w);
  OutputFile file(out);
  std::ostream& os = file.stream();

  if (!at.empty()) {
    const Point x0 = point_from(w.dim, at);
    nlohmann::ordered_json doc;
    doc["x0"] = w.dim == 1 ? nlohmann::ordered_json::array({x0[0]})
                           : nlohmann::ordered_json::array({x0[0], x0[1]});
    doc["dtfe"] = dtfe::dtfe_evaluate(est, x0);
    doc["berman_diggle"] = dtfe::berman_diggle(pat, w, x0, bandwidth);
    doc["kernel_k"] = dtfe::kernel_k(pat, w, x0, bandwidth);
    os << doc.dump(2) << "\n";
    return 0;
  }
  if (grid > 0) {
    os << (w.dim == 1 ? "x,dtfe,bd,kernel_k" : "x,y,dtfe,bd,kernel_k")
       << "\r\n";
    const auto cell_centre = [&](int axis, int i) {
      return w.lo[axis] +
             (i + 0.5) * (w.hi[axis] - w.lo[axis]) / static_cast<double>(grid);
    };
    const int rows = grid, cols = w.dim == 2 ? grid : 1;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        Point x0{cell_centre(0, i), 0.0};
        if (w.dim == 2) x0[1] = cell_centre(1, j);
        write_double_csv(os, x0[0]);
        if (w.dim == 2) {
          os << ',';
          write_double_csv(os, x0[1]);
        }
        os << ',';
        write_double_csv(os, dtfe::dtfe_evaluate(est, x0));
        os << ',';
        write_double_csv(os, dtfe::berman_diggle(pat, w, x0, bandwidth));
        os << ',';
        write_double_csv(os, dtfe::kernel_k(pat, w, x0, bandwidth));
        os << "\r\n";
      }
    }
    return 0;
  }
  dtfe::write_field_csv(os, est);
  return 0;
}

int cmd_analytic(const std::string& intensity,
                 const std::vector<double>& window,
                 const std::vector<double>& x0v, double bandwidth,
                 const std::string& out) {
  const Window w = window_from(window);
  const IntensityFunction f = IntensityFunction::parse(intensity);
  const Point x0 = point_from(w.dim, x0v);
  nlohmann::ordered_json doc;
  doc["window"] = w.dim == 1
                      ? nlohmann::ordered_json::array({w.lo[0], w.hi[0]})
                      : nlohmann::ordered_json::array(
                            {w.lo[0], w.hi[0], w.lo[1], w.hi[1]});
  doc["intensity"] = intensity;
  doc["x0"] = w.dim == 1 ? nlohmann::ordered_json::array({x0[0]})
                         : nlohmann::ordered_json::array({x0[0], x0[1]});
  doc["bandwidth"] = bandwidth;

  if (w.dim == 1) {
    const dtfe::Mean1dTerms m = dtfe::dtfe_mean_1d(f, w, x0[0]);
    doc["dtfe_mean"] = {{"interior", m.interior},
                        {"empty_atom", m.empty_atom},
                        {"left_border", m.left_border},
                        {"right_border", m.right_border},
                        {"total", m.total()}};
    try {
      const dtfe::SecondMoment1dTerms t =
          dtfe::dtfe_second_moment_1d(f, w, x0[0]);
      doc["dtfe_second_moment"] = {{"interior", t.interior},
                                   {"empty_atom", t.empty_atom},
                                   {"left_border", t.left_border},
                                   {"right_border", t.right_border},
                                   {"cross", t.cross},
                                   {"total", t.total()}};
      doc["dtfe_variance"] = t.total() - m.total() * m.total();
    } catch (const dtfe::QuadratureFailure&) {
      doc["dtfe_second_moment"] = nullptr;
      doc["dtfe_variance"] = nullptr;
      doc["note"] =
          "second moment diverges at the window boundary; no finite value";
    }
    doc["excess_variance_limit"] = dtfe::excess_variance_limit_1d();
    if (f.is_constant() && f.constant_rate() > 0.0)
      doc["efficiency_verdict"] = dtfe::interior_efficiency_verdict(
          1, f.constant_rate(), bandwidth, dtfe::excess_variance_limit_1d());
  }
  const dtfe::KernelMoments bd = dtfe::bd_moments_poisson(f, w, x0, bandwidth);
  const dtfe::KernelMoments kk =
      dtfe::kernel_k_moments_poisson(f, w, x0, bandwidth);
  doc["berman_diggle"] = {{"mean", bd.mean}, {"variance", bd.variance}};
  doc["kernel_k"] = {{"mean", kk.mean}, {"variance", kk.variance}};

  OutputFile file(out);
  file.stream() << doc.dump(2) << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out) {
  const nlohmann::json config_doc =
      nlohmann::json::parse(read_all(config_path));
  const dtfe::ExperimentConfig cfg =
      dtfe::parse_experiment_config(config_doc);
  const IntensityFunction f = IntensityFunction::parse(cfg.intensity);

  std::vector<double> v_dtfe(cfg.replicates), v_bd(cfg.replicates),
      v_kk(cfg.replicates);
  dtfe::ExperimentSpec spec{cfg.seed, cfg.replicates, cfg.parallel};
  dtfe::run_replicates(spec, [&](long r, dtfe::Rng& rng) {
    const PointPattern pat = sample_pattern(f, cfg.bound, cfg.window, rng);
    const dtfe::IntensityEstimate est = dtfe::dtfe_field(pat, cfg.window);
    v_dtfe[r] = dtfe::dtfe_evaluate(est, cfg.x0);
    v_bd[r] = dtfe::berman_diggle(pat, cfg.window, cfg.x0, cfg.bandwidth);
    v_kk[r] = dtfe::kernel_k(pat, cfg.window, cfg.x0, cfg.bandwidth);
    return 0.0;
  });

  nlohmann::ordered_json doc;
  doc["schema"] = "dtfe-report/1";
  nlohmann::ordered_json conf;
  conf["dim"] = cfg.dim;
  conf["window"] =
      cfg.dim == 1
          ? nlohmann::ordered_json::array({cfg.window.lo[0], cfg.window.hi[0]})
          : nlohmann::ordered_json::array({cfg.window.lo[0], cfg.window.hi[0],
                                           cfg.window.lo[1],
                                           cfg.window.hi[1]});
  conf["intensity"] = cfg.intensity;
  conf["x0"] = cfg.dim == 1
                   ? nlohmann::ordered_json::array({cfg.x0[0]})
                   : nlohmann::ordered_json::array({cfg.x0[0], cfg.x0[1]});
  conf["bandwidth"] = cfg.bandwidth;
  conf["replicates"] = cfg.replicates;
  conf["seed"] = cfg.seed;
  conf["parallel"] = cfg.parallel;
  doc["config"] = std::move(conf);

  doc["estimates"] = {
      {"dtfe", dtfe::moment_report_json(dtfe::summarize(v_dtfe))},
      {"berman_diggle", dtfe::moment_report_json(dtfe::summarize(v_bd))},
      {"kernel_k", dtfe::moment_report_json(dtfe::summarize(v_kk))}};

  nlohmann::ordered_json analytic;
  if (cfg.dim == 1) {
    analytic["dtfe_mean"] =
        dtfe::dtfe_mean_1d(f, cfg.window, cfg.x0[0]).total();
    try {
      analytic["dtfe_variance"] =
          dtfe::dtfe_variance_1d(f, cfg.window, cfg.x0[0]);
    } catch (const dtfe::QuadratureFailure&) {
      analytic["dtfe_variance"] = nullptr;
    }
  }
  const dtfe::KernelMoments bd =
      dtfe::bd_moments_poisson(f, cfg.window, cfg.x0, cfg.bandwidth);
  const dtfe::KernelMoments kk =
      dtfe::kernel_k_moments_poisson(f, cfg.window, cfg.x0, cfg.bandwidth);
  analytic["berman_diggle"] = {{"mean", bd.mean}, {"variance", bd.variance}};
  analytic["kernel_k"] = {{"mean", kk.mean}, {"variance", kk.variance}};
  doc["analytic"] = std::move(analytic);

  OutputFile file(out);
  file.stream() << doc.dump(2) << "\n";
  return 0;
}

int cmd_verify(std::vector<std::string> suites, bool list) {
  if (list) {
    for (const auto& name : dtfe::verify_suite_names())
      std::cout << name << "\n";
    return 0;
  }
  if (suites.empty()) suites = dtfe::verify_suite_names();
  bool all_passed = true;
  for (const auto& name : suites) {
    const dtfe::SuiteResult result = dtfe::run_verify_suite(name);
    for (const auto& check : result.checks) {
      std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << result.suite
                << " :: " << check.name << " (" << check.detail << ")\n";
      all_passed = all_passed && check.passed;
    }
    std::cout << "suite " << result.suite << ": "
              << (result.passed() ? "pass" : "FAIL") << "\n";
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delaunay tessellation field estimator and ball kernels for "
               "spatial point patterns"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample a Poisson pattern");
  std::string sim_intensity;
  std::vector<double> sim_window;
  double sim_bound = 0.0;
  std::uint64_t sim_seed = 1, sim_stream = 0;
  std::string sim_out = "-";
  sim->add_option("--intensity", sim_intensity,
                  "intensity spec, e.g. constant{5} or affine1d{1,0.5}")
      ->required();
  sim->add_option("--window", sim_window, "window bounds: lo hi [lo hi]")
      ->expected(2, 4)
      ->required();
  sim->add_option("--bound", sim_bound, "thinning bound override");
  sim->add_option("--seed", sim_seed, "seed");
  sim->add_option("--stream", sim_stream, "stream index");
  sim->add_option("--out", sim_out, "output csv path or -");

  // tessellate
  auto* tes = app.add_subcommand("tessellate",
                                 "Delaunay tessellation of a pattern");
  std::string tes_in = "-", tes_out = "-";
  tes->add_option("--in", tes_in, "pattern csv path or -");
  tes->add_option("--out", tes_out, "output json path or -");

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "intensity estimates from a pattern on a window");
  std::string est_in = "-", est_out = "-";
  std::vector<double> est_window, est_at;
  int est_grid = 0;
  double est_bandwidth = 0.5;
  est->add_option("--in", est_in, "pattern csv path or -");
  est->add_option("--window", est_window, "window bounds")
      ->expected(2, 4)
      ->required();
  est->add_option("--grid", est_grid, "evaluate on an n-per-axis grid");
  est->add_option("--at", est_at, "evaluate at one point")->expected(1, 2);
  est->add_option("--bandwidth", est_bandwidth, "ball radius for the "
                                                "comparison estimators");
  est->add_option("--out", est_out, "output path or -");

  // analytic
  auto* ana = app.add_subcommand("analytic",
                                 "moment formulas under a Poisson process");
  std::string ana_intensity, ana_out = "-";
  std::vector<double> ana_window, ana_x0;
  double ana_bandwidth = 0.5;
  ana->add_option("--intensity", ana_intensity, "intensity spec")->required();
  ana->add_option("--window", ana_window, "window bounds")
      ->expected(2, 4)
      ->required();
  ana->add_option("--x0", ana_x0, "evaluation point")
      ->expected(1, 2)
      ->required();
  ana->add_option("--bandwidth", ana_bandwidth, "ball radius");
  ana->add_option("--out", ana_out, "output json path or -");

  // experiment
  auto* exp = app.add_subcommand("experiment",
                                 "replicated simulation versus formulas");
  std::string exp_config, exp_out = "-";
  exp->add_option("--config", exp_config, "experiment config json or -")
      ->required();
  exp->add_option("--out", exp_out, "report json path or -");

  // verify
  auto* ver = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> ver_suites;
  bool ver_list = false;
  ver->add_option("--suite", ver_suites, "suite name (repeatable)");
  ver->add_flag("--list", ver_list, "list suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(sim_intensity, sim_bound, sim_window, sim_seed,
                          sim_stream, sim_out);
    if (tes->parsed()) return cmd_tessellate(tes_in, tes_out);
    if (est->parsed())
      return cmd_estimate(est_in, est_window, est_grid, est_at,
                          est_bandwidth, est_out);
    if (ana->parsed())
      return cmd_analytic(ana_intensity, ana_window, ana_x0, ana_bandwidth,
                          ana_out);
    if (exp->parsed()) return cmd_experiment(exp_config, exp_out);
    if (ver->parsed()) return cmd_verify(ver_suites, ver_list);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
