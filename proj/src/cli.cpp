#include "speclab/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "speclab/acceptance.hpp"
#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"
#include "speclab/io.hpp"

namespace speclab::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutEnv = "SPECLAB_OUT_DIR";

struct Globals {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
};

Json load_config(const std::string& path) {
  if (path.empty()) throw InvalidConfig("--config is required");
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config '" + path + "'");
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InvalidConfig("config '" + path + "' is not a JSON object");
  return j;
}

fs::path output_dir(const Globals& g) {
  fs::path dir = ".";
  if (const char* env = std::getenv(kOutEnv); env && *env) dir = env;
  if (!g.out_dir.empty()) dir = g.out_dir;
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidConfig("cannot write '" + path.string() + "'");
  out << content;
}

double number_or(const Json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_number()) throw InvalidConfig(std::string("config field '") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

double mesh_h_of(const Json& cfg) {
  const double h = number_or(cfg, "mesh_h", 0.02);
  if (!(h > 0.0 && h <= 0.2)) throw InvalidConfig("mesh_h must lie in (0, 0.2]");
  return h;
}

Forcing forcing_of(const Json& cfg) {
  return cfg.contains("f") ? forcing_from_json(cfg.at("f")) : forcing_from_json(Json("const_1"));
}

const Json& require(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw InvalidConfig(std::string("config is missing '") + key + "'");
  return cfg.at(key);
}

// ---------------------------------------------------------------- report

int cmd_report(const Globals& g) {
  const Json cfg = load_config(g.config_path);
  const StarDomain domain = domain_from_json(require(cfg, "domain"));
  const Forcing f = forcing_of(cfg);
  ResolventOptions opts;
  opts.mesh_h = mesh_h_of(cfg);
  const StabilityReport r = stability_report(domain, f.f, opts);
  Json out = to_json(r);
  out["forcing"] = f.name;
  out["mesh_h"] = opts.mesh_h;
  out["domain"] = domain_to_json(domain);
  const fs::path path = output_dir(g) / cfg.value("output", std::string("report.json"));
  write_file(path, out.dump(2) + "\n");
  std::cout << "wrote " << path.string() << "\n";
  return ok;
}

// ----------------------------------------------------------------- sweep

struct SweepPlan {
  std::vector<std::string> columns;
  std::size_t size = 0;
  std::function<std::vector<double>(std::size_t)> row;
};

std::vector<double> values_of(const Json& family) {
  const Json& v = require(family, "values");
  if (!v.is_array()) throw InvalidConfig("family.values must be an array");
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) throw InvalidConfig("family.values must hold numbers");
    out.push_back(x.get<double>());
  }
  if (out.empty()) throw InvalidConfig("sweep grid is empty");
  return out;
}

SweepPlan domain_plan(const std::vector<double>& values, std::function<StarDomain(double)> make,
                      std::function<double(double)> closed, const Forcing& f, double h) {
  SweepPlan p;
  p.columns = {"param", "volume", "torsion", "sv_deficit", "closed_sv_deficit", "lambda1",
               "fk_deficit", "beta_sq", "resolvent_lb", "asymmetry"};
  p.size = values.size();
  p.row = [=](std::size_t i) {
    const StarDomain d = make(values[i]);
    ResolventOptions opts;
    opts.mesh_h = h;
    const StabilityReport r = stability_report(d, f.f, opts);
    return std::vector<double>{values[i],  r.volume,     r.torsion, r.sv_deficit,
                               closed ? closed(values[i]) : std::nan(""),
                               r.lambda1, r.fk_deficit, r.beta_sq, r.resolvent_lb, r.asymmetry};
  };
  return p;
}

SweepPlan make_plan(const Json& cfg) {
  const Json& family = require(cfg, "family");
  if (!family.is_object() || !family.contains("kind") || !family.at("kind").is_string())
    throw InvalidConfig("family must be an object with a string 'kind'");
  const std::string kind = family.at("kind").get<std::string>();
  const double h = mesh_h_of(cfg);

  if (kind == "unit_ellipse") {
    return domain_plan(values_of(family), [](double e) { return StarDomain::unit_ellipse(e); },
                       [](double e) { return closed_forms::ellipse_torsion(e).deficit; }, forcing_of(cfg), h);
  }
  if (kind == "perturbed_disk") {
    const int k = static_cast<int>(number_or(family, "k", 3));
    if (k < 1) throw InvalidConfig("family.k must be positive");
    return domain_plan(values_of(family), [k](double a) { return StarDomain::perturbed_disk(k, a); },
                       nullptr, forcing_of(cfg), h);
  }
  if (kind == "satellites_closed") {
    const int n = static_cast<int>(number_or(family, "n", 3));
    const double pw = number_or(family, "p", 1.0);
    const std::vector<double> values = values_of(family);
    SweepPlan p;
    p.columns = {"r", "deficit", "beta_sq", "core_radius", "amplitude", "beta_sq_over_deficit"};
    p.size = values.size();
    p.row = [=](std::size_t i) {
      const auto s = closed_forms::satellite_example(n, values[i], pw);
      return std::vector<double>{values[i], s.deficit, s.beta_sq, s.core_radius, s.amplitude,
                                 s.beta_sq / s.deficit};
    };
    return p;
  }
  if (kind == "nearly_spherical") {
    const int count = static_cast<int>(number_or(family, "count", 20));
    if (count <= 0) throw InvalidConfig("sweep grid is empty");
    const auto seed = static_cast<std::uint64_t>(number_or(family, "seed", 1));
    const double max_c1 = number_or(family, "max_c1", 0.05);
    const int lo = static_cast<int>(number_or(family, "min_mode", 2));
    const int hi = static_cast<int>(number_or(family, "max_mode", 6));
    if (lo < 2 || hi < lo) throw InvalidConfig("family modes must satisfy 2 <= min_mode <= max_mode");
    // Draw every sample up front so rows do not depend on scheduling.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), size(0.2 * max_c1, 0.9 * max_c1);
    std::vector<BoundaryFunction> phis;
    for (int s = 0; s < count; ++s) {
      BoundaryFunction phi;
      for (int k = lo; k <= hi; ++k) {
        phi.set_cos(k, coef(rng));
        phi.set_sin(k, coef(rng));
      }
      phi *= size(rng) / phi.c1_norm();
      phis.push_back(normalize_nearly_spherical(phi).phi);
    }
    SweepPlan p;
    p.columns = {"sample", "c1_norm", "h_half_norm_sq", "deficit", "bound", "slack", "ratio", "holds"};
    p.size = phis.size();
    p.row = [=](std::size_t i) {
      const GapCheck g = check_spectral_gap(phis[i], h);
      return std::vector<double>{static_cast<double>(i), phis[i].c1_norm(), h_half_norm_sq(phis[i]),
                                 g.deficit, g.bound, g.slack, g.ratio, g.holds ? 1.0 : 0.0};
    };
    return p;
  }
  if (kind == "transfer") {
    const int j = static_cast<int>(number_or(family, "j", 1));
    const int k_max = static_cast<int>(number_or(family, "k_max", 20));
    const std::vector<double> values = values_of(family);
    SweepPlan p;
    p.columns = {"eps", "lambda_ball", "rel_residual", "tail", "b_j_sq", "distance_j", "sv_deficit"};
    p.size = values.size();
    p.row = [=](std::size_t i) {
      const DomainSpectrum s = domain_spectrum(StarDomain::unit_ellipse(values[i]), k_max, h);
      const TransferData t = compute_transfer(s, j, k_max);
      double distance = std::nan(""), deficit = std::nan("");
      if (closed_forms::disk_eigenpair(j).multiplicity == 1) {
        const SimpleMatch m = match_simple(s, j);
        distance = m.distance;
        deficit = m.deficit;
      }
      return std::vector<double>{values[i], t.lambda_ball, t.residual / t.lambda_ball, t.tail,
                                 t.b_coeffs[j - 1] * t.b_coeffs[j - 1], distance, deficit};
    };
    return p;
  }
  throw InvalidConfig("unknown family kind '" + kind + "'");
}

std::string csv_escape(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

int cmd_sweep(const Globals& g) {
  const Json cfg = load_config(g.config_path);
  const SweepPlan plan = make_plan(cfg);
  if (plan.size == 0) throw InvalidConfig("sweep grid is empty");
  if (g.jobs < 1) throw InvalidConfig("--jobs must be at least 1");

  std::vector<std::string> lines(plan.size);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < plan.size; i = next++) {
      std::ostringstream row;
      row << i;
      try {
        for (double v : plan.row(i)) row << ',' << (std::isnan(v) ? std::string() : format_number(v));
        row << ",ok";
      } catch (const Error& e) {
        row.str("");
        row << i;
        for (std::size_t c = 0; c < plan.columns.size(); ++c) row << ',';
        row << ',' << csv_escape(e.what());
      }
      lines[i] = row.str();
    }
  };
  std::vector<std::jthread> pool;
  const int n = std::min<int>(g.jobs, static_cast<int>(plan.size));
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::ostringstream csv;
  csv << "index";
  for (const std::string& c : plan.columns) csv << ',' << c;
  csv << ",status\n";
  for (const std::string& l : lines) csv << l << '\n';
  const fs::path path = output_dir(g) / cfg.value("output", std::string("sweep.csv"));
  write_file(path, csv.str());
  std::cout << "wrote " << path.string() << " (" << plan.size << " rows)\n";
  return ok;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Globals& g, std::string suite) {
  Json cfg = Json::object();
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  if (suite.empty()) {
    if (!cfg.contains("suite") || !cfg.at("suite").is_string())
      throw InvalidConfig("verify needs a suite name");
    suite = cfg.at("suite").get<std::string>();
  }
  acceptance::suite_criteria(suite);  // validates the name before any work
  std::vector<acceptance::CriterionResult> results;
  for (const std::string& id : acceptance::suite_criteria(suite)) {
    results.push_back(acceptance::run_criterion(id));
    std::cout << acceptance::format_line(results.back()) << std::endl;
  }
  const Json report = acceptance::to_json(results, suite);
  const fs::path path = output_dir(g) / cfg.value("output", "verify_" + suite + ".json");
  write_file(path, report.dump(2) + "\n");
  if (!report.at("passed").get<bool>()) {
    std::cerr << "failing checks:";
    for (const auto& r : results)
      if (!r.passed) std::cerr << ' ' << r.id;
    std::cerr << "\n";
    return verification_failed;
  }
  return ok;
}

// -------------------------------------------------------------- optimize

int cmd_optimize(const Globals& g) {
  const Json cfg = load_config(g.config_path);
  const StarDomain initial = domain_from_json(require(cfg, "domain"));
  const Forcing f = forcing_of(cfg);
  OptimizeOptions opts;
  opts.shape.resolvent.mesh_h = mesh_h_of(cfg);
  opts.max_iters = static_cast<int>(number_or(cfg, "max_iters", opts.max_iters));
  opts.fourier_order = static_cast<int>(number_or(cfg, "fourier_order", opts.fourier_order));
  if (opts.max_iters < 0 || opts.fourier_order < 2) throw InvalidConfig("invalid max_iters or fourier_order");
  PenaltyParams params;
  if (cfg.contains("params")) {
    const Json& p = cfg.at("params");
    if (!p.is_object()) throw InvalidConfig("params must be an object");
    params.tau = number_or(p, "tau", params.tau);
    params.eta = number_or(p, "eta", params.eta);
    params.a = p.contains("a") ? number_or(p, "a", params.a) : beta_sq(initial, f.f, opts.shape.resolvent);
  } else {
    params.a = beta_sq(initial, f.f, opts.shape.resolvent);
  }
  if (params.a <= 0.0) params.a = PenaltyParams{}.a;
  const OptimizeResult res = minimize_energy(initial, f.f, params, opts);

  const fs::path dir = output_dir(g);
  write_file(dir / "final_domain.json", domain_to_json(res.domain).dump(2) + "\n");
  std::ostringstream trace, curves;
  write_trace_csv(trace, res.trace);
  write_boundary_polylines(curves, res.domain.center(), res.history);
  write_file(dir / "trace.csv", trace.str());
  write_file(dir / "boundaries.csv", curves.str());
  std::cout << "moves " << res.moves << ", stop: " << res.stop_reason << ", wrote "
            << (dir / "final_domain.json").string() << ", trace.csv, boundaries.csv\n";
  return ok;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Dirichlet spectral stability laboratory"};
  app.require_subcommand(1);
  Globals g;
  std::string suite;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", g.config_path, "JSON config file");
    sub->add_option("--out", g.out_dir, std::string("output directory (default $") + kOutEnv + " or .)");
    sub->add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* report = app.add_subcommand("report", "stability report of one domain");
  CLI::App* sweep = app.add_subcommand("sweep", "functionals over a parameter family, as CSV");
  CLI::App* verify = app.add_subcommand("verify", "run an acceptance suite");
  CLI::App* optimize = app.add_subcommand("optimize", "minimize the penalized torsion energy");
  for (CLI::App* sub : {report, sweep, verify, optimize}) add_common(sub);
  verify->add_option("suite", suite, "oracle, derivatives, gap, transfer, examples or optimizer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (report->parsed()) return cmd_report(g);
    if (sweep->parsed()) return cmd_sweep(g);
    if (verify->parsed()) return cmd_verify(g, suite);
    return cmd_optimize(g);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return solver_error;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  }
}

}  // namespace speclab::cli
