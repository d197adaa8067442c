#include "experiments.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flowcap/rng.hpp"
#include "flowcap/schemes.hpp"
#include "flowcap/serialize.hpp"
#include "flowcap/universality.hpp"

namespace flowcap::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const char* kKinds[] = {"convergence",    "interpolate", "rank",
                        "counterexample", "approx-relu", "gronwall"};

bool known_kind(const std::string& k) {
  for (const char* s : kKinds)
    if (k == s) return true;
  return false;
}

bool is_stochastic(const std::string& kind) {
  return kind == "rank" || kind == "counterexample" || kind == "gronwall" ||
         kind == "interpolate";
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_digest(const json& config) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(config.dump()));
  return buf;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

VectorField parse_field(const json& spec) {
  return field_from_json(spec.dump());
}

Box parse_box(const json& spec) { return box_from_json(spec.dump()); }

fs::path output_directory(const json& config) {
  if (const char* env = std::getenv("FLOWCAP_OUTPUT_DIR")) return fs::path(env);
  return fs::path(config.value("output", std::string("flowcap_out")));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  out << text;
}

void write_report(const fs::path& dir, const json& config, json report) {
  report["config_digest"] = config_digest(config);
  write_text(dir / "report.json", report.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

int run_convergence(const json& config, const fs::path& dir) {
  const std::string scheme = config.at("scheme").get<std::string>();
  const double tau = config.at("tau").get<double>();
  const Box box = parse_box(config.at("box"));
  std::vector<long> n_values;
  for (const auto& n : config.at("n_values")) n_values.push_back(n.get<long>());

  std::vector<VectorField> fields;
  for (const auto& f : config.at("fields")) fields.push_back(parse_field(f));

  std::function<Eigen::VectorXd(long, const Eigen::VectorXd&)> run;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> reference;
  std::string reference_desc;

  if (scheme == "lie_trotter") {
    std::vector<double> coeff;
    if (config.contains("coefficients"))
      for (const auto& c : config.at("coefficients"))
        coeff.push_back(c.get<double>());
    else
      coeff.assign(fields.size(), 1.0);
    if (coeff.size() != fields.size())
      throw Error("convergence: coefficients/fields length mismatch");
    std::vector<std::pair<double, VectorField>> terms;
    for (std::size_t i = 0; i < fields.size(); ++i)
      terms.emplace_back(coeff[i], fields[i]);
    run = [terms, tau](long n, const Eigen::VectorXd& x) {
      return lie_trotter(terms, tau, n, x);
    };
    // exact flow when the combination is affine; fine RK4 otherwise
    bool all_affine = true;
    for (const auto& f : fields) all_affine &= f.kind() == FieldKind::Affine;
    if (all_affine) {
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(box.dim(), box.dim());
      Eigen::VectorXd b = Eigen::VectorXd::Zero(box.dim());
      for (std::size_t i = 0; i < fields.size(); ++i) {
        A += coeff[i] * fields[i].affine_matrix();
        b += coeff[i] * fields[i].affine_offset();
      }
      reference = [A, b, tau](const Eigen::VectorXd& x) {
        return flow_affine(A, b, tau, x);
      };
      reference_desc = "closed-form affine flow";
    } else {
      const VectorField sum = VectorField::sum(terms);
      reference = [sum, tau](const Eigen::VectorXd& x) {
        return flow_numeric(sum, tau, x, {10000, 1e6});
      };
      reference_desc = "RK4 at 10000 steps per unit time";
    }
  } else if (scheme == "commutator") {
    if (fields.size() != 2) throw Error("commutator scheme needs two fields");
    const VectorField f1 = fields[0], f2 = fields[1];
    run = [f1, f2, tau](long n, const Eigen::VectorXd& x) {
      return commutator_scheme(f1, f2, tau, n, x);
    };
    const bool linear_pair =
        f1.kind() == FieldKind::Affine && f2.kind() == FieldKind::Affine &&
        f1.affine_offset().isZero(0) && f2.affine_offset().isZero(0);
    if (linear_pair) {
      const Eigen::MatrixXd C = f2.affine_matrix() * f1.affine_matrix() -
                                f1.affine_matrix() * f2.affine_matrix();
      reference = [C, tau](const Eigen::VectorXd& x) {
        return flow_affine(C, Eigen::VectorXd::Zero(C.rows()), tau, x);
      };
      reference_desc = "matrix exponential of the bracket";
    } else {
      const auto bracket = [f1, f2](const Eigen::VectorXd& x) {
        return lie_bracket(f1, f2, x);
      };
      reference = [bracket, tau](const Eigen::VectorXd& x) {
        return flow_numeric(bracket, tau, x, {10000, 1e6});
      };
      reference_desc = "RK4 on the bracket field at 10000 steps per unit time";
    }
  } else {
    throw Error("unknown scheme " + scheme);
  }

  std::vector<std::pair<long, double>> runs;
  for (long n : n_values) {
    const auto approx = [&](const Eigen::VectorXd& x) { return run(n, x); };
    runs.emplace_back(n, sup_difference(approx, reference, box));
  }
  const ConvergenceReport report = fit_convergence(scheme, runs, reference_desc);

  std::ostringstream csv;
  csv << "n,dt,error\n";
  for (std::size_t i = 0; i < report.n_values.size(); ++i)
    csv << report.n_values[i] << ","
        << fmt_double(tau / static_cast<double>(report.n_values[i])) << ","
        << fmt_double(report.errors[i]) << "\n";
  write_text(dir / "runs.csv", csv.str());

  json out;
  out["scheme"] = report.scheme_id;
  out["slope"] = report.slope;
  out["slope_stderr"] = report.slope_stderr;
  out["window_begin"] = report.window_begin;
  out["monotone_decreasing"] = report.monotone_decreasing;
  out["reference"] = report.reference;
  out["n_values"] = report.n_values;
  out["errors"] = report.errors;
  write_report(dir, config, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// interpolate
// ---------------------------------------------------------------------------

InterpolationFamily parse_family(const std::string& name) {
  if (name == "ass_relu") return InterpolationFamily::AssRelu;
  if (name == "diag") return InterpolationFamily::Diag;
  if (name == "aff") return InterpolationFamily::Aff;
  throw Error("unknown interpolation family " + name);
}

int run_interpolate(const json& config, const fs::path& dir) {
  const int d = config.at("dim").get<int>();
  const double tol = config.value("tolerance", 1e-6);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> data;
  if (config.contains("pairs")) {
    for (const auto& pr : config.at("pairs")) {
      Eigen::VectorXd x(d), y(d);
      for (int k = 0; k < d; ++k) {
        x[k] = pr.at(0).at(k).get<double>();
        y[k] = pr.at(1).at(k).get<double>();
      }
      data.emplace_back(x, y);
    }
  } else {
    const int count = config.at("count").get<int>();
    const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
    SeededRng rng(seed);
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd x(d), y(d);
      for (int k = 0; k < d; ++k) {
        x[k] = rng.uniform(-2, 2);
        y[k] = rng.uniform(-2, 2);
      }
      data.emplace_back(x, y);
    }
    if (d == 1) {  // keep randomly drawn 1-D data monotone
      std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) {
        return a.first[0] < b.first[0];
      });
      std::vector<double> ys;
      for (const auto& p : data) ys.push_back(p.second[0]);
      std::sort(ys.begin(), ys.end());
      for (std::size_t i = 0; i < data.size(); ++i) data[i].second[0] = ys[i];
    }
  }

  const InterpolationProblem problem(std::move(data), tol);
  const FlowProgram program =
      interpolate(problem, parse_family(config.at("family").get<std::string>()));
  double residual = 0.0;
  for (const auto& [x, y] : problem.pairs)
    residual = std::max(residual, (apply(program, x) - y).norm());

  write_text(dir / "program.json", program_to_json(program, 2) + "\n");
  json out;
  out["residual"] = residual;
  out["legs"] = program.size();
  out["pairs"] = problem.size();
  write_report(dir, config, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

int run_rank(const json& config, const fs::path& dir) {
  const VectorField f = parse_field(config.at("field"));
  const std::string family_name = config.at("family").get<std::string>();
  const SampledFamily family =
      family_name == "aff" ? SampledFamily::Aff : SampledFamily::Diag;
  if (family_name != "aff" && family_name != "diag")
    throw Error("rank: family must be aff or diag");

  Eigen::MatrixXd X;
  if (config.contains("points")) {
    const auto& pts = config.at("points");
    X.resize(pts.size(), f.dim());
    for (std::size_t j = 0; j < pts.size(); ++j)
      for (int k = 0; k < f.dim(); ++k) X(j, k) = pts[j][k].get<double>();
  } else {
    const auto& omega = config.at("omega");
    X = omega_n_configuration(omega.at("N").get<int>(), f.dim(),
                              config.at("seed").get<std::uint64_t>());
  }
  const int dN = static_cast<int>(X.rows()) * f.dim();
  const int samples = config.value("samples", 4 * dN);
  const double threshold = config.value("threshold", 1e-10);
  const auto cert = span_certificate(f, family, X, samples,
                                     config.at("seed").get<std::uint64_t>(),
                                     threshold);

  std::ostringstream csv;
  csv << "sigma\n";
  for (Eigen::Index i = 0; i < cert.singular_values.size(); ++i)
    csv << fmt_double(cert.singular_values[i]) << "\n";
  write_text(dir / "singular_values.csv", csv.str());

  json out;
  out["verdict"] = cert.full_rank ? "FullRank" : "Deficient";
  out["threshold"] = cert.threshold;
  out["samples"] = samples;
  if (!cert.full_rank) {
    std::vector<double> w(cert.witness.data(),
                          cert.witness.data() + cert.witness.size());
    out["witness"] = w;
    std::cout << "verdict: Deficient, witness:";
    for (double v : w) std::cout << " " << v;
    std::cout << "\n";
  } else {
    std::cout << "verdict: FullRank\n";
  }
  write_report(dir, config, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

FlowProgram random_permute_relu_program(int legs, double tau_max,
                                        std::uint64_t seed,
                                        std::uint64_t index) {
  const auto u = [&](std::uint64_t stream, double lo, double hi) {
    return counter_uniform(seed, index * 1000 + stream, 17, lo, hi);
  };
  FlowProgram p(2);
  const auto named = VectorField::named(NamedField::PermuteRelu, 2);
  for (int leg = 0; leg < legs; ++leg) {
    const double tau = u(leg * 10, 0.05, tau_max);
    if (leg % 2 == 0) {
      Eigen::MatrixXd A(2, 2);
      Eigen::VectorXd b(2);
      A << u(leg * 10 + 1, -1, 1), u(leg * 10 + 2, -1, 1),
          u(leg * 10 + 3, -1, 1), u(leg * 10 + 4, -1, 1);
      b << u(leg * 10 + 5, -1, 1), u(leg * 10 + 6, -1, 1);
      p.append(VectorField::affine(A, b), tau);
    } else {
      p.append(named, tau,
               u(leg * 10 + 7, 0, 1) < 0.5 ? LegDirection::Forward
                                           : LegDirection::Backward);
    }
  }
  return p;
}

int run_counterexample(const json& config, const fs::path& dir) {
  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
  const int programs = config.value("programs", 20);
  const int legs = config.value("legs", 6);
  const int base_points = config.value("base_points", 100);
  const double tau_max = config.value("tau_max", 0.3);
  const std::int64_t mc_samples = config.value("mc_samples", 100000);
  const IntegratorConfig cfg{config.value("steps_per_unit", 64), 1e6};

  // determinant along one representative program, tabulated in t
  const FlowProgram rep = random_permute_relu_program(legs, tau_max, seed, 0);
  {
    const double total = rep.total_duration();
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(total * i / 20.0);
    const auto dets =
        jacobian_det_along_flow(rep, Eigen::Vector2d(0.2, -0.3), grid, cfg);
    std::ostringstream csv;
    csv << "t,detJ\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      csv << fmt_double(grid[i]) << "," << fmt_double(dets[i]) << "\n";
    write_text(dir / "detj.csv", csv.str());
  }

  // spread of the determinant over base points, per program
  double worst_spread = 0.0;
  std::ostringstream csv;
  csv << "program,detj_min,detj_max,spread\n";
  for (int pr = 0; pr < programs; ++pr) {
    const FlowProgram p = random_permute_relu_program(legs, tau_max, seed, pr);
    const std::vector<double> grid{p.total_duration()};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < base_points; ++i) {
      Eigen::VectorXd x(2);
      x << counter_uniform(seed, i, 31, -3, 3), counter_uniform(seed, i, 32, -3, 3);
      const double det = jacobian_det_along_flow(p, x, grid, cfg)[0];
      lo = std::min(lo, det);
      hi = std::max(hi, det);
    }
    csv << pr << "," << fmt_double(lo) << "," << fmt_double(hi) << ","
        << fmt_double(hi - lo) << "\n";
    worst_spread = std::max(worst_spread, hi - lo);
  }
  write_text(dir / "spread.csv", csv.str());

  // two-disk volume comparison under the representative program
  Eigen::VectorXd c1(2), c2(2);
  c1 << -2, 0;
  c2 << 2, 0;
  double radius = 1.0;
  if (config.contains("disks")) {
    const auto& disks = config.at("disks");
    for (int k = 0; k < 2; ++k) {
      (k == 0 ? c1 : c2)[0] = disks[k].at("center")[0].get<double>();
      (k == 0 ? c1 : c2)[1] = disks[k].at("center")[1].get<double>();
    }
    radius = disks[0].at("radius").get<double>();
  }
  const auto [v1, v2] = volume_comparison(rep, Region::disk(c1, radius),
                                          Region::disk(c2, radius), mc_samples,
                                          seed, cfg);

  json out;
  out["max_detj_spread"] = worst_spread;
  out["volume_1"] = v1.value;
  out["volume_1_stderr"] = v1.std_error;
  out["volume_2"] = v2.value;
  out["volume_2_stderr"] = v2.std_error;
  out["volume_gap_sigmas"] =
      std::abs(v1.value - v2.value) /
      std::sqrt(v1.std_error * v1.std_error + v2.std_error * v2.std_error);
  write_report(dir, config, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// approx-relu
// ---------------------------------------------------------------------------

int run_approx_relu(const json& config, const fs::path& dir) {
  const json act_spec = config.at("activation");
  // reuse the field parser by wrapping in a 1-D separable descriptor
  json wrap;
  wrap["dim"] = 1;
  wrap["kind"] = "separable";
  wrap["activation"] = act_spec;
  wrap["flags"] = json::array({true});
  const VectorField probe = parse_field(wrap);
  const Activation sigma = probe.activation();
  const Box interval = parse_box(config.at("interval"));
  const int budget = config.at("budget").get<int>();
  const double tol = config.at("tol").get<double>();

  std::ostringstream csv;
  csv << "terms,residual\n";
  double final_residual = std::numeric_limits<double>::infinity();
  for (int terms = 2; terms <= budget; terms *= 2) {
    double residual;
    try {
      residual = relu_from_sums(sigma, interval, terms, tol).residual;
    } catch (const BudgetExceeded& e) {
      residual = e.best_residual;
    }
    csv << terms << "," << fmt_double(residual) << "\n";
    if (terms == budget || terms * 2 > budget) final_residual = residual;
  }
  write_text(dir / "residuals.csv", csv.str());

  json out;
  out["budget"] = budget;
  out["tol"] = tol;
  out["residual"] = final_residual;
  write_report(dir, config, out);
  if (final_residual > tol)
    throw ToleranceNotMet("approx-relu: residual above tol", final_residual);
  return kOk;
}

// ---------------------------------------------------------------------------
// gronwall
// ---------------------------------------------------------------------------

int run_gronwall(const json& config, const fs::path& dir) {
  const double a = config.at("sharpness").get<double>();
  const Box box = parse_box(config.at("box"));
  const double tau = config.value("tau", 1.0);
  const int trials = config.value("trials", 50);
  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();

  const auto surrogate = relu_from_softplus(a, box.dim());
  const auto relu = VectorField::separable(Activation::relu(), box.dim());
  const auto bound = gronwall_bound(relu, box, tau, surrogate.sup_error);
  const IntegratorConfig cfg{400, 1e6};

  std::ostringstream csv;
  csv << "trial,measured,bound\n";
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(box.dim());
    for (int k = 0; k < box.dim(); ++k)
      x[k] = counter_uniform(seed, t, k, box.lower[k], box.upper[k]);
    const double measured =
        (flow_relu(+1, tau, x) - flow_numeric(surrogate.field, tau, x, cfg))
            .norm();
    worst = std::max(worst, measured);
    csv << t << "," << fmt_double(measured) << "," << fmt_double(bound.bound)
        << "\n";
  }
  write_text(dir / "trials.csv", csv.str());

  json out;
  out["delta"] = surrogate.sup_error;
  out["lipschitz"] = bound.lipschitz;
  out["velocity"] = bound.velocity;
  out["inflation_radius"] = bound.inflation_radius;
  out["bound"] = bound.bound;
  out["max_measured"] = worst;
  out["all_within_bound"] = worst <= bound.bound;
  write_report(dir, config, out);
  if (worst > bound.bound)
    throw ToleranceNotMet("gronwall: measured deviation above the bound", worst);
  return kOk;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

json load_config(const std::string& path, std::vector<std::string>& issues) {
  std::ifstream in(path);
  if (!in) {
    issues.push_back("cannot read config file " + path);
    return {};
  }
  try {
    json config;
    in >> config;
    return config;
  } catch (const std::exception& e) {
    issues.push_back(std::string("config is not valid JSON: ") + e.what());
    return {};
  }
}

void validate_loaded(const json& config, std::vector<std::string>& issues) {
  if (!config.is_object()) {
    issues.push_back("config must be a JSON object");
    return;
  }
  const std::string kind = config.value("kind", std::string());
  if (!known_kind(kind)) {
    issues.push_back("unknown or missing experiment kind: '" + kind + "'");
    return;
  }
  if (is_stochastic(kind) && !config.contains("seed") &&
      !(kind == "interpolate" && config.contains("pairs")))
    issues.push_back("field 'seed' is required for stochastic experiment '" +
                     kind + "'");

  const auto need = [&](const char* key) {
    if (!config.contains(key))
      issues.push_back(std::string("missing required field '") + key + "'");
  };

  if (kind == "convergence") {
    need("scheme");
    need("tau");
    need("box");
    need("fields");
    need("n_values");
    if (config.contains("n_values")) {
      std::vector<long> ns;
      for (const auto& n : config.at("n_values")) ns.push_back(n.get<long>());
      std::sort(ns.begin(), ns.end());
      ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
      if (ns.size() < 4)
        issues.push_back("convergence requires >= 4 distinct n-values");
    }
    if (config.contains("fields"))
      for (const auto& f : config.at("fields")) {
        try {
          parse_field(f);
        } catch (const std::exception& e) {
          issues.push_back(std::string("bad field spec: ") + e.what());
        }
      }
  } else if (kind == "interpolate") {
    need("dim");
    need("family");
    if (!config.contains("pairs") && !config.contains("count"))
      issues.push_back("interpolate needs 'pairs' or 'count'");
  } else if (kind == "rank") {
    need("field");
    need("family");
    need("seed");
    if (!config.contains("points") && !config.contains("omega"))
      issues.push_back("rank needs 'points' or 'omega'");
  } else if (kind == "counterexample") {
    need("seed");
  } else if (kind == "approx-relu") {
    need("activation");
    need("interval");
    need("budget");
    need("tol");
  } else if (kind == "gronwall") {
    need("sharpness");
    need("box");
    need("seed");
  }
}

}  // namespace

std::vector<std::string> validate_config(const std::string& path) {
  std::vector<std::string> issues;
  const json config = load_config(path, issues);
  if (issues.empty()) validate_loaded(config, issues);
  return issues;
}

int run_config(const std::string& path) {
  std::vector<std::string> issues = validate_config(path);
  if (!issues.empty()) {
    for (const auto& msg : issues) std::cerr << "config: " << msg << "\n";
    return kConfigError;
  }
  std::vector<std::string> ignored;
  const json config = load_config(path, ignored);
  const fs::path dir = output_directory(config);

  try {
    fs::create_directories(dir);
    const std::string kind = config.at("kind").get<std::string>();
    if (kind == "convergence") return run_convergence(config, dir);
    if (kind == "interpolate") return run_interpolate(config, dir);
    if (kind == "rank") return run_rank(config, dir);
    if (kind == "counterexample") return run_counterexample(config, dir);
    if (kind == "approx-relu") return run_approx_relu(config, dir);
    return run_gronwall(config, dir);
  } catch (const ToleranceNotMet& e) {
    std::cerr << "tolerance: " << e.what() << " (achieved " << e.achieved
              << ")\n";
    return kToleranceError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "tolerance: " << e.what() << " (best " << e.best_residual
              << ")\n";
    return kToleranceError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical: " << e.what() << "\n";
    return kNumericalError;
  }
}

void print_catalog() {
  std::cout << "named fields:\n"
            << "  permute_relu  (x1, x2) -> (ReLU(x2), ReLU(x1)), d = 2\n"
            << "  gauss         every component exp(-|x|^2), any d\n"
            << "  sinsum        (sin x1 + sin x2) * (1, 1), d = 2\n\n";
  std::cout << "experiment kinds and example configs:\n\n";
  const char* examples[] = {
      R"({"kind": "convergence", "scheme": "commutator", "tau": 1.0,
 "fields": [{"dim": 2, "kind": "affine", "matrix": [0,1,0,0], "offset": [0,0]},
            {"dim": 2, "kind": "affine", "matrix": [0,0,1,0], "offset": [0,0]}],
 "n_values": [8,16,32,64,128,256,512,1024],
 "box": {"lower": [-1,-1], "upper": [1,1]}, "output": "out_convergence"})",
      R"({"kind": "interpolate", "dim": 2, "family": "ass_relu", "count": 4,
 "seed": 7, "tolerance": 1e-6, "output": "out_interpolate"})",
      R"({"kind": "rank", "field": {"dim": 2, "kind": "named", "id": "sinsum"},
 "family": "diag", "points": [[1,1],[-1,1],[-1,-1],[1,-1]], "seed": 1,
 "output": "out_rank"})",
      R"({"kind": "counterexample", "seed": 11, "programs": 20, "legs": 6,
 "base_points": 100, "mc_samples": 100000, "output": "out_counterexample"})",
      R"({"kind": "approx-relu", "activation": {"type": "sin"},
 "interval": {"lower": [-3.141592653589793], "upper": [3.141592653589793]},
 "budget": 32, "tol": 0.05, "output": "out_approx_relu"})",
      R"({"kind": "gronwall", "sharpness": 64,
 "box": {"lower": [-1,-1], "upper": [1,1]}, "tau": 1.0, "trials": 50,
 "seed": 5, "output": "out_gronwall"})"};
  for (const char* e : examples) std::cout << e << "\n\n";
}

}  // namespace flowcap::cli
