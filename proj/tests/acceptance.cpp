// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The flowcap CLI path is taken from argv[1] (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flowcap/rng.hpp"
#include "flowcap/schemes.hpp"
#include "flowcap/serialize.hpp"
#include "flowcap/universality.hpp"

using namespace flowcap;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

namespace {

namespace fs = std::filesystem;

int failures = 0;
std::string cli_binary;

struct Criterion {
  std::string label;
  double time_limit_s;  // <= 0 means no limit
};

void run_criterion(const Criterion& c, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (problem.empty() && c.time_limit_s > 0 && elapsed > c.time_limit_s) {
    std::ostringstream ss;
    ss << "runtime " << elapsed << "s exceeds " << c.time_limit_s << "s";
    problem = ss.str();
  }
  if (problem.empty()) {
    std::printf("PASS  %s (%.2fs)\n", c.label.c_str(), elapsed);
  } else {
    std::printf("FAIL  %s (%.2fs): %s\n", c.label.c_str(), elapsed,
                problem.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

std::string check(bool ok, const std::string& message) {
  return ok ? std::string() : message;
}

VectorXd rand_point(std::uint64_t seed, int i, int d, double lo, double hi) {
  VectorXd x(d);
  for (int k = 0; k < d; ++k) x[k] = counter_uniform(seed, i, k, lo, hi);
  return x;
}

// --- criterion 1: closed forms vs the RK4 oracle ---------------------------

std::string criterion_oracle_agreement() {
  const IntegratorConfig cfg{1000, 1e6};
  double worst = 0.0;
  {
    MatrixXd A(2, 2);
    A << 0.2, -0.8, 0.5, 0.1;
    const VectorXd b = Vector2d(0.3, -0.2);
    const auto f = VectorField::affine(A, b);
    for (int i = 0; i < 100; ++i) {
      const VectorXd x = rand_point(1, i, 2, -2, 2);
      worst = std::max(worst, (flow_affine(A, b, 1.1, x) -
                               flow_numeric(f, 1.1, x, cfg))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    if (worst > 1e-8) return "affine flow deviates " + std::to_string(worst);
  }
  {
    const auto f = VectorField::separable(Activation::relu(), 2);
    const auto fneg = VectorField::scaled(-1.0, f);
    for (int i = 0; i < 100; ++i) {
      const VectorXd x = rand_point(2, i, 2, -2, 2);
      const double d1 = (flow_relu(+1, 0.9, x) - flow_numeric(f, 0.9, x, cfg))
                            .cwiseAbs()
                            .maxCoeff();
      const double d2 =
          (flow_relu(-1, 0.9, x) - flow_numeric(fneg, 0.9, x, cfg))
              .cwiseAbs()
              .maxCoeff();
      worst = std::max({worst, d1, d2});
    }
    if (worst > 1e-8) return "relu flow deviates " + std::to_string(worst);
  }
  {
    const auto f = VectorField::separable(Activation::quadratic(), 1);
    for (int i = 0; i < 100; ++i) {
      const VectorXd x = rand_point(3, i, 1, -2, 2);
      VectorXd y(1);
      y[0] = flow_mobius_1d(0.4, x[0]);  // pole-free: 0.4 * 2 < 1
      worst = std::max(worst, (y - flow_numeric(f, 0.4, x, cfg))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return check(worst <= 1e-8,
               "sup deviation " + std::to_string(worst) + " > 1e-8");
}

// --- criteria 2 and 3: scheme convergence orders ----------------------------

const std::vector<long> kNGrid = {8, 16, 32, 64, 128, 256, 512, 1024};

double fitted_slope(
    const std::function<VectorXd(long, const VectorXd&)>& scheme,
    const std::function<VectorXd(const VectorXd&)>& reference, const Box& box,
    const std::string& id) {
  std::vector<std::pair<long, double>> runs;
  for (long n : kNGrid) {
    const auto approx = [&](const VectorXd& x) { return scheme(n, x); };
    runs.emplace_back(n, sup_difference(approx, reference, box));
  }
  return fit_convergence(id, runs).slope;
}

std::string criterion_lie_trotter_order() {
  MatrixXd A(2, 2);
  A << 0.0, 0.9, -0.6, 0.1;
  const VectorXd b = Vector2d(0.8, -0.3);
  const auto f1 = VectorField::affine(A, VectorXd::Zero(2));
  const auto f2 = VectorField::constant(b);
  const double s1 = fitted_slope(
      [&](long n, const VectorXd& x) {
        return lie_trotter({{1.0, f1}, {1.0, f2}}, 1.0, n, x);
      },
      [&](const VectorXd& x) { return flow_affine(A, b, 1.0, x); },
      Box::centered(2, 1.5), "lt_affine_constant");
  if (std::abs(s1 - 1.0) > 0.15)
    return "affine+constant slope " + std::to_string(s1);

  MatrixXd A2(2, 2);
  A2 << 0.0, 0.3, -0.2, 0.0;
  const auto g1 = VectorField::affine(A2, Vector2d(0.1, 0.05));
  const auto g2 = VectorField::separable(Activation::relu(), 2);
  const auto sum = VectorField::sum({{1.0, g1}, {1.0, g2}});
  const Box box(Vector2d(0.5, 0.5), Vector2d(1.5, 1.5));
  const double s2 = fitted_slope(
      [&](long n, const VectorXd& x) {
        return lie_trotter({{1.0, g1}, {1.0, g2}}, 0.4, n, x);
      },
      [&](const VectorXd& x) { return flow_numeric(sum, 0.4, x, {10000, 1e6}); },
      box, "lt_affine_relu");
  if (std::abs(s2 - 1.0) > 0.15)
    return "affine+relu slope " + std::to_string(s2);
  return {};
}

std::string criterion_commutator_order() {
  MatrixXd E12 = MatrixXd::Zero(2, 2), E21 = MatrixXd::Zero(2, 2);
  E12(0, 1) = 1;
  E21(1, 0) = 1;
  const auto f1 = VectorField::affine(E12, VectorXd::Zero(2));
  const auto f2 = VectorField::affine(E21, VectorXd::Zero(2));
  const MatrixXd C = E21 * E12 - E12 * E21;
  const double s1 = fitted_slope(
      [&](long n, const VectorXd& x) {
        return commutator_scheme(f1, f2, 1.0, n, x);
      },
      [&](const VectorXd& x) {
        return flow_affine(C, VectorXd::Zero(2), 1.0, x);
      },
      Box::centered(2, 1.0), "comm_linear");
  if (std::abs(s1 - 0.5) > 0.15) return "linear pair slope " + std::to_string(s1);

  const auto g1 = VectorField::constant(VectorXd::Ones(1));
  const auto g2 = VectorField::separable(Activation::quadratic(), 1);
  MatrixXd two(1, 1);
  two << 2.0;
  const auto bracket = VectorField::affine(two, VectorXd::Zero(1));
  const double s2 = fitted_slope(
      [&](long n, const VectorXd& x) {
        return commutator_scheme(g1, g2, 0.4, n, x);
      },
      [&](const VectorXd& x) {
        return flow_numeric(bracket, 0.4, x, {10000, 1e6});
      },
      Box::interval(-0.5, 0.5), "comm_const_quadratic");
  if (std::abs(s2 - 0.5) > 0.15)
    return "constant+quadratic slope " + std::to_string(s2);
  return {};
}

// --- criterion 4: Gronwall validity -----------------------------------------

std::string criterion_gronwall() {
  const double a = 64.0;
  const auto surrogate = relu_from_softplus(a, 2);
  const Box box = Box::centered(2, 1.0);

  // measured field deviation on a grid through the origin
  const auto relu_field = VectorField::separable(Activation::relu(), 2);
  double measured_delta = 0.0;
  for (int i = -200; i <= 200; ++i) {
    const double t = i / 100.0;
    VectorXd x(2);
    x << t, -t;
    const VectorXd dev =
        eval_field(surrogate.field, x) - eval_field(relu_field, x);
    measured_delta = std::max(measured_delta, dev.cwiseAbs().maxCoeff());
  }
  if (std::abs(measured_delta - std::log(2.0) / a) > 1e-12)
    return "softplus sup deviation " + std::to_string(measured_delta) +
           " != ln2/a";

  const auto g = gronwall_bound(
      VectorField::separable(Activation::relu(), 2), box, 1.0, measured_delta);
  const IntegratorConfig cfg{400, 1e6};
  int within = 0;
  for (int t = 0; t < 50; ++t) {
    const VectorXd x = rand_point(44, t, 2, -1, 1);
    const double dev =
        (flow_relu(+1, 1.0, x) - flow_numeric(surrogate.field, 1.0, x, cfg))
            .norm();
    if (dev <= g.bound) ++within;
  }
  return check(within == 50,
               std::to_string(within) + "/50 trials within the bound");
}

// --- criterion 5: divergence-free counterexample ----------------------------

FlowProgram random_permute_program(std::uint64_t seed, std::uint64_t index,
                                   int legs) {
  const auto u = [&](std::uint64_t stream, double lo, double hi) {
    return counter_uniform(seed, index * 1000 + stream, 17, lo, hi);
  };
  FlowProgram p(2);
  const auto named = VectorField::named(NamedField::PermuteRelu, 2);
  for (int leg = 0; leg < legs; ++leg) {
    const double tau = u(leg * 10, 0.05, 0.3);
    if (leg % 2 == 0) {
      MatrixXd A(2, 2);
      VectorXd b(2);
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

std::string criterion_counterexample() {
  const IntegratorConfig cfg{64, 1e6};
  for (int pr = 0; pr < 20; ++pr) {
    const FlowProgram p = random_permute_program(2025, pr, 6);
    const std::vector<double> grid{p.total_duration()};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < 100; ++i) {
      const double det =
          jacobian_det_along_flow(p, rand_point(5, i, 2, -3, 3), grid, cfg)[0];
      lo = std::min(lo, det);
      hi = std::max(hi, det);
    }
    if (hi - lo > 1e-6)
      return "program " + std::to_string(pr) + " det spread " +
             std::to_string(hi - lo);
  }

  const FlowProgram p = random_permute_program(2025, 0, 6);
  const auto [v1, v2] =
      volume_comparison(p, Region::disk(Vector2d(-2, 0), 1.0),
                        Region::disk(Vector2d(2, 0), 1.0), 100000, 909, cfg);
  const double gap = std::abs(v1.value - v2.value);
  const double se =
      std::sqrt(v1.std_error * v1.std_error + v2.std_error * v2.std_error);
  if (gap > 3 * se)
    return "volumes differ by " + std::to_string(gap / se) + " sigma";

  const auto detj = [](const VectorXd& x) { return std::exp(x[0]); };
  const auto [w1, w2] =
      volume_comparison(detj, Region::disk(Vector2d(-2, 0), 1.0),
                        Region::disk(Vector2d(2, 0), 1.0), 100000, 910);
  const double ratio = w2.value / w1.value;
  const double se_ratio =
      ratio * std::sqrt(std::pow(w1.std_error / w1.value, 2) +
                        std::pow(w2.std_error / w2.value, 2));
  return check(std::abs(ratio - std::exp(4.0)) <= 3 * se_ratio,
               "volume ratio " + std::to_string(ratio) + " vs e^4");
}

// --- criterion 6: span certificates ------------------------------------------

std::string criterion_span() {
  const auto f = VectorField::named(NamedField::SinSum, 2);
  MatrixXd X(4, 2);
  X << 1, 1, -1, 1, -1, -1, 1, -1;
  const auto cert = span_certificate(f, SampledFamily::Diag, X, 32, 1);
  if (cert.full_rank) return "symmetric configuration not deficient";
  VectorXd expected = VectorXd::Zero(8);
  for (int j = 0; j < 4; ++j) expected[2 * j] = (j % 2 == 0 ? 0.5 : -0.5);
  const double gap = std::min((cert.witness - expected).cwiseAbs().maxCoeff(),
                              (cert.witness + expected).cwiseAbs().maxCoeff());
  if (gap > 1e-6) return "witness off by " + std::to_string(gap);

  const int sizes[5] = {3, 4, 5, 3, 4};
  for (int k = 0; k < 5; ++k) {
    const MatrixXd C = omega_n_configuration(sizes[k], 2, 100 + k);
    const auto c =
        span_certificate(f, SampledFamily::Diag, C, 8 * sizes[k], 100 + k, 1e-10);
    if (!c.full_rank)
      return "omega configuration " + std::to_string(k) + " not full rank";
  }
  return {};
}

// --- criterion 7: interpolation ----------------------------------------------

std::string criterion_interpolation() {
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 2 + trial % 5;  // N in 2..6
    std::vector<std::pair<VectorXd, VectorXd>> data;
    for (int i = 0; i < N; ++i)
      data.emplace_back(rand_point(300 + trial, 2 * i, 2, -2, 2),
                        rand_point(300 + trial, 2 * i + 1, 2, -2, 2));
    const InterpolationProblem problem(std::move(data), 1e-6);
    const FlowProgram program =
        interpolate(problem, InterpolationFamily::AssRelu);
    double residual = 0.0;
    for (const auto& [x, y] : problem.pairs)
      residual = std::max(residual, (apply(program, x) - y).norm());
    if (residual > 1e-6)
      return "trial " + std::to_string(trial) + " residual " +
             std::to_string(residual);
  }

  for (int trial = 0; trial < 5; ++trial) {
    const int N = 4 + trial;  // N in 4..8
    std::vector<double> xs, ys;
    for (int i = 0; i < N; ++i) {
      xs.push_back(counter_uniform(600 + trial, i, 0, -3, 3));
      ys.push_back(counter_uniform(600 + trial, i, 1, -3, 3));
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<std::pair<VectorXd, VectorXd>> data;
    for (int i = 0; i < N; ++i)
      data.emplace_back(VectorXd::Constant(1, xs[i]),
                        VectorXd::Constant(1, ys[i]));
    const InterpolationProblem problem(std::move(data), 1e-6);
    const FlowProgram program =
        interpolate(problem, InterpolationFamily::AssRelu);
    for (const auto& [x, y] : problem.pairs)
      if ((apply(program, x) - y).norm() > 1e-6)
        return "1-D trial " + std::to_string(trial) + " missed a target";
  }

  try {
    std::vector<std::pair<VectorXd, VectorXd>> bad;
    bad.emplace_back(VectorXd::Constant(1, 1.0), VectorXd::Constant(1, 5.0));
    bad.emplace_back(VectorXd::Constant(1, 2.0), VectorXd::Constant(1, 3.0));
    InterpolationProblem problem(std::move(bad), 1e-6);
    return "order-reversing 1-D data was accepted";
  } catch (const std::invalid_argument&) {
  }
  return {};
}

// --- criterion 8: algebraic identities ----------------------------------------

std::string criterion_identities() {
  // broadcast of the axis-1 one-sided relu equals the axis-2 field, exactly
  const auto axis1 = VectorField::separable(Activation::relu(),
                                            std::vector<bool>{true, false});
  const auto moved = broadcast_coordinate(axis1, 0, 1);
  for (int i = 0; i < 100; ++i) {
    const VectorXd x = rand_point(7, i, 2, -3, 3);
    const VectorXd got = eval_field(moved, x);
    if (got[0] != 0.0 || got[1] != std::max(x[1], 0.0))
      return "broadcast identity violated";
  }

  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 4; ++m) {
      const auto fn = VectorField::separable(Activation::monomial(n), 1);
      const auto fm = VectorField::separable(Activation::monomial(m), 1);
      for (int i = 0; i < 50; ++i) {
        VectorXd x(1);
        x[0] = counter_uniform(8, i, 0, 0.4, 2.0);
        const double expected = (m - n) * std::pow(x[0], n + m - 1);
        const double got = lie_bracket(fn, fm, x)[0];
        const double rel =
            std::abs(got - expected) / std::max(1e-12, std::abs(expected));
        if (expected != 0 && rel > 1e-8) return "polynomial bracket identity";
        if (expected == 0 && std::abs(got) > 1e-10)
          return "polynomial bracket identity (zero case)";
      }
    }

  const auto profile =
      marginalize(VectorField::named(NamedField::Gauss, 2), 8.0, 400);
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  for (int i = -20; i <= 20; ++i) {
    const double x1 = i / 10.0;
    const double got = profile.profile(x1)[0];
    if (std::abs(got - sqrt_pi * std::exp(-x1 * x1)) > 1e-6)
      return "marginalized gaussian off at x1 = " + std::to_string(x1);
  }
  return {};
}

// --- criterion 9: CLI determinism ----------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string criterion_determinism() {
  if (cli_binary.empty()) return "flowcap binary path not supplied";
  const fs::path work = fs::temp_directory_path() / "flowcap_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::string>> configs = {
      {"convergence", R"({"kind": "convergence", "scheme": "commutator",
        "tau": 1.0,
        "fields": [{"dim": 2, "kind": "affine", "matrix": [0,1,0,0], "offset": [0,0]},
                   {"dim": 2, "kind": "affine", "matrix": [0,0,1,0], "offset": [0,0]}],
        "n_values": [8,16,32,64], "box": {"lower": [-1,-1], "upper": [1,1]}})"},
      {"interpolate", R"({"kind": "interpolate", "dim": 2,
        "family": "ass_relu", "count": 3, "seed": 7, "tolerance": 1e-6})"},
      {"rank", R"({"kind": "rank",
        "field": {"dim": 2, "kind": "named", "id": "sinsum"},
        "family": "diag", "omega": {"N": 3}, "seed": 3})"},
      {"counterexample", R"({"kind": "counterexample", "seed": 2,
        "programs": 2, "legs": 4, "base_points": 10, "mc_samples": 5000})"},
      {"approx-relu", R"({"kind": "approx-relu", "activation": {"type": "sin"},
        "interval": {"lower": [-3.141592653589793], "upper": [3.141592653589793]},
        "budget": 16, "tol": 0.1})"},
      {"gronwall", R"({"kind": "gronwall", "sharpness": 64, "seed": 5,
        "trials": 10, "box": {"lower": [-1,-1], "upper": [1,1]}})"}};

  for (const auto& [kind, body] : configs) {
    const fs::path cfg = work / (kind + ".json");
    std::ofstream(cfg) << body;
    for (const char* rep : {"a", "b"}) {
      const fs::path out = work / (kind + "_" + rep);
      const std::string cmd = "FLOWCAP_OUTPUT_DIR=" + out.string() + " " +
                              cli_binary + " run " + cfg.string() +
                              " > /dev/null 2>&1";
      if (WEXITSTATUS(std::system(cmd.c_str())) != 0)
        return kind + " run failed";
    }
    const fs::path a = work / (kind + "_a"), b = work / (kind + "_b");
    for (const auto& entry : fs::directory_iterator(a)) {
      const std::string name = entry.path().filename().string();
      if (slurp(entry.path()) != slurp(b / name))
        return kind + " artifact " + name + " differs between reruns";
    }
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_binary = argv[1];

  run_criterion({"1 closed-form flows match the RK4 oracle", 5.0},
                criterion_oracle_agreement);
  run_criterion({"2 Lie-Trotter splitting is first order", 30.0},
                criterion_lie_trotter_order);
  run_criterion({"3 commutator scheme is half order", 60.0},
                criterion_commutator_order);
  run_criterion({"4 Gronwall bound dominates softplus-vs-relu", 0.0},
                criterion_gronwall);
  run_criterion({"5 divergence-free programs have flat determinants", 0.0},
                criterion_counterexample);
  run_criterion({"6 span certificates (deficient witness + full rank)", 0.0},
                criterion_span);
  run_criterion({"7 interpolation residuals", 120.0},
                criterion_interpolation);
  run_criterion({"8 algebraic identities", 0.0}, criterion_identities);
  run_criterion({"9 CLI artifacts are deterministic", 0.0},
                criterion_determinism);

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
