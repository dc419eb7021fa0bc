// speig: symplectic eigenvalue tool.
//
// Subcommands: eig (k smallest/largest symplectic eigenvalues of an spd
// matrix), williamson (full diagonal form), hamiltonian (eigenvalues of
// smallest modulus of a definite Hamiltonian matrix), bench (seeded sweep
// over problem sizes, CSV output).  Reports are versioned JSON; exit codes
// are 0 success, 2 input/validation failure, 3 numerical failure.

#include <speig/eigensolver.hpp>
#include <speig/matrix_io.hpp>
#include <speig/optimizer.hpp>
#include <speig/problems.hpp>
#include <speig/williamson.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifndef SPEIG_VERSION
#define SPEIG_VERSION "0.0.0"
#endif

namespace {

using nlohmann::ordered_json;
using namespace speig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr int kSchemaVersion = 1;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string solve_name(CayleySolve s) {
  switch (s) {
    case CayleySolve::Dense:
      return "dense";
    case CayleySolve::LowRank:
      return "lowrank";
    default:
      return "auto";
  }
}

CayleySolve parse_solve(const std::string& name) {
  if (name == "dense") return CayleySolve::Dense;
  if (name == "lowrank") return CayleySolve::LowRank;
  return CayleySolve::Auto;
}

// Optimizer knobs shared by the eig, hamiltonian and bench subcommands.
struct OptimizerFlags {
  OptimizerConfig cfg;
  std::string solve = "auto";
  bool reference_defaults = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rho", cfg.rho, "metric parameter (> 0)");
    cmd->add_option("--beta", cfg.beta, "sufficient-decrease factor");
    cmd->add_option("--delta", cfg.delta, "backtracking shrink factor");
    cmd->add_option("--alpha", cfg.alpha, "non-monotone averaging weight");
    cmd->add_option("--gamma0", cfg.gamma0, "initial/fallback trial step");
    cmd->add_option("--gamma-min", cfg.gamma_min, "BB step lower clamp");
    cmd->add_option("--eps-rel", cfg.epsilon_rel,
                    "relative gradient-norm stopping tolerance");
    cmd->add_option("--eps-abs", cfg.epsilon_abs,
                    "absolute gradient-norm stopping tolerance");
    cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
    cmd->add_option("--max-backtracks", cfg.max_backtracks,
                    "line-search trial cap per iteration");
    cmd->add_option("--solve", solve, "Cayley solve: auto, dense, lowrank")
        ->check(CLI::IsMember({"auto", "dense", "lowrank"}));
    cmd->add_flag("--reference-defaults", reference_defaults,
                  "ignore optimizer flags and use the documented defaults");
  }

  OptimizerConfig resolve(bool keep_trace) const {
    OptimizerConfig out = reference_defaults ? OptimizerConfig{} : cfg;
    if (!reference_defaults) out.solve = parse_solve(solve);
    out.keep_trace = keep_trace;
    return out;
  }
};

ordered_json config_json(const OptimizerConfig& cfg) {
  ordered_json j;
  j["rho"] = cfg.rho;
  j["beta"] = cfg.beta;
  j["delta"] = cfg.delta;
  j["alpha"] = cfg.alpha;
  j["gamma0"] = cfg.gamma0;
  j["gamma_min"] = cfg.gamma_min;
  j["gamma_max"] = cfg.gamma_max;
  j["epsilon_rel"] = cfg.epsilon_rel;
  j["epsilon_abs"] = cfg.epsilon_abs;
  j["max_iter"] = cfg.max_iter;
  j["max_backtracks"] = cfg.max_backtracks;
  j["solve"] = solve_name(cfg.solve);
  return j;
}

ordered_json vector_json(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json report_skeleton(const std::string& mode,
                             const ordered_json& input, Index n, Index k) {
  ordered_json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["tool"] = "speig";
  rep["version"] = SPEIG_VERSION;
  rep["mode"] = mode;
  rep["input"] = input;
  rep["n"] = n;
  rep["k"] = k;
  return rep;
}

void write_report(const std::string& path, const ordered_json& rep) {
  if (path.empty()) {
    std::cout << rep.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << rep.dump(2) << "\n";
}

void write_trace_csv(const std::string& path, const IterationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  out << "m,f,grad_norm,grad_norm_euclid,step,backtracks,feasibility,c,"
         "unguarded\n";
  for (const auto& r : trace) {
    out << r.m << ',' << format_full(r.f) << ',' << format_full(r.grad_norm)
        << ',' << format_full(r.grad_norm_euclid) << ','
        << format_full(r.step) << ',' << r.backtracks << ','
        << format_full(r.feasibility) << ',' << format_full(r.c) << ','
        << (r.unguarded ? "true" : "false") << '\n';
  }
}

std::string format_name(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  return (ext == ".mtx" || ext == ".mm") ? "matrix-market" : "csv";
}

ordered_json file_input_json(const std::string& path) {
  ordered_json j;
  j["kind"] = "file";
  j["path"] = path;
  j["format"] = format_name(path);
  return j;
}

// ---------------------------------------------------------------------------
// eig

struct EigArgs {
  std::string in;
  std::string gen;
  long n = 100;
  std::uint64_t seed = 1;
  long k = 5;
  bool largest = false;
  std::string x0;
  std::string out;
  std::string trace_csv;
  std::string out_x;
  std::string out_d;
  OptimizerFlags opt;
};

int run_eig(const EigArgs& a) {
  std::optional<SpdMatrix> m;
  Vector known_d;  // full known spectrum, ascending; empty when unknown
  ordered_json input;

  try {
    if (!a.gen.empty()) {
      auto prob = known_spectrum_matrix(a.n, a.seed);
      m.emplace(std::move(prob.m));
      known_d = std::move(prob.d);
      input["kind"] = "generator";
      input["name"] = "known";
      input["n"] = a.n;
      input["seed"] = a.seed;
    } else {
      m.emplace(load_spd(a.in));
      input = file_input_json(a.in);
    }
    const Index n = m->dim() / 2;
    if (a.k < 1 || a.k > n) {
      std::cerr << "speig eig: k must satisfy 1 <= k <= " << n << "\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "speig eig: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }

  const Index n = m->dim() / 2;
  const OptimizerConfig cfg = a.opt.resolve(!a.trace_csv.empty());
  ordered_json rep = report_skeleton(a.largest ? "eig-largest" : "eig-smallest",
                                     input, n, a.k);
  rep["seed"] = a.gen.empty() ? ordered_json(nullptr) : ordered_json(a.seed);
  rep["rng"] = "mt19937_64";
  rep["config"] = config_json(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::optional<SymplecticFrame> x0;
    if (!a.x0.empty()) x0.emplace(load_matrix(a.x0));
    SymplecticSpectrumResult res =
        a.largest ? symplectic_eigs_largest(*m, a.k, cfg)
                  : symplectic_eigs_smallest(*m, a.k, cfg, x0);

    rep["d"] = vector_json(res.d);
    rep["lambda"] = vector_json(res.lambda);
    rep["residual"] = res.residual;
    if (known_d.size() > 0) {
      double err = 0.0;
      for (Index j = 0; j < a.k; ++j) {
        const double expect =
            a.largest ? known_d(known_d.size() - 1 - j) : known_d(j);
        err += std::abs(res.d(j) - expect);
      }
      rep["one_norm_error"] = err;
    } else {
      rep["one_norm_error"] = nullptr;
    }
    rep["iterations"] = res.optimization.iterations;
    rep["converged"] = res.converged;
    rep["f"] = res.optimization.f;
    rep["grad_norm"] = res.optimization.grad_norm;
    rep["structure_residual"] = res.structure_residual;
    rep["feasibility"] = res.x.residual();
    rep["saddle_suspected"] = res.optimization.saddle_suspected;
    rep["wall_time_s"] = seconds_since(t0);
    write_report(a.out, rep);

    if (!a.trace_csv.empty())
      write_trace_csv(a.trace_csv, res.optimization.trace);
    if (!a.out_x.empty()) save_matrix(a.out_x, res.x.matrix());
    if (!a.out_d.empty()) save_vector(a.out_d, res.d);
    return res.converged ? kExitOk : kExitNumerical;
  } catch (const LineSearchFailure& e) {
    rep["error"] = e.what();
    rep["converged"] = false;
    rep["wall_time_s"] = seconds_since(t0);
    write_report(a.out, rep);
    std::cerr << "speig eig: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "speig eig: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "speig eig: " << e.what() << "\n";
    return kExitNumerical;
  }
}

// ---------------------------------------------------------------------------
// williamson

struct WilliamsonArgs {
  std::string in;
  std::string gen;
  long n = 20;
  std::uint64_t seed = 1;
  std::string out;
  std::string out_s;
  std::string out_d;
};

int run_williamson(const WilliamsonArgs& a) {
  std::optional<SpdMatrix> m;
  ordered_json input;
  try {
    if (!a.gen.empty()) {
      m.emplace(known_spectrum_matrix(a.n, a.seed).m);
      input["kind"] = "generator";
      input["name"] = "known";
      input["n"] = a.n;
      input["seed"] = a.seed;
    } else {
      m.emplace(load_spd(a.in));
      input = file_input_json(a.in);
    }
  } catch (const std::exception& e) {
    std::cerr << "speig williamson: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }

  const Index n = m->dim() / 2;
  ordered_json rep = report_skeleton("williamson", input, n, n);
  rep["seed"] = a.gen.empty() ? ordered_json(nullptr) : ordered_json(a.seed);
  rep["rng"] = "mt19937_64";

  const auto t0 = std::chrono::steady_clock::now();
  try {
    WilliamsonForm w = williamson_general(*m);
    rep["d"] = vector_json(w.d);
    rep["residual"] = w.residual;
    rep["feasibility"] = w.s.residual();
    rep["wall_time_s"] = seconds_since(t0);
    write_report(a.out, rep);
    if (!a.out_s.empty()) save_matrix(a.out_s, w.s.matrix());
    if (!a.out_d.empty()) save_vector(a.out_d, w.d);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "speig williamson: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "speig williamson: " << e.what() << "\n";
    return kExitNumerical;
  }
}

// ---------------------------------------------------------------------------
// hamiltonian

struct HamiltonianArgs {
  std::string in;
  std::string gen;
  long n = 200;
  double speed = 0.0306;
  double g_scale = 1e-3;
  long k = 5;
  std::string out;
  std::string trace_csv;
  std::string out_x;
  std::string out_d;
  OptimizerFlags opt;
};

int run_hamiltonian(const HamiltonianArgs& a) {
  std::optional<HamiltonianMatrix> h;
  ordered_json input;
  try {
    if (!a.gen.empty()) {
      h.emplace(gyroscopic_hamiltonian(wire_saw_system(a.n, a.speed,
                                                       a.g_scale)));
      input["kind"] = "generator";
      input["name"] = "wire-saw";
      input["n"] = a.n;
      input["speed"] = a.speed;
      input["g_scale"] = a.g_scale;
    } else {
      h.emplace(load_hamiltonian(a.in));
      input = file_input_json(a.in);
    }
    const Index n = h->dim() / 2;
    if (a.k < 1 || a.k > n) {
      std::cerr << "speig hamiltonian: k must satisfy 1 <= k <= " << n << "\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "speig hamiltonian: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }

  const Index n = h->dim() / 2;
  const OptimizerConfig cfg = a.opt.resolve(!a.trace_csv.empty());
  ordered_json rep = report_skeleton("hamiltonian", input, n, a.k);
  rep["seed"] = nullptr;
  rep["rng"] = "mt19937_64";
  rep["config"] = config_json(cfg);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    HamiltonianEigsResult res = hamiltonian_eigs(*h, a.k, cfg);

    ordered_json eigs = ordered_json::array();
    for (Index j = 0; j < res.lambda.size(); ++j)
      eigs.push_back({res.lambda(j).real() + 0.0, res.lambda(j).imag()});
    rep["eigenvalues"] = eigs;
    rep["d"] = vector_json(res.base.d);
    rep["hamiltonian_residual"] = res.residual;
    rep["residual"] = res.base.residual;
    rep["definite_jt_h"] = res.definite_jt_h;
    rep["iterations"] = res.base.optimization.iterations;
    rep["converged"] = res.base.converged;
    rep["feasibility"] = res.base.x.residual();
    rep["wall_time_s"] = seconds_since(t0);
    write_report(a.out, rep);

    if (!a.trace_csv.empty())
      write_trace_csv(a.trace_csv, res.base.optimization.trace);
    if (!a.out_x.empty()) save_matrix(a.out_x, res.base.x.matrix());
    if (!a.out_d.empty()) save_vector(a.out_d, res.base.d);
    return res.base.converged ? kExitOk : kExitNumerical;
  } catch (const StructureViolation& e) {
    std::cerr << "speig hamiltonian: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "speig hamiltonian: " << e.what() << "\n";
    return kExitNumerical;
  }
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<long> sizes;
  std::vector<std::uint64_t> seeds{1};
  long k = 5;
  std::string out;
  std::string json_out;
  OptimizerFlags opt;
};

struct BenchRow {
  long n = 0;
  std::uint64_t seed = 0;
  long k = 0;
  double one_norm_error = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_time_s = 0.0;
  std::string error;  // empty on success
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t cap = hw;
  if (const char* env = std::getenv("SPEIG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cap = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(cap, jobs));
}

int run_bench(const BenchArgs& a) {
  const OptimizerConfig cfg = a.opt.resolve(false);

  std::vector<std::pair<long, std::uint64_t>> jobs;
  for (long n : a.sizes)
    for (std::uint64_t s : a.seeds) jobs.emplace_back(n, s);
  std::vector<BenchRow> rows(jobs.size());

  // Workers own disjoint row slots; assembly below is serial.
  const auto run_job = [&](std::size_t i) {
    BenchRow& row = rows[i];
    row.n = jobs[i].first;
    row.seed = jobs[i].second;
    row.k = a.k;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto prob = known_spectrum_matrix(row.n, row.seed);
      auto res = symplectic_eigs_smallest(prob.m, a.k, cfg);
      row.residual = res.residual;
      row.iterations = res.optimization.iterations;
      row.converged = res.converged;
      for (Index j = 0; j < a.k; ++j)
        row.one_norm_error += std::abs(res.d(j) - prob.d(j));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.wall_time_s = seconds_since(t0);
  };

  if (!jobs.empty()) {
    std::atomic<std::size_t> next{0};
    const std::size_t workers = worker_count(jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1))
          run_job(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "n,seed,k,one_norm_error,residual,iterations,converged,wall_time_s,"
         "error\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << r.seed << ',' << r.k << ',';
    if (r.error.empty()) {
      csv << format_full(r.one_norm_error) << ',' << format_full(r.residual)
          << ',' << r.iterations << ',' << (r.converged ? "true" : "false");
    } else {
      csv << ",,," << "false";
    }
    csv << ',' << format_full(r.wall_time_s) << ',' << csv_escape(r.error)
        << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(a.out);
    if (!out) {
      std::cerr << "speig bench: cannot write " << a.out << "\n";
      return kExitUsage;
    }
    out << csv.str();
  }

  if (!a.json_out.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["tool"] = "speig";
      j["version"] = SPEIG_VERSION;
      j["mode"] = "bench";
      j["n"] = r.n;
      j["seed"] = r.seed;
      j["k"] = r.k;
      j["rng"] = "mt19937_64";
      j["config"] = config_json(cfg);
      if (r.error.empty()) {
        j["one_norm_error"] = r.one_norm_error;
        j["residual"] = r.residual;
        j["iterations"] = r.iterations;
        j["converged"] = r.converged;
      } else {
        j["error"] = r.error;
        j["converged"] = false;
      }
      j["wall_time_s"] = r.wall_time_s;
      arr.push_back(j);
    }
    std::ofstream out(a.json_out);
    if (!out) {
      std::cerr << "speig bench: cannot write " << a.json_out << "\n";
      return kExitUsage;
    }
    out << arr.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplectic eigenvalue solver"};
  app.set_version_flag("--version", SPEIG_VERSION);
  app.require_subcommand(1);

  EigArgs eig;
  auto* eig_cmd = app.add_subcommand(
      "eig", "k smallest (or largest) symplectic eigenvalues of an spd matrix");
  auto* eig_in = eig_cmd->add_option("--in", eig.in,
                                     "input matrix file (.mtx/.mm or CSV)");
  auto* eig_gen =
      eig_cmd->add_option("--gen", eig.gen, "problem generator: known")
          ->check(CLI::IsMember({"known"}));
  eig_in->excludes(eig_gen);
  eig_gen->excludes(eig_in);
  eig_cmd->add_option("--n", eig.n, "generator half-dimension")
      ->check(CLI::PositiveNumber);
  eig_cmd->add_option("--seed", eig.seed, "generator seed (mt19937_64)");
  eig_cmd->add_option("--k", eig.k, "number of eigenvalues")
      ->check(CLI::PositiveNumber);
  eig_cmd->add_flag("--largest", eig.largest,
                    "largest eigenvalues instead of smallest");
  auto* eig_x0 =
      eig_cmd->add_option("--x0", eig.x0, "starting frame file (2n x 2k)");
  eig_x0->excludes("--largest");
  eig_cmd->add_option("--out", eig.out, "report JSON path (default stdout)");
  eig_cmd->add_option("--trace-csv", eig.trace_csv,
                      "per-iteration trace CSV path");
  eig_cmd->add_option("--out-x", eig.out_x, "eigenvector frame output file");
  eig_cmd->add_option("--out-d", eig.out_d, "eigenvalue vector output file");
  eig.opt.attach(eig_cmd);

  WilliamsonArgs wil;
  auto* wil_cmd =
      app.add_subcommand("williamson", "full Williamson diagonal form");
  auto* wil_in = wil_cmd->add_option("--in", wil.in, "input spd matrix file");
  auto* wil_gen =
      wil_cmd->add_option("--gen", wil.gen, "problem generator: known")
          ->check(CLI::IsMember({"known"}));
  wil_in->excludes(wil_gen);
  wil_gen->excludes(wil_in);
  wil_cmd->add_option("--n", wil.n, "generator half-dimension")
      ->check(CLI::PositiveNumber);
  wil_cmd->add_option("--seed", wil.seed, "generator seed (mt19937_64)");
  wil_cmd->add_option("--out", wil.out, "report JSON path (default stdout)");
  wil_cmd->add_option("--out-s", wil.out_s, "diagonalizing frame output file");
  wil_cmd->add_option("--out-d", wil.out_d, "eigenvalue vector output file");

  HamiltonianArgs ham;
  auto* ham_cmd = app.add_subcommand(
      "hamiltonian",
      "eigenvalues of smallest modulus of a definite Hamiltonian matrix");
  auto* ham_in =
      ham_cmd->add_option("--in", ham.in, "input Hamiltonian matrix file");
  auto* ham_gen =
      ham_cmd->add_option("--gen", ham.gen, "problem generator: wire-saw")
          ->check(CLI::IsMember({"wire-saw"}));
  ham_in->excludes(ham_gen);
  ham_gen->excludes(ham_in);
  ham_cmd->add_option("--n", ham.n, "generator basis size")
      ->check(CLI::PositiveNumber);
  ham_cmd->add_option("--speed", ham.speed, "wire transport speed in [0, 1)");
  ham_cmd->add_option("--g-scale", ham.g_scale,
                      "gyroscopic coupling scale factor");
  ham_cmd->add_option("--k", ham.k, "number of eigenvalue pairs")
      ->check(CLI::PositiveNumber);
  ham_cmd->add_option("--out", ham.out, "report JSON path (default stdout)");
  ham_cmd->add_option("--trace-csv", ham.trace_csv,
                      "per-iteration trace CSV path");
  ham_cmd->add_option("--out-x", ham.out_x,
                      "real symplectic frame output file");
  ham_cmd->add_option("--out-d", ham.out_d, "modulus vector output file");
  ham.opt.attach(ham_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "seeded accuracy/timing sweep over problem sizes");
  bench_cmd->add_option("--n", bench.sizes, "half-dimensions to sweep")
      ->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "seeds per size")
      ->delimiter(',');
  bench_cmd->add_option("--k", bench.k, "number of eigenvalues")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out, "CSV path (default stdout)");
  bench_cmd->add_option("--json", bench.json_out,
                        "also write the rows as a JSON report array");
  bench.opt.attach(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eig_cmd->parsed()) {
      if (eig.in.empty() && eig.gen.empty()) {
        std::cerr << "speig eig: one of --in or --gen is required\n";
        return kExitUsage;
      }
      return run_eig(eig);
    }
    if (wil_cmd->parsed()) {
      if (wil.in.empty() && wil.gen.empty()) {
        std::cerr << "speig williamson: one of --in or --gen is required\n";
        return kExitUsage;
      }
      return run_williamson(wil);
    }
    if (ham_cmd->parsed()) {
      if (ham.in.empty() && ham.gen.empty()) {
        std::cerr << "speig hamiltonian: one of --in or --gen is required\n";
        return kExitUsage;
      }
      return run_hamiltonian(ham);
    }
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const std::invalid_argument& e) {
    std::cerr << "speig: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "speig: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
