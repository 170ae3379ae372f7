// cluster-nz: Y-seed mutation dynamics, mutation networks and their
// Neumann-Zagier matrices, determinant-identity verifiers, and gluing
// equation solvers, driven by JSON sequence files.

#include <atomic>
#include <complex>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cnz/cluster.hpp"
#include "cnz/dilog.hpp"
#include "cnz/geometry.hpp"
#include "cnz/jacobian.hpp"
#include "cnz/json_io.hpp"
#include "cnz/network.hpp"
#include "cnz/tropical.hpp"

using Json = nlohmann::ordered_json;
using namespace cnz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitExhausted = 4;

Json json_mat(const IMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::vector<int> parse_eps(const std::string& s) {
  std::vector<int> eps;
  for (char c : s) {
    if (c == '+')
      eps.push_back(1);
    else if (c == '-')
      eps.push_back(-1);
    else if (c == '0')
      eps.push_back(0);
    else
      fail(errc::parse_error, "sign sequence must use '+', '-', '0'");
  }
  return eps;
}

std::string eps_str(const std::vector<int>& eps) {
  std::string s;
  for (int e : eps) s += e > 0 ? '+' : (e < 0 ? '-' : '0');
  return s;
}

void emit(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    // text: flat "key: value" lines, matrices on one line per row
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << it.value().dump() << "\n";
  }
}

struct CommonOpts {
  std::string format = "json";
  uint64_t seed = 1;
};

int cmd_run(const std::string& path, bool matrices_only, const CommonOpts& opt) {
  MutationSequence gamma = parse_sequence_json(read_file(path));
  Trajectory tr = run_sequence(gamma, !matrices_only);
  Json out;
  out["schema"] = 1;
  out["command"] = "run";
  out["n"] = gamma.n();
  out["T"] = gamma.T();
  Json bs = Json::array();
  for (const auto& B : tr.B) bs.push_back(json_mat(B.b));
  out["B"] = bs;
  if (!matrices_only) {
    Json ys = Json::array();
    for (const auto& Y : tr.Y) {
      Json tuple = Json::array();
      for (const auto& y : Y) tuple.push_back(y.str());
      ys.push_back(tuple);
    }
    out["Y"] = ys;
  }
  out["mutation_loop"] = is_mutation_loop(gamma);
  emit(out, opt.format);
  return kExitOk;
}

int cmd_network(const std::string& path, const CommonOpts& opt) {
  MutationSequence gamma = parse_sequence_json(read_file(path));
  MutationNetwork net = build_network(gamma);
  if (opt.format == "dot") {
    std::cout << network_dot(net);
    return kExitOk;
  }
  NZMatrices nz = nz_matrices(net);
  Json out;
  out["schema"] = 1;
  out["command"] = "network";
  Json classes = Json::array();
  for (const auto& c : net.classes) {
    Json mem = Json::array();
    for (auto [i, t] : c.members) mem.push_back(Json::array({i, t}));
    classes.push_back(mem);
  }
  out["classes"] = classes;
  out["N0"] = json_mat(net.N0);
  out["Nplus"] = json_mat(net.Nplus);
  out["Nminus"] = json_mat(net.Nminus);
  out["Aplus"] = json_mat(nz.Aplus);
  out["Aminus"] = json_mat(nz.Aminus);
  out["fully_mutated"] = net.fully_mutated;
  emit(out, opt.format);
  return kExitOk;
}

int cmd_tropical(const std::string& path, const CommonOpts& opt) {
  MutationSequence gamma = parse_sequence_json(read_file(path));
  CMatrixTrace tr = c_matrix_run(gamma);
  Json out;
  out["schema"] = 1;
  out["command"] = "tropical";
  Json cs = Json::array();
  for (const auto& C : tr.C) cs.push_back(json_mat(C));
  out["C"] = cs;
  out["eps_trop"] = eps_str(tr.eps_trop);
  if (gamma.B.skew_symmetric()) {
    out["reddening"] = is_reddening(gamma);
    out["maximal_green"] = is_maximal_green(gamma);
  }
  emit(out, opt.format);
  return kExitOk;
}

Json report_json(const VerificationReport& rep, const std::string& check) {
  Json r;
  r["check"] = check;
  r["mode"] = rep.mode == VerifyMode::exact ? "exact" : "modular";
  r["equal"] = rep.equal;
  r["lhs"] = rep.lhs;
  r["rhs"] = rep.rhs;
  if (rep.mode == VerifyMode::modular) {
    r["trials"] = rep.trials;
    r["skipped_singular"] = rep.skipped;
    r["modulus"] = rep.modulus;
    r["degree_bound"] = rep.degree_bound;
    r["failure_bound_per_trial"] = rep.failure_bound;
  }
  if (!rep.note.empty()) r["note"] = rep.note;
  return r;
}

int verify_one(const std::string& path, const std::string& check, const std::string& mode_flag,
               int trials, uint64_t seed, bool all_signs, const std::string& eps_flag,
               Json& out) {
  MutationSequence gamma = parse_sequence_json(read_file(path));
  out["schema"] = 1;
  out["command"] = "verify";
  out["input"] = path;
  Json reports = Json::array();
  bool all_ok = true;

  VerifyMode mode;
  if (mode_flag == "exact")
    mode = VerifyMode::exact;
  else if (mode_flag == "modular")
    mode = VerifyMode::modular;
  else
    mode = gamma.n() * gamma.T() <= 12 ? VerifyMode::exact : VerifyMode::modular;

  if (check == "det" || check == "all") {
    VerificationReport rep = verify_det_formula(gamma, mode, trials, seed);
    all_ok = all_ok && rep.equal;
    reports.push_back(report_json(rep, "det-formula"));
  }
  if (check == "f-det" || check == "all") {
    std::vector<std::vector<int>> sign_sets;
    if (all_signs) {
      const int T = gamma.T();
      std::vector<int> eps(T, 1);
      long total = 1;
      for (int i = 0; i < T; ++i) total *= 3;
      for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < T; ++i) {
          eps[i] = (c % 3) - 1;  // -1, 0, +1
          c /= 3;
        }
        sign_sets.push_back(eps);
      }
    } else if (!eps_flag.empty()) {
      sign_sets.push_back(parse_eps(eps_flag));
    } else {
      sign_sets.push_back(c_matrix_run(gamma).eps_trop);
    }
    int checked = 0;
    bool ok = true;
    VerificationReport last;
    for (const auto& eps : sign_sets) {
      last = verify_f_det(gamma, eps);
      ++checked;
      if (!last.equal) {
        ok = false;
        break;
      }
    }
    all_ok = all_ok && ok;
    Json r = report_json(last, "f-det");
    r["sign_sequences_checked"] = checked;
    if (!all_signs) r["eps"] = eps_str(sign_sets.front());
    reports.push_back(r);
  }
  if (check == "tropical-limit" || check == "all") {
    VerificationReport rep = verify_tropical_limit(gamma);
    all_ok = all_ok && rep.equal;
    reports.push_back(report_json(rep, "tropical-limit"));
  }
  out["reports"] = reports;
  out["verified"] = all_ok;
  return all_ok ? kExitOk : kExitIdentityFailure;
}

int cmd_verify(const std::vector<std::string>& paths, const std::string& check,
               const std::string& mode, int trials, uint64_t seed, bool all_signs,
               const std::string& eps_flag, int jobs, const CommonOpts& opt) {
  std::vector<Json> outs(paths.size());
  std::vector<int> codes(paths.size(), kExitOk);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < paths.size();) {
      try {
        codes[i] = verify_one(paths[i], check, mode, trials, seed, all_signs, eps_flag, outs[i]);
      } catch (const error& e) {
        outs[i] = Json{{"schema", 1}, {"command", "verify"}, {"input", paths[i]},
                       {"error", e.what()}};
        codes[i] = e.code() == errc::parse_error ? kExitParseError : kExitInvariant;
      }
    }
  };
  if (jobs > 1 && paths.size() > 1) {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  } else {
    worker();
  }
  int code = kExitOk;
  for (size_t i = 0; i < paths.size(); ++i) {
    emit(outs[i], opt.format);
    code = std::max(code, codes[i]);
  }
  return code;
}

int cmd_reddening(const std::string& path, int depth, const CommonOpts& opt) {
  MutationSequence input = parse_sequence_json(read_file(path));
  ReddeningSearchResult res = search_reddening(input.B, depth);
  Json out;
  out["schema"] = 1;
  out["command"] = "reddening";
  out["depth"] = depth;
  out["states_visited"] = res.states_visited;
  if (res.found) {
    out["found"] = true;
    out["m"] = res.m;
    out["maximal_green"] = res.maximal_green;
    emit(out, opt.format);
    return kExitOk;
  }
  out["found"] = false;
  out["message"] = "no reddening sequence found up to depth " + std::to_string(depth);

  // Certificate: on sampled fully mutated sequences the signed NZ matrices
  // are column-balanced and singular, the computational content of the
  // once-punctured-surface non-existence theorem.
  std::mt19937_64 rng(opt.seed);
  const int n = input.B.n;
  bool columns_zero = true, dets_zero = true;
  int sequences_checked = 0;
  for (int trial = 0; trial < 20 && depth >= n; ++trial) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 1);
    std::shuffle(m.begin(), m.end(), rng);
    while (static_cast<int>(m.size()) < depth)
      m.push_back(static_cast<int>(rng() % n) + 1);
    MutationSequence gamma = make_sequence(input.B, m);
    if (!is_fully_mutated(gamma)) continue;
    ++sequences_checked;
    MutationNetwork net = build_network(gamma);
    NZMatrices nz = nz_matrices(net);
    for (int t = 0; t < gamma.T(); ++t) {
      int64_t sp = 0, sm = 0;
      for (int e = 0; e < nz.Aplus.rows(); ++e) {
        sp += nz.Aplus(e, t);
        sm += nz.Aminus(e, t);
      }
      columns_zero = columns_zero && sp == 0 && sm == 0;
    }
    for (int k = 0; k < 5; ++k) {
      std::vector<int> eps(gamma.T());
      for (auto& e : eps) e = rng() % 2 ? 1 : -1;
      dets_zero = dets_zero && det_int(signed_nz(net, eps)) == 0;
    }
  }
  Json cert;
  cert["sequences_checked"] = sequences_checked;
  cert["all_A_columns_sum_zero"] = columns_zero;
  cert["all_det_A_eps_zero"] = dets_zero;
  out["certificate"] = cert;
  emit(out, opt.format);
  return kExitExhausted;
}

int cmd_gluing(const std::string& path, const std::string& init_flag, double tol, int max_iter,
               bool positive, const CommonOpts& opt) {
  MutationSequence gamma = parse_sequence_json(read_file(path));
  GluingSystem sys = gluing_system(gamma);
  GluingSolution sol;
  if (positive) {
    sol = solve_gluing_positive(sys, tol);
  } else {
    std::vector<cplx> init(sys.T(), cplx(0.5, 0.8));
    if (!init_flag.empty()) {
      init.clear();
      std::istringstream in(init_flag);
      std::string pair;
      while (in >> pair) {
        auto comma = pair.find(',');
        require(comma != std::string::npos, errc::parse_error, "--init wants re,im pairs");
        init.push_back(cplx(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))));
      }
      require(static_cast<int>(init.size()) == sys.T(), errc::parse_error,
              "--init needs one re,im pair per mutation step");
    }
    sol = solve_gluing_complex(sys, init, tol, max_iter);
  }
  Json out;
  out["schema"] = 1;
  out["command"] = "gluing";
  out["Aplus"] = json_mat(sys.Aplus);
  out["Aminus"] = json_mat(sys.Aminus);
  Json zs = Json::array();
  for (const cplx& z : sol.zminus) zs.push_back(Json::array({z.real(), z.imag()}));
  out["z_minus"] = zs;
  out["residual"] = sol.residual;
  out["iterations"] = sol.iterations;
  out["volume"] = volume(sol);
  Json angles = Json::array();
  for (const cplx& z : sol.zminus) angles.push_back(std::arg(z));
  out["angles"] = angles;
  emit(out, opt.format);
  return kExitOk;
}

int cmd_dynkin(const std::string& type, int rank, double tol, const CommonOpts& opt) {
  require(type.size() == 1, errc::parse_error, "--type wants a single letter A/D/E");
  DynkinSpec spec = dynkin_spec(type[0], rank);
  DilogIdentityReport rep = dilog_identity_check(spec, tol);
  Json out;
  out["schema"] = 1;
  out["command"] = "dynkin";
  out["type"] = type + std::to_string(rank);
  out["dim_g"] = spec.dim_g;
  out["dual_coxeter"] = spec.dual_coxeter;
  out["zeta"] = rep.zeta;
  out["lhs"] = rep.lhs;
  out["rhs"] = rat_str(rep.rhs);
  out["rhs_value"] = rat_to_double(rep.rhs);
  out["abs_err"] = rep.abs_err;
  out["residual"] = rep.residual;
  emit(out, opt.format);
  return rep.abs_err < 1e-8 ? kExitOk : kExitIdentityFailure;
}

int cmd_triangulate(const std::string& path, const CommonOpts& opt) {
  Triangulation tri = parse_triangulation_json(read_file(path));
  ExchangeMatrix B = b_from_triangulation(tri);
  Json out;
  out["schema"] = 1;
  out["command"] = "triangulate";
  out["B"] = json_mat(B.b);
  out["symmetrizer"] = B.d;
  emit(out, opt.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Y-seed mutation sequences, mutation networks, and their determinant identities"};
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the subcommand

  CommonOpts opt;
  app.add_option("--output", opt.format, "Output format: json or text (network also: dot)")
      ->default_val("json");
  app.add_option("--seed", opt.seed, "RNG seed for sampling")->default_val(1);

  std::string path, check = "det", mode = "auto", eps_flag, init_flag, dynkin_type = "A";
  std::vector<std::string> verify_paths;
  bool matrices_only = false, all_signs = false, positive = false;
  int trials = 8, depth = 8, max_iter = 100, rank = 2, jobs = 1;
  double tol = 1e-12;

  auto* run = app.add_subcommand("run", "Run a mutation sequence and print the trajectory");
  run->add_option("file", path)->required();
  run->add_flag("--matrices-only", matrices_only, "Skip the symbolic Y dynamics");

  auto* network = app.add_subcommand("network", "Mutation network and Neumann-Zagier matrices");
  network->add_option("file", path)->required();

  auto* verify = app.add_subcommand("verify", "Verify the determinant identities");
  verify->add_option("files", verify_paths)->required();
  verify->add_option("--check", check, "det | f-det | tropical-limit | all");
  verify->add_option("--mode", mode, "auto | exact | modular");
  verify->add_option("--trials", trials, "Modular sample count");
  verify->add_flag("--all-signs", all_signs, "f-det: all sign sequences in {+,-,0}^T");
  verify->add_option("--eps", eps_flag, "f-det: explicit sign sequence like '+-0'");
  verify->add_option("--jobs", jobs, "Parallel verification over input files");

  auto* tropical = app.add_subcommand("tropical", "C-matrix trace and tropical signs");
  tropical->add_option("file", path)->required();

  auto* reddening = app.add_subcommand("reddening", "Search for a reddening sequence");
  reddening->add_option("file", path)->required();
  reddening->add_option("--depth", depth, "Iterative deepening cap");

  auto* gluing = app.add_subcommand("gluing", "Solve the gluing equations");
  gluing->add_option("file", path)->required();
  gluing->add_option("--init", init_flag, "Initial point: 're,im re,im ...'");
  gluing->add_option("--tol", tol, "Residual tolerance");
  gluing->add_option("--max-iter", max_iter, "Newton iteration cap");
  gluing->add_flag("--positive", positive, "Positive real solver (Dynkin shape)");

  auto* dynkin = app.add_subcommand("dynkin", "Dynkin gluing solution and dilogarithm identity");
  dynkin->add_option("--type", dynkin_type, "A, D, or E")->required();
  dynkin->add_option("--rank", rank, "Rank n")->required();
  dynkin->add_option("--tol", tol, "Solver tolerance");

  auto* triangulate = app.add_subcommand("triangulate", "Exchange matrix of an ideal triangulation");
  triangulate->add_option("file", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParseError;
  }

  try {
    if (run->parsed()) return cmd_run(path, matrices_only, opt);
    if (network->parsed()) return cmd_network(path, opt);
    if (verify->parsed())
      return cmd_verify(verify_paths, check, mode, trials, opt.seed, all_signs, eps_flag, jobs,
                        opt);
    if (tropical->parsed()) return cmd_tropical(path, opt);
    if (reddening->parsed()) return cmd_reddening(path, depth, opt);
    if (gluing->parsed()) return cmd_gluing(path, init_flag, tol, max_iter, positive, opt);
    if (dynkin->parsed()) return cmd_dynkin(dynkin_type, rank, tol, opt);
    if (triangulate->parsed()) return cmd_triangulate(path, opt);
  } catch (const error& e) {
    Json out{{"schema", 1}, {"error", e.what()}, {"code", errc_name(e.code())}};
    std::cerr << out.dump(2) << "\n";
    return e.code() == errc::parse_error ? kExitParseError : kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
