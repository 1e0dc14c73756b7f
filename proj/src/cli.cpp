#include "mrsat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrsat/fourier.hpp"
#include "mrsat/fpt.hpp"
#include "mrsat/generate.hpp"
#include "mrsat/io.hpp"
#include "mrsat/kernel2sat.hpp"
#include "mrsat/lin2.hpp"
#include "mrsat/selfcheck.hpp"

namespace mrsat {

namespace {

using Json = nlohmann::ordered_json;

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Exact integers everywhere: values beyond int64 are emitted as decimal
// strings rather than doubles.
Json exact(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::vector<std::int64_t> signed_literals(const Assignment& tau) {
  std::vector<std::int64_t> lits;
  lits.reserve(static_cast<size_t>(tau.n()));
  for (int v = 1; v <= tau.n(); ++v) lits.push_back(tau[v] > 0 ? v : -v);
  return lits;
}

void render_text(std::ostream& out, const Json& j, const std::string& prefix) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      render_text(out, value, name);
    } else if (value.is_array()) {
      out << name;
      for (const auto& e : value) out << ' ' << scalar(e);
      out << '\n';
    } else {
      out << name << ' ' << scalar(value) << '\n';
    }
  }
}

void emit(const Json& j, bool json_mode, std::ostream& out) {
  if (json_mode) {
    out << j.dump(2) << '\n';
  } else {
    render_text(out, j, "");
  }
}

struct CommonOpts {
  std::string input_path;
  std::string format = "text";
  int r_override = 0;

  bool json() const { return format == "json"; }
};

std::string slurp(const CommonOpts& o, std::istream& in) {
  std::ostringstream ss;
  if (o.input_path.empty()) {
    ss << in.rdbuf();
  } else {
    std::ifstream file(o.input_path);
    if (!file) throw Error("cannot open " + o.input_path);
    ss << file.rdbuf();
  }
  return ss.str();
}

CnfInstance load_cnf(const CommonOpts& o, std::istream& in) {
  std::optional<int> r;
  if (o.r_override != 0) r = o.r_override;
  return parse_dimacs(slurp(o, in), r);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path);
  file << content;
  if (!file.flush()) throw Error("cannot write " + path);
}

const char* route_name(DecisionRoute route) {
  switch (route) {
    case DecisionRoute::zero_polynomial: return "zero_polynomial";
    case DecisionRoute::threshold: return "threshold";
    case DecisionRoute::search: return "search";
  }
  return "?";
}

Json report(const char* command, const CnfInstance& f) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["r"] = f.r;
  j["n"] = f.n;
  j["m"] = f.m;
  return j;
}

// sat_count * 2^r must reach (2^r - 1) m + k
Json bound_numerator(const CnfInstance& f, std::int64_t k) {
  return exact(((BigInt(1) << f.r) - 1) * f.m + k);
}

Json stats_json(const DecisionStats& s) {
  Json j;
  j["terms"] = s.terms;
  j["l2"] = exact(s.l2);
  j["weight"] = exact(s.weight);
  j["support"] = s.support;
  return j;
}

int cmd_decide(const CommonOpts& o, std::int64_t k, bool with_witness, std::istream& in, std::ostream& out) {
  Timer timer;
  const CnfInstance f = load_cnf(o, in);
  const Decision d = decide_tlb(f, k);
  Json j = report(with_witness ? "witness" : "decide", f);
  j["k"] = k;
  j["bound_numerator"] = bound_numerator(f, k);
  j["verdict"] = d.yes ? "YES" : "NO";
  j["route"] = route_name(d.route);
  j["stats"] = stats_json(d.stats);
  if (with_witness && d.yes) {
    const Assignment w = find_witness(f, k, d);
    j["witness"] = signed_literals(w);
    j["sat"] = sat_count(w, f);
  }
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return d.yes ? 0 : 1;
}

int cmd_avg(const CommonOpts& o, std::istream& in, std::ostream& out) {
  Timer timer;
  const CnfInstance f = load_cnf(o, in);
  const Assignment tau = average_assignment(f);
  Json j = report("avg", f);
  j["guarantee_numerator"] = bound_numerator(f, 0);
  j["sat"] = sat_count(tau, f);
  j["assignment"] = signed_literals(tau);
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return 0;
}

int cmd_bikernel(const CommonOpts& o, std::int64_t k, const std::string& out_path, const std::string& dump_poly,
                 std::istream& in, std::ostream& out) {
  Timer timer;
  const CnfInstance f = load_cnf(o, in);
  const MultilinearPolynomial x = instance_to_polynomial(f);
  // A zero polynomial has no terms to translate; the empty system is
  // equivalent (both sides are YES exactly for k <= 0).
  const Lin2System sys = x.is_zero() ? make_lin2_system({}, f.n) : polynomial_to_lin2(x, k).system;
  write_file(out_path, to_lin2(sys, {"tlb-k " + std::to_string(k)}));
  if (!dump_poly.empty()) write_file(dump_poly, to_text(x));

  Json j = report("bikernel", f);
  j["k"] = k;
  j["terms"] = term_count(x);
  j["l2"] = exact(l2_norm_sq(x));
  j["equations"] = sys.equations.size();
  j["total_weight"] = sys.total_weight;
  j["out"] = out_path;
  if (!dump_poly.empty()) j["poly"] = dump_poly;
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return 0;
}

int cmd_kernel(const CommonOpts& o, std::int64_t k, int gadget_r, const std::string& out_path, std::istream& in,
               std::ostream& out) {
  Timer timer;
  const Lin2System sys = parse_lin2(slurp(o, in));
  int r = gadget_r;
  if (r == 0) {
    r = 2;
    for (const LinEquation& eq : sys.equations) r = std::max(r, static_cast<int>(eq.vars.size()));
  }
  const GadgetResult g = lin2_to_cnf(sys, r, k);
  write_file(out_path, to_dimacs(g.cnf, {"tlb-k " + std::to_string(g.k_prime)}));

  Json j = report("kernel", g.cnf);
  j["equations"] = sys.equations.size();
  j["total_weight"] = sys.total_weight;
  j["k"] = k;
  j["k_prime"] = g.k_prime;
  j["bound_numerator"] = bound_numerator(g.cnf, g.k_prime);
  j["out"] = out_path;
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return 0;
}

int cmd_kernel2(const CommonOpts& o, std::int64_t k, const std::string& out_path, int var_cap, std::istream& in,
                std::ostream& out) {
  Timer timer;
  const CnfInstance f = load_cnf(o, in);
  const Kernel2Result res = kernelize_2sat(f, k, var_cap);
  Json j = report("kernel2", f);
  j["k"] = k;
  j["bound_numerator"] = bound_numerator(f, k);
  j["removed_clauses"] = res.removed_clauses;
  j["significant"] = res.significant;
  int code = 0;
  switch (res.kind) {
    case Kernel2Kind::decided_yes:
      j["verdict"] = "YES";
      j["route"] = "significant-count";
      break;
    case Kernel2Kind::solved:
      j["verdict"] = *res.verdict ? "YES" : "NO";
      j["route"] = "solved";
      j["optimum"] = *res.optimum;
      code = *res.verdict ? 0 : 1;
      break;
    case Kernel2Kind::kernel:
      write_file(out_path, to_dimacs(res.kernel, {"tlb-offset " + std::to_string(res.removed_clauses)}));
      j["route"] = "kernel";
      j["kernel_n"] = res.kernel.n;
      j["kernel_m"] = res.kernel.m;
      // entry i is the source variable of kernel variable i+1 (0 = fresh)
      j["kernel_var_map"] =
          std::vector<int>(res.kernel_var_map.begin() + (res.kernel_var_map.empty() ? 0 : 1), res.kernel_var_map.end());
      j["out"] = out_path;
      break;
  }
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return code;
}

int cmd_oracle(const CommonOpts& o, int var_cap, int threads, std::istream& in, std::ostream& out) {
  Timer timer;
  const CnfInstance f = load_cnf(o, in);
  const OptResult opt = brute_force_opt(f, var_cap, threads);
  Json j = report("oracle", f);
  j["optimum"] = opt.value;
  j["assignment"] = signed_literals(opt.assignment);
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return 0;
}

int cmd_gen(const CommonOpts& o, const GenParams& params, const std::string& family, const std::string& out_path,
            std::ostream& out) {
  Timer timer;
  const CnfInstance f = generate(params);
  std::ostringstream comment;
  comment << "generated family=" << family << " r=" << params.r << " n=" << params.n << " m=" << params.m
          << " seed=" << params.seed;
  const std::string text = to_dimacs(f, {comment.str()});
  if (out_path.empty()) {
    out << text;  // the instance itself is the output
    return 0;
  }
  write_file(out_path, text);
  Json j = report("gen", f);
  j["family"] = family;
  j["seed"] = params.seed;
  j["out"] = out_path;
  j["elapsed_ms"] = timer.ms();
  emit(j, o.json(), out);
  return 0;
}

int cmd_selfcheck(const CommonOpts& o, std::ostream& out) {
  Timer timer;
  const std::vector<CheckResult> results = run_selfcheck();
  int failed = 0;
  for (const CheckResult& res : results) {
    if (!res.pass) ++failed;
  }
  if (o.json()) {
    Json j;
    j["schema"] = 1;
    j["command"] = "selfcheck";
    j["checks"] = Json::array();
    for (const CheckResult& res : results) {
      Json c;
      c["name"] = res.name;
      c["pass"] = res.pass;
      c["detail"] = res.detail;
      j["checks"].push_back(c);
    }
    j["failed"] = failed;
    j["elapsed_ms"] = timer.ms();
    emit(j, true, out);
  } else {
    for (const CheckResult& res : results) {
      out << (res.pass ? "ok   " : "FAIL ") << res.name << ": " << res.detail << '\n';
    }
    out << results.size() - failed << '/' << results.size() << " checks passed\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-r-SAT above the tight lower bound (1 - 2^-r) m", "mrsat"};
  app.require_subcommand(1);

  CommonOpts common;
  std::int64_t k = 0;
  std::string out_path;
  std::string dump_poly;
  int gadget_r = 0;
  int var_cap = 28;
  int threads = 1;
  std::string family;
  GenParams gen_params;

  auto add_io = [&common](CLI::App* sub) {
    sub->add_option("--input", common.input_path, "input file (default: standard input)");
    sub->add_option("--format", common.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_r = [&common](CLI::App* sub) {
    sub->add_option("--r", common.r_override, "clause width (default: width of the first clause)")
        ->check(CLI::Range(2, 10));
  };

  CLI::App* decide = app.add_subcommand("decide", "decide sat(F) >= ((2^r-1)m + k) / 2^r");
  add_io(decide);
  add_r(decide);
  decide->add_option("--k", k, "parameter k")->required()->check(CLI::NonNegativeNumber);

  CLI::App* witness = app.add_subcommand("witness", "decide and produce an assignment meeting the bound");
  add_io(witness);
  add_r(witness);
  witness->add_option("--k", k, "parameter k")->required()->check(CLI::NonNegativeNumber);

  CLI::App* avg = app.add_subcommand("avg", "greedy assignment satisfying at least (1 - 2^-r) m clauses");
  add_io(avg);
  add_r(avg);

  CLI::App* bikernel = app.add_subcommand("bikernel", "translate the instance polynomial into a lin2 system");
  add_io(bikernel);
  add_r(bikernel);
  bikernel->add_option("--k", k, "parameter k carried into the output header")->check(CLI::NonNegativeNumber);
  bikernel->add_option("--out", out_path, "lin2 output path")->required();
  bikernel->add_option("--dump-poly", dump_poly, "also write the polynomial, one term per line");

  CLI::App* kernel = app.add_subcommand("kernel", "expand a lin2 system into an exact-r CNF kernel");
  add_io(kernel);
  kernel->add_option("--k", k, "lin2 parameter k; the kernel carries k' = 2^{r-1} k")->check(CLI::NonNegativeNumber);
  kernel->add_option("--r", gadget_r, "clause width of the kernel (default: widest equation, at least 2)")
      ->check(CLI::Range(2, 10));
  kernel->add_option("--out", out_path, "DIMACS output path")->required();

  CLI::App* kernel2 = app.add_subcommand("kernel2", "2-SAT kernel with at most 3k-1 variables");
  add_io(kernel2);
  add_r(kernel2);
  kernel2->add_option("--k", k, "parameter k")->required()->check(CLI::NonNegativeNumber);
  kernel2->add_option("--out", out_path, "DIMACS output path for the kernel")->required();
  kernel2->add_option("--var-cap", var_cap, "exhaustive-solve variable cap");

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive enumeration");
  add_io(oracle);
  add_r(oracle);
  oracle->add_option("--var-cap", var_cap, "maximum number of variables to enumerate");
  oracle->add_option("--threads", threads, "worker threads for the enumeration")->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen", "generate a deterministic test instance");
  gen->add_option("--family", family, "random, tight_pairs, or planted")->required();
  gen->add_option("--r", gen_params.r, "clause width")->required()->check(CLI::Range(2, 10));
  gen->add_option("--n", gen_params.n, "number of variables")->required();
  gen->add_option("--m", gen_params.m, "number of clauses")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_params.seed, "64-bit seed");
  gen->add_option("--out", out_path, "write the instance here and report (default: print the instance)");
  gen->add_option("--format", common.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in property suites");
  selfcheck->add_option("--format", common.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (decide->parsed()) return cmd_decide(common, k, false, in, out);
    if (witness->parsed()) return cmd_decide(common, k, true, in, out);
    if (avg->parsed()) return cmd_avg(common, in, out);
    if (bikernel->parsed()) return cmd_bikernel(common, k, out_path, dump_poly, in, out);
    if (kernel->parsed()) return cmd_kernel(common, k, gadget_r, out_path, in, out);
    if (kernel2->parsed()) return cmd_kernel2(common, k, out_path, var_cap, in, out);
    if (oracle->parsed()) return cmd_oracle(common, var_cap, threads, in, out);
    if (gen->parsed()) {
      gen_params.family = family_from_string(family);
      return cmd_gen(common, gen_params, family, out_path, out);
    }
    if (selfcheck->parsed()) return cmd_selfcheck(common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace mrsat
