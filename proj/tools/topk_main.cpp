// Command-line front end: preprocess, solutions, values, transform, check.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "topk/algebra.hpp"
#include "topk/circuit.hpp"
#include "topk/oracle.hpp"
#include "topk/preprocess.hpp"
#include "topk/topk.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct CommonArgs {
  std::string circuit_path;
  std::string weights_path;
  std::string semigroup = "nat-plus";
  std::size_t k = 1;
  std::string format = "json";
  bool assume_prepared = false;
};

topk::Circuit load_circuit(const CommonArgs& args) {
  topk::Circuit c = topk::parse_nnf(read_file(args.circuit_path));
  return args.assume_prepared ? c : topk::prepare(c);
}

topk::ValueFunction load_nu(const CommonArgs& args, const topk::Semigroup& sg,
                            int var_count) {
  std::string text =
      args.weights_path.empty() ? std::string() : read_file(args.weights_path);
  return topk::load_weights(sg, text, var_count);
}

json solutions_json(const CommonArgs& args, const topk::Semigroup& sg,
                    const topk::ScoredList& sols) {
  json out;
  out["k"] = args.k;
  out["semigroup"] = sg.name();
  out["count"] = sols.size();
  json list = json::array();
  for (const topk::Scored& s : sols) {
    json entry;
    entry["value"] = sg.format_value(s.value);
    entry["literals"] = s.assignment.literals();
    list.push_back(std::move(entry));
  }
  out["solutions"] = std::move(list);
  return out;
}

int cmd_preprocess(const CommonArgs& args, const std::string& out_path) {
  topk::Circuit c = topk::prepare(topk::parse_nnf(read_file(args.circuit_path)));
  write_file(out_path, topk::write_nnf(c));
  return kExitOk;
}

int cmd_solutions(const CommonArgs& args, bool verify) {
  const topk::Semigroup& sg = topk::builtin_semigroup(args.semigroup);
  topk::Circuit original = topk::parse_nnf(read_file(args.circuit_path));
  topk::Circuit c = args.assume_prepared ? original : topk::prepare(original);
  if (c.var_count() < 1) throw std::runtime_error("circuit declares no variables");
  topk::ValueFunction nu = load_nu(args, sg, c.var_count());
  topk::ScoredList sols = topk::top_solutions(c, sg, nu, args.k);
  if (verify) {
    for (const topk::Scored& s : sols) {
      if (!topk::evaluate(original, s.assignment.to_assignment(c.var_count()))) {
        std::cerr << "verification failed: reported solution is not a model\n";
        return kExitCheckFailed;
      }
    }
  }
  json out = solutions_json(args, sg, sols);
  if (args.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "k " << args.k << "\nsemigroup " << sg.name() << "\ncount "
              << sols.size() << '\n';
    for (const topk::Scored& s : sols) {
      std::cout << sg.format_value(s.value) << " :";
      for (int lit : s.assignment.literals()) std::cout << ' ' << lit;
      std::cout << '\n';
    }
  }
  return kExitOk;
}

int cmd_values(const CommonArgs& args) {
  const topk::Semigroup& sg = topk::builtin_semigroup(args.semigroup);
  topk::Circuit c = load_circuit(args);
  if (c.var_count() < 1) throw std::runtime_error("circuit declares no variables");
  topk::ValueFunction nu = load_nu(args, sg, c.var_count());
  topk::ValueList values = topk::top_values(c, sg, nu, args.k);
  if (args.format == "json") {
    json out;
    out["k"] = args.k;
    out["semigroup"] = sg.name();
    json list = json::array();
    for (const topk::Value& v : values) list.push_back(sg.format_value(v));
    out["values"] = std::move(list);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "k " << args.k << "\nsemigroup " << sg.name() << "\nvalues";
    for (const topk::Value& v : values) std::cout << ' ' << sg.format_value(v);
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_transform(const CommonArgs& args, const std::string& out_path) {
  const topk::Semigroup& sg = topk::builtin_semigroup(args.semigroup);
  topk::Circuit c = load_circuit(args);
  if (c.var_count() < 1) throw std::runtime_error("circuit declares no variables");
  topk::ValueFunction nu = load_nu(args, sg, c.var_count());
  topk::Circuit t = topk::transform(c, sg, nu, args.k);
  write_file(out_path, topk::write_nnf(t));
  topk::ValueList kept = topk::top_values(c, sg, nu, args.k);
  json out;
  out["k"] = args.k;
  out["semigroup"] = sg.name();
  out["input_nodes"] = c.size();
  out["output_nodes"] = t.size();
  json list = json::array();
  for (const topk::Value& v : kept) list.push_back(sg.format_value(v));
  out["values_kept"] = std::move(list);
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_check(const CommonArgs& args, int trials, int max_vars,
              std::uint64_t seed, const std::string& candidate_path) {
  if (trials > 0) {
    topk::oracle::CampaignParams params;
    params.trials = trials;
    params.max_vars = max_vars;
    params.seed = seed;
    auto report = topk::oracle::run_campaign(params);
    json out;
    out["mode"] = "campaign";
    out["trials"] = report.trials;
    out["ks"] = report.trial_ks;
    out["failures"] = report.failures;
    out["pass"] = report.ok();
    std::cout << out.dump(2) << '\n';
    return report.ok() ? kExitOk : kExitCheckFailed;
  }

  const topk::Semigroup& sg = topk::builtin_semigroup(args.semigroup);
  topk::Circuit original = topk::parse_nnf(read_file(args.circuit_path));
  topk::Circuit c = topk::prepare(original);
  if (c.var_count() < 1) throw std::runtime_error("circuit declares no variables");
  topk::ValueFunction nu = load_nu(args, sg, c.var_count());

  json checks;
  bool pass = true;
  auto record = [&](const std::string& name, bool ok) {
    checks[name] = ok;
    pass = pass && ok;
  };

  if (!candidate_path.empty()) {
    // Verify an externally produced solutions JSON against the oracle.
    json cand = json::parse(read_file(candidate_path));
    std::vector<topk::Assignment> assignments;
    bool well_formed = true;
    try {
      for (const auto& entry : cand.at("solutions")) {
        topk::Assignment a(static_cast<std::size_t>(c.var_count()) + 1, 0);
        std::vector<char> seen(a.size(), 0);
        for (int lit : entry.at("literals").get<std::vector<int>>()) {
          int v = std::abs(lit);
          if (v < 1 || v > c.var_count() || seen[v]) throw std::runtime_error("bad literal");
          seen[v] = 1;
          a[v] = lit > 0 ? 1 : 0;
        }
        for (int v = 1; v <= c.var_count(); ++v)
          if (!seen[v]) throw std::runtime_error("partial assignment");
        assignments.push_back(std::move(a));
      }
    } catch (const std::exception&) {
      well_formed = false;
    }
    record("candidate_well_formed", well_formed);
    record("candidate_solutions",
           well_formed && topk::oracle::brute_check_solution_assignments(
                              c, sg, nu, args.k, assignments));
  } else {
    record("top_values",
           topk::top_values(c, sg, nu, args.k) ==
               topk::oracle::brute_top_values(c, sg, nu, args.k));
    record("top_solutions",
           topk::oracle::brute_check_solutions(
               c, sg, nu, args.k, topk::top_solutions(c, sg, nu, args.k)));
    topk::Circuit t = topk::transform(c, sg, nu, args.k);
    record("transform_models",
           topk::oracle::brute_check_transform(c, t, sg, nu, args.k));
    record("transform_decomposable", topk::check_decomposability(t).ok());
    record("transform_deterministic",
           topk::check_determinism_bruteforce(t).ok());
  }

  json out;
  out["mode"] = "bundle";
  out["checks"] = std::move(checks);
  out["pass"] = pass;
  std::cout << out.dump(2) << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k solutions, values, and transformations of d-DNNF circuits"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string out_path;
  bool verify = false;
  int trials = 0;
  int max_vars = 12;
  std::uint64_t seed = 42;
  std::string candidate_path;

  auto add_common = [&](CLI::App* cmd, bool needs_k) {
    cmd->add_option("--circuit", args.circuit_path, "NNF circuit file");
    cmd->add_option("--weights", args.weights_path, "literal weights file");
    cmd->add_option("--semigroup", args.semigroup, "nat-plus or unit-product");
    if (needs_k)
      cmd->add_option("--k", args.k, "number of top entries")
          ->check(CLI::PositiveNumber);
    cmd->add_option("--format", args.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--assume-prepared", args.assume_prepared,
                  "skip the implicit reduce/binarize/smooth pass");
  };

  CLI::App* pre = app.add_subcommand("preprocess", "normalize a circuit");
  pre->add_option("--circuit", args.circuit_path, "NNF circuit file")
      ->required();
  pre->add_option("--out", out_path, "output NNF path")->required();

  CLI::App* sol = app.add_subcommand("solutions", "compute top-k solutions");
  add_common(sol, true);
  sol->get_option("--circuit")->required();
  sol->add_flag("--verify", verify, "re-check each solution against the input");

  CLI::App* val = app.add_subcommand("values", "compute top-k values");
  add_common(val, true);
  val->get_option("--circuit")->required();

  CLI::App* tra = app.add_subcommand("transform", "top-k circuit transformation");
  add_common(tra, true);
  tra->get_option("--circuit")->required();
  tra->add_option("--out", out_path, "output NNF path")->required();

  CLI::App* chk = app.add_subcommand("check", "oracle verification");
  add_common(chk, true);
  chk->add_option("--trials", trials, "random-instance campaign size");
  chk->add_option("--max-vars", max_vars, "campaign variable cap");
  chk->add_option("--seed", seed, "campaign seed");
  chk->add_option("--candidate", candidate_path,
                  "solutions JSON to verify against the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pre->parsed()) return cmd_preprocess(args, out_path);
    if (sol->parsed()) return cmd_solutions(args, verify);
    if (val->parsed()) return cmd_values(args);
    if (tra->parsed()) return cmd_transform(args, out_path);
    if (chk->parsed())
      return cmd_check(args, trials, max_vars, seed, candidate_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
