#include "topk/oracle.hpp"

#include <algorithm>
#include <random>

#include "topk/preprocess.hpp"

namespace topk::oracle {

std::vector<Assignment> enumerate_models(const Circuit& c, int var_cap) {
  int n = c.var_count();
  if (n > var_cap)
    throw std::invalid_argument("variable count exceeds brute-force cap");
  std::vector<Assignment> models;
  Assignment a(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (int v = 1; v <= n; ++v) a[v] = (m >> (n - v)) & 1u;
    if (evaluate(c, a)) models.push_back(a);
  }
  return models;
}

namespace {

std::vector<Value> sorted_model_values(const Circuit& c, const Semigroup& sg,
                                       const ValueFunction& nu, int var_cap) {
  std::vector<Value> values;
  for (const Assignment& m : enumerate_models(c, var_cap))
    values.push_back(assignment_value(sg, nu, m));
  std::sort(values.begin(), values.end(),
            [&](const Value& a, const Value& b) { return sg.less(b, a); });
  return values;
}

}  // namespace

ValueList brute_top_values(const Circuit& c, const Semigroup& sg,
                           const ValueFunction& nu, std::size_t k,
                           int var_cap) {
  ValueList out;
  for (const Value& v : sorted_model_values(c, sg, nu, var_cap)) {
    if (!out.empty() && out.back() == v) continue;
    out.push_back(v);
    if (out.size() == k) break;
  }
  return out;
}

bool brute_check_solution_assignments(const Circuit& c, const Semigroup& sg,
                                      const ValueFunction& nu, std::size_t k,
                                      const std::vector<Assignment>& candidate,
                                      int var_cap) {
  auto models = enumerate_models(c, var_cap);
  std::size_t expected = std::min(k, models.size());
  if (candidate.size() != expected) return false;
  // Distinct models of c.
  std::vector<Assignment> seen;
  for (const Assignment& a : candidate) {
    if (std::find(models.begin(), models.end(), a) == models.end())
      return false;
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) return false;
    seen.push_back(a);
  }
  // Profile must equal the optimal one.
  std::vector<Value> optimal = sorted_model_values(c, sg, nu, var_cap);
  optimal.resize(expected);
  std::vector<Value> profile;
  for (const Assignment& a : candidate)
    profile.push_back(assignment_value(sg, nu, a));
  std::sort(profile.begin(), profile.end(),
            [&](const Value& a, const Value& b) { return sg.less(b, a); });
  if (candidate.empty()) return true;
  return lex_compare(sg, profile, optimal) == 0;
}

bool brute_check_solutions(const Circuit& c, const Semigroup& sg,
                           const ValueFunction& nu, std::size_t k,
                           const ScoredList& candidate, int var_cap) {
  std::vector<Assignment> flat;
  for (const Scored& s : candidate) {
    flat.push_back(s.assignment.to_assignment(c.var_count()));
    // Reported value must match the assignment's value.
    if (!(assignment_value(sg, nu, flat.back()) == s.value)) return false;
  }
  return brute_check_solution_assignments(c, sg, nu, k, flat, var_cap);
}

bool brute_check_transform(const Circuit& c, const Circuit& transformed,
                           const Semigroup& sg, const ValueFunction& nu,
                           std::size_t k, int var_cap) {
  if (transformed.var_count() != c.var_count()) return false;
  ValueList keep = brute_top_values(c, sg, nu, k, var_cap);
  int n = c.var_count();
  Assignment a(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (int v = 1; v <= n; ++v) a[v] = (m >> (n - v)) & 1u;
    bool in_original = evaluate(c, a);
    bool expected =
        in_original &&
        (n >= 1 && std::find(keep.begin(), keep.end(),
                             assignment_value(sg, nu, a)) != keep.end());
    if (evaluate(transformed, a) != expected) return false;
  }
  return true;
}

namespace {

class Generator {
 public:
  Generator(const GeneratorParams& p, CircuitBuilder& b)
      : p_(p), b_(b), rng_(p.seed) {}

  NodeId gen(std::vector<int> vars, int budget) {
    if (vars.size() == 1 || budget < 6) return leaf(vars);
    // An And split quarantines part of the budget with few variables to
    // spend it on; skip it when the budget is large for the scope.
    if (chance(p_.and_ratio) && vars.size() >= 2 &&
        budget < 12 * static_cast<int>(vars.size())) {
      // Variable-partitioned conjunction.
      shuffle(vars);
      std::size_t cut =
          1 + std::uniform_int_distribution<std::size_t>(0, vars.size() - 2)(rng_);
      std::vector<int> left(vars.begin(), vars.begin() + cut);
      std::vector<int> right(vars.begin() + cut, vars.end());
      // Literal reuse makes planned and actual node counts diverge, so the
      // right side gets whatever the left side did not spend.
      int half = (budget - 1) / 2;
      std::size_t before = b_.size();
      NodeId l = gen(std::move(left), half);
      int used = static_cast<int>(b_.size() - before);
      NodeId r = gen(std::move(right), std::max(1, budget - 1 - used));
      return b_.add_and({l, r});
    }
    // Decision on a fresh variable.
    int x = pick_and_remove(vars);
    std::size_t before = b_.size();
    NodeId lo = branch(-x, vars, (budget - 5) / 2);
    int used = static_cast<int>(b_.size() - before);
    NodeId hi = branch(x, vars, std::max(1, budget - 5 - used));
    return b_.add_or({lo, hi}, x);
  }

 private:
  NodeId branch(int lit, const std::vector<int>& vars, int budget) {
    if (chance(p_.const_prob)) return b_.add_false();
    NodeId l = b_.add_and({b_.add_literal(lit), gen(vars, budget)});
    return l;
  }

  NodeId leaf(const std::vector<int>& vars) {
    int x = vars[std::uniform_int_distribution<std::size_t>(
        0, vars.size() - 1)(rng_)];
    switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
      case 0:
        return b_.add_literal(x);
      case 1:
        return b_.add_literal(-x);
      default:
        return b_.add_or({b_.add_literal(x), b_.add_literal(-x)}, x);
    }
  }

  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
  }
  void shuffle(std::vector<int>& v) { std::shuffle(v.begin(), v.end(), rng_); }
  int pick_and_remove(std::vector<int>& v) {
    std::size_t i =
        std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_);
    int x = v[i];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return x;
  }

  const GeneratorParams& p_;
  CircuitBuilder& b_;
  std::mt19937_64 rng_;
};

}  // namespace

Circuit random_circuit(const GeneratorParams& params) {
  if (params.var_count < 1 || params.var_count > 16)
    throw std::invalid_argument("generator variable count must be in 1..16");
  CircuitBuilder b(params.var_count);
  std::vector<int> vars(static_cast<std::size_t>(params.var_count));
  for (int v = 1; v <= params.var_count; ++v) vars[v - 1] = v;
  Generator g(params, b);
  NodeId root = g.gen(std::move(vars), params.target_nodes);
  return std::move(b).finish(root);
}

namespace {

ValueFunction random_weights(const Semigroup& sg, int n, std::mt19937_64& rng) {
  ValueFunction nu(n, sg.default_literal_value());
  bool nat = sg.name() == "nat-plus";
  for (int v = 1; v <= n; ++v) {
    for (int sign : {1, -1}) {
      if (nat) {
        nu.set(sign * v,
               Value(Nat{std::uniform_int_distribution<std::uint64_t>(
                   0, 1000000)(rng)}));
      } else {
        // Rationals d/100 with exact zeros mixed in so the absorptive
        // branch gets exercised.
        int d = std::uniform_int_distribution<int>(0, 100)(rng);
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.15) d = 0;
        nu.set(sign * v, Value(Rational(d, 100)));
      }
    }
  }
  return nu;
}

}  // namespace

CampaignReport run_campaign(const CampaignParams& params) {
  CampaignReport report;
  report.trials = params.trials;
  for (int trial = 0; trial < params.trials; ++trial) {
    std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(trial));
    GeneratorParams gp;
    gp.seed = rng();
    gp.var_count = std::uniform_int_distribution<int>(3, params.max_vars)(rng);
    gp.target_nodes =
        std::uniform_int_distribution<int>(10, params.max_nodes)(rng);
    std::size_t k = params.ks[static_cast<std::size_t>(trial) % params.ks.size()];
    report.trial_ks.push_back(k);
    const Semigroup& sg =
        builtin_semigroup(trial % 2 == 0 ? "nat-plus" : "unit-product");
    auto fail = [&](const std::string& what) {
      report.failures.push_back("trial " + std::to_string(trial) + " (" +
                                sg.name() + ", k=" + std::to_string(k) +
                                "): " + what);
    };

    try {
      Circuit raw = random_circuit(gp);
      Circuit c = prepare(raw);
      if (enumerate_models(c) != enumerate_models(raw)) {
        fail("prepare changed the model set");
        continue;
      }
      if (!is_prepared(c)) {
        fail("prepare output fails structural assumptions");
        continue;
      }
      if (c.var_count() < 1) {
        fail("generator produced zero variables");
        continue;
      }
      ValueFunction nu = random_weights(sg, c.var_count(), rng);

      if (c.is_constant_false()) {
        if (!top_values(c, sg, nu, k).empty()) fail("top_values on UNSAT");
        if (!top_solutions(c, sg, nu, k).empty()) fail("top_solutions on UNSAT");
        Circuit t = transform(c, sg, nu, k);
        if (!brute_check_transform(c, t, sg, nu, k)) fail("transform on UNSAT");
        continue;
      }

      ValueList tv = top_values(c, sg, nu, k);
      if (tv != brute_top_values(c, sg, nu, k)) {
        fail("top_values mismatch");
        continue;
      }
      ScoredList sols = top_solutions(c, sg, nu, k);
      if (!brute_check_solutions(c, sg, nu, k, sols)) {
        fail("top_solutions not an optimal model set");
        continue;
      }
      Circuit t = transform(c, sg, nu, k);
      if (!brute_check_transform(c, t, sg, nu, k)) {
        fail("transform model set mismatch");
        continue;
      }
      if (!check_decomposability(t).ok()) {
        fail("transform output not decomposable");
        continue;
      }
      if (!check_determinism_bruteforce(t).ok()) {
        fail("transform output not deterministic");
        continue;
      }
      std::size_t bound = 16 * c.size() * k * k;
      report.max_transform_nodes = std::max(report.max_transform_nodes, t.size());
      if (t.size() > bound) {
        fail("transform size " + std::to_string(t.size()) + " exceeds bound " +
             std::to_string(bound));
        continue;
      }
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
  }
  return report;
}

}  // namespace topk::oracle
