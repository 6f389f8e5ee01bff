// End-to-end acceptance gate. Prints one line per criterion and exits
// nonzero if any of them fail.
#include <algorithm>
#include <chrono>
#include <ctime>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "topk/oracle.hpp"
#include "topk/preprocess.hpp"
#include "topk/topk.hpp"

using namespace topk;
using testutil::asg4;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Value nat(Nat n) { return Value(n); }

const Semigroup& nat_sg() { return builtin_semigroup("nat-plus"); }

// ---------------------------------------------------------------------------
// Criterion 1: the worked four-variable example, bit exact, under a second.

void criterion1() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    Circuit c = prepare(testutil::example1_circuit());
    ValueFunction nu = load_weights(nat_sg(), testutil::example1_weights_text(), 4);

    ok = ok && top_values(c, nat_sg(), nu, 2) == ValueList{nat(5), nat(3)};

    ScoredList s2 = top_solutions(c, nat_sg(), nu, 2);
    ok = ok && s2.size() == 2 && s2[0].value == nat(5) && s2[1].value == nat(3);
    ok = ok && s2[0].assignment.to_assignment(4) == asg4(1, 1, 1, 0);
    ok = ok && oracle::brute_check_solutions(c, nat_sg(), nu, 2, s2);

    ScoredList s10 = top_solutions(c, nat_sg(), nu, 10);
    std::vector<Value> profile;
    for (const Scored& s : s10) profile.push_back(s.value);
    ok = ok && profile == std::vector<Value>{nat(5), nat(3), nat(3), nat(2)};
    ok = ok && oracle::brute_check_solutions(c, nat_sg(), nu, 10, s10);

    Circuit t = transform(c, nat_sg(), nu, 2);
    auto models = oracle::enumerate_models(t);
    ok = ok && models == std::vector<Assignment>{asg4(0, 1, 1, 0),
                                                 asg4(1, 0, 1, 0),
                                                 asg4(1, 1, 1, 0)};
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    detail += " too slow";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", elapsed);
  report(1, "worked example golden suite", ok, detail.empty() ? buf : detail);
}

// ---------------------------------------------------------------------------
// Criteria 2, 3, 6: one 500-trial campaign, failures split by kind.

void criteria_2_3_6() {
  auto start = Clock::now();
  oracle::CampaignParams p;  // 500 trials, n <= 12, <= 200 nodes, k up to 16
  oracle::CampaignReport r = oracle::run_campaign(p);
  double elapsed = seconds_since(start);

  std::string equiv_fail, bound_fail, prep_fail;
  for (const std::string& f : r.failures) {
    if (f.find("exceeds bound") != std::string::npos)
      bound_fail = f;
    else if (f.find("prepare") != std::string::npos)
      prep_fail = f;
    else
      equiv_fail = f;
  }

  bool time_ok = elapsed < 300.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d trials in %.1fs", r.trials, elapsed);
  report(2, "oracle equivalence campaign", equiv_fail.empty() && time_ok,
         equiv_fail.empty() ? std::string(buf) : equiv_fail);
  std::snprintf(buf, sizeof buf, "largest transform output %zu nodes",
                r.max_transform_nodes);
  report(3, "transform size bound 16*|C|*k^2", bound_fail.empty(),
         bound_fail.empty() ? std::string(buf) : bound_fail);
  report(6, "preprocessing preserves models and structure", prep_fail.empty(),
         prep_fail);
}

// ---------------------------------------------------------------------------
// Criterion 4: runtime scaling. Conjoin variable-shifted copies of a base
// circuit to scale |C| without changing its prepared shape.

Circuit shifted_chain(const Circuit& base, int copies) {
  std::vector<Node> nodes;
  std::vector<NodeId> roots;
  int n = base.var_count();
  for (int copy = 0; copy < copies; ++copy) {
    NodeId off = static_cast<NodeId>(nodes.size());
    int shift = copy * n;
    for (NodeId i = 0; i < base.size(); ++i) {
      Node node = base.node(i);
      if (node.kind == NodeKind::Literal)
        node.literal += node.literal > 0 ? shift : -shift;
      for (NodeId& ch : node.children) ch += off;
      nodes.push_back(std::move(node));
    }
    roots.push_back(off + base.root());
  }
  while (roots.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < roots.size(); i += 2) {
      Node a;
      a.kind = NodeKind::And;
      a.children = {roots[i], roots[i + 1]};
      nodes.push_back(std::move(a));
      next.push_back(static_cast<NodeId>(nodes.size()) - 1);
    }
    if (roots.size() % 2) next.push_back(roots.back());
    roots = std::move(next);
  }
  return Circuit(std::move(nodes), roots[0], n * copies);
}

// CPU time, one warmup run, best of 12: wall-clock medians are too noisy
// under a shared scheduler to support ratio assertions.
double best_runtime(const Circuit& c, const ValueFunction& nu, std::size_t k) {
  auto cpu_now = [] {
    timespec ts;
    clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return ts.tv_sec + 1e-9 * ts.tv_nsec;
  };
  double best = 1e30;
  for (int rep = 0; rep < 13; ++rep) {
    double start = cpu_now();
    volatile std::size_t sink = top_solutions(c, nat_sg(), nu, k).size();
    (void)sink;
    double elapsed = cpu_now() - start;
    if (rep > 0) best = std::min(best, elapsed);
  }
  return best;
}

void criterion4() {
  bool ok = true;
  std::string detail;
  try {
    oracle::GeneratorParams gp;
    gp.seed = 31337;
    gp.var_count = 14;
    gp.target_nodes = 3000;
    gp.const_prob = 0.0;
    Circuit base = prepare(oracle::random_circuit(gp));

    std::vector<double> at_k8;
    std::mt19937_64 rng(5);
    for (int copies : {1, 2, 4, 8}) {
      Circuit c = shifted_chain(base, copies);
      ValueFunction nu(c.var_count(), nat(0));
      for (int v = 1; v <= c.var_count(); ++v)
        for (int sign : {1, -1})
          nu.set(sign * v, nat(std::uniform_int_distribution<Nat>(0, 1000)(rng)));
      at_k8.push_back(best_runtime(c, nu, 8));
      if (copies == 2) {
        double t8 = best_runtime(c, nu, 8);
        double t32 = best_runtime(c, nu, 32);
        double kratio = t32 / t8;
        char buf[64];
        std::snprintf(buf, sizeof buf, "k ratio %.2f;", kratio);
        detail += buf;
        if (kratio >= 8.0) ok = false;
      }
    }
    for (std::size_t i = 1; i < at_k8.size(); ++i) {
      double ratio = at_k8[i] / at_k8[i - 1];
      char buf[64];
      std::snprintf(buf, sizeof buf, " size ratio %.2f", ratio);
      detail += buf;
      if (ratio >= 3.0) ok = false;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "runtime scales linearly in size, near-linearly in k", ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 5: algebraic laws on 10^4 random triples per built-in.

void criterion5() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (const char* name : {"nat-plus", "unit-product"}) {
    const Semigroup& sg = builtin_semigroup(name);
    std::optional<Value> a = sg.least_absorptive();
    std::mt19937_64 rng(99);
    auto sample = [&]() -> Value {
      if (sg.name() == "nat-plus")
        return Value(std::uniform_int_distribution<Nat>(0, 1000000)(rng));
      long den = std::uniform_int_distribution<long>(1, 1000)(rng);
      return Value(Rational(std::uniform_int_distribution<long>(0, den)(rng), den));
    };
    for (int t = 0; ok && t < 10000; ++t) {
      Value p = sample(), q = sample(), r = sample();
      if (!(sg.combine(p, q) == sg.combine(q, p))) ok = false;
      if (!(sg.combine(sg.combine(p, q), r) == sg.combine(p, sg.combine(q, r))))
        ok = false;
      if (!(sg.less(p, q) || sg.less(q, p) || p == q)) ok = false;
      if (sg.less(p, q) && sg.less(q, p)) ok = false;
      const Value& lo = sg.less(p, q) ? p : q;
      const Value& hi = sg.less(p, q) ? q : p;
      if (!sg.leq(sg.combine(lo, r), sg.combine(hi, r))) ok = false;
      bool subcarrier = !a || (!(lo == *a) && !(hi == *a) && !(r == *a));
      if (subcarrier && sg.less(lo, hi) &&
          !sg.less(sg.combine(lo, r), sg.combine(hi, r)))
        ok = false;
      if (a && !(p == *a) && !(q == *a) && sg.combine(p, q) == *a) ok = false;
      if (!ok) detail = std::string(name) + " law violated";
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    detail += " too slow";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", elapsed);
  report(5, "semigroup law suite", ok, detail.empty() ? buf : detail);
}

// ---------------------------------------------------------------------------
// Criterion 7: top-k results at smaller k are prefixes of those at larger k.

void criterion7() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int i = 0; checked < 100 && i < 300; ++i) {
    oracle::GeneratorParams gp;
    gp.seed = 40000 + static_cast<std::uint64_t>(i);
    gp.var_count = 3 + i % 10;
    gp.target_nodes = 10 + (i * 3) % 150;
    Circuit c = prepare(oracle::random_circuit(gp));
    if (c.is_constant_false()) continue;
    ++checked;
    ValueFunction nu(c.var_count(), nat(0));
    for (int v = 1; v <= c.var_count(); ++v)
      for (int sign : {1, -1})
        nu.set(sign * v, nat(std::uniform_int_distribution<Nat>(0, 100)(rng)));
    ValueList big = top_values(c, nat_sg(), nu, 16);
    ScoredList big_sols = top_solutions(c, nat_sg(), nu, 16);
    for (std::size_t k : {1, 2, 5, 8}) {
      ValueList small = top_values(c, nat_sg(), nu, k);
      if (small.size() != std::min(k, big.size())) ok = false;
      for (std::size_t j = 0; ok && j < small.size(); ++j)
        if (!(small[j] == big[j])) ok = false;
      ScoredList sols = top_solutions(c, nat_sg(), nu, k);
      for (std::size_t j = 0; ok && j < sols.size(); ++j)
        if (!(sols[j].value == big_sols[j].value)) ok = false;
    }
    if (!ok) {
      detail = "instance seed " + std::to_string(gp.seed);
      break;
    }
  }
  report(7, "prefix monotonicity over 100 instances", ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criteria_2_3_6();
  criterion4();
  criterion5();
  criterion7();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
