#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topk/algebra.hpp"
#include "topk/circuit.hpp"
#include "topk/topk.hpp"

namespace topk::oracle {

/// All models of the circuit in lexicographic assignment order
/// (variable 1 most significant). Exponential; capped.
std::vector<Assignment> enumerate_models(const Circuit& c, int var_cap = 20);

/// The k largest distinct model values, by full enumeration.
ValueList brute_top_values(const Circuit& c, const Semigroup& sg,
                           const ValueFunction& nu, std::size_t k,
                           int var_cap = 20);

/// True iff the candidate is a set of distinct models of c of the right
/// size whose value profile equals the brute-force optimal profile.
bool brute_check_solutions(const Circuit& c, const Semigroup& sg,
                           const ValueFunction& nu, std::size_t k,
                           const ScoredList& candidate, int var_cap = 20);

/// Same check, for candidates given as flat assignments (e.g. from a file).
bool brute_check_solution_assignments(const Circuit& c, const Semigroup& sg,
                                      const ValueFunction& nu, std::size_t k,
                                      const std::vector<Assignment>& candidate,
                                      int var_cap = 20);

/// True iff ValidA(transformed) is exactly the models of c whose value is
/// among the brute-force top-k values, by double enumeration.
bool brute_check_transform(const Circuit& c, const Circuit& transformed,
                           const Semigroup& sg, const ValueFunction& nu,
                           std::size_t k, int var_cap = 20);

/// Random d-DNNF generator: decision-style Or nodes (split on a fresh
/// variable) and variable-partitioned And nodes, so outputs are
/// decomposable and deterministic by construction.
struct GeneratorParams {
  std::uint64_t seed = 0;
  int var_count = 8;       // <= 16
  int target_nodes = 50;
  double and_ratio = 0.35;   // chance an internal node splits variables
  double const_prob = 0.03;  // chance a decision branch is constant
};

Circuit random_circuit(const GeneratorParams& params);

/// Seeded end-to-end equivalence campaign: generate, prepare, run all three
/// algorithms, compare against brute force, check the transformed circuit's
/// structure and size bound.
struct CampaignParams {
  int trials = 500;
  int max_vars = 12;
  int max_nodes = 200;
  std::uint64_t seed = 42;
  std::vector<std::size_t> ks = {1, 2, 3, 5, 8, 16};
};

struct CampaignReport {
  int trials = 0;
  std::vector<std::size_t> trial_ks;
  std::vector<std::string> failures;  // empty when everything passed
  std::size_t max_transform_nodes = 0;
  bool ok() const { return failures.empty(); }
};

CampaignReport run_campaign(const CampaignParams& params);

}  // namespace topk::oracle
