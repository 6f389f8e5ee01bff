#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "topk/algebra.hpp"
#include "topk/circuit.hpp"

namespace topk {

/// Partial assignment as a binary concatenation tree whose leaves are
/// signed literals. Concatenation at And nodes is O(1); decomposability
/// guarantees the leaf variable sets stay disjoint. Flattening happens
/// only at the API boundary.
class AssignmentTree {
 public:
  AssignmentTree() = default;
  static AssignmentTree leaf(int literal);
  static AssignmentTree concat(const AssignmentTree& left,
                               const AssignmentTree& right);

  bool empty() const { return node_ == nullptr; }

  /// Leaves in |variable| order.
  std::vector<int> literals() const;

  /// Total assignment over 1..var_count; every variable must occur once.
  Assignment to_assignment(int var_count) const;

 private:
  struct TreeNode {
    int literal;  // 0 for internal concat nodes
    std::shared_ptr<const TreeNode> left, right;
  };
  std::shared_ptr<const TreeNode> node_;
};

struct Scored {
  Value value;
  AssignmentTree assignment;
};

/// Entries sorted non-increasing by value; at most k of them.
using ScoredList = std::vector<Scored>;

/// Strictly decreasing distinct values; at most k of them.
using ValueList = std::vector<Value>;

// Kernels shared by the three algorithms. Inputs must be sorted
// (non-increasing for solution lists, strictly decreasing for value lists).
ScoredList sorted_fusion_solutions(const ScoredList& a, const ScoredList& b,
                                   std::size_t k, const Semigroup& sg);
ScoredList sorted_product_solutions(const ScoredList& a, const ScoredList& b,
                                    std::size_t k, const Semigroup& sg);
ValueList sorted_fusion_values(const ValueList& a, const ValueList& b,
                               std::size_t k, const Semigroup& sg);
ValueList sorted_product_values(const ValueList& a, const ValueList& b,
                                std::size_t k, const Semigroup& sg);

/// Top-k solutions of a prepared d-DNNF circuit: min(k, |ValidA|) distinct
/// models whose value profile is lexicographically maximal. One bottom-up
/// sweep, each node computed once.
ScoredList top_solutions(const Circuit& c, const Semigroup& sg,
                         const ValueFunction& nu, std::size_t k);

/// Top-k values of a prepared d-DNNF circuit, strictly decreasing.
/// Requires an almost strictly monotone semigroup.
ValueList top_values(const Circuit& c, const Semigroup& sg,
                     const ValueFunction& nu, std::size_t k);

/// Per-node top-k value lists (indexed by NodeId), as retained by the
/// transformation. The root's list is the top_values result.
std::vector<ValueList> top_values_per_node(const Circuit& c,
                                           const Semigroup& sg,
                                           const ValueFunction& nu,
                                           std::size_t k);

/// Rewrites a prepared d-DNNF circuit into one accepting exactly the models
/// whose value is among the top-k values. Output is d-DNNF (decomposable
/// and deterministic) but not necessarily binary or smooth.
Circuit transform(const Circuit& c, const Semigroup& sg,
                  const ValueFunction& nu, std::size_t k);

/// Removes nodes unreachable from the root and shunts single-child nodes.
Circuit simplify_circuit(const Circuit& c);

}  // namespace topk
