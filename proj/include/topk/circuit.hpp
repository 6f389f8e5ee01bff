#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topk {

using NodeId = std::uint32_t;
using VarSet = boost::dynamic_bitset<>;

enum class NodeKind : std::uint8_t { Literal, True, False, And, Or };

struct Node {
  NodeKind kind = NodeKind::True;
  int literal = 0;        // Literal nodes only; nonzero signed variable
  int decision_hint = 0;  // Or nodes only; 0 when absent, metadata only
  std::vector<NodeId> children;
};

/// Immutable d-DNNF circuit DAG. Nodes are stored in topological order:
/// every child index is strictly smaller than its parent's index.
class Circuit {
 public:
  Circuit(std::vector<Node> nodes, NodeId root, int var_count);

  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return root_; }
  int var_count() const { return var_count_; }
  const VarSet& vars_of(NodeId id) const { return vars_[id]; }

  bool is_constant_true() const;
  bool is_constant_false() const;

 private:
  std::vector<Node> nodes_;
  std::vector<VarSet> vars_;
  NodeId root_;
  int var_count_;
};

/// Incremental circuit construction. Literal nodes are cached so transforms
/// emit at most one node per signed literal; parse_nnf does not use the
/// builder and keeps the file's node layout verbatim.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int var_count) : var_count_(var_count) {}

  NodeId add_literal(int literal);
  NodeId add_true();
  NodeId add_false();
  NodeId add_and(std::vector<NodeId> children);
  NodeId add_or(std::vector<NodeId> children, int decision_hint = 0);

  std::size_t size() const { return nodes_.size(); }
  int var_count() const { return var_count_; }
  Circuit finish(NodeId root) &&;

 private:
  int var_count_;
  std::vector<Node> nodes_;
  std::vector<std::pair<int, NodeId>> literal_cache_;
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

Circuit parse_nnf(std::string_view text);
std::string write_nnf(const Circuit& c);

/// Total assignment, 1-indexed by variable (slot 0 unused), values 0/1.
using Assignment = std::vector<std::uint8_t>;

bool evaluate(const Circuit& c, const Assignment& assignment);

/// Truth value of every node under one total assignment, indexed by NodeId.
std::vector<std::uint8_t> evaluate_all(const Circuit& c,
                                       const Assignment& assignment);

struct StructuralReport {
  std::vector<NodeId> offending;
  bool ok() const { return offending.empty(); }
};

StructuralReport check_decomposability(const Circuit& c);
StructuralReport check_determinism_bruteforce(const Circuit& c,
                                              int var_cap = 20);

/// Structural isomorphism from the roots (same kinds, literals, child
/// structure), insensitive to node numbering and sharing layout.
bool structurally_equal(const Circuit& a, const Circuit& b);

}  // namespace topk
