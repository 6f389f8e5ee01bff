#include "topk/topk.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_set>

namespace topk {

AssignmentTree AssignmentTree::leaf(int literal) {
  if (literal == 0) throw std::invalid_argument("literal must be nonzero");
  AssignmentTree t;
  t.node_ = std::make_shared<const TreeNode>(TreeNode{literal, nullptr, nullptr});
  return t;
}

AssignmentTree AssignmentTree::concat(const AssignmentTree& left,
                                      const AssignmentTree& right) {
  if (left.empty() || right.empty())
    throw std::invalid_argument("concat of empty assignment tree");
  AssignmentTree t;
  t.node_ = std::make_shared<const TreeNode>(TreeNode{0, left.node_, right.node_});
  return t;
}

std::vector<int> AssignmentTree::literals() const {
  std::vector<int> out;
  std::vector<const TreeNode*> stack;
  if (node_) stack.push_back(node_.get());
  while (!stack.empty()) {
    const TreeNode* n = stack.back();
    stack.pop_back();
    if (n->literal != 0) {
      out.push_back(n->literal);
    } else {
      stack.push_back(n->right.get());
      stack.push_back(n->left.get());
    }
  }
  std::sort(out.begin(), out.end(),
            [](int a, int b) { return std::abs(a) < std::abs(b); });
  return out;
}

Assignment AssignmentTree::to_assignment(int var_count) const {
  Assignment a(static_cast<std::size_t>(var_count) + 1, 0);
  std::vector<char> seen(static_cast<std::size_t>(var_count) + 1, 0);
  for (int lit : literals()) {
    int v = std::abs(lit);
    if (v > var_count || seen[v])
      throw std::invalid_argument("assignment tree is not a total assignment");
    seen[v] = 1;
    a[v] = lit > 0 ? 1 : 0;
  }
  for (int v = 1; v <= var_count; ++v)
    if (!seen[v])
      throw std::invalid_argument("assignment tree misses variable " +
                                  std::to_string(v));
  return a;
}

ScoredList sorted_fusion_solutions(const ScoredList& a, const ScoredList& b,
                                   std::size_t k, const Semigroup& sg) {
  ScoredList out;
  out.reserve(std::min(k, a.size() + b.size()));
  std::size_t i = 0, j = 0;
  while (out.size() < k && (i < a.size() || j < b.size())) {
    // Ties prefer list a.
    if (j >= b.size() || (i < a.size() && !sg.less(a[i].value, b[j].value)))
      out.push_back(a[i++]);
    else
      out.push_back(b[j++]);
  }
  return out;
}

namespace {

struct Frontier {
  Value value;
  std::uint32_t i, j;
};

struct FrontierWorse {
  const Semigroup* sg;
  bool operator()(const Frontier& x, const Frontier& y) const {
    if (sg->less(x.value, y.value)) return true;
    if (sg->less(y.value, x.value)) return false;
    // Equal values: smaller (i, j) first.
    return std::make_pair(x.i, x.j) > std::make_pair(y.i, y.j);
  }
};

/// Lazy best-first sweep over the k x k product grid. Seeds (0,0); each pop
/// of (i,j) offers (i,j+1) and (i+1,0). `emit` receives pairs in
/// non-increasing value order and returns false to stop.
template <typename Emit>
void product_frontier(const std::vector<Value>& av,
                      const std::vector<Value>& bv, const Semigroup& sg,
                      Emit emit) {
  if (av.empty() || bv.empty())
    throw std::invalid_argument("sorted_product requires non-empty inputs");
  std::priority_queue<Frontier, std::vector<Frontier>, FrontierWorse> queue(
      FrontierWorse{&sg});
  std::unordered_set<std::uint64_t> pushed;
  auto push = [&](std::uint32_t i, std::uint32_t j) {
    if (i >= av.size() || j >= bv.size()) return;
    std::uint64_t key = (std::uint64_t{i} << 32) | j;
    if (!pushed.insert(key).second) return;
    queue.push(Frontier{sg.combine(av[i], bv[j]), i, j});
  };
  push(0, 0);
  while (!queue.empty()) {
    Frontier f = queue.top();
    queue.pop();
    if (!emit(f.value, f.i, f.j)) return;
    push(f.i, f.j + 1);
    push(f.i + 1, 0);
  }
}

std::vector<Value> values_of(const ScoredList& l) {
  std::vector<Value> v;
  v.reserve(l.size());
  for (const Scored& s : l) v.push_back(s.value);
  return v;
}

}  // namespace

ScoredList sorted_product_solutions(const ScoredList& a, const ScoredList& b,
                                    std::size_t k, const Semigroup& sg) {
  ScoredList out;
  out.reserve(std::min(k, a.size() * b.size()));
  product_frontier(values_of(a), values_of(b), sg,
                   [&](const Value& v, std::uint32_t i, std::uint32_t j) {
                     out.push_back(Scored{
                         v, AssignmentTree::concat(a[i].assignment,
                                                   b[j].assignment)});
                     return out.size() < k;
                   });
  return out;
}

ValueList sorted_fusion_values(const ValueList& a, const ValueList& b,
                               std::size_t k, const Semigroup& sg) {
  ValueList out;
  std::size_t i = 0, j = 0;
  while (out.size() < k && (i < a.size() || j < b.size())) {
    const Value* next;
    if (j >= b.size() || (i < a.size() && !sg.less(a[i], b[j])))
      next = &a[i++];
    else
      next = &b[j++];
    if (out.empty() || !(out.back() == *next)) out.push_back(*next);
  }
  return out;
}

ValueList sorted_product_values(const ValueList& a, const ValueList& b,
                                std::size_t k, const Semigroup& sg) {
  ValueList out;
  product_frontier(a, b, sg,
                   [&](const Value& v, std::uint32_t, std::uint32_t) {
                     // Pops are non-increasing, so duplicates of an emitted
                     // value can only equal the last one.
                     if (out.empty() || !(out.back() == v)) out.push_back(v);
                     return out.size() < k;
                   });
  return out;
}

namespace {

void require_runnable(const Circuit& c, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (c.var_count() < 1 && !c.is_constant_false())
    throw std::invalid_argument(
        "no variables declared; values are undefined");
}

}  // namespace

ScoredList top_solutions(const Circuit& c, const Semigroup& sg,
                         const ValueFunction& nu, std::size_t k) {
  require_runnable(c, k);
  if (c.is_constant_false()) return {};
  std::vector<ScoredList> memo(c.size());
  // Lists are released after their last parent consumed them, so peak
  // memory tracks the frontier width rather than the circuit size.
  std::vector<std::uint32_t> pending(c.size(), 0);
  for (NodeId i = 0; i <= c.root(); ++i)
    for (NodeId ch : c.node(i).children) ++pending[ch];
  pending[c.root()] = 1;
  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        memo[i] = {Scored{nu.of(n.literal), AssignmentTree::leaf(n.literal)}};
        break;
      case NodeKind::True:
      case NodeKind::False:
        throw std::invalid_argument("circuit is not prepared (constant leaf)");
      case NodeKind::Or:
        memo[i] = sorted_fusion_solutions(memo[n.children[0]],
                                          memo[n.children[1]], k, sg);
        break;
      case NodeKind::And:
        memo[i] = sorted_product_solutions(memo[n.children[0]],
                                           memo[n.children[1]], k, sg);
        break;
    }
    for (NodeId ch : n.children)
      if (--pending[ch] == 0) ScoredList().swap(memo[ch]);
  }
  return memo[c.root()];
}

std::vector<ValueList> top_values_per_node(const Circuit& c,
                                           const Semigroup& sg,
                                           const ValueFunction& nu,
                                           std::size_t k) {
  require_runnable(c, k);
  std::vector<ValueList> memo(c.size());
  if (c.is_constant_false()) return memo;
  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        memo[i] = {nu.of(n.literal)};
        break;
      case NodeKind::True:
      case NodeKind::False:
        throw std::invalid_argument("circuit is not prepared (constant leaf)");
      case NodeKind::Or:
        memo[i] = sorted_fusion_values(memo[n.children[0]],
                                       memo[n.children[1]], k, sg);
        break;
      case NodeKind::And:
        memo[i] = sorted_product_values(memo[n.children[0]],
                                        memo[n.children[1]], k, sg);
        break;
    }
  }
  return memo;
}

ValueList top_values(const Circuit& c, const Semigroup& sg,
                     const ValueFunction& nu, std::size_t k) {
  auto per_node = top_values_per_node(c, sg, nu, k);
  return per_node[c.root()];
}

Circuit simplify_circuit(const Circuit& c) {
  std::vector<char> reachable(c.size(), 0);
  reachable[c.root()] = 1;
  for (NodeId i = c.root() + 1; i-- > 0;) {
    if (!reachable[i]) continue;
    for (NodeId ch : c.node(i).children) reachable[ch] = 1;
  }
  CircuitBuilder b(c.var_count());
  std::vector<NodeId> rep(c.size(), 0);
  for (NodeId i = 0; i <= c.root(); ++i) {
    if (!reachable[i]) continue;
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        rep[i] = b.add_literal(n.literal);
        break;
      case NodeKind::True:
        rep[i] = b.add_true();
        break;
      case NodeKind::False:
        rep[i] = b.add_false();
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        if (n.children.size() == 1) {
          rep[i] = rep[n.children[0]];  // shunt
          break;
        }
        std::vector<NodeId> kids;
        kids.reserve(n.children.size());
        for (NodeId ch : n.children) kids.push_back(rep[ch]);
        rep[i] = n.kind == NodeKind::And
                     ? b.add_and(std::move(kids))
                     : b.add_or(std::move(kids), n.decision_hint);
        break;
      }
    }
  }
  Circuit out = std::move(b).finish(rep[c.root()]);
  return parse_nnf(write_nnf(out));  // drop nodes orphaned by shunting
}

Circuit transform(const Circuit& c, const Semigroup& sg,
                  const ValueFunction& nu, std::size_t k) {
  require_runnable(c, k);
  if (c.is_constant_false()) {
    std::vector<Node> nodes(1);
    nodes[0].kind = NodeKind::False;
    return Circuit(std::move(nodes), 0, c.var_count());
  }

  const auto L = top_values_per_node(c, sg, nu, k);
  const std::optional<Value> absorptive = sg.least_absorptive();
  auto is_absorptive = [&](const Value& v) {
    return absorptive && *absorptive == v;
  };

  CircuitBuilder b(c.var_count());
  // byval[n][idx] is the new node for (N, L[n][idx]).
  std::vector<std::vector<NodeId>> byval(c.size());
  // Lazy shared copy of the original subcircuits (the C^c copy).
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> copied(c.size(), kNone);
  auto copy_of = [&](NodeId top) {
    if (copied[top] != kNone) return copied[top];
    // Materialize the subcircuit rooted at `top` bottom-up, sharing nodes
    // already copied for other callers.
    std::vector<char> wanted(top + 1, 0);
    wanted[top] = 1;
    for (NodeId i = top + 1; i-- > 0;)
      if (wanted[i])
        for (NodeId ch : c.node(i).children) wanted[ch] = 1;
    for (NodeId i = 0; i <= top; ++i) {
      if (!wanted[i] || copied[i] != kNone) continue;
      const Node& n = c.node(i);
      switch (n.kind) {
        case NodeKind::Literal:
          copied[i] = b.add_literal(n.literal);
          break;
        case NodeKind::And:
        case NodeKind::Or: {
          std::vector<NodeId> kids;
          for (NodeId ch : n.children) kids.push_back(copied[ch]);
          copied[i] = n.kind == NodeKind::And
                          ? b.add_and(std::move(kids))
                          : b.add_or(std::move(kids), n.decision_hint);
          break;
        }
        default:
          throw std::invalid_argument("circuit is not prepared");
      }
    }
    return copied[top];
  };

  auto index_of = [&](NodeId n, const Value& v) -> std::ptrdiff_t {
    const ValueList& l = L[n];
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] == v) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal: {
        NodeId id = b.add_literal(n.literal);
        byval[i] = {id};
        break;
      }
      case NodeKind::True:
      case NodeKind::False:
        throw std::invalid_argument("circuit is not prepared (constant leaf)");
      case NodeKind::Or: {
        NodeId c0 = n.children[0], c1 = n.children[1];
        for (const Value& v : L[i]) {
          std::vector<NodeId> kids;
          if (auto idx = index_of(c0, v); idx >= 0)
            kids.push_back(byval[c0][idx]);
          if (auto idx = index_of(c1, v); idx >= 0)
            kids.push_back(byval[c1][idx]);
          assert(!kids.empty());
          byval[i].push_back(kids.size() == 1
                                 ? kids[0]
                                 : b.add_or(std::move(kids), n.decision_hint));
        }
        break;
      }
      case NodeKind::And: {
        NodeId c0 = n.children[0], c1 = n.children[1];
        for (const Value& v : L[i]) {
          std::vector<NodeId> parts;
          if (is_absorptive(v)) {
            auto ia0 = index_of(c0, v);
            auto ia1 = index_of(c1, v);
            assert(ia0 >= 0 || ia1 >= 0);
            if (ia0 >= 0 && ia1 >= 0) {
              // (N0,a) paired with everything from N1; then, to keep the
              // disjunction deterministic, (N1,a) paired with the value-u
              // slices of N0 for u != a. Since a is the least element of K,
              // a in L[c0] means L[c0] covers all of ValidV(c0).
              parts.push_back(
                  b.add_and({byval[c0][ia0], copy_of(c1)}));
              for (std::size_t u = 0; u < L[c0].size(); ++u) {
                if (static_cast<std::ptrdiff_t>(u) == ia0) continue;
                parts.push_back(
                    b.add_and({byval[c0][u], byval[c1][ia1]}));
              }
            } else if (ia0 >= 0) {
              parts.push_back(b.add_and({byval[c0][ia0], copy_of(c1)}));
            } else {
              parts.push_back(b.add_and({copy_of(c0), byval[c1][ia1]}));
            }
          } else {
            for (std::size_t ui = 0; ui < L[c0].size(); ++ui) {
              if (is_absorptive(L[c0][ui])) continue;
              for (std::size_t wj = 0; wj < L[c1].size(); ++wj) {
                if (is_absorptive(L[c1][wj])) continue;
                if (sg.combine(L[c0][ui], L[c1][wj]) == v)
                  parts.push_back(
                      b.add_and({byval[c0][ui], byval[c1][wj]}));
              }
            }
          }
          assert(!parts.empty());
          byval[i].push_back(parts.size() == 1 ? parts[0]
                                               : b.add_or(std::move(parts)));
        }
        break;
      }
    }
  }

  const std::vector<NodeId>& roots = byval[c.root()];
  NodeId root = roots.size() == 1
                    ? roots[0]
                    : b.add_or(std::vector<NodeId>(roots.begin(), roots.end()));
  Circuit out = std::move(b).finish(root);
  return simplify_circuit(out);
}

}  // namespace topk
