#include "topk/preprocess.hpp"

#include <algorithm>

namespace topk {

namespace {

struct Rep {
  enum Tag { Mapped, ConstTrue, ConstFalse } tag = ConstTrue;
  NodeId id = 0;
};

NodeId balanced_and(CircuitBuilder& b, std::vector<NodeId> parts) {
  while (parts.size() > 1) {
    std::vector<NodeId> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(b.add_and({parts[i], parts[i + 1]}));
    if (parts.size() % 2 == 1) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.front();
}

Circuit constant_circuit(int var_count, bool value) {
  std::vector<Node> nodes(1);
  nodes[0].kind = value ? NodeKind::True : NodeKind::False;
  return Circuit(std::move(nodes), 0, var_count);
}

}  // namespace

Circuit reduce(const Circuit& c) {
  CircuitBuilder b(c.var_count());
  std::vector<Rep> rep(c.size());
  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        rep[i] = {Rep::Mapped, b.add_literal(n.literal)};
        break;
      case NodeKind::True:
        rep[i] = {Rep::ConstTrue, 0};
        break;
      case NodeKind::False:
        rep[i] = {Rep::ConstFalse, 0};
        break;
      case NodeKind::And: {
        std::vector<NodeId> kids;
        bool is_false = false;
        for (NodeId ch : n.children) {
          if (rep[ch].tag == Rep::ConstFalse) {
            is_false = true;
            break;
          }
          if (rep[ch].tag == Rep::ConstTrue) continue;
          kids.push_back(rep[ch].id);
        }
        if (is_false)
          rep[i] = {Rep::ConstFalse, 0};
        else if (kids.empty())
          rep[i] = {Rep::ConstTrue, 0};
        else if (kids.size() == 1)
          rep[i] = {Rep::Mapped, kids[0]};
        else
          rep[i] = {Rep::Mapped, b.add_and(std::move(kids))};
        break;
      }
      case NodeKind::Or: {
        std::vector<NodeId> kids;
        bool is_true = false;
        for (NodeId ch : n.children) {
          if (rep[ch].tag == Rep::ConstTrue) {
            is_true = true;
            break;
          }
          if (rep[ch].tag == Rep::ConstFalse) continue;
          kids.push_back(rep[ch].id);
        }
        if (is_true)
          rep[i] = {Rep::ConstTrue, 0};
        else if (kids.empty())
          rep[i] = {Rep::ConstFalse, 0};
        else if (kids.size() == 1)
          rep[i] = {Rep::Mapped, kids[0]};
        else
          rep[i] = {Rep::Mapped, b.add_or(std::move(kids), n.decision_hint)};
        break;
      }
    }
  }
  const Rep& r = rep[c.root()];
  if (r.tag == Rep::ConstTrue) return constant_circuit(c.var_count(), true);
  if (r.tag == Rep::ConstFalse) return constant_circuit(c.var_count(), false);
  // Unreachable nodes may have been emitted; strip via round trip of the
  // reachable part.
  Circuit out = std::move(b).finish(r.id);
  return parse_nnf(write_nnf(out));
}

Circuit binarize(const Circuit& c) {
  if (c.size() == 1) return parse_nnf(write_nnf(c));
  CircuitBuilder b(c.var_count());
  std::vector<NodeId> rep(c.size());
  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        rep[i] = b.add_literal(n.literal);
        break;
      case NodeKind::True:
      case NodeKind::False:
        throw std::invalid_argument("binarize expects a reduced circuit");
      case NodeKind::And:
      case NodeKind::Or: {
        // Left-leaning fold.
        NodeId acc = rep[n.children[0]];
        for (std::size_t j = 1; j < n.children.size(); ++j) {
          NodeId rhs = rep[n.children[j]];
          acc = n.kind == NodeKind::And
                    ? b.add_and({acc, rhs})
                    : b.add_or({acc, rhs}, n.decision_hint);
        }
        rep[i] = acc;
        break;
      }
    }
  }
  Circuit out = std::move(b).finish(rep[c.root()]);
  return parse_nnf(write_nnf(out));
}

Circuit smooth(const Circuit& c) {
  int n = c.var_count();
  if (c.size() == 1 && c.node(0).kind != NodeKind::Literal) {
    if (c.is_constant_false() || n == 0) return parse_nnf(write_nnf(c));
    // Constant True over n >= 1 variables: every assignment is a model.
    CircuitBuilder b(n);
    std::vector<NodeId> gadgets;
    for (int v = 1; v <= n; ++v)
      gadgets.push_back(
          b.add_or({b.add_literal(v), b.add_literal(-v)}, v));
    NodeId root = balanced_and(b, std::move(gadgets));
    return std::move(b).finish(root);
  }

  CircuitBuilder b(n);
  std::vector<NodeId> gadget(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> have_gadget(static_cast<std::size_t>(n) + 1, 0);
  auto gadget_for = [&](int v) {
    if (!have_gadget[v]) {
      gadget[v] = b.add_or({b.add_literal(v), b.add_literal(-v)}, v);
      have_gadget[v] = 1;
    }
    return gadget[v];
  };
  // Conjoin `id` with gadgets for every variable in `missing`, gadgets
  // grouped as a balanced tree so depth stays logarithmic.
  auto complete = [&](NodeId id, const VarSet& missing) {
    if (missing.none()) return id;
    std::vector<NodeId> gs;
    for (std::size_t v = missing.find_first(); v != VarSet::npos;
         v = missing.find_next(v))
      gs.push_back(gadget_for(static_cast<int>(v)));
    return b.add_and({id, balanced_and(b, std::move(gs))});
  };

  std::vector<NodeId> rep(c.size());
  for (NodeId i = 0; i <= c.root(); ++i) {
    const Node& nd = c.node(i);
    switch (nd.kind) {
      case NodeKind::Literal:
        rep[i] = b.add_literal(nd.literal);
        break;
      case NodeKind::True:
      case NodeKind::False:
        throw std::invalid_argument("smooth expects a reduced circuit");
      case NodeKind::And:
        rep[i] = b.add_and({rep[nd.children[0]], rep[nd.children[1]]});
        break;
      case NodeKind::Or: {
        std::vector<NodeId> kids;
        for (NodeId ch : nd.children) {
          VarSet missing = c.vars_of(i) - c.vars_of(ch);
          kids.push_back(complete(rep[ch], missing));
        }
        rep[i] = b.add_or(std::move(kids), nd.decision_hint);
        break;
      }
    }
  }
  VarSet all(static_cast<std::size_t>(n) + 1);
  all.set();
  all.reset(0);
  NodeId root = complete(rep[c.root()], all - c.vars_of(c.root()));
  Circuit out = std::move(b).finish(root);
  return parse_nnf(write_nnf(out));
}

Circuit prepare(const Circuit& c) { return smooth(binarize(reduce(c))); }

bool is_prepared(const Circuit& c) {
  if (c.size() == 1)
    return c.node(0).kind == NodeKind::Literal ||
           c.node(0).kind == NodeKind::True ||
           c.node(0).kind == NodeKind::False;
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::True:
      case NodeKind::False:
        return false;
      case NodeKind::And:
        if (n.children.size() != 2) return false;
        break;
      case NodeKind::Or:
        if (n.children.size() != 2) return false;
        if (c.vars_of(n.children[0]) != c.vars_of(n.children[1])) return false;
        break;
      case NodeKind::Literal:
        break;
    }
  }
  // Root completion: the whole declared variable set must be mentioned.
  VarSet all(static_cast<std::size_t>(c.var_count()) + 1);
  all.set();
  all.reset(0);
  return c.vars_of(c.root()) == all;
}

}  // namespace topk
