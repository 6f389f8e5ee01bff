#include "topk/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace topk {

Circuit::Circuit(std::vector<Node> nodes, NodeId root, int var_count)
    : nodes_(std::move(nodes)), root_(root), var_count_(var_count) {
  if (var_count_ < 0) throw std::invalid_argument("negative variable count");
  if (nodes_.empty()) throw std::invalid_argument("empty circuit");
  if (root_ >= nodes_.size()) throw std::invalid_argument("root out of range");
  vars_.reserve(nodes_.size());
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    VarSet vs(static_cast<std::size_t>(var_count_) + 1);
    switch (n.kind) {
      case NodeKind::Literal: {
        int v = std::abs(n.literal);
        if (v < 1 || v > var_count_)
          throw std::invalid_argument("literal variable out of range");
        vs.set(static_cast<std::size_t>(v));
        break;
      }
      case NodeKind::True:
      case NodeKind::False:
        break;
      case NodeKind::And:
      case NodeKind::Or:
        for (NodeId ch : n.children) {
          if (ch >= i)
            throw std::invalid_argument(
                "child index not smaller than parent (topological order "
                "violated)");
          vs |= vars_[ch];
        }
        break;
    }
    vars_.push_back(std::move(vs));
  }
}

bool Circuit::is_constant_true() const {
  return nodes_[root_].kind == NodeKind::True;
}

bool Circuit::is_constant_false() const {
  return nodes_[root_].kind == NodeKind::False;
}

NodeId CircuitBuilder::add_literal(int literal) {
  if (literal == 0 || std::abs(literal) > var_count_)
    throw std::invalid_argument("literal out of range");
  for (const auto& [lit, id] : literal_cache_)
    if (lit == literal) return id;
  Node n;
  n.kind = NodeKind::Literal;
  n.literal = literal;
  nodes_.push_back(std::move(n));
  NodeId id = static_cast<NodeId>(nodes_.size() - 1);
  literal_cache_.emplace_back(literal, id);
  return id;
}

NodeId CircuitBuilder::add_true() {
  Node n;
  n.kind = NodeKind::True;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId CircuitBuilder::add_false() {
  Node n;
  n.kind = NodeKind::False;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId CircuitBuilder::add_and(std::vector<NodeId> children) {
  Node n;
  n.kind = NodeKind::And;
  n.children = std::move(children);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId CircuitBuilder::add_or(std::vector<NodeId> children, int decision_hint) {
  Node n;
  n.kind = NodeKind::Or;
  n.decision_hint = decision_hint;
  n.children = std::move(children);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

Circuit CircuitBuilder::finish(NodeId root) && {
  return Circuit(std::move(nodes_), root, var_count_);
}

namespace {

struct TokenLine {
  int line_no;
  std::vector<long long> ints;
  char tag;  // 'n' for header, 'L', 'A', 'O'
};

}  // namespace

Circuit parse_nnf(std::string_view text) {
  std::vector<TokenLine> lines;
  int line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  long long header_v = 0, header_e = 0, header_n = 0;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    ++line_no;
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;  // blank
    if (line[first] == 'c') continue;               // comment

    std::istringstream iss{std::string(line)};
    std::string tag;
    iss >> tag;
    if (!have_header) {
      if (tag != "nnf") throw ParseError(line_no, "expected 'nnf v e n' header");
      if (!(iss >> header_v >> header_e >> header_n) || header_v < 1 ||
          header_n < 0)
        throw ParseError(line_no, "malformed header");
      std::string rest;
      if (iss >> rest) throw ParseError(line_no, "trailing garbage in header");
      have_header = true;
      continue;
    }
    if (tag.size() != 1 || (tag[0] != 'L' && tag[0] != 'A' && tag[0] != 'O'))
      throw ParseError(line_no, "unknown node tag '" + tag + "'");
    TokenLine tl;
    tl.line_no = line_no;
    tl.tag = tag[0];
    long long x;
    while (iss >> x) tl.ints.push_back(x);
    if (!iss.eof()) throw ParseError(line_no, "non-integer token on node line");
    lines.push_back(std::move(tl));
  }
  if (!have_header) throw ParseError(line_no, "missing 'nnf' header");
  if (static_cast<long long>(lines.size()) != header_v)
    throw ParseError(line_no, "header declares " + std::to_string(header_v) +
                                  " nodes but file has " +
                                  std::to_string(lines.size()));

  std::vector<Node> nodes;
  nodes.reserve(lines.size());
  long long edges = 0;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const TokenLine& tl = lines[idx];
    Node n;
    auto check_child = [&](long long ch) {
      if (ch < 0 || ch >= static_cast<long long>(idx))
        throw ParseError(tl.line_no, "child reference " + std::to_string(ch) +
                                         " not an earlier node line");
      return static_cast<NodeId>(ch);
    };
    switch (tl.tag) {
      case 'L': {
        if (tl.ints.size() != 1)
          throw ParseError(tl.line_no, "literal line needs exactly one value");
        long long lit = tl.ints[0];
        if (lit == 0 || std::abs(lit) > header_n)
          throw ParseError(tl.line_no,
                           "literal " + std::to_string(lit) + " out of range");
        n.kind = NodeKind::Literal;
        n.literal = static_cast<int>(lit);
        break;
      }
      case 'A': {
        if (tl.ints.empty())
          throw ParseError(tl.line_no, "A line needs a child count");
        long long count = tl.ints[0];
        if (count < 0 || static_cast<long long>(tl.ints.size()) != count + 1)
          throw ParseError(tl.line_no, "A line child count mismatch");
        if (count == 0) {
          n.kind = NodeKind::True;
        } else {
          n.kind = NodeKind::And;
          for (long long i = 1; i <= count; ++i)
            n.children.push_back(check_child(tl.ints[i]));
          edges += count;
        }
        break;
      }
      case 'O': {
        if (tl.ints.size() < 2)
          throw ParseError(tl.line_no, "O line needs hint and child count");
        long long hint = tl.ints[0];
        long long count = tl.ints[1];
        if (hint < 0 || hint > header_n)
          throw ParseError(tl.line_no, "decision hint out of range");
        if (count < 0 || static_cast<long long>(tl.ints.size()) != count + 2)
          throw ParseError(tl.line_no, "O line child count mismatch");
        if (count == 0) {
          n.kind = NodeKind::False;
        } else {
          n.kind = NodeKind::Or;
          n.decision_hint = static_cast<int>(hint);
          for (long long i = 2; i < count + 2; ++i)
            n.children.push_back(check_child(tl.ints[i]));
          edges += count;
        }
        break;
      }
    }
    nodes.push_back(std::move(n));
  }
  // Real NNF emitters are sloppy about the edge count; v/n mismatches are
  // hard errors, e is tolerated.
  (void)edges;
  return Circuit(std::move(nodes), static_cast<NodeId>(nodes.size() - 1),
                 static_cast<int>(header_n));
}

std::string write_nnf(const Circuit& c) {
  // Emit reachable nodes only, renumbered in topological order; the root is
  // the maximal reachable index, so it lands on the last line.
  std::vector<char> reachable(c.size(), 0);
  reachable[c.root()] = 1;
  for (NodeId i = c.root() + 1; i-- > 0;) {
    if (!reachable[i]) continue;
    for (NodeId ch : c.node(i).children) reachable[ch] = 1;
  }
  std::vector<NodeId> renum(c.size(), 0);
  NodeId next = 0;
  long long edges = 0;
  for (NodeId i = 0; i < c.size(); ++i) {
    if (!reachable[i]) continue;
    renum[i] = next++;
    edges += static_cast<long long>(c.node(i).children.size());
  }

  std::ostringstream out;
  out << "nnf " << next << ' ' << edges << ' ' << c.var_count() << '\n';
  for (NodeId i = 0; i < c.size(); ++i) {
    if (!reachable[i]) continue;
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal:
        out << "L " << n.literal << '\n';
        break;
      case NodeKind::True:
        out << "A 0\n";
        break;
      case NodeKind::False:
        out << "O 0 0\n";
        break;
      case NodeKind::And:
        out << "A " << n.children.size();
        for (NodeId ch : n.children) out << ' ' << renum[ch];
        out << '\n';
        break;
      case NodeKind::Or:
        out << "O " << n.decision_hint << ' ' << n.children.size();
        for (NodeId ch : n.children) out << ' ' << renum[ch];
        out << '\n';
        break;
    }
  }
  return out.str();
}

std::vector<std::uint8_t> evaluate_all(const Circuit& c,
                                       const Assignment& assignment) {
  if (assignment.size() != static_cast<std::size_t>(c.var_count()) + 1)
    throw std::invalid_argument("assignment does not cover every variable");
  std::vector<std::uint8_t> truth(c.size(), 0);
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    switch (n.kind) {
      case NodeKind::Literal: {
        int v = std::abs(n.literal);
        truth[i] = (assignment[v] != 0) == (n.literal > 0);
        break;
      }
      case NodeKind::True:
        truth[i] = 1;
        break;
      case NodeKind::False:
        truth[i] = 0;
        break;
      case NodeKind::And: {
        std::uint8_t t = 1;
        for (NodeId ch : n.children) t &= truth[ch];
        truth[i] = t;
        break;
      }
      case NodeKind::Or: {
        std::uint8_t t = 0;
        for (NodeId ch : n.children) t |= truth[ch];
        truth[i] = t;
        break;
      }
    }
  }
  return truth;
}

bool evaluate(const Circuit& c, const Assignment& assignment) {
  return evaluate_all(c, assignment)[c.root()] != 0;
}

StructuralReport check_decomposability(const Circuit& c) {
  StructuralReport report;
  VarSet seen(static_cast<std::size_t>(c.var_count()) + 1);
  for (NodeId i = 0; i < c.size(); ++i) {
    const Node& n = c.node(i);
    if (n.kind != NodeKind::And) continue;
    seen.reset();
    bool bad = false;
    for (NodeId ch : n.children) {
      if (c.vars_of(ch).intersects(seen)) {
        bad = true;
        break;
      }
      seen |= c.vars_of(ch);
    }
    if (bad) report.offending.push_back(i);
  }
  return report;
}

StructuralReport check_determinism_bruteforce(const Circuit& c, int var_cap) {
  if (c.var_count() > var_cap)
    throw std::invalid_argument("variable count exceeds brute-force cap");
  StructuralReport report;
  std::vector<char> bad(c.size(), 0);
  int n = c.var_count();
  Assignment a(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (int v = 1; v <= n; ++v) a[v] = (m >> (n - v)) & 1u;
    auto truth = evaluate_all(c, a);
    for (NodeId i = 0; i < c.size(); ++i) {
      const Node& nd = c.node(i);
      if (nd.kind != NodeKind::Or || bad[i]) continue;
      int sat = 0;
      for (NodeId ch : nd.children) sat += truth[ch];
      if (sat > 1) bad[i] = 1;
    }
  }
  for (NodeId i = 0; i < c.size(); ++i)
    if (bad[i]) report.offending.push_back(i);
  return report;
}

namespace {

bool equal_rec(const Circuit& a, NodeId na, const Circuit& b, NodeId nb,
               std::map<std::pair<NodeId, NodeId>, bool>& memo) {
  auto key = std::make_pair(na, nb);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const Node& x = a.node(na);
  const Node& y = b.node(nb);
  bool eq = x.kind == y.kind && x.literal == y.literal &&
            x.children.size() == y.children.size();
  for (std::size_t i = 0; eq && i < x.children.size(); ++i)
    eq = equal_rec(a, x.children[i], b, y.children[i], memo);
  memo[key] = eq;
  return eq;
}

}  // namespace

bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.var_count() != b.var_count()) return false;
  std::map<std::pair<NodeId, NodeId>, bool> memo;
  return equal_rec(a, a.root(), b, b.root(), memo);
}

}  // namespace topk
