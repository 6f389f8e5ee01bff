#pragma once

#include "topk/circuit.hpp"

namespace topk {

/// Constant folding, single-child shunting, unreachable-node removal.
/// The result has no constant leaf unless it is a single constant node.
Circuit reduce(const Circuit& c);

/// Replaces every n-ary internal node by a left-leaning tree of binary
/// nodes of the same connective. Expects a reduced circuit.
Circuit binarize(const Circuit& c);

/// Makes every Or node smooth by conjoining deficient children with shared
/// (x or not-x) gadgets, and completes the root to the full declared
/// variable set. Expects a reduced, binary circuit.
Circuit smooth(const Circuit& c);

/// reduce then binarize then smooth: the normal form the top-k algorithms
/// assume. A constant-False input stays constant False; constant True over
/// n >= 1 variables becomes a gadget conjunction accepting everything.
Circuit prepare(const Circuit& c);

/// True when the circuit satisfies the prepared-form assumptions: every
/// internal node binary, every Or node smooth, no constant leaves (unless
/// the whole circuit is one constant).
bool is_prepared(const Circuit& c);

}  // namespace topk
