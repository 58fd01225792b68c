#pragma once

#include <cstdint>

#include "qwt/circuit.hpp"

namespace qwt {

// Multi-controlled NOT rewrite flavors: borrow_many spends k-2 borrowed
// wires for the flat Toffoli ladder; borrow_one gets by with a single
// borrowed wire via a balanced split, at roughly twice the Toffoli count.
enum class McxStrategy { borrow_many, borrow_one };

struct LoweringConfig {
  McxStrategy mcx = McxStrategy::borrow_many;
};

// Standalone rewrites on self-describing raw layouts. Wire conventions:
//   lower_mcx:        the gate's own layout; borrowed wires are the lowest
//                     indices outside the gate's support
//   lower_reflection: wires [0,m) carry the sign flip, wire m is a clean
//                     workspace wire (in |0> before and after)
//   lower_add:        width 2n+1: target [0,n), addend [n,n+m), carry n+m,
//                     clean extension wires fill the addend up to n bits
//   lower_const_add:  width 2n+1: target [0,n), carry n, load wires above
//   lower_shuffle:    wires [0,n), no helpers
//   lower_increment:  width 2m: counter [0,m), borrowed [m,2m) in any state
Circuit lower_mcx(const Gate& g, const RegisterLayout& layout, McxStrategy strategy);
Circuit lower_reflection(int m);
Circuit lower_add(int target_width, int addend_width);
Circuit lower_const_add(std::uint64_t c, int n);
Circuit lower_shuffle(int n);
Circuit lower_increment(int m);
Circuit lower_ucry(const Gate& g, const RegisterLayout& layout);

// Rewrites every gate to the elementary alphabet {NOT, H, Z, CNOT, CZ,
// TOFFOLI, RY, SWAP} with plain |1>-controls only. Clean helper wires are
// appended to the layout's scratch block as needed; borrowed wires are
// recorded per gate.
Circuit lower_circuit(const Circuit& c, const LoweringConfig& config = {});

// Per-kind census of an elementary-only circuit.
GateCostReport tally(const Circuit& c);

// tally(lower_circuit(c, config)); identical input always yields the
// identical report.
GateCostReport count_gates(const Circuit& c, const LoweringConfig& config = {});

}  // namespace qwt
