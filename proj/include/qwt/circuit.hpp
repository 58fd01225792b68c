#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwt {

// Qubit numbering is global and LSB-first: sys occupies [0, sys), then the
// optional aux wire, then anc, then par, then scratch at the most-significant
// end. par is present in every builder layout; raw layouts (lowering unit
// tests) may drop everything but sys.
struct RegisterLayout {
  int sys = 0;
  int anc = 0;
  bool aux = false;
  bool par = true;
  int scratch = 0;

  static RegisterLayout raw(int wires) {
    RegisterLayout l;
    l.sys = wires;
    l.par = false;
    return l;
  }

  int width() const { return sys + (aux ? 1 : 0) + anc + (par ? 1 : 0) + scratch; }
  int sys_qubit(int i) const { return i; }
  int aux_qubit() const { return sys; }
  int anc_qubit(int i) const { return sys + (aux ? 1 : 0) + i; }
  int par_qubit() const { return sys + (aux ? 1 : 0) + anc; }
  int scratch_qubit(int i) const {
    return sys + (aux ? 1 : 0) + anc + (par ? 1 : 0) + i;
  }
  std::vector<int> sys_qubits() const;
  std::vector<int> anc_qubits() const;

  bool operator==(const RegisterLayout&) const = default;
};

enum class GateKind {
  NOT,
  H,
  Z,
  CNOT,
  CZ,
  TOFFOLI,
  MCX,
  RY,
  SWAP,
  ADD,
  SUB,
  SHUFFLE,
  INC,
  DEC,
  CONST_ADD,
  PREP_MACRO,
  UNPREP_MACRO,
  LINPREP_MACRO,
  UCRY,
  REFLECT,
};

const char* kind_name(GateKind k);
bool is_elementary(GateKind k);

struct Control {
  int qubit = 0;
  bool polarity = true;  // true: active on |1>
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind = GateKind::NOT;
  std::vector<int> targets;      // LSB-first register for multi-wire kinds
  std::vector<Control> controls;
  std::vector<int> operand;      // addend register (ADD/SUB), selector (UCRY)
  double angle = 0.0;            // RY
  std::vector<double> angles;    // UCRY, one per operand value
  std::uint64_t constant = 0;    // CONST_ADD
  std::vector<double> dense;     // PREP/UNPREP/LINPREP payload, row-major
  bool inverted = false;         // macro kinds without a named inverse
  std::vector<int> borrowed;     // wires borrowed by/during lowering

  bool operator==(const Gate&) const = default;
};

// Convenience constructors for the common gates.
Gate g_not(int t);
Gate g_h(int t);
Gate g_z(int t);
Gate g_cnot(int c, int t);
Gate g_cz(int c, int t);
Gate g_toffoli(int c0, int c1, int t);
Gate g_mcx(std::vector<int> controls, int t);
Gate g_ry(double angle, int t);
Gate g_swap(int a, int b);

struct Circuit {
  RegisterLayout layout;
  std::vector<Gate> gates;

  bool operator==(const Circuit&) const = default;
};

// Structural checks: wires in range, support sets disjoint, payload sizes
// consistent. Throws LayoutError / IndexError / DimensionError.
void validate_circuit(const Circuit& c);
void validate_gate(const Gate& g, int width);

// Sequential composition (a first). Layouts must match exactly.
Circuit compose(const Circuit& a, const Circuit& b);

// Gate-for-gate inverse; involutive.
Gate inverse(const Gate& g);
Circuit inverse(const Circuit& c);

// Adds one control to every gate, renaming X/Z-family kinds to their
// controlled forms. The control qubit must be outside every gate's support.
Gate controlled(const Gate& g, int control, bool polarity = true);
Circuit controlled(const Circuit& c, int control, bool polarity = true);

// All wires a gate touches (targets + controls + operand; borrowed excluded).
std::vector<int> gate_support(const Gate& g);

struct GateCostReport {
  long long not_count = 0;
  long long cnot_count = 0;
  long long toffoli_count = 0;
  long long h_count = 0;
  long long ry_count = 0;
  long long swap_count = 0;
  long long cz_count = 0;
  long long z_count = 0;
  long long ancilla_count = 0;
  long long borrowed_count = 0;
  long long total_elementary = 0;

  bool operator==(const GateCostReport&) const = default;
};

// JSON round trip for any circuit; QASM only for elementary-gate circuits.
// The QASM reader covers exactly the exported subset and recovers a raw
// layout of the same width; it backs the export round-trip checks.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);
std::string circuit_to_qasm(const Circuit& c);
Circuit circuit_from_qasm(const std::string& text);

}  // namespace qwt
