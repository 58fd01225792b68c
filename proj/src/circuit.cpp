#include "qwt/circuit.hpp"

#include <algorithm>
#include <unordered_set>

#include "qwt/errors.hpp"

namespace qwt {

std::vector<int> RegisterLayout::sys_qubits() const {
  std::vector<int> v(sys);
  for (int i = 0; i < sys; ++i) v[i] = sys_qubit(i);
  return v;
}

std::vector<int> RegisterLayout::anc_qubits() const {
  std::vector<int> v(anc);
  for (int i = 0; i < anc; ++i) v[i] = anc_qubit(i);
  return v;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::NOT: return "NOT";
    case GateKind::H: return "H";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::MCX: return "MCX";
    case GateKind::RY: return "RY";
    case GateKind::SWAP: return "SWAP";
    case GateKind::ADD: return "ADD";
    case GateKind::SUB: return "SUB";
    case GateKind::SHUFFLE: return "SHUFFLE";
    case GateKind::INC: return "INC";
    case GateKind::DEC: return "DEC";
    case GateKind::CONST_ADD: return "CONST_ADD";
    case GateKind::PREP_MACRO: return "PREP_MACRO";
    case GateKind::UNPREP_MACRO: return "UNPREP_MACRO";
    case GateKind::LINPREP_MACRO: return "LINPREP_MACRO";
    case GateKind::UCRY: return "UCRY";
    case GateKind::REFLECT: return "REFLECT";
  }
  return "?";
}

bool is_elementary(GateKind k) {
  switch (k) {
    case GateKind::NOT:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::TOFFOLI:
    case GateKind::RY:
    case GateKind::SWAP:
      return true;
    default:
      return false;
  }
}

Gate g_not(int t) {
  Gate g;
  g.kind = GateKind::NOT;
  g.targets = {t};
  return g;
}

Gate g_h(int t) {
  Gate g;
  g.kind = GateKind::H;
  g.targets = {t};
  return g;
}

Gate g_z(int t) {
  Gate g;
  g.kind = GateKind::Z;
  g.targets = {t};
  return g;
}

Gate g_cnot(int c, int t) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.targets = {t};
  g.controls = {{c, true}};
  return g;
}

Gate g_cz(int c, int t) {
  Gate g;
  g.kind = GateKind::CZ;
  g.targets = {t};
  g.controls = {{c, true}};
  return g;
}

Gate g_toffoli(int c0, int c1, int t) {
  Gate g;
  g.kind = GateKind::TOFFOLI;
  g.targets = {t};
  g.controls = {{c0, true}, {c1, true}};
  return g;
}

Gate g_mcx(std::vector<int> controls, int t) {
  Gate g;
  g.targets = {t};
  for (int c : controls) g.controls.push_back({c, true});
  switch (controls.size()) {
    case 0: g.kind = GateKind::NOT; break;
    case 1: g.kind = GateKind::CNOT; break;
    case 2: g.kind = GateKind::TOFFOLI; break;
    default: g.kind = GateKind::MCX; break;
  }
  return g;
}

Gate g_ry(double angle, int t) {
  Gate g;
  g.kind = GateKind::RY;
  g.targets = {t};
  g.angle = angle;
  return g;
}

Gate g_swap(int a, int b) {
  Gate g;
  g.kind = GateKind::SWAP;
  g.targets = {a, b};
  return g;
}

std::vector<int> gate_support(const Gate& g) {
  std::vector<int> s = g.targets;
  for (const Control& c : g.controls) s.push_back(c.qubit);
  s.insert(s.end(), g.operand.begin(), g.operand.end());
  return s;
}

void validate_gate(const Gate& g, int width) {
  const auto support = gate_support(g);
  std::unordered_set<int> seen;
  for (int q : support) {
    if (q < 0 || q >= width) {
      throw IndexError("gate " + std::string(kind_name(g.kind)) + " touches qubit " +
                       std::to_string(q) + " outside width " + std::to_string(width));
    }
    if (!seen.insert(q).second) {
      throw LayoutError("gate " + std::string(kind_name(g.kind)) +
                        " reuses qubit " + std::to_string(q));
    }
  }
  const std::size_t nt = g.targets.size();
  switch (g.kind) {
    case GateKind::NOT:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::RY:
      if (nt != 1) throw LayoutError("single-target gate arity");
      break;
    case GateKind::CNOT:
    case GateKind::CZ:
      if (nt != 1 || g.controls.empty()) throw LayoutError("controlled-gate arity");
      break;
    case GateKind::TOFFOLI:
      if (nt != 1 || g.controls.size() < 2) throw LayoutError("TOFFOLI arity");
      break;
    case GateKind::MCX:
      if (nt != 1 || g.controls.size() < 3) throw LayoutError("MCX needs >= 3 controls");
      break;
    case GateKind::SWAP:
      if (nt != 2) throw LayoutError("SWAP arity");
      break;
    case GateKind::ADD:
    case GateKind::SUB:
      if (g.operand.empty() || nt == 0) throw LayoutError("adder needs two registers");
      if (g.operand.size() > nt) {
        throw DimensionError("addend register wider than target");
      }
      break;
    case GateKind::SHUFFLE:
      if (nt < 2) throw LayoutError("SHUFFLE needs >= 2 wires");
      break;
    case GateKind::INC:
    case GateKind::DEC:
      if (nt == 0) throw LayoutError("counter needs >= 1 wire");
      break;
    case GateKind::CONST_ADD:
      if (nt == 0) throw LayoutError("CONST_ADD needs >= 1 wire");
      if (nt < 64 && g.constant >= (1ull << nt)) {
        throw IndexError("CONST_ADD constant out of range");
      }
      break;
    case GateKind::PREP_MACRO:
    case GateKind::UNPREP_MACRO:
    case GateKind::LINPREP_MACRO: {
      const std::size_t dim = std::size_t{1} << nt;
      if (nt == 0 || g.dense.size() != dim * dim) {
        throw DimensionError("state-prep macro payload size mismatch");
      }
      break;
    }
    case GateKind::UCRY: {
      if (nt != 1) throw LayoutError("UCRY has one rotation target");
      if (g.angles.size() != (std::size_t{1} << g.operand.size())) {
        throw DimensionError("UCRY needs one angle per selector value");
      }
      break;
    }
    case GateKind::REFLECT:
      if (nt == 0) throw LayoutError("REFLECT needs >= 1 wire");
      break;
  }
}

void validate_circuit(const Circuit& c) {
  const int w = c.layout.width();
  for (const Gate& g : c.gates) validate_gate(g, w);
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (!(a.layout == b.layout)) {
    throw LayoutError("compose: register layouts differ");
  }
  Circuit out = a;
  out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
  return out;
}

Gate inverse(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::NOT:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
    case GateKind::SWAP:
    case GateKind::REFLECT:
      break;  // self-inverse
    case GateKind::RY:
      out.angle = -g.angle;
      break;
    case GateKind::UCRY:
      for (double& a : out.angles) a = -a;
      break;
    case GateKind::ADD:
      out.kind = GateKind::SUB;
      break;
    case GateKind::SUB:
      out.kind = GateKind::ADD;
      break;
    case GateKind::INC:
      out.kind = GateKind::DEC;
      break;
    case GateKind::DEC:
      out.kind = GateKind::INC;
      break;
    case GateKind::CONST_ADD: {
      const std::uint64_t span = 1ull << g.targets.size();
      out.constant = (span - g.constant) % span;
      break;
    }
    case GateKind::SHUFFLE:
    case GateKind::PREP_MACRO:
    case GateKind::UNPREP_MACRO:
    case GateKind::LINPREP_MACRO:
      out.inverted = !g.inverted;
      break;
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out;
  out.layout = c.layout;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    out.gates.push_back(inverse(*it));
  }
  return out;
}

Gate controlled(const Gate& g, int control, bool polarity) {
  for (int q : gate_support(g)) {
    if (q == control) {
      throw LayoutError("control qubit " + std::to_string(control) +
                        " already in the gate's support");
    }
  }
  Gate out = g;
  out.controls.push_back({control, polarity});
  // X / Z families change name with their control count
  switch (g.kind) {
    case GateKind::NOT:
      out.kind = GateKind::CNOT;
      break;
    case GateKind::CNOT:
      out.kind = GateKind::TOFFOLI;
      break;
    case GateKind::TOFFOLI:
      out.kind = GateKind::MCX;
      break;
    case GateKind::Z:
      out.kind = GateKind::CZ;
      break;
    default:
      break;
  }
  return out;
}

Circuit controlled(const Circuit& c, int control, bool polarity) {
  if (control < 0 || control >= c.layout.width()) {
    throw IndexError("control qubit outside layout");
  }
  Circuit out;
  out.layout = c.layout;
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) out.gates.push_back(controlled(g, control, polarity));
  return out;
}

}  // namespace qwt
