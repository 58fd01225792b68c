#include "qwt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qwt/errors.hpp"

namespace qwt {

namespace {

constexpr int kUnitaryWidthCap = 12;

std::uint64_t value_of(std::uint64_t i, const std::vector<int>& wires) {
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < wires.size(); ++b) {
    v |= ((i >> wires[b]) & 1ull) << b;
  }
  return v;
}

std::uint64_t with_value(std::uint64_t i, const std::vector<int>& wires,
                         std::uint64_t v) {
  for (std::size_t b = 0; b < wires.size(); ++b) {
    const std::uint64_t mask = 1ull << wires[b];
    if ((v >> b) & 1ull)
      i |= mask;
    else
      i &= ~mask;
  }
  return i;
}

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t want = 0;

  explicit ControlMask(const std::vector<Control>& controls) {
    for (const Control& c : controls) {
      mask |= 1ull << c.qubit;
      if (c.polarity) want |= 1ull << c.qubit;
    }
  }
  bool active(std::uint64_t i) const { return (i & mask) == want; }
};

using Amp = std::complex<double>;

void apply_rotation(StateVector& s, int t, const ControlMask& ctl, double cos_v,
                    double sin_v) {
  const std::uint64_t bit = 1ull << t;
  const std::uint64_t dim = s.amplitudes.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & bit) || !ctl.active(i)) continue;
    const Amp a = s.amplitudes[i];
    const Amp b = s.amplitudes[i | bit];
    s.amplitudes[i] = cos_v * a - sin_v * b;
    s.amplitudes[i | bit] = sin_v * a + cos_v * b;
  }
}

// arithmetic kinds share one in-place permutation pass
void apply_permutation(StateVector& s, const Gate& g, const ControlMask& ctl) {
  const std::uint64_t dim = s.amplitudes.size();
  const std::uint64_t span = 1ull << g.targets.size();
  std::vector<Amp> out = s.amplitudes;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (!ctl.active(i)) continue;
    const std::uint64_t j = value_of(i, g.targets);
    std::uint64_t jp = j;
    switch (g.kind) {
      case GateKind::ADD:
        jp = (j + value_of(i, g.operand)) & (span - 1);
        break;
      case GateKind::SUB:
        jp = (j + span - value_of(i, g.operand)) & (span - 1);
        break;
      case GateKind::CONST_ADD:
        jp = (j + g.constant) & (span - 1);
        break;
      case GateKind::INC:
        jp = (j + 1) & (span - 1);
        break;
      case GateKind::DEC:
        jp = (j + span - 1) & (span - 1);
        break;
      case GateKind::SHUFFLE: {
        const int w = static_cast<int>(g.targets.size());
        if (!g.inverted)
          jp = (j >> 1) | ((j & 1ull) << (w - 1));
        else
          jp = ((j << 1) & (span - 1)) | (j >> (w - 1));
        break;
      }
      default:
        break;
    }
    out[with_value(i, g.targets, jp)] = s.amplitudes[i];
  }
  s.amplitudes.swap(out);
}

void apply_dense_block(StateVector& s, const Gate& g, const ControlMask& ctl) {
  const std::uint64_t dim = s.amplitudes.size();
  const std::size_t block = std::size_t{1} << g.targets.size();
  std::vector<Amp> in(block), out(block);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (value_of(i, g.targets) != 0 || !ctl.active(i)) continue;
    for (std::size_t c = 0; c < block; ++c)
      in[c] = s.amplitudes[with_value(i, g.targets, c)];
    for (std::size_t r = 0; r < block; ++r) {
      Amp acc = 0.0;
      if (!g.inverted) {
        for (std::size_t c = 0; c < block; ++c) acc += g.dense[r * block + c] * in[c];
      } else {
        // payload is orthogonal, so the inverse is the transpose
        for (std::size_t c = 0; c < block; ++c) acc += g.dense[c * block + r] * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t r = 0; r < block; ++r)
      s.amplitudes[with_value(i, g.targets, r)] = out[r];
  }
}

}  // namespace

StateVector zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

StateVector basis_state(int num_qubits, std::uint64_t index) {
  if (num_qubits < 0 || num_qubits > 30) throw DimensionError("qubit count out of range");
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes.assign(std::size_t{1} << num_qubits, 0.0);
  if (index >= s.amplitudes.size()) throw IndexError("basis index out of range");
  s.amplitudes[index] = 1.0;
  return s;
}

StateVector random_state(int num_qubits, std::uint64_t seed) {
  StateVector s = zero_state(num_qubits);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  double norm = 0.0;
  for (auto& a : s.amplitudes) {
    // Box-Muller, fully deterministic across platforms
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : s.amplitudes) a /= norm;
  return s;
}

double state_norm(const StateVector& s) {
  double n = 0.0;
  for (const auto& a : s.amplitudes) n += std::norm(a);
  return std::sqrt(n);
}

double max_amplitude_diff(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits) throw DimensionError("state widths differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  return m;
}

void apply_gate(const Gate& g, StateVector& s) {
  const ControlMask ctl(g.controls);
  const std::uint64_t dim = s.amplitudes.size();
  switch (g.kind) {
    case GateKind::NOT:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX: {
      const std::uint64_t bit = 1ull << g.targets[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) || !ctl.active(i)) continue;
        std::swap(s.amplitudes[i], s.amplitudes[i | bit]);
      }
      break;
    }
    case GateKind::Z:
    case GateKind::CZ: {
      const std::uint64_t bit = 1ull << g.targets[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) && ctl.active(i)) s.amplitudes[i] = -s.amplitudes[i];
      }
      break;
    }
    case GateKind::H: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      const std::uint64_t bit = 1ull << g.targets[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) || !ctl.active(i)) continue;
        const Amp a = s.amplitudes[i];
        const Amp b = s.amplitudes[i | bit];
        s.amplitudes[i] = (a + b) * inv_sqrt2;
        s.amplitudes[i | bit] = (a - b) * inv_sqrt2;
      }
      break;
    }
    case GateKind::RY:
      apply_rotation(s, g.targets[0], ctl, std::cos(g.angle / 2), std::sin(g.angle / 2));
      break;
    case GateKind::SWAP: {
      const std::uint64_t b0 = 1ull << g.targets[0];
      const std::uint64_t b1 = 1ull << g.targets[1];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (!(i & b0) || (i & b1) || !ctl.active(i)) continue;
        std::swap(s.amplitudes[i], s.amplitudes[(i ^ b0) | b1]);
      }
      break;
    }
    case GateKind::ADD:
    case GateKind::SUB:
    case GateKind::SHUFFLE:
    case GateKind::INC:
    case GateKind::DEC:
    case GateKind::CONST_ADD:
      apply_permutation(s, g, ctl);
      break;
    case GateKind::PREP_MACRO:
    case GateKind::UNPREP_MACRO:
    case GateKind::LINPREP_MACRO:
      apply_dense_block(s, g, ctl);
      break;
    case GateKind::UCRY: {
      const std::uint64_t bit = 1ull << g.targets[0];
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) || !ctl.active(i)) continue;
        const double theta = g.angles[value_of(i, g.operand)];
        const double c = std::cos(theta), v = std::sin(theta);
        const Amp a = s.amplitudes[i];
        const Amp b = s.amplitudes[i | bit];
        s.amplitudes[i] = c * a - v * b;
        s.amplitudes[i | bit] = v * a + c * b;
      }
      break;
    }
    case GateKind::REFLECT: {
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (ctl.active(i) && value_of(i, g.targets) != 0)
          s.amplitudes[i] = -s.amplitudes[i];
      }
      break;
    }
  }
}

StateVector apply(const Circuit& c, StateVector s) {
  if (c.layout.width() != s.num_qubits)
    throw DimensionError("circuit width " + std::to_string(c.layout.width()) +
                         " does not match state width " +
                         std::to_string(s.num_qubits));
  for (const Gate& g : c.gates) apply_gate(g, s);
  return s;
}

std::pair<double, StateVector> project_zero(const StateVector& s,
                                            const std::vector<int>& qubits) {
  std::uint64_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= s.num_qubits) throw IndexError("projection qubit out of range");
    mask |= 1ull << q;
  }
  double p = 0.0;
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    if ((i & mask) == 0) p += std::norm(s.amplitudes[i]);
  }
  if (p < 1e-300) throw ProjectionError("projection onto the zero branch is degenerate");
  StateVector out;
  out.num_qubits = s.num_qubits;
  out.amplitudes.assign(s.amplitudes.size(), 0.0);
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    if ((i & mask) == 0) out.amplitudes[i] = s.amplitudes[i] * scale;
  }
  return {p, out};
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits) throw DimensionError("state widths differ");
  Amp dot = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    dot += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::abs(dot);
}

Matrix unitary_of(const Circuit& c) {
  const int w = c.layout.width();
  if (w > kUnitaryWidthCap)
    throw DimensionError("unitary extraction capped at " +
                         std::to_string(kUnitaryWidthCap) + " qubits");
  const int dim = 1 << w;
  Matrix m(dim);
  for (int col = 0; col < dim; ++col) {
    StateVector out = apply(c, basis_state(w, col));
    for (int row = 0; row < dim; ++row) {
      m.at(row, col) = out.amplitudes[row].real();
    }
  }
  return m;
}

std::string dump_state(const StateVector& s) {
  std::ostringstream out;
  for (const auto& a : s.amplitudes) {
    out << format_real(a.real()) << " " << format_real(a.imag()) << "\n";
  }
  return out.str();
}

}  // namespace qwt
