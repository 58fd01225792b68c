#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwt/circuit.hpp"
#include "qwt/reference.hpp"

namespace qwt {

// Dense statevector over the layout's global wire order; index bit q is
// qubit q. Norm stays 1 through every gate.
struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amplitudes;
};

StateVector zero_state(int num_qubits);
StateVector basis_state(int num_qubits, std::uint64_t index);

// Normalized complex Gaussian amplitudes from a fixed-sequence generator;
// identical output on every platform.
StateVector random_state(int num_qubits, std::uint64_t seed);

double state_norm(const StateVector& s);
double max_amplitude_diff(const StateVector& a, const StateVector& b);

void apply_gate(const Gate& g, StateVector& s);
StateVector apply(const Circuit& c, StateVector s);

// Probability of finding every listed qubit at |0>, plus the renormalized
// conditional state (full width, non-conforming amplitudes zeroed).
std::pair<double, StateVector> project_zero(const StateVector& s,
                                            const std::vector<int>& qubits);

// |<a|b>|
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

// Columns are apply(c, e_j); gate set is real so the matrix is too.
Matrix unitary_of(const Circuit& c);

// One "real imag" pair per line, full precision.
std::string dump_state(const StateVector& s);

}  // namespace qwt
