#pragma once

#include <string>
#include <vector>

namespace qwt {

// Orthogonal wavelet filter of even order M with coefficients h_0..h_{M-1}.
struct WaveletFilter {
  std::string name;
  int order = 0;  // M, even, >= 2
  int index = 0;  // K = M/2
  std::vector<double> coeffs;
};

struct ValidationReport {
  double sum_residual = 0.0;    // |sum h - sqrt(2)|
  double sumsq_residual = 0.0;  // |sum h^2 - 1|
  double shift_residual = 0.0;  // max over k != 0 of |sum_l h_l h_{l+2k}|
  bool odd_length = false;
  bool pass = false;
  std::string reason;  // nonempty iff pass is false
};

// Givens-layer factorization of a filter: K angles over a 2^m-dimensional
// zero-padded window, pad = (2^m - M)/2 on each side.
struct RotationCascade {
  std::vector<double> angles;  // theta_0..theta_{K-1}, each in (-pi, pi]
  int padded_width = 0;        // m = ceil(log2 M)
  int pad = 0;
};

// Registry identifiers: "haar" (alias of db1) and "db1".."db10".
const std::vector<std::string>& registry_names();
WaveletFilter builtin_filter(const std::string& name);

// Validating constructor; throws InvalidFilterError with the failing residual.
WaveletFilter make_filter(std::string name, std::vector<double> coeffs);

// Plain text, one coefficient per line; order inferred from line count.
WaveletFilter load_filter_file(const std::string& path);

// Registry lookup, then $QWT_REGISTRY_PATH/<name>.txt if the directory is set.
WaveletFilter resolve_filter(const std::string& name);

ValidationReport validate_filter(const std::vector<double>& coeffs);

// h = sum |h_l|; >= sqrt(2) for any valid filter.
double one_norm(const WaveletFilter& f);

// log2-ceiling width of the padded coefficient window.
int padded_qubits(const WaveletFilter& f);

// Success amplitudes of the two block encodings: 1/h and 2^{-m/2}.
double success_amplitude_sqrt(const WaveletFilter& f);
double success_amplitude_linear(const WaveletFilter& f);

// Back-substitution; throws FactorizationError when the residual after
// unwinding all layers exceeds 1e-8.
RotationCascade extract_rotation_angles(const WaveletFilter& f);

// Applies the brick-pattern layers to the midpoint basis vector; returns the
// length-2^m vector (0^pad, h, 0^pad) for a cascade extracted from h.
std::vector<double> reconstruct_from_angles(const RotationCascade& c);

}  // namespace qwt
