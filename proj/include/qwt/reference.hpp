#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qwt/filters.hpp"

namespace qwt {

// Dense real square matrix of power-of-two dimension. Oracle path only;
// dimension capped at 2^12.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim);
  static Matrix identity(int dim);

  int dim() const { return dim_; }
  double& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  double at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  Matrix operator*(const Matrix& rhs) const;
  Matrix transpose() const;
  // Block-diagonal [this, rhs].
  Matrix direct_sum(const Matrix& rhs) const;
  // I_{2^copies_log2} tensor this.
  Matrix kron_identity_left(int copies_log2) const;
  // this as the leading block of a big_dim identity.
  Matrix embed_leading(int big_dim) const;

  std::vector<std::complex<double>> apply(
      const std::vector<std::complex<double>>& x) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  double max_abs_diff(const Matrix& rhs) const;
  // max-abs entry of A^T A - I.
  double unitarity_residual() const;
  bool is_permutation() const;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

enum class ShiftDirection { down, up };

// Cyclic shift by `power` steps on 2^n indices; down maps |j> to |j+1 mod 2^n>.
Matrix shift_matrix(int n, ShiftDirection dir, int power);

// Full 2^n x 2^n transform [H; G], rows strided by two with wraparound.
Matrix build_kernel(const WaveletFilter& f, int n);

// [H; G'] with the lower-half rows cyclically realigned so a singly controlled
// shift restores the original kernel.
Matrix build_modified_kernel(const WaveletFilter& f, int n);

// Basis permutation used by the select stage, one per coefficient index.
Matrix build_P(int ell, int n);

// sum_l h_l U_l with U_l = P_l for odd l and (Z tensor I) P_l for even l.
Matrix lcu_reconstruct(const WaveletFilter& f, int n);

// d-level pyramid transform; d=1 equals build_kernel.
Matrix multilevel_matrix(const WaveletFilter& f, int n, int d);

// d-level packet transform; every branch split at every level.
Matrix packet_matrix(const WaveletFilter& f, int n, int d);

// Convolution-and-downsample pyramid with periodic wraparound; output layout
// (a_d, d_d, d_{d-1}, ..., d_1).
std::vector<std::complex<double>> classical_dwt(
    const WaveletFilter& f, const std::vector<std::complex<double>>& signal,
    int d);
std::vector<double> classical_dwt(const WaveletFilter& f,
                                  const std::vector<double>& signal, int d);

// 17-significant-digit decimal rendering used by every text dump.
std::string format_real(double v);
std::string dump_matrix(const Matrix& mat);
// One value per line; blank lines skipped.
std::vector<double> load_signal(const std::string& path);

// Depth bound shared by the multilevel builders: 1 <= d and every level width
// satisfies 2^{n-s} >= M. Throws DepthError / DimensionError.
void check_depth(const WaveletFilter& f, int n, int d);

}  // namespace qwt
