#include "qwt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qwt/errors.hpp"

namespace qwt {

namespace {

constexpr int kMaxDim = 1 << 12;

void check_pow2_dim(int dim) {
  if (dim < 1 || dim > kMaxDim || (dim & (dim - 1)) != 0) {
    throw DimensionError("matrix dimension must be a power of two <= 4096, got " +
                         std::to_string(dim));
  }
}

void check_kernel_size(const WaveletFilter& f, int n) {
  if (n < 1) throw DimensionError("qubit count must be >= 1");
  if ((1 << n) < f.order) {
    throw DimensionError("2^" + std::to_string(n) + " < filter order " +
                         std::to_string(f.order) + ": rows would self-overlap");
  }
}

// g_l = (-1)^l h_{M-1-l}
std::vector<double> mirror_coeffs(const WaveletFilter& f) {
  const int M = f.order;
  std::vector<double> g(M);
  for (int l = 0; l < M; ++l) {
    g[l] = ((l % 2 == 0) ? 1.0 : -1.0) * f.coeffs[M - 1 - l];
  }
  return g;
}

}  // namespace

Matrix::Matrix(int dim) : dim_(dim) {
  check_pow2_dim(dim);
  a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (dim_ != rhs.dim_) throw DimensionError("matrix product dimension mismatch");
  Matrix out(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      const double a = at(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < dim_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Matrix Matrix::direct_sum(const Matrix& rhs) const {
  Matrix out(dim_ + rhs.dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out.at(i, j) = at(i, j);
  for (int i = 0; i < rhs.dim_; ++i)
    for (int j = 0; j < rhs.dim_; ++j)
      out.at(dim_ + i, dim_ + j) = rhs.at(i, j);
  return out;
}

Matrix Matrix::kron_identity_left(int copies_log2) const {
  Matrix out(dim_ << copies_log2);
  for (int c = 0; c < (1 << copies_log2); ++c) {
    const int off = c * dim_;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out.at(off + i, off + j) = at(i, j);
  }
  return out;
}

Matrix Matrix::embed_leading(int big_dim) const {
  if (big_dim < dim_) throw DimensionError("embed target smaller than block");
  Matrix out = Matrix::identity(big_dim);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out.at(i, j) = at(i, j);
  }
  return out;
}

std::vector<std::complex<double>> Matrix::apply(
    const std::vector<std::complex<double>>& x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw DimensionError("matrix apply dimension mismatch");
  }
  std::vector<std::complex<double>> y(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < dim_; ++j) {
      const double a = at(i, j);
      if (a != 0.0) acc += a * x[j];
    }
    y[i] = acc;
  }
  return y;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw DimensionError("matrix apply dimension mismatch");
  }
  std::vector<double> y(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
  if (dim_ != rhs.dim_) throw DimensionError("matrix diff dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
  }
  return m;
}

double Matrix::unitarity_residual() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < dim_; ++k) acc += at(k, i) * at(k, j);
      m = std::max(m, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  return m;
}

bool Matrix::is_permutation() const {
  for (int i = 0; i < dim_; ++i) {
    int row_ones = 0;
    int col_ones = 0;
    for (int j = 0; j < dim_; ++j) {
      const double r = at(i, j);
      const double c = at(j, i);
      if (r == 1.0) ++row_ones;
      else if (r != 0.0) return false;
      if (c == 1.0) ++col_ones;
    }
    if (row_ones != 1 || col_ones != 1) return false;
  }
  return true;
}

Matrix shift_matrix(int n, ShiftDirection dir, int power) {
  if (n < 1) throw DimensionError("shift_matrix needs n >= 1");
  if (power < 0) throw IndexError("shift power must be nonnegative");
  const int N = 1 << n;
  const int p = power % N;
  Matrix m(N);
  for (int j = 0; j < N; ++j) {
    const int i = dir == ShiftDirection::down ? (j + p) % N : (j - p % N + N) % N;
    m.at(i, j) = 1.0;
  }
  return m;
}

Matrix build_kernel(const WaveletFilter& f, int n) {
  check_kernel_size(f, n);
  const int N = 1 << n;
  const int M = f.order;
  const std::vector<double> g = mirror_coeffs(f);
  Matrix W(N);
  for (int i = 0; i < N / 2; ++i) {
    for (int j = 0; j < N; ++j) {
      const int k = ((j - 2 * i) % N + N) % N;
      if (k < M) {
        W.at(i, j) = f.coeffs[k];
        W.at(N / 2 + i, j) = g[k];
      }
    }
  }
  return W;
}

Matrix build_modified_kernel(const WaveletFilter& f, int n) {
  check_kernel_size(f, n);
  const int N = 1 << n;
  const int half = N / 2;
  const int K = f.index;
  const Matrix W = build_kernel(f, n);
  Matrix U(N);
  for (int i = 0; i < half; ++i) {
    for (int j = 0; j < N; ++j) {
      U.at(i, j) = W.at(i, j);
      // lower half realigned: row i takes kernel row (i - (K-1)) mod half
      const int src = ((i - (K - 1)) % half + half) % half;
      U.at(half + i, j) = W.at(half + src, j);
    }
  }
  return U;
}

Matrix build_P(int ell, int n) {
  if (n < 2) throw DimensionError("build_P needs n >= 2");
  const int N = 1 << n;
  if (ell < 0 || ell >= N) {
    throw IndexError("coefficient index " + std::to_string(ell) +
                     " out of range for n = " + std::to_string(n));
  }
  Matrix P(N);
  for (int j = 0; j < N; ++j) {
    int i;
    if ((j & 1) == (ell & 1)) {
      i = (((j - ell) % N + N) % N) / 2;
    } else {
      i = N / 2 + (((j + ell - 1) % N + N) % N) / 2;
    }
    P.at(i, j) = 1.0;
  }
  return P;
}

Matrix lcu_reconstruct(const WaveletFilter& f, int n) {
  check_kernel_size(f, n);
  const int N = 1 << n;
  Matrix out(N);
  for (int l = 0; l < f.order; ++l) {
    const Matrix P = build_P(l, n);
    const bool flip_high = (l % 2 == 0);
    for (int i = 0; i < N; ++i) {
      const double sign = (flip_high && i >= N / 2) ? -1.0 : 1.0;
      for (int j = 0; j < N; ++j) {
        if (P.at(i, j) != 0.0) out.at(i, j) += sign * f.coeffs[l] * P.at(i, j);
      }
    }
  }
  return out;
}

void check_depth(const WaveletFilter& f, int n, int d) {
  if (d < 1) throw DepthError("decomposition depth must be >= 1");
  check_kernel_size(f, n);
  for (int s = 0; s < d; ++s) {
    const int width = n - s;
    if (width < 1 || (1 << width) < f.order) {
      throw DepthError("level " + std::to_string(s + 1) + " width " +
                       std::to_string(width) + " violates 2^width >= " +
                       std::to_string(f.order));
    }
  }
}

Matrix multilevel_matrix(const WaveletFilter& f, int n, int d) {
  check_depth(f, n, d);
  if (d == 1) return build_kernel(f, n);
  // exact block recursion: deeper levels act on the running-average block only
  const Matrix upper = multilevel_matrix(f, n - 1, d - 1);
  const Matrix rest = Matrix::identity(1 << (n - 1));
  return upper.direct_sum(rest) * build_kernel(f, n);
}

Matrix packet_matrix(const WaveletFilter& f, int n, int d) {
  check_depth(f, n, d);
  if (d == 1) return build_kernel(f, n);
  const Matrix sub = packet_matrix(f, n - 1, d - 1);
  return sub.kron_identity_left(1) * build_kernel(f, n);
}

std::vector<std::complex<double>> classical_dwt(
    const WaveletFilter& f, const std::vector<std::complex<double>>& signal,
    int d) {
  int n = 0;
  while ((1u << n) < signal.size()) ++n;
  if ((1u << n) != signal.size()) {
    throw DimensionError("signal length must be a power of two");
  }
  check_depth(f, n, d);
  const std::vector<double> g = mirror_coeffs(f);
  std::vector<std::complex<double>> out(signal.size());
  std::vector<std::complex<double>> cur = signal;
  for (int s = 0; s < d; ++s) {
    const int Ns = 1 << (n - s);
    std::vector<std::complex<double>> avg(Ns / 2), det(Ns / 2);
    for (int i = 0; i < Ns / 2; ++i) {
      std::complex<double> a = 0.0, b = 0.0;
      for (int l = 0; l < f.order; ++l) {
        const std::complex<double> x = cur[(2 * i + l) % Ns];
        a += f.coeffs[l] * x;
        b += g[l] * x;
      }
      avg[i] = a;
      det[i] = b;
    }
    // details for this level occupy [Ns/2, Ns) of the final layout
    std::copy(det.begin(), det.end(), out.begin() + Ns / 2);
    cur = std::move(avg);
  }
  std::copy(cur.begin(), cur.end(), out.begin());
  return out;
}

std::vector<double> classical_dwt(const WaveletFilter& f,
                                  const std::vector<double>& signal, int d) {
  std::vector<std::complex<double>> cs(signal.begin(), signal.end());
  const auto cr = classical_dwt(f, cs, d);
  std::vector<double> out(cr.size());
  for (std::size_t i = 0; i < cr.size(); ++i) out[i] = cr[i].real();
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_matrix(const Matrix& mat) {
  std::ostringstream os;
  for (int i = 0; i < mat.dim(); ++i) {
    for (int j = 0; j < mat.dim(); ++j) {
      if (j) os << ' ';
      os << format_real(mat.at(i, j));
    }
    os << '\n';
  }
  return os.str();
}

std::vector<double> load_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal file: " + path);
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": not a real number: '" + tok + "'");
    }
  }
  if (vals.empty()) throw IoError("signal file has no values: " + path);
  return vals;
}

}  // namespace qwt
