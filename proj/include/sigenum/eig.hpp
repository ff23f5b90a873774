#pragma once

#include <complex>
#include <vector>

#include "sigenum/core.hpp"
#include "sigenum/randgen.hpp"

namespace sigenum {

/// Dense self-adjoint matrix, row-major. The imaginary plane is empty for
/// real symmetric matrices.
class HermitianMatrix {
 public:
  /// Validates self-adjointness to 1e-12 relative Frobenius tolerance, then
  /// stores (M + M')/2 so the result is exactly self-adjoint.
  static HermitianMatrix from_real(int n, std::vector<double> entries);
  static HermitianMatrix from_complex(int n, std::vector<std::complex<double>> entries);

  int order() const { return n_; }
  bool is_complex() const { return !im_.empty(); }
  double re(int i, int j) const { return re_[idx(i, j)]; }
  double im(int i, int j) const { return im_.empty() ? 0.0 : im_[idx(i, j)]; }
  std::complex<double> at(int i, int j) const { return {re(i, j), im(i, j)}; }
  double trace() const;
  double frobenius_norm() const;

  const std::vector<double>& real_plane() const { return re_; }
  const std::vector<double>& imag_plane() const { return im_; }

 private:
  friend HermitianMatrix sample_covariance(const SnapshotMatrix&);
  friend HermitianMatrix gram_matrix(const SnapshotMatrix&);
  HermitianMatrix(int n, std::vector<double> re, std::vector<double> im)
      : n_(n), re_(std::move(re)), im_(std::move(im)) {}
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// R = (1/m) X X'.
HermitianMatrix sample_covariance(const SnapshotMatrix& x);

/// G = (1/m) X' X, the m x m companion of the SCM. Its nonzero eigenvalues
/// coincide with those of sample_covariance(x).
HermitianMatrix gram_matrix(const SnapshotMatrix& x);

enum class EigenMethod {
  /// Cyclic Jacobi; complex input goes through the 2n x 2n real embedding.
  kJacobi,
  /// Householder reduction to real symmetric tridiagonal form, then implicit QL.
  kTridiagonalQl,
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr double kPairingTolerance = 1e-8;

/// All eigenvalues of `m`, sorted descending. Throws ConvergenceFailure if the
/// chosen iteration does not converge within its budget.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m,
                                          EigenMethod method = EigenMethod::kTridiagonalQl);

/// Sample spectrum of (1/m) X X'. When m < n the m x m Gram matrix is
/// diagonalized instead and the n - m structural zeros are appended.
SampleSpectrum scm_spectrum(const SnapshotMatrix& x,
                            EigenMethod method = EigenMethod::kTridiagonalQl);

namespace detail {

struct SymmetricEigensystem {
  std::vector<double> values;   // unsorted, in diagonal order
  std::vector<double> vectors;  // column j is the eigenvector of values[j], row-major n x n
};

/// Cyclic Jacobi on a real symmetric row-major n x n matrix.
SymmetricEigensystem jacobi_eigensystem(int n, std::vector<double> a, bool want_vectors);

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (e[i] couples i and i+1; size n-1 or n). Implicit QL with
/// Wilkinson shifts. Unsorted.
std::vector<double> tridiagonal_ql_eigenvalues(std::vector<double> d, std::vector<double> e);

}  // namespace detail

}  // namespace sigenum
