#ifndef CONEWIT_MATCORE_HPP
#define CONEWIT_MATCORE_HPP

#include <complex>
#include <Eigen/Dense>

#include "conewit/errors.hpp"

namespace conewit {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Relative tolerances used by every PSD / rank / sparsity decision.
/// psd_eps floors eigenvalues, zero_eps floors entry magnitudes; both are
/// taken relative to max(1, ||X||_F).
struct Tolerance {
  double psd_eps = 1e-9;
  double zero_eps = 1e-9;

  void validate() const {
    if (!(psd_eps > 0 && psd_eps <= 1e-2) || !(zero_eps > 0 && zero_eps <= 1e-2))
      throw Error(Errc::InvariantViolation, "tolerances must lie in (0, 1e-2]");
  }
};

struct EigenDecomposition {
  RVec eigenvalues;  // ascending
  CMat eigenvectors; // columns, orthonormal
};

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

struct Norms {
  double entrywise_one = 0.0;
  double trace_norm = 0.0;
  double frobenius = 0.0;
};

/// max(1, ||X||_F); the scale against which all relative tolerances are read.
double frob_scale(const CMat& x);

/// Throws NonSquare / NotHermitian unless ||X - X*||_F <= 1e-9 max(1, ||X||_F).
void require_hermitian(const CMat& x, const char* who);

bool all_finite(const CMat& x);

EigenDecomposition herm_eig(const CMat& x);

PsdResult is_psd(const CMat& x, const Tolerance& tol = {});

int rank_of(const CMat& x, const Tolerance& tol = {});

/// Transpose on the second tensor factor of a d^2 x d^2 matrix:
/// out[(i,j),(k,l)] = rho[(i,l),(k,j)]. Pure entry permutation, involutive.
CMat partial_transpose(const CMat& rho, int d);

/// M(X): |X_ii| on the diagonal, -|X_ij| off it.
CMat comparison_matrix(const CMat& x);

Norms norms(const CMat& x);

CMat diag_embed(const CVec& q);

template <typename DA, typename DB>
auto schur_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "schur_product: shapes differ");
  return (a.array() * b.array()).matrix().eval();
}

template <typename DA, typename DB>
CMat kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Complex(a(i, j)) * b;
  return out;
}

/// <A, B> = Tr(A* B).
template <typename DA, typename DB>
Complex frob_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "frob_inner: shapes differ");
  return (a.conjugate().array() * b.array()).sum();
}

} // namespace conewit

#endif
