#include "conewit/matcore.hpp"

#include <algorithm>
#include <cmath>

namespace conewit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadVertexSet: return "BadVertexSet";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::PreconditionViolation: return "PreconditionViolation";
    case Errc::NotInCone: return "NotInCone";
    case Errc::NotOnFace: return "NotOnFace";
    case Errc::NotDNN: return "NotDNN";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::WitnessNotInDualCone: return "WitnessNotInDualCone";
    case Errc::BadDiagonal: return "BadDiagonal";
    case Errc::FaceUnsatisfiable: return "FaceUnsatisfiable";
    case Errc::ParseError: return "ParseError";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

double frob_scale(const CMat& x) { return std::max(1.0, x.norm()); }

bool all_finite(const CMat& x) {
  return x.allFinite();
}

void require_hermitian(const CMat& x, const char* who) {
  if (x.rows() != x.cols())
    throw Error(Errc::NonSquare, std::string(who) + ": matrix is " + std::to_string(x.rows()) +
                                     "x" + std::to_string(x.cols()));
  const double dev = (x - x.adjoint()).norm();
  if (dev > 1e-9 * frob_scale(x))
    throw Error(Errc::NotHermitian,
                std::string(who) + ": ||X - X*||_F = " + std::to_string(dev));
}

EigenDecomposition herm_eig(const CMat& x) {
  require_hermitian(x, "herm_eig");
  // Symmetrize explicitly so the solver sees an exactly Hermitian input;
  // the deviation is already bounded by the precondition.
  const CMat h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw Error(Errc::InvariantViolation, "herm_eig: eigensolver failed to converge");
  return EigenDecomposition{es.eigenvalues(), es.eigenvectors()};
}

PsdResult is_psd(const CMat& x, const Tolerance& tol) {
  tol.validate();
  const auto ed = herm_eig(x);
  const double lmin = ed.eigenvalues.size() ? ed.eigenvalues(0) : 0.0;
  return PsdResult{lmin >= -tol.psd_eps * frob_scale(x), lmin};
}

int rank_of(const CMat& x, const Tolerance& tol) {
  tol.validate();
  const auto ed = herm_eig(x);
  const double floor = tol.zero_eps * frob_scale(x);
  int r = 0;
  for (Eigen::Index k = 0; k < ed.eigenvalues.size(); ++k)
    if (std::abs(ed.eigenvalues(k)) > floor) ++r;
  return r;
}

CMat partial_transpose(const CMat& rho, int d) {
  const Eigen::Index n = Eigen::Index(d) * d;
  if (rho.rows() != n || rho.cols() != n)
    throw Error(Errc::DimensionMismatch,
                "partial_transpose: expected " + std::to_string(n) + "x" + std::to_string(n));
  CMat out(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(i * d + j, k * d + l) = rho(i * d + l, k * d + j);
  return out;
}

CMat comparison_matrix(const CMat& x) {
  if (x.rows() != x.cols())
    throw Error(Errc::NonSquare, "comparison_matrix: input not square");
  CMat m(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      m(i, j) = (i == j) ? std::abs(x(i, j)) : -std::abs(x(i, j));
  return m;
}

Norms norms(const CMat& x) {
  Norms out;
  out.entrywise_one = x.cwiseAbs().sum();
  out.frobenius = x.norm();
  Eigen::JacobiSVD<CMat> svd(x);
  out.trace_norm = svd.singularValues().sum();
  return out;
}

CMat diag_embed(const CVec& q) {
  CMat out = CMat::Zero(q.size(), q.size());
  out.diagonal() = q;
  return out;
}

} // namespace conewit
