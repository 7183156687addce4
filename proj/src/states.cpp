#include "conewit/states.hpp"

#include <cmath>

#include "conewit/named_matrices.hpp"

namespace conewit {

namespace {

constexpr double kDiagEps = 1e-12;

void require_finite(const CMat& m, const char* who) {
  if (!all_finite(m)) throw Error(Errc::InvariantViolation, std::string(who) + ": non-finite entries");
}

double lambda_min_2x2(double a, double b, Complex z) {
  const double mid = 0.5 * (a + b);
  const double rad = std::hypot(0.5 * (a - b), std::abs(z));
  return mid - rad;
}

} // namespace

BipartiteState::BipartiteState(int d_, CMat rho_, const Tolerance& tol) : d(d_), rho(std::move(rho_)) {
  if (d < 1) throw Error(Errc::InvariantViolation, "BipartiteState: d must be positive");
  const Eigen::Index n = Eigen::Index(d) * d;
  if (rho.rows() != n || rho.cols() != n)
    throw Error(Errc::DimensionMismatch, "BipartiteState: rho must be d^2 x d^2");
  require_finite(rho, "BipartiteState");
  require_hermitian(rho, "BipartiteState");
  const auto psd = is_psd(rho, tol);
  if (!psd.psd)
    throw Error(Errc::InvariantViolation,
                "BipartiteState: not PSD, lambda_min = " + std::to_string(psd.min_eigenvalue));
}

LdoiTriple::LdoiTriple(CMat X_, CMat Y_, CMat Z_) : X(std::move(X_)), Y(std::move(Y_)), Z(std::move(Z_)) {
  const Eigen::Index n = X.rows();
  if (X.cols() != n || Y.rows() != n || Y.cols() != n || Z.rows() != n || Z.cols() != n)
    throw Error(Errc::DimensionMismatch, "LdoiTriple: X, Y, Z must be square of equal size");
  require_finite(X, "LdoiTriple.X");
  require_finite(Y, "LdoiTriple.Y");
  require_finite(Z, "LdoiTriple.Z");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(X(i, j).imag()) > kDiagEps || X(i, j).real() < -kDiagEps)
        throw Error(Errc::InvariantViolation, "LdoiTriple: X must have nonnegative real entries");
    }
  require_hermitian(Y, "LdoiTriple.Y");
  require_hermitian(Z, "LdoiTriple.Z");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(X(i, i) - Y(i, i)) > kDiagEps || std::abs(X(i, i) - Z(i, i)) > kDiagEps)
      throw Error(Errc::InvariantViolation, "LdoiTriple: diagonals of X, Y, Z must agree");
  }
}

FaceSpec FaceSpec::sparse(Graph h) {
  FaceSpec f;
  f.kind = FaceKind::Sparse;
  f.pattern = std::move(h);
  return f;
}

FaceSpec FaceSpec::restricted_rank1(CVec phi) {
  if (phi.size() == 0 || phi.norm() == 0.0)
    throw Error(Errc::InvariantViolation, "FaceSpec: phi must be nonzero");
  FaceSpec f;
  f.kind = FaceKind::RestrictedRank1;
  f.phi = std::move(phi);
  return f;
}

FaceSpec FaceSpec::bosonic() {
  FaceSpec f;
  f.kind = FaceKind::Bosonic;
  return f;
}

const char* FaceSpec::name() const {
  switch (kind) {
    case FaceKind::Sparse: return "sparse";
    case FaceKind::RestrictedRank1: return "rank1";
    case FaceKind::Bosonic: return "bosonic";
  }
  return "?";
}

CMat ldoi_matrix(const LdoiTriple& t) {
  const int d = t.d();
  CMat rho = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      rho(i * d + j, i * d + j) += t.X(i, j);
      if (i != j) {
        rho(i * d + i, j * d + j) += t.Y(i, j);
        rho(i * d + j, j * d + i) += t.Z(i, j);
      }
    }
  return rho;
}

BipartiteState ldoi_to_dense(const LdoiTriple& t, const Tolerance& tol) {
  return BipartiteState(t.d(), ldoi_matrix(t), tol);
}

LdoiTriple ldoi_partial_transpose(const LdoiTriple& t) { return LdoiTriple(t.X, t.Z, t.Y); }

double ldoi_lambda_min(const LdoiTriple& t) {
  // The dense matrix block-diagonalizes into Y (on span{|ii>}) plus one
  // 2x2 block [[X_ij, Z_ij], [Z_ij*, X_ji]] per pair i < j.
  const int d = t.d();
  double lmin = herm_eig(t.Y).eigenvalues(0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      lmin = std::min(lmin, lambda_min_2x2(t.X(i, j).real(), t.X(j, i).real(), t.Z(i, j)));
  return lmin;
}

double ldoi_frob_scale(const LdoiTriple& t) {
  const int d = t.d();
  double sq = t.X.squaredNorm();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) sq += std::norm(t.Y(i, j)) + std::norm(t.Z(i, j));
  return std::max(1.0, std::sqrt(sq));
}

bool ldoi_is_psd(const LdoiTriple& t, const Tolerance& tol) {
  tol.validate();
  return ldoi_lambda_min(t) >= -tol.psd_eps * ldoi_frob_scale(t);
}

bool ldoi_is_ppt(const LdoiTriple& t, const Tolerance& tol) {
  return ldoi_is_psd(t, tol) && ldoi_is_psd(ldoi_partial_transpose(t), tol);
}

CcnrResult ldoi_ccnr_satisfied(const LdoiTriple& t) {
  CcnrResult r;
  const auto nx = norms(t.X);
  r.lhs = nx.entrywise_one - nx.trace_norm;
  for (int i = 0; i < t.d(); ++i)
    for (int j = i + 1; j < t.d(); ++j)
      r.rhs += 2.0 * std::max(std::abs(t.Y(i, j)), std::abs(t.Z(i, j)));
  r.satisfied = r.lhs >= r.rhs - 1e-9;
  return r;
}

CMat diag_matrix(const BipartiteState& s) {
  CMat d(s.d, s.d);
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j) d(i, j) = s.rho(i * s.d + j, i * s.d + j);
  return d;
}

CMat flip_operator(int d) {
  CMat f = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

CMat diagonal_coherences(const BipartiteState& s) {
  CMat v(s.d, s.d);
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j) v(i, j) = s.rho(i * s.d + i, j * s.d + j);
  return v;
}

double face_residual(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol) {
  switch (f.kind) {
    case FaceKind::Sparse: {
      if (f.pattern.n() != s.d)
        throw Error(Errc::DimensionMismatch, "face_check: sparse pattern size != d");
      const Graph gd = graph_of_matrix(diag_matrix(s), tol);
      int offending = 0;
      for (auto [i, j] : gd.edges())
        if (!f.pattern.has_edge(i, j)) ++offending;
      return double(offending);
    }
    case FaceKind::RestrictedRank1: {
      if (f.phi.size() != s.d)
        throw Error(Errc::DimensionMismatch, "face_check: phi size != d");
      const CMat v = diagonal_coherences(s);
      const double vnorm = v.norm();
      if (vnorm <= tol.zero_eps * frob_scale(s.rho)) return 0.0; // zero restriction
      const double phin2 = f.phi.squaredNorm();
      const Complex c = (f.phi.adjoint() * v * f.phi)(0) / (phin2 * phin2);
      const CMat model = c * (f.phi * f.phi.adjoint());
      return (v - model).norm() / std::max(1.0, vnorm);
    }
    case FaceKind::Bosonic: {
      const CMat f_op = flip_operator(s.d);
      return (s.rho * f_op - s.rho).norm() / frob_scale(s.rho);
    }
  }
  throw Error(Errc::BadArgument, "face_check: unknown face kind");
}

bool face_check(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol) {
  tol.validate();
  const double r = face_residual(s, f, tol);
  if (f.kind == FaceKind::Sparse) return r == 0.0;
  return r <= 1e-9;
}

FaceMap face_map(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol) {
  const double residual = face_residual(s, f, tol);
  const bool on_face = (f.kind == FaceKind::Sparse) ? residual == 0.0 : residual <= 1e-9;
  if (!on_face)
    throw Error(Errc::NotOnFace,
                std::string("face_map: state not on ") + f.name() + " face, residual = " +
                    std::to_string(residual));

  const int d = s.d;
  // K = sum_i |i><ii|; for the transposed maps the second-factor conjugation
  // is the identity on the computational basis.
  CMat k = CMat::Zero(d, d * d);
  for (int i = 0; i < d; ++i) k(i, i * d + i) = 1.0;

  FaceMap out;
  out.K = k;
  out.transposed = f.kind != FaceKind::Sparse;
  const CMat target = out.transposed ? partial_transpose(s.rho, d) : s.rho;
  out.M = k * target * k.adjoint();
  return out;
}

BipartiteState rotate_local(const BipartiteState& s, const CMat& ua, const CMat& ub,
                            const Tolerance& tol) {
  const int d = s.d;
  if (ua.rows() != d || ua.cols() != d || ub.rows() != d || ub.cols() != d)
    throw Error(Errc::DimensionMismatch, "rotate_local: unitaries must be d x d");
  const CMat id = CMat::Identity(d, d);
  if ((ua.adjoint() * ua - id).norm() > 1e-9 * std::sqrt(double(d)) ||
      (ub.adjoint() * ub - id).norm() > 1e-9 * std::sqrt(double(d)))
    throw Error(Errc::PreconditionViolation, "rotate_local: inputs not unitary to 1e-9");
  const CMat u = kron(ua, ub);
  return BipartiteState(d, u.adjoint() * s.rho * u, tol);
}

LdoiTriple build_sparse_family(const Graph& g, const CMat& y, const CMat& z, const CMat& x,
                               const Tolerance& tol) {
  tol.validate();
  const int d = g.n();
  auto fail = [](const std::string& what) {
    throw Error(Errc::PreconditionViolation, "build_sparse_family: " + what);
  };
  if (y.rows() != d || y.cols() != d || z.rows() != d || z.cols() != d || x.rows() != d ||
      x.cols() != d)
    fail("Y, Z, X must be d x d with d = |V(G)|");
  if (!is_subgraph(graph_of_matrix(y, tol), g)) fail("G(Y) is not a subgraph of G");
  if (!is_subgraph(graph_of_matrix(z, tol), g)) fail("G(Z) is not a subgraph of G");
  if (!is_subgraph(graph_of_matrix(x, tol), g)) fail("G(X) is not a subgraph of G");
  if (!is_psd(y, tol).psd) fail("Y is not PSD");
  if (!is_psd(z, tol).psd) fail("Z is not PSD");
  for (int i = 0; i < d; ++i) {
    if (std::abs(z(i, i) - y(i, i)) > kDiagEps) fail("diag(Z) != diag(Y)");
    if (std::abs(x(i, i) - y(i, i)) > kDiagEps) fail("diag(X) != diag(Y)");
  }
  const double slack = tol.psd_eps * std::max(1.0, x.norm() * x.norm());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      if (std::abs(x(i, j).imag()) > kDiagEps || x(i, j).real() < -kDiagEps)
        fail("X must be entrywise nonnegative");
      const double prod = x(i, j).real() * x(j, i).real();
      if (prod < std::norm(z(i, j)) - slack)
        fail("X_ij X_ji >= |Z_ij|^2 fails at (" + std::to_string(i + 1) + "," +
             std::to_string(j + 1) + ")");
      if (prod < std::norm(y(i, j)) - slack)
        fail("X_ij X_ji >= |Y_ij|^2 fails at (" + std::to_string(i + 1) + "," +
             std::to_string(j + 1) + ")");
    }
  return LdoiTriple(x, y, z);
}

LdoiTriple build_corr_state(const CMat& a, double x) {
  if (a.rows() != 4 || a.cols() != 4)
    throw Error(Errc::DimensionMismatch, "build_corr_state: A must be 4x4");
  for (int i = 0; i < 4; ++i)
    if (std::abs(a(i, i) - 1.0) > kDiagEps)
      throw Error(Errc::BadDiagonal, "build_corr_state: diag(A) must be all ones");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(a(i, j).imag()) > kDiagEps || a(i, j).real() < -kDiagEps)
        throw Error(Errc::PreconditionViolation,
                    "build_corr_state: A must be entrywise nonnegative");
  return LdoiTriple(a, CMat::Ones(4, 4), h_family(x));
}

LdoiTriple build_dicke_mixture(const CMat& a, const CMat& y, const Tolerance& tol) {
  tol.validate();
  const Eigen::Index d = a.rows();
  auto fail = [](const std::string& what) {
    throw Error(Errc::PreconditionViolation, "build_dicke_mixture: " + what);
  };
  if (a.cols() != d || y.rows() != d || y.cols() != d) fail("A and Y must be square, same size");
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(a(i, j).imag()) > kDiagEps || a(i, j).real() < -kDiagEps)
        fail("A must be entrywise nonnegative real");
      if (std::abs(a(i, j) - a(j, i)) > kDiagEps) fail("A must be symmetric");
    }
  require_hermitian(y, "build_dicke_mixture.Y");
  if (!is_psd(y, tol).psd) fail("Y is not PSD");
  for (Eigen::Index i = 0; i < d; ++i)
    if (std::abs(y(i, i) - a(i, i)) > kDiagEps) fail("diag(Y) != diag(A)");
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (i != j && std::abs(a(i, j)) < std::abs(y(i, j)) - kDiagEps)
        fail("|A_ij| >= |Y_ij| fails at (" + std::to_string(i + 1) + "," +
             std::to_string(j + 1) + ")");
  return LdoiTriple(a, y, a);
}

} // namespace conewit
