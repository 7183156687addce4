#ifndef CONEWIT_STATES_HPP
#define CONEWIT_STATES_HPP

#include "conewit/graphs.hpp"
#include "conewit/matcore.hpp"

namespace conewit {

/// Bipartite density operator on C^d (x) C^d, kept un-normalized.
/// Hermiticity and positive semidefiniteness are checked on construction.
struct BipartiteState {
  int d = 0;
  CMat rho;

  BipartiteState(int d, CMat rho, const Tolerance& tol = {});
};

/// (X, Y, Z) triple with equal diagonals and entrywise-nonnegative X.
/// Parameterizes the state
///   sum_ij X_ij |ij><ij| + sum_{i!=j} Y_ij |ii><jj| + sum_{i!=j} Z_ij |ij><ji|.
struct LdoiTriple {
  CMat X, Y, Z;

  LdoiTriple(CMat X, CMat Y, CMat Z);
  int d() const { return int(X.rows()); }
};

enum class FaceKind { Sparse, RestrictedRank1, Bosonic };

struct FaceSpec {
  FaceKind kind = FaceKind::Bosonic;
  Graph pattern; // Sparse
  CVec phi;      // RestrictedRank1, nonzero

  static FaceSpec sparse(Graph h);
  static FaceSpec restricted_rank1(CVec phi);
  static FaceSpec bosonic();

  const char* name() const;
};

/// Dense matrix of the triple, with exactly the three index patterns
/// populated. Not required to be PSD.
CMat ldoi_matrix(const LdoiTriple& t);

/// Dense state of the triple; throws InvariantViolation when not PSD.
BipartiteState ldoi_to_dense(const LdoiTriple& t, const Tolerance& tol = {});

/// The triple of the partial transpose: (X, Y, Z) -> (X, Z, Y).
LdoiTriple ldoi_partial_transpose(const LdoiTriple& t);

/// lambda_min of the dense matrix, computed blockwise from the triple: the
/// minimum over eig(Y) and the 2x2 blocks [[X_ij, Z_ij], [Z_ij*, X_ji]].
double ldoi_lambda_min(const LdoiTriple& t);

/// max(1, Frobenius norm of the dense matrix), computed from the triple.
double ldoi_frob_scale(const LdoiTriple& t);

/// PSD via the block decomposition of the dense matrix (the Y block plus one
/// 2x2 block per pair i < j); agrees with the dense eigenvalue oracle.
bool ldoi_is_psd(const LdoiTriple& t, const Tolerance& tol = {});

bool ldoi_is_ppt(const LdoiTriple& t, const Tolerance& tol = {});

struct CcnrResult {
  bool satisfied = false;
  double lhs = 0.0; // ||X||_1 - ||X||_tr
  double rhs = 0.0; // 2 sum_{i<j} max(|Y_ij|, |Z_ij|)
};

CcnrResult ldoi_ccnr_satisfied(const LdoiTriple& t);

/// D(rho)_ij = <ij|rho|ij>, the diagonal arranged as a d x d matrix.
CMat diag_matrix(const BipartiteState& s);

/// The flip operator F = sum |ij><ji| on C^d (x) C^d.
CMat flip_operator(int d);

/// <ii|rho|jj> arranged as a d x d matrix: the restriction of rho to the
/// span of the |ii> vectors.
CMat diagonal_coherences(const BipartiteState& s);

/// 0 when on the face. Sparse: number of offending edges of G(D(rho));
/// RestrictedRank1: relative distance of the diagonal coherence block from
/// the ray through phi phi*; Bosonic: relative norm of rho F - rho.
double face_residual(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol = {});

bool face_check(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol = {});

struct FaceMap {
  CMat K;          // n x d^2 isometry-like selector
  CMat M;          // K rho K* or K rho^Gamma K*
  bool transposed; // true when the partial transpose was applied first
};

FaceMap face_map(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol = {});

/// Conjugate the state by local unitaries: (Ua (x) Ub)* rho (Ua (x) Ub).
/// Face checks in a custom product basis reduce to the computational basis
/// on the rotated state. Unitarity checked to 1e-9.
BipartiteState rotate_local(const BipartiteState& s, const CMat& ua, const CMat& ub,
                            const Tolerance& tol = {});

LdoiTriple build_sparse_family(const Graph& g, const CMat& y, const CMat& z, const CMat& x,
                               const Tolerance& tol = {});

/// (A, J_4, H(x)); A must be 4x4, entrywise nonnegative, unit diagonal.
LdoiTriple build_corr_state(const CMat& a, double x);

/// (A, Y, A); A real symmetric entrywise nonnegative, Y PSD with the same
/// diagonal and |A_ij| >= Y_ij.
LdoiTriple build_dicke_mixture(const CMat& a, const CMat& y, const Tolerance& tol = {});

} // namespace conewit

#endif
