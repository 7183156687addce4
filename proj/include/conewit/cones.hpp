#ifndef CONEWIT_CONES_HPP
#define CONEWIT_CONES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conewit/graphs.hpp"
#include "conewit/matcore.hpp"
#include "conewit/named_matrices.hpp"

namespace conewit {

enum class ConeKind { SparsePsd, ScaledCorrelation, Dnn };

/// One of the three constrained PSD cones: PSD with a sparsity pattern,
/// PSD with diagonal proportional to a fixed nonnegative vector, or doubly
/// nonnegative.
struct ConeSpec {
  ConeKind kind = ConeKind::Dnn;
  int n = 0;
  Graph pattern;     // SparsePsd
  RVec diag_weights; // ScaledCorrelation, entrywise >= 0, not all zero

  static ConeSpec sparse_psd(Graph g);
  static ConeSpec scaled_correlation(RVec x);
  static ConeSpec dnn(int n);

  const char* name() const;
};

enum class R1Status { Member, NotMember, Inconclusive };

struct R1Evidence {
  std::string test;
  double value = 0.0;  // the quantity the test computed
  double margin = 0.0; // margin < -tol certifies a violation
};

struct R1Verdict {
  R1Status status = R1Status::Inconclusive;
  std::vector<R1Evidence> evidence;
};

struct MembershipResult {
  bool member = false;
  std::vector<R1Evidence> evidence;
};

struct ExtremalityReport {
  int rank = 0;
  int perturbation_dim = 0;
  bool is_extremal = false; // perturbation_dim == 1
};

struct WitnessResult {
  bool violated = false;
  double value = 0.0;
};

struct TorusSearchResult {
  double best_value = 0.0;
  CVec best_z;
};

MembershipResult cone_membership(const CMat& x, const ConeSpec& c, const Tolerance& tol = {});

struct SparseR1Options {
  bool exhaustive = false; // all induced triangle-free subgraphs, n <= 12 only
  int max_cycles = 64;
};

/// Rank-1-generation test in the sparse PSD cone. Exact for chordal graphs
/// (Member) and triangle-free graphs (sign of lambda_min of the comparison
/// matrix); otherwise a chordless-cycle battery that can stay Inconclusive.
R1Verdict sparse_r1_test(const CMat& x, const Graph& g, const Tolerance& tol = {},
                         const SparseR1Options& opts = {});

/// Z[I] PSD for every maximal clique I of G.
bool clique_psd_check(const CMat& z, const Graph& g, const Tolerance& tol = {});

/// Schur-product witness: lambda_min(Z . X) < -tol certifies that X is not
/// rank-1 generated in the G-sparse PSD cone. Z is re-checked against the
/// clique-PSD condition.
WitnessResult schur_witness_apply(const CMat& z, const CMat& x, const Graph& g,
                                  const Tolerance& tol = {});

/// Jarre witness value on a 4x4 scaled correlation matrix, after reduction
/// to unit diagonal: value = <W, C> - 6. value > tol certifies that the
/// input is not rank-1 generated among scaled correlation matrices.
WitnessResult corr_r1_witness(const CMat& xm, const Tolerance& tol = {});

/// Multi-restart coordinate ascent of <z|W|z> over unit-modulus vectors;
/// each coordinate update is the closed-form phase optimum. Deterministic
/// given the seed; the result is a lower bound on the true maximum.
TorusSearchResult torus_max_search(const CMat& w, int restarts, int steps, std::uint64_t seed);

/// Tr(Zw X) < -tol certifies X not completely positive, provided Zw is
/// copositive. Copositivity of user-supplied witnesses is not verified.
WitnessResult copositive_witness_apply(const CMat& zw, const CMat& x, const Tolerance& tol = {});

/// Two-sided perturbation test: X is extremal iff the feasible perturbation
/// space within ran(X) has dimension 1 (the ray through X itself).
ExtremalityReport extremality_test(const CMat& x, const ConeSpec& c, const Tolerance& tol = {});

/// Necessary rank bound for extremal DNN matrices:
/// n = 2 -> rank <= 1; n > 2 even -> rank <= n-3; n > 2 odd -> rank <= n-2.
bool dnn_rank_bound_check(const CMat& x, const Tolerance& tol = {});

/// Cone-dispatching rank-1-generation battery used by the detector.
R1Verdict r1_test(const CMat& x, const ConeSpec& c, const Tolerance& tol = {},
                  const SparseR1Options& sparse_opts = {});

} // namespace conewit

#endif
