#include "conewit/cones.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

namespace conewit {

ConeSpec ConeSpec::sparse_psd(Graph g) {
  ConeSpec c;
  c.kind = ConeKind::SparsePsd;
  c.n = g.n();
  c.pattern = std::move(g);
  return c;
}

ConeSpec ConeSpec::scaled_correlation(RVec x) {
  if (x.size() == 0 || x.minCoeff() < 0.0 || x.maxCoeff() <= 0.0)
    throw Error(Errc::InvariantViolation,
                "ConeSpec: diagonal weights must be nonnegative and not all zero");
  ConeSpec c;
  c.kind = ConeKind::ScaledCorrelation;
  c.n = int(x.size());
  c.diag_weights = std::move(x);
  return c;
}

ConeSpec ConeSpec::dnn(int n) {
  if (n < 1) throw Error(Errc::InvariantViolation, "ConeSpec: n must be positive");
  ConeSpec c;
  c.kind = ConeKind::Dnn;
  c.n = n;
  return c;
}

const char* ConeSpec::name() const {
  switch (kind) {
    case ConeKind::SparsePsd: return "sparse_psd";
    case ConeKind::ScaledCorrelation: return "scaled_correlation";
    case ConeKind::Dnn: return "dnn";
  }
  return "?";
}

MembershipResult cone_membership(const CMat& x, const ConeSpec& c, const Tolerance& tol) {
  tol.validate();
  require_hermitian(x, "cone_membership");
  if (x.rows() != c.n)
    throw Error(Errc::DimensionMismatch, "cone_membership: matrix size != cone dimension");

  MembershipResult res;
  const double scale = frob_scale(x);
  const auto psd = is_psd(x, tol);
  res.evidence.push_back({"lambda_min", psd.min_eigenvalue, psd.min_eigenvalue});
  bool ok = psd.psd;

  switch (c.kind) {
    case ConeKind::SparsePsd: {
      const Graph gx = graph_of_matrix(x, tol);
      int offending = 0;
      for (auto [i, j] : gx.edges())
        if (!c.pattern.has_edge(i, j)) ++offending;
      res.evidence.push_back({"pattern_violations", double(offending), -double(offending)});
      ok = ok && offending == 0;
      break;
    }
    case ConeKind::ScaledCorrelation: {
      int ref = 0;
      c.diag_weights.maxCoeff(&ref);
      const double lambda = x(ref, ref).real() / c.diag_weights(ref);
      double residual = 0.0;
      for (int i = 0; i < c.n; ++i)
        residual = std::max(residual, std::abs(x(i, i) - lambda * c.diag_weights(i)));
      res.evidence.push_back({"diag_residual", residual, -residual});
      ok = ok && residual <= tol.zero_eps * scale && lambda >= -tol.psd_eps * scale;
      break;
    }
    case ConeKind::Dnn: {
      double min_re = 0.0, max_im = 0.0;
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j) {
          min_re = std::min(min_re, x(i, j).real());
          max_im = std::max(max_im, std::abs(x(i, j).imag()));
        }
      res.evidence.push_back({"min_entry", min_re, min_re});
      res.evidence.push_back({"max_imag_entry", max_im, -max_im});
      ok = ok && min_re >= -tol.zero_eps * scale && max_im <= tol.zero_eps * scale;
      break;
    }
  }
  res.member = ok;
  return res;
}

namespace {

CMat principal_submatrix(const CMat& x, const std::vector<int>& idx) {
  CMat out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = x(idx[a], idx[b]);
  return out;
}

} // namespace

R1Verdict sparse_r1_test(const CMat& x, const Graph& g, const Tolerance& tol,
                         const SparseR1Options& opts) {
  const auto membership = cone_membership(x, ConeSpec::sparse_psd(g), tol);
  if (!membership.member)
    throw Error(Errc::NotInCone, "sparse_r1_test: input not in the G-sparse PSD cone");

  R1Verdict v;
  if (is_chordal(g).chordal) {
    v.status = R1Status::Member;
    v.evidence.push_back({"chordal_member", 1.0, 0.0});
    return v;
  }

  const double floor = tol.psd_eps * frob_scale(x);
  if (is_triangle_free(g)) {
    const double lmin = herm_eig(comparison_matrix(x)).eigenvalues(0);
    v.evidence.push_back({"triangle_free_comparison_lambda_min", lmin, lmin});
    v.status = (lmin >= -floor) ? R1Status::Member : R1Status::NotMember;
    return v;
  }

  // General graph: the chordless-cycle battery. Violation on any induced
  // triangle-free subgraph refutes membership; passing everything proves
  // nothing.
  bool violated = false;
  for (const auto& cycle : enumerate_chordless_cycles(g, opts.max_cycles)) {
    std::vector<int> idx = cycle;
    std::sort(idx.begin(), idx.end());
    const double lmin = herm_eig(comparison_matrix(principal_submatrix(x, idx))).eigenvalues(0);
    v.evidence.push_back({"chordless_cycle_comparison_lambda_min", lmin, lmin});
    if (lmin < -floor) violated = true;
  }
  if (opts.exhaustive) {
    if (g.n() > 12) throw Error(Errc::TooLarge, "sparse_r1_test: exhaustive mode capped at n = 12");
    for (std::uint32_t mask = 1; mask < (1u << g.n()); ++mask) {
      if (std::popcount(mask) < 4) continue;
      std::vector<int> idx;
      for (int i = 0; i < g.n(); ++i)
        if (mask & (1u << i)) idx.push_back(i);
      const Graph sub = induced_subgraph(g, idx);
      if (!is_triangle_free(sub) || is_chordal(sub).chordal) continue;
      const double lmin = herm_eig(comparison_matrix(principal_submatrix(x, idx))).eigenvalues(0);
      v.evidence.push_back({"induced_subgraph_comparison_lambda_min", lmin, lmin});
      if (lmin < -floor) violated = true;
    }
  }
  v.status = violated ? R1Status::NotMember : R1Status::Inconclusive;
  return v;
}

bool clique_psd_check(const CMat& z, const Graph& g, const Tolerance& tol) {
  require_hermitian(z, "clique_psd_check");
  if (z.rows() != g.n())
    throw Error(Errc::DimensionMismatch, "clique_psd_check: matrix size != graph size");
  for (const auto& clique : maximal_cliques(g))
    if (!is_psd(principal_submatrix(z, clique), tol).psd) return false;
  return true;
}

WitnessResult schur_witness_apply(const CMat& z, const CMat& x, const Graph& g,
                                  const Tolerance& tol) {
  if (!clique_psd_check(z, g, tol))
    throw Error(Errc::WitnessNotInDualCone,
                "schur_witness_apply: Z fails the clique-PSD condition for G");
  const CMat zx = schur_product(z, x);
  const double lmin = herm_eig(zx).eigenvalues(0);
  return WitnessResult{lmin < -tol.psd_eps * frob_scale(zx), lmin};
}

WitnessResult corr_r1_witness(const CMat& xm, const Tolerance& tol) {
  tol.validate();
  if (xm.rows() != 4 || xm.cols() != 4)
    throw Error(Errc::WrongDimension, "corr_r1_witness: the witness is 4x4-specific");
  require_hermitian(xm, "corr_r1_witness");
  if (!is_psd(xm, tol).psd)
    throw Error(Errc::NotInCone, "corr_r1_witness: input not PSD");

  // Reduce to unit diagonal; zero-diagonal indices drop out (their rows
  // vanish), and correlation matrices of size <= 3 are rank-1 generated, so
  // the witness cannot fire on them.
  const double floor = tol.zero_eps * frob_scale(xm);
  std::vector<int> support;
  for (int i = 0; i < 4; ++i)
    if (xm(i, i).real() > floor) support.push_back(i);
  if (support.size() < 4) return WitnessResult{false, 0.0};

  CMat c = xm;
  RVec s(4);
  for (int i = 0; i < 4; ++i) s(i) = std::sqrt(xm(i, i).real());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c(i, j) = xm(i, j) / (s(i) * s(j));

  const double value = (jarre_witness() * c).trace().real() - 6.0;
  return WitnessResult{value > tol.psd_eps, value};
}

TorusSearchResult torus_max_search(const CMat& w, int restarts, int steps, std::uint64_t seed) {
  require_hermitian(w, "torus_max_search");
  const int n = int(w.rows());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  TorusSearchResult best;
  best.best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    CVec z(n);
    if (r == 0) {
      z.setOnes();
    } else {
      for (int i = 0; i < n; ++i) z(i) = std::polar(1.0, angle(rng));
    }
    double prev = std::real(Complex((z.adjoint() * w * z)(0)));
    for (int sweep = 0; sweep < steps; ++sweep) {
      for (int i = 0; i < n; ++i) {
        Complex gi(0, 0);
        for (int j = 0; j < n; ++j)
          if (j != i) gi += w(i, j) * z(j);
        if (std::abs(gi) > 0) z(i) = gi / std::abs(gi);
      }
      const double cur = std::real(Complex((z.adjoint() * w * z)(0)));
      if (cur - prev < 1e-15) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    if (prev > best.best_value) {
      best.best_value = prev;
      best.best_z = z;
    }
  }
  return best;
}

WitnessResult copositive_witness_apply(const CMat& zw, const CMat& x, const Tolerance& tol) {
  tol.validate();
  require_hermitian(zw, "copositive_witness_apply");
  for (Eigen::Index i = 0; i < zw.rows(); ++i)
    for (Eigen::Index j = 0; j < zw.cols(); ++j)
      if (std::abs(zw(i, j).imag()) > tol.zero_eps)
        throw Error(Errc::PreconditionViolation,
                    "copositive_witness_apply: witness must be real symmetric");
  if (zw.rows() != x.rows())
    throw Error(Errc::DimensionMismatch, "copositive_witness_apply: sizes differ");
  const auto membership = cone_membership(x, ConeSpec::dnn(int(x.rows())), tol);
  if (!membership.member)
    throw Error(Errc::NotDNN, "copositive_witness_apply: X is not doubly nonnegative");
  const double value = (zw * x).trace().real();
  return WitnessResult{value < -tol.psd_eps * frob_scale(x) * frob_scale(zw), value};
}

namespace {

// Real basis of r x r Hermitian matrices, r^2 elements.
std::vector<CMat> hermitian_basis(int r) {
  std::vector<CMat> basis;
  basis.reserve(std::size_t(r) * r);
  for (int i = 0; i < r; ++i) {
    CMat e = CMat::Zero(r, r);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  const Complex im(0, 1);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      CMat e = CMat::Zero(r, r);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      basis.push_back(e);
      CMat f = CMat::Zero(r, r);
      f(i, j) = im;
      f(j, i) = -im;
      basis.push_back(f);
    }
  return basis;
}

// Constraint rows have natural scale O(1) (H = Q B Q* with ||B||_F <= sqrt(2)),
// so the rank threshold carries an absolute floor: pure roundoff rows must
// not count as constraints.
int matrix_rank(const RMat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<RMat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thr = 1e-8 * std::max(1.0, sv(0));
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > thr) ++r;
  return r;
}

} // namespace

ExtremalityReport extremality_test(const CMat& x, const ConeSpec& c, const Tolerance& tol) {
  const auto membership = cone_membership(x, c, tol);
  if (!membership.member)
    throw Error(Errc::NotInCone, "extremality_test: input not in the cone");

  const int n = c.n;
  const double scale = frob_scale(x);
  const auto ed = herm_eig(x);
  const double floor = tol.zero_eps * scale;

  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (std::abs(ed.eigenvalues(k)) > floor) keep.push_back(k);
  const int r = int(keep.size());
  if (r == 0) return ExtremalityReport{0, 0, false};

  CMat q(n, r);
  for (int k = 0; k < r; ++k) q.col(k) = ed.eigenvectors.col(keep[k]);

  // Linear equalities forced on H = Q B Q* by two-sided feasibility X +- eH.
  const auto basis = hermitian_basis(r);
  std::vector<std::vector<double>> columns;
  columns.reserve(basis.size());
  for (const auto& b : basis) {
    const CMat h = q * b * q.adjoint();
    std::vector<double> col;
    switch (c.kind) {
      case ConeKind::SparsePsd:
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (!c.pattern.has_edge(i, j)) {
              col.push_back(h(i, j).real());
              col.push_back(h(i, j).imag());
            }
        break;
      case ConeKind::ScaledCorrelation: {
        int ref = -1;
        for (int i = 0; i < n; ++i) {
          if (c.diag_weights(i) <= 0.0) {
            col.push_back(h(i, i).real()); // forced zero diagonal
            continue;
          }
          if (ref < 0) {
            ref = i;
            continue;
          }
          col.push_back(h(i, i).real() * c.diag_weights(ref) -
                        h(ref, ref).real() * c.diag_weights(i));
        }
        break;
      }
      case ConeKind::Dnn:
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            col.push_back(h(i, j).imag());
            if (std::abs(x(i, j)) <= floor) col.push_back(h(i, j).real());
          }
        break;
    }
    columns.push_back(std::move(col));
  }

  const int n_constraints = int(columns.front().size());
  RMat a(n_constraints, int(basis.size()));
  for (int b = 0; b < int(basis.size()); ++b)
    for (int k = 0; k < n_constraints; ++k) a(k, b) = columns[b][k];

  const int dim = r * r - matrix_rank(a);
  return ExtremalityReport{r, dim, dim == 1};
}

bool dnn_rank_bound_check(const CMat& x, const Tolerance& tol) {
  const int n = int(x.rows());
  const auto membership = cone_membership(x, ConeSpec::dnn(n), tol);
  if (!membership.member)
    throw Error(Errc::NotDNN, "dnn_rank_bound_check: input not doubly nonnegative");
  const int r = rank_of(x, tol);
  int bound = 1;
  if (n > 2) bound = (n % 2 == 0) ? n - 3 : n - 2;
  return r <= bound;
}

R1Verdict r1_test(const CMat& x, const ConeSpec& c, const Tolerance& tol,
                  const SparseR1Options& sparse_opts) {
  const auto membership = cone_membership(x, c, tol);
  if (!membership.member) throw Error(Errc::NotInCone, "r1_test: input not in the cone");

  R1Verdict v;
  const int rank = rank_of(x, tol);
  switch (c.kind) {
    case ConeKind::SparsePsd:
      return sparse_r1_test(x, c.pattern, tol, sparse_opts);

    case ConeKind::ScaledCorrelation: {
      // Zero-weight indices carry zero rows; drop them before testing.
      std::vector<int> support;
      for (int i = 0; i < c.n; ++i)
        if (c.diag_weights(i) > 0.0) support.push_back(i);
      const int m = int(support.size());
      if (rank <= 1) {
        v.status = R1Status::Member;
        v.evidence.push_back({"rank_one", double(rank), 0.0});
        return v;
      }
      if (m <= 3) {
        // Extremal correlation matrices of size <= 3 have rank 1.
        v.status = R1Status::Member;
        v.evidence.push_back({"corr_small_n", double(m), 0.0});
        return v;
      }
      if (m == 4) {
        const auto wr = corr_r1_witness(principal_submatrix(x, support), tol);
        v.evidence.push_back({"jarre_witness_margin", wr.value, -wr.value});
        v.status = wr.violated ? R1Status::NotMember : R1Status::Inconclusive;
        return v;
      }
      v.status = R1Status::Inconclusive;
      v.evidence.push_back({"no_witness_for_n", double(m), 0.0});
      return v;
    }

    case ConeKind::Dnn: {
      if (c.n <= 4) {
        // DNN_n is completely positive for n <= 4.
        v.status = R1Status::Member;
        v.evidence.push_back({"dnn_small_n", double(c.n), 0.0});
        return v;
      }
      if (rank <= 1) {
        v.status = R1Status::Member;
        v.evidence.push_back({"rank_one", double(rank), 0.0});
        return v;
      }
      if (c.n == 5) {
        const auto wr = copositive_witness_apply(horn_matrix(), x, tol);
        v.evidence.push_back({"horn_witness_value", wr.value, wr.value});
        v.status = wr.violated ? R1Status::NotMember : R1Status::Inconclusive;
        return v;
      }
      v.status = R1Status::Inconclusive;
      v.evidence.push_back({"no_witness_for_n", double(c.n), 0.0});
      return v;
    }
  }
  return v;
}

} // namespace conewit
