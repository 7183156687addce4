#include "conewit/detector.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>

namespace conewit {

const char* verdict_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::EntangledCertified: return "entangled_certified";
    case VerdictStatus::EdgeStateCertified: return "edge_state_certified";
    case VerdictStatus::Inconclusive: return "inconclusive";
    case VerdictStatus::NptEntangled: return "npt_entangled";
  }
  return "?";
}

std::uint64_t fnv1a_digest(const CMat& m) {
  std::uint64_t hash = 14695981039346656037ULL;
  auto feed = [&hash](double x) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
      hash ^= (bits >> (8 * b)) & 0xffULL; // little-endian byte order
      hash *= 1099511628211ULL;
    }
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      feed(m(i, j).real());
      feed(m(i, j).imag());
    }
  return hash;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CONEWIT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw Error(Errc::BadArgument, "CONEWIT_SEED must be a decimal integer");
  }
  return 20250809ULL;
}

namespace {

ConeSpec cone_for_face(const FaceSpec& f, int d) {
  switch (f.kind) {
    case FaceKind::Sparse: return ConeSpec::sparse_psd(f.pattern);
    case FaceKind::RestrictedRank1: {
      RVec x(f.phi.size());
      for (Eigen::Index i = 0; i < f.phi.size(); ++i) x(i) = std::norm(f.phi(i));
      return ConeSpec::scaled_correlation(x);
    }
    case FaceKind::Bosonic: return ConeSpec::dnn(d);
  }
  throw Error(Errc::BadArgument, "unknown face kind");
}

Verdict detect_impl(const BipartiteState& s, const FaceSpec& f, const DetectOptions& opt,
                    const LdoiTriple* triple) {
  opt.tol.validate();
  const Tolerance& tol = opt.tol;

  Verdict v;
  v.face = f;
  const double state_thr = -tol.psd_eps * frob_scale(s.rho);

  // 1. PSD (guaranteed by the BipartiteState invariant; recorded for the
  // evidence chain).
  if (triple) {
    v.evidence.push_back({"psd", "ldoi_lambda_min", ldoi_lambda_min(*triple), state_thr});
  } else {
    v.evidence.push_back({"psd", "lambda_min", is_psd(s.rho, tol).min_eigenvalue, state_thr});
  }

  // 2. PPT. NPT states are entangled by the PPT criterion itself and outside
  // the scope of the cone machinery.
  double pt_lmin;
  if (triple) {
    pt_lmin = ldoi_lambda_min(ldoi_partial_transpose(*triple));
    v.evidence.push_back({"ppt", "ldoi_transpose_lambda_min", pt_lmin, state_thr});
  } else {
    pt_lmin = is_psd(partial_transpose(s.rho, s.d), tol).min_eigenvalue;
    v.evidence.push_back({"ppt", "partial_transpose_lambda_min", pt_lmin, state_thr});
  }
  if (pt_lmin < state_thr) {
    v.status = VerdictStatus::NptEntangled;
    return v;
  }

  // 3. CCNR side-check (informational, LDOI route only).
  if (triple) {
    const auto ccnr = ldoi_ccnr_satisfied(*triple);
    v.evidence.push_back({"ccnr", "ccnr_margin", ccnr.lhs - ccnr.rhs, -1e-9});
  }

  // 4. Face membership.
  const double residual = face_residual(s, f, tol);
  const double face_thr = (f.kind == FaceKind::Sparse) ? 0.0 : 1e-9;
  v.evidence.push_back({"face", "face_residual", residual, face_thr});
  if (residual > face_thr)
    throw Error(Errc::NotOnFace, std::string("detect: state not on ") + f.name() +
                                     " face, residual = " + std::to_string(residual));

  // 5. Map through K.
  const FaceMap map = face_map(s, f, tol);
  v.mapped_digest = fnv1a_digest(map.M);
  v.mapped_rows = int(map.M.rows());
  v.mapped_cols = int(map.M.cols());
  v.evidence.push_back({"map", "mapped_frobenius", map.M.norm(), 0.0});

  // 6. Cone membership sanity; guaranteed for PPT states on the face.
  const ConeSpec cone = cone_for_face(f, s.d);
  v.cone = cone;
  const auto membership = cone_membership(map.M, cone, tol);
  for (const auto& e : membership.evidence)
    v.evidence.push_back({"cone", e.test, e.value, 0.0});
  if (!membership.member) {
    // Numerically outside the guaranteed cone: report, never certify.
    v.evidence.push_back({"cone", "membership_sanity_failed", 0.0, 1.0});
    v.status = VerdictStatus::Inconclusive;
    return v;
  }

  // 7. Rank-1-generation battery.
  const R1Verdict r1 = r1_test(map.M, cone, tol, opt.sparse);
  for (const auto& e : r1.evidence) v.evidence.push_back({"r1", e.test, e.value, e.margin});

  // 8. Verdict.
  v.status = (r1.status == R1Status::NotMember) ? VerdictStatus::EntangledCertified
                                                : VerdictStatus::Inconclusive;

  // 9. Edge certification: an extremal mapped matrix of rank >= 2 cannot be
  // rank-1 generated, so it also certifies entanglement when the battery
  // alone was inconclusive.
  if (opt.edge && r1.status != R1Status::Member) {
    bool rank_bound_ok = true;
    if (cone.kind == ConeKind::Dnn) {
      rank_bound_ok = dnn_rank_bound_check(map.M, tol);
      v.evidence.push_back({"edge", "dnn_rank_bound", rank_bound_ok ? 1.0 : 0.0, 1.0});
    }
    if (rank_bound_ok) {
      const auto ext = extremality_test(map.M, cone, tol);
      v.extremality = ext;
      v.evidence.push_back({"edge", "mapped_rank", double(ext.rank), 2.0});
      v.evidence.push_back({"edge", "perturbation_dim", double(ext.perturbation_dim), 1.0});
      if (ext.is_extremal && ext.rank >= 2) {
        if (v.status != VerdictStatus::EntangledCertified)
          v.evidence.push_back(
              {"r1", "extremal_not_rank1_generated", double(ext.perturbation_dim), 1.0});
        v.status = VerdictStatus::EdgeStateCertified;
      }
    }
  }
  return v;
}

} // namespace

Verdict detect(const BipartiteState& s, const FaceSpec& f, const DetectOptions& opt) {
  return detect_impl(s, f, opt, nullptr);
}

Verdict detect(const LdoiTriple& t, const FaceSpec& f, const DetectOptions& opt) {
  const BipartiteState s = ldoi_to_dense(t, opt.tol);
  return detect_impl(s, f, opt, &t);
}

Verdict certify_edge(const BipartiteState& s, const FaceSpec& f, const Tolerance& tol) {
  DetectOptions opt;
  opt.edge = true;
  opt.tol = tol;
  return detect(s, f, opt);
}

Verdict certify_edge(const LdoiTriple& t, const FaceSpec& f, const Tolerance& tol) {
  DetectOptions opt;
  opt.edge = true;
  opt.tol = tol;
  return detect(t, f, opt);
}

namespace {

int status_order(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::EdgeStateCertified: return 3;
    case VerdictStatus::EntangledCertified: return 2;
    case VerdictStatus::NptEntangled: return 1;
    case VerdictStatus::Inconclusive: return 0;
  }
  return 0;
}

} // namespace

Verdict detect_sweep(const BipartiteState& s, const DetectOptions& opt) {
  std::vector<std::pair<std::string, FaceSpec>> faces;
  faces.emplace_back("sparse", FaceSpec::sparse(graph_of_matrix(diag_matrix(s), opt.tol)));

  // Infer phi from the diagonal coherence block when it has rank <= 1.
  const CMat coh = diagonal_coherences(s);
  if (coh.norm() <= opt.tol.zero_eps * frob_scale(s.rho)) {
    faces.emplace_back("rank1", FaceSpec::restricted_rank1(CVec::Ones(s.d)));
  } else {
    const auto ed = herm_eig(coh);
    faces.emplace_back("rank1", FaceSpec::restricted_rank1(ed.eigenvectors.col(s.d - 1)));
  }
  faces.emplace_back("bosonic", FaceSpec::bosonic());

  Verdict merged;
  merged.status = VerdictStatus::Inconclusive;
  bool have_best = false;
  for (const auto& [label, face] : faces) {
    const double residual = face_residual(s, face, opt.tol);
    const double face_thr = (face.kind == FaceKind::Sparse) ? 0.0 : 1e-9;
    if (residual > face_thr) {
      merged.evidence.push_back({label + "/face", "skipped_not_on_face", residual, face_thr});
      continue;
    }
    const Verdict v = detect_impl(s, face, opt, nullptr);
    for (const auto& e : v.evidence)
      merged.evidence.push_back({label + "/" + e.step, e.test, e.value, e.threshold});
    if (!have_best || status_order(v.status) > status_order(merged.status)) {
      have_best = true;
      merged.status = v.status;
      merged.face = v.face;
      merged.cone = v.cone;
      merged.mapped_digest = v.mapped_digest;
      merged.mapped_rows = v.mapped_rows;
      merged.mapped_cols = v.mapped_cols;
      merged.extremality = v.extremality;
    }
  }
  return merged;
}

BipartiteState separable_sampler(const FaceSpec& f, int d, int k_terms, std::uint64_t seed) {
  if (k_terms < 1) throw Error(Errc::PreconditionViolation, "separable_sampler: k_terms >= 1");
  if (d < 1) throw Error(Errc::PreconditionViolation, "separable_sampler: d >= 1");
  if (f.kind == FaceKind::Sparse && f.pattern.n() != d)
    throw Error(Errc::DimensionMismatch, "separable_sampler: pattern size != d");
  if (f.kind == FaceKind::RestrictedRank1 && f.phi.size() != d)
    throw Error(Errc::DimensionMismatch, "separable_sampler: phi size != d");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_complex = [&]() { return Complex(gauss(rng), gauss(rng)); };

  CMat rho = CMat::Zero(d * d, d * d);
  const auto edges = (f.kind == FaceKind::Sparse) ? f.pattern.edges()
                                                  : std::vector<std::pair<int, int>>{};

  for (int k = 0; k < k_terms; ++k) {
    CVec v = CVec::Zero(d), w = CVec::Zero(d);
    switch (f.kind) {
      case FaceKind::Sparse: {
        // Both local supports on one edge (or one vertex), so the diagonal
        // matrix of each term is supported inside the face pattern.
        std::uniform_int_distribution<std::size_t> pick(0, edges.size()); // == edges.size() -> single vertex
        const std::size_t choice = pick(rng);
        std::vector<int> supp;
        if (choice < edges.size()) {
          supp = {edges[choice].first, edges[choice].second};
        } else {
          std::uniform_int_distribution<int> vert(0, d - 1);
          supp = {vert(rng)};
        }
        for (int i : supp) {
          v(i) = random_complex();
          w(i) = random_complex();
        }
        break;
      }
      case FaceKind::RestrictedRank1: {
        // v (.) w proportional to phi: the diagonal coherence block of every
        // term is a multiple of phi phi*.
        for (int i = 0; i < d; ++i) {
          do {
            v(i) = random_complex();
          } while (std::abs(v(i)) < 0.3);
        }
        const Complex c = random_complex();
        for (int i = 0; i < d; ++i) w(i) = c * f.phi(i) / v(i);
        break;
      }
      case FaceKind::Bosonic: {
        for (int i = 0; i < d; ++i) v(i) = random_complex();
        w = v; // v (x) v lies in the symmetric subspace
        break;
      }
    }
    rho += kron(v * v.adjoint(), w * w.adjoint());
  }

  BipartiteState s(d, rho);
  if (!face_check(s, f))
    throw Error(Errc::FaceUnsatisfiable, "separable_sampler: sample violates the face");
  return s;
}

} // namespace conewit
