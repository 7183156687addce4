#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conewit/named_matrices.hpp"
#include "conewit/states.hpp"
#include "support/generators.hpp"
#include "support/jacobi.hpp"

using namespace conewit;

namespace {

LdoiTriple corr_triple(double x) { return build_corr_state(CMat::Ones(4, 4), x); }

LdoiTriple dicke_triple() {
  const CMat a = circulant_pentagon();
  CMat y = CMat::Zero(5, 5);
  y.diagonal() = a.diagonal();
  return build_dicke_mixture(a, y);
}

LdoiTriple agler_triple() {
  const CMat y = agler_extremal_y();
  CMat z = CMat::Zero(4, 4);
  z.diagonal() = y.diagonal();
  return build_sparse_family(Graph::cycle(4), y, z, y.cwiseAbs());
}

} // namespace

TEST_CASE("LdoiTriple invariants") {
  CHECK_THROWS_AS(LdoiTriple(CMat::Ones(3, 3), CMat::Ones(3, 3), 2.0 * CMat::Identity(3, 3)),
                  Error); // unequal diagonals
  CHECK_THROWS_AS(LdoiTriple(-CMat::Ones(2, 2), CMat::Ones(2, 2), CMat::Ones(2, 2)), Error);
  CMat asym(2, 2);
  asym << 1, 2, 3, 1;
  CHECK_THROWS_AS(LdoiTriple(CMat::Ones(2, 2), asym, CMat::Ones(2, 2)), Error);
  CHECK_NOTHROW(LdoiTriple(CMat::Ones(2, 2), CMat::Ones(2, 2), CMat::Ones(2, 2)));
}

TEST_CASE("ldoi_matrix patterns") {
  SUBCASE("identity triple populates only |ii><ii|") {
    const LdoiTriple t(CMat::Identity(3, 3), CMat::Identity(3, 3), CMat::Identity(3, 3));
    const CMat rho = ldoi_matrix(t);
    CHECK(rho.cwiseAbs().sum() == doctest::Approx(3.0));
    for (int i = 0; i < 3; ++i) CHECK(rho(i * 3 + i, i * 3 + i) == Complex(1.0));
  }
  SUBCASE("d=2 all-ones triple") {
    const LdoiTriple t(CMat::Ones(2, 2), CMat::Ones(2, 2), CMat::Ones(2, 2));
    const CMat rho = ldoi_matrix(t);
    CHECK(rho(0, 3) == Complex(1.0)); // <00|rho|11> = Y_12
    CHECK(rho(1, 2) == Complex(1.0)); // <01|rho|10> = Z_12
    CHECK(rho(1, 1) == Complex(1.0)); // <01|rho|01> = X_12
  }
  SUBCASE("corr state matches a direct construction") {
    const double x = 0.45;
    const CMat rho = ldoi_matrix(corr_triple(x));
    CMat ref = CMat::Zero(16, 16);
    CVec omega = CVec::Zero(16);
    for (int i = 0; i < 4; ++i) omega(i * 4 + i) = 1.0;
    ref += omega * omega.adjoint();
    const CMat h = h_family(x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) {
          ref(i * 4 + j, i * 4 + j) += 1.0;    // A_ij
          ref(i * 4 + j, j * 4 + i) += h(i, j); // H(x)_ij
        }
    CHECK((rho - ref).norm() < 1e-14);
  }
}

TEST_CASE("ldoi_to_dense enforces positivity") {
  CHECK_NOTHROW(ldoi_to_dense(corr_triple(0.5)));
  // X with a vanishing off-diagonal but nonzero Z there is not PSD
  CMat x = CMat::Identity(2, 2), z = CMat::Ones(2, 2);
  z.diagonal().setOnes();
  CHECK_THROWS_AS(ldoi_to_dense(LdoiTriple(x, CMat::Identity(2, 2), z)), Error);
}

TEST_CASE("ldoi_is_psd") {
  CHECK(ldoi_is_psd(corr_triple(0.5)));
  CHECK(ldoi_is_psd(corr_triple(0.6))); // PSD holds past the PPT boundary
  {
    CMat x = CMat::Identity(2, 2), z = CMat::Ones(2, 2);
    CHECK_FALSE(ldoi_is_psd(LdoiTriple(x, CMat::Identity(2, 2), z)));
  }
  {
    // Y block not PSD shows up directly
    CMat y(2, 2);
    y << 1, 3, 3, 1;
    CHECK_FALSE(ldoi_is_psd(LdoiTriple(CMat::Ones(2, 2), y, CMat::Ones(2, 2))));
  }
}

TEST_CASE("ldoi_is_ppt") {
  CHECK(ldoi_is_ppt(corr_triple(0.5)));
  CHECK(ldoi_is_ppt(corr_triple(1.0 / std::sqrt(3.0))));
  CHECK_FALSE(ldoi_is_ppt(corr_triple(0.6)));
  CHECK(ldoi_is_ppt(agler_triple()));
  CHECK(ldoi_is_ppt(dicke_triple()));
  {
    // Z not PSD kills PPT even when the state itself is PSD
    CMat z(2, 2);
    z << 1, -2, -2, 1;
    CMat x = CMat::Ones(2, 2) * 2.0;
    x.diagonal().setOnes();
    CHECK_FALSE(ldoi_is_ppt(LdoiTriple(x, CMat::Ones(2, 2), z)));
  }
}

TEST_CASE("LDOI shortcuts agree with dense eigenvalue oracles") {
  std::mt19937_64 rng(91);
  int psd_count = 0, ppt_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + int(rng() % 3);
    const LdoiTriple t = gen::random_ldoi_triple(rng, d);
    const CMat rho = ldoi_matrix(t);
    const bool dense_psd = is_psd(rho).psd;
    const bool dense_ppt = dense_psd && is_psd(partial_transpose(rho, d)).psd;
    CHECK(ldoi_is_psd(t) == dense_psd);
    CHECK(ldoi_is_ppt(t) == dense_ppt);
    psd_count += dense_psd;
    ppt_count += dense_ppt;
  }
  // the generator must exercise both outcomes
  CHECK(psd_count > 20);
  CHECK(psd_count < 180);
  CHECK(ppt_count > 5);
}

TEST_CASE("partial transpose of a triple swaps Y and Z") {
  std::mt19937_64 rng(92);
  const LdoiTriple t = gen::random_ldoi_triple(rng, 3);
  const CMat lhs = partial_transpose(ldoi_matrix(t), 3);
  const CMat rhs = ldoi_matrix(ldoi_partial_transpose(t));
  CHECK((lhs - rhs).norm() == 0.0);
}

TEST_CASE("ldoi_ccnr_satisfied") {
  SUBCASE("corr family sits exactly on the CCNR boundary") {
    for (double x : {0.3, 0.5, 0.55, 1.0 / std::sqrt(3.0)}) {
      const auto r = ldoi_ccnr_satisfied(corr_triple(x));
      CHECK(r.lhs == doctest::Approx(12.0).epsilon(1e-12));
      CHECK(r.rhs == doctest::Approx(12.0).epsilon(1e-12));
      CHECK(r.satisfied);
    }
  }
  SUBCASE("A = I + t(J - I) satisfies the realignment criterion for t >= 1") {
    for (double t : {1.0, 1.5}) {
      CMat a = CMat::Identity(4, 4) + t * (CMat::Ones(4, 4) - CMat::Identity(4, 4));
      const auto r = ldoi_ccnr_satisfied(LdoiTriple(a, CMat::Ones(4, 4), h_family(0.5)));
      CHECK(r.satisfied);
    }
  }
  SUBCASE("identity triple: 0 >= 0") {
    const auto r = ldoi_ccnr_satisfied(
        LdoiTriple(CMat::Identity(4, 4), CMat::Identity(4, 4), CMat::Identity(4, 4)));
    CHECK(r.lhs == doctest::Approx(0.0));
    CHECK(r.rhs == doctest::Approx(0.0));
    CHECK(r.satisfied);
  }
}

TEST_CASE("diag_matrix") {
  SUBCASE("|omega><omega| -> identity") {
    CVec omega = CVec::Zero(9);
    for (int i = 0; i < 3; ++i) omega(i * 3 + i) = 1.0;
    const BipartiteState s(3, omega * omega.adjoint());
    CHECK((diag_matrix(s) - CMat::Identity(3, 3)).norm() == 0.0);
  }
  SUBCASE("maximally mixed -> all ones") {
    const BipartiteState s(3, CMat::Identity(9, 9));
    CHECK((diag_matrix(s) - CMat::Ones(3, 3)).norm() == 0.0);
  }
  SUBCASE("ldoi dense recovers X exactly") {
    std::mt19937_64 rng(93);
    for (int trial = 0; trial < 30; ++trial) {
      const LdoiTriple t = gen::random_ldoi_triple(rng, 3);
      if (!ldoi_is_psd(t)) continue;
      const CMat d = diag_matrix(ldoi_to_dense(t));
      CHECK((d - t.X).norm() == 0.0);
    }
  }
}

TEST_CASE("face_check") {
  SUBCASE("corr states live on the rank1(e) face") {
    const auto s = ldoi_to_dense(corr_triple(0.5));
    CHECK(face_check(s, FaceSpec::restricted_rank1(CVec::Ones(4))));
    CHECK_FALSE(face_check(s, FaceSpec::bosonic()));
  }
  SUBCASE("sparse family lives on the sparse face") {
    const auto s = ldoi_to_dense(agler_triple());
    CHECK(face_check(s, FaceSpec::sparse(Graph::cycle(4))));
    CHECK_FALSE(face_check(s, FaceSpec::sparse(Graph::empty(4))));
  }
  SUBCASE("dicke mixtures are bosonic") {
    const auto s = ldoi_to_dense(dicke_triple());
    CHECK(face_check(s, FaceSpec::bosonic()));
    const CMat f = flip_operator(5);
    CHECK((s.rho * f - s.rho).norm() < 1e-12);
    CHECK((f * s.rho - s.rho).norm() < 1e-12);
  }
  SUBCASE("dimension mismatches are errors") {
    const auto s = ldoi_to_dense(corr_triple(0.5));
    CHECK_THROWS_AS(face_check(s, FaceSpec::sparse(Graph::cycle(3))), Error);
    CHECK_THROWS_AS(face_check(s, FaceSpec::restricted_rank1(CVec::Ones(3))), Error);
  }
}

TEST_CASE("face_map") {
  SUBCASE("corr state maps to H(x)") {
    for (double x : {0.4, 0.55}) {
      const auto fm = face_map(ldoi_to_dense(corr_triple(x)),
                               FaceSpec::restricted_rank1(CVec::Ones(4)));
      CHECK(fm.transposed);
      CHECK((fm.M - h_family(x)).norm() < 1e-14);
      // fixed diagonal: |phi_i|^2 = 1
      for (int i = 0; i < 4; ++i) CHECK(fm.M(i, i) == Complex(1.0));
    }
  }
  SUBCASE("sparse LDOI maps to Y") {
    const auto fm = face_map(ldoi_to_dense(agler_triple()), FaceSpec::sparse(Graph::cycle(4)));
    CHECK_FALSE(fm.transposed);
    CHECK((fm.M - agler_extremal_y()).norm() < 1e-14);
  }
  SUBCASE("dicke mixture maps to A, which equals D(rho)") {
    const auto s = ldoi_to_dense(dicke_triple());
    const auto fm = face_map(s, FaceSpec::bosonic());
    CHECK(fm.transposed);
    CHECK((fm.M - circulant_pentagon()).norm() < 1e-14);
    CHECK((fm.M - diag_matrix(s)).norm() < 1e-14);
  }
  SUBCASE("off-face states are rejected") {
    const auto s = ldoi_to_dense(corr_triple(0.5));
    CHECK_THROWS_AS(face_map(s, FaceSpec::bosonic()), Error);
    try {
      face_map(s, FaceSpec::bosonic());
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotOnFace);
    }
  }
}

TEST_CASE("bosonic face map is entrywise nonnegative on random bosonic states") {
  std::mt19937_64 rng(94);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + int(rng() % 3);
    const CMat g = gen::random_matrix(rng, d * d, 1 + int(rng() % 4));
    const CMat pi = 0.5 * (CMat::Identity(d * d, d * d) + flip_operator(d));
    const BipartiteState s(d, pi * g * g.adjoint() * pi);
    REQUIRE(face_check(s, FaceSpec::bosonic()));
    const auto fm = face_map(s, FaceSpec::bosonic());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        CHECK(fm.M(i, j).real() >= -1e-10 * frob_scale(s.rho));
        CHECK(std::abs(fm.M(i, j).imag()) <= 1e-10 * frob_scale(s.rho));
      }
  }
}

TEST_CASE("sparse face map lands in the sparse cone for PPT states") {
  std::mt19937_64 rng(95);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 3 + int(rng() % 2);
    const Graph h = gen::random_graph(rng, d, 0.5);
    // Random PPT triple supported on h: Gershgorin-dominant diagonal, X
    // dominating Y and Z blockwise.
    CMat x = CMat::Zero(d, d), y = CMat::Zero(d, d), z = CMat::Zero(d, d);
    for (auto [i, j] : h.edges()) {
      y(i, j) = gen::random_complex(rng);
      y(j, i) = std::conj(y(i, j));
      z(i, j) = gen::random_complex(rng);
      z(j, i) = std::conj(z(i, j));
      const double floor_ij = std::max(std::abs(y(i, j)), std::abs(z(i, j)));
      x(i, j) = floor_ij + unif(rng);
      x(j, i) = floor_ij + unif(rng);
    }
    for (int i = 0; i < d; ++i) {
      const double dom =
          0.5 + y.row(i).cwiseAbs().sum() + z.row(i).cwiseAbs().sum();
      x(i, i) = dom;
      y(i, i) = dom;
      z(i, i) = dom;
    }
    const LdoiTriple t(x, y, z);
    REQUIRE(ldoi_is_ppt(t));
    const auto s = ldoi_to_dense(t);
    REQUIRE(face_check(s, FaceSpec::sparse(h)));
    const auto fm = face_map(s, FaceSpec::sparse(h));
    CHECK(is_subgraph(graph_of_matrix(fm.M), h));
  }
}

TEST_CASE("rotate_local") {
  std::mt19937_64 rng(96);
  const int d = 3;
  const LdoiTriple t = gen::random_ldoi_triple(rng, d);
  if (ldoi_is_psd(t)) {
    const auto s = ldoi_to_dense(t);
    const Eigen::HouseholderQR<CMat> qra(gen::random_matrix(rng, d, d));
    const Eigen::HouseholderQR<CMat> qrb(gen::random_matrix(rng, d, d));
    const CMat ua = qra.householderQ();
    const CMat ub = qrb.householderQ();
    const auto rotated = rotate_local(s, ua, ub);
    // D(rotated) matches the direct custom-basis formula
    const CMat u = kron(ua, ub);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const CVec basis_vec = u.col(i * d + j);
        const Complex expect = (basis_vec.adjoint() * s.rho * basis_vec)(0);
        CHECK(std::abs(diag_matrix(rotated)(i, j) - expect) < 1e-10);
      }
  }
  CHECK_THROWS_AS(
      rotate_local(ldoi_to_dense(corr_triple(0.3)), CMat::Ones(4, 4), CMat::Identity(4, 4)),
      Error);
}

TEST_CASE("build_sparse_family preconditions") {
  const CMat y = agler_extremal_y();
  CMat z = CMat::Zero(4, 4);
  z.diagonal() = y.diagonal();
  SUBCASE("the worked example passes and is PPT on its face") {
    const LdoiTriple t = build_sparse_family(Graph::cycle(4), y, z, y.cwiseAbs());
    CHECK(ldoi_is_ppt(t));
    CHECK(face_check(ldoi_to_dense(t), FaceSpec::sparse(Graph::cycle(4))));
  }
  SUBCASE("diagonal triple on the empty graph") {
    CHECK_NOTHROW(build_sparse_family(Graph::empty(4), CMat::Identity(4, 4),
                                      CMat::Identity(4, 4), CMat::Identity(4, 4)));
  }
  SUBCASE("product inequality violations are named") {
    // Z stays PSD but |Z_01|^2 = 1.44 exceeds X_01 X_10 = 1
    CMat zbig = z;
    zbig(0, 1) = 1.2;
    zbig(1, 0) = 1.2;
    try {
      build_sparse_family(Graph::cycle(4), y, zbig, y.cwiseAbs());
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PreconditionViolation);
      CHECK(std::string(e.what()).find("X_ij X_ji") != std::string::npos);
    }
  }
  SUBCASE("pattern violations rejected") {
    CMat xfull = CMat::Ones(4, 4);
    xfull.diagonal() = y.diagonal();
    CHECK_THROWS_AS(build_sparse_family(Graph::cycle(4), y, z, xfull), Error);
  }
}

TEST_CASE("build_corr_state") {
  CHECK(ldoi_is_ppt(corr_triple(0.4)));
  CHECK(ldoi_is_ppt(corr_triple(0.55)));
  CHECK_FALSE(ldoi_is_ppt(corr_triple(0.6)));
  CMat bad = CMat::Ones(4, 4) * 2.0;
  CHECK_THROWS_AS(build_corr_state(bad, 0.5), Error);
  try {
    build_corr_state(bad, 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadDiagonal);
  }
  CHECK_THROWS_AS(build_corr_state(CMat::Ones(3, 3), 0.5), Error);
}

TEST_CASE("build_dicke_mixture") {
  const CMat a = circulant_pentagon();
  SUBCASE("zero off-diagonal Y") {
    const LdoiTriple t = dicke_triple();
    CHECK(ldoi_is_ppt(t));
    CHECK(face_check(ldoi_to_dense(t), FaceSpec::bosonic()));
  }
  SUBCASE("Y = A keeps the omega-type coherences and stays PPT") {
    const LdoiTriple t = build_dicke_mixture(a, a);
    CHECK(ldoi_is_ppt(t));
    CHECK(face_check(ldoi_to_dense(t), FaceSpec::bosonic()));
  }
  SUBCASE("|A_ij| >= Y_ij is enforced") {
    CMat y = CMat::Zero(5, 5);
    y.diagonal() = a.diagonal();
    y(0, 2) = 0.5; // A_02 = 0
    y(2, 0) = 0.5;
    CHECK_THROWS_AS(build_dicke_mixture(a, y), Error);
  }
}

TEST_CASE("state invariant enforcement") {
  CHECK_THROWS_AS(BipartiteState(2, CMat::Identity(3, 3)), Error);
  CMat neg = -CMat::Identity(4, 4);
  CHECK_THROWS_AS(BipartiteState(2, neg), Error);
}
