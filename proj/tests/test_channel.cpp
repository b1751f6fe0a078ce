#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "qdiv/channel.hpp"
#include "qdiv/channel_json.hpp"
#include "qdiv/error.hpp"
#include "qdiv/random_channels.hpp"

using namespace qdiv;

namespace {

Matrix4 a_not_matrix() { return Vector4(1, -1.0 / 3, -1.0 / 3, -1.0 / 3).asDiagonal(); }

Vector4 sorted_eigenvalues(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
  return es.eigenvalues();
}

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("ptm_from_kraus on standard Kraus sets") {
    const auto s = oracle::paulis();
    CHECK(ptm_from_kraus(KrausSet({s[0]})).matrix().isApprox(Matrix4::Identity()));
    CHECK(ptm_from_kraus(KrausSet({s[1]})).matrix().isApprox(Vector4(1, 1, -1, -1).asDiagonal().toDenseMatrix()));
    const double w = 1 / std::sqrt(3.0);
    const Matrix4 m = ptm_from_kraus(KrausSet({w * s[1], w * s[2], w * s[3]})).matrix();
    CHECK((m - a_not_matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("ptm_from_kraus rejects non-trace-preserving sets with the residual") {
    Matrix2c k = Matrix2c::Identity() * 1.1;
    try {
      (void)KrausSet({k});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCptp);
      CHECK(e.witness() == doctest::Approx(std::sqrt(2.0) * 0.21));
    }
    CHECK_THROWS_AS(KrausSet({}), Error);
  }

  TEST_CASE("ptm_from_kraus agrees with the Choi-based oracle") {
    Rng rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
      // Random isometry V (4x2) split into two Kraus operators.
      Eigen::Matrix<Complex, 4, 2> g;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Complex(normal(rng), normal(rng));
      Eigen::HouseholderQR<Eigen::Matrix<Complex, 4, 2>> qr(g);
      const Eigen::Matrix<Complex, 4, 2> v = qr.householderQ() * Eigen::Matrix<Complex, 4, 2>::Identity();
      std::vector<Matrix2c> ks{v.topRows<2>(), v.bottomRows<2>()};
      const Matrix4 expected = oracle::ptm_from_choi(oracle::choi_from_kraus(ks));
      CHECK((ptm_from_kraus(KrausSet(ks)).matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("choi_from_ptm examples") {
    const Matrix4c id = choi_from_ptm(PauliTransferMatrix::identity()).matrix();
    CHECK((id - maximally_entangled_projector()).cwiseAbs().maxCoeff() < 1e-15);
    const Vector4 e = sorted_eigenvalues(choi_from_ptm(PauliTransferMatrix(a_not_matrix())).matrix());
    CHECK(e(0) == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(e(i) == doctest::Approx(1.0 / 3));
    const Matrix4c n = choi_from_ptm(PauliTransferMatrix::pauli(0, 0, 0)).matrix();
    CHECK((n - 0.25 * Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("ptm_from_choi inverts choi_from_ptm") {
    CHECK(ptm_from_choi(ChoiMatrix(maximally_entangled_projector())).matrix().isApprox(Matrix4::Identity()));
    CHECK(ptm_from_choi(ChoiMatrix(0.25 * Matrix4c::Identity())).matrix().isApprox(
        Vector4(1, 0, 0, 0).asDiagonal().toDenseMatrix()));
    const PauliTransferMatrix a(a_not_matrix());
    CHECK((ptm_from_choi(choi_from_ptm(a)).matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("ChoiMatrix enforces its invariants") {
    Matrix4c bad = maximally_entangled_projector();
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(ChoiMatrix{bad}, Error);
    // Trace one but Tr_2 != 1/2: the replacement channel onto |0><0|... transposed.
    Matrix4c skew = Matrix4c::Zero();
    skew(0, 0) = 1.0;
    try {
      (void)ChoiMatrix(skew);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCptp);
    }
  }

  TEST_CASE("is_cptp examples") {
    CHECK(is_cptp(PauliTransferMatrix::pauli(0.9, 0.8, 0.75)).ok);
    const CptpCheck bad = is_cptp(PauliTransferMatrix::pauli(1, 1, -1));
    CHECK_FALSE(bad.ok);
    CHECK(bad.min_choi_eigenvalue == doctest::Approx(-0.5));
    CHECK(is_cptp(PauliTransferMatrix::identity()).ok);
  }

  TEST_CASE("Pauli Choi eigenvalues follow the closed form") {
    Rng rng(3);
    std::uniform_real_distribution<double> uni(-1.2, 1.2);
    for (int trial = 0; trial < 500; ++trial) {
      const double l1 = uni(rng), l2 = uni(rng), l3 = uni(rng);
      const auto expected = oracle::pauli_choi_eigenvalues(l1, l2, l3);
      const Vector4 got = sorted_eigenvalues(choi_of(Vector4(1, l1, l2, l3).asDiagonal()));
      for (int i = 0; i < 4; ++i) CHECK(std::abs(got(i) - expected[static_cast<std::size_t>(i)]) < 1e-12);
    }
  }

  TEST_CASE("kraus_rank examples") {
    CHECK(kraus_rank(PauliTransferMatrix::identity()) == 1);
    CHECK(kraus_rank(PauliTransferMatrix(a_not_matrix())) == 3);
    CHECK(kraus_rank(PauliTransferMatrix::pauli(0.8, 0.8, 0.6)) == 3);
    CHECK(kraus_rank(PauliTransferMatrix::pauli(0.5, 0.5, 0.5)) == 4);
    CHECK_THROWS_AS(kraus_rank(PauliTransferMatrix::pauli(1, 1, -1)), Error);
  }

  TEST_CASE("compose, determinant, unitality, apply") {
    const PauliTransferMatrix e = PauliTransferMatrix::pauli(0.9, 0.7, 0.5);
    CHECK(compose(PauliTransferMatrix::identity(), e).matrix().isApprox(e.matrix()));
    const PauliTransferMatrix z = PauliTransferMatrix::pauli(-1, -1, 1);
    CHECK(compose(z, e).matrix().isApprox(Vector4(1, -0.9, -0.7, 0.5).asDiagonal().toDenseMatrix()));
    const PauliTransferMatrix a(a_not_matrix());
    CHECK(std::abs(determinant(a) + 1.0 / 27) < 1e-15);
    CHECK(is_unital(e));
    CHECK_FALSE(is_unital(load_channel(QDIV_TEST_DATA "/nondiagonal_lorentz.json")));
    const Vector3 out = apply(a, Vector3(0, 0, 1));
    CHECK((out - Vector3(0, 0, -1.0 / 3)).norm() < 1e-15);
  }

  TEST_CASE("PTM constructor rejects broken trace preservation") {
    Matrix4 m = Matrix4::Identity();
    m(0, 0) = 0.99;
    CHECK_THROWS_AS(PauliTransferMatrix{m}, Error);
    m(0, 0) = NAN;
    CHECK_THROWS_AS(PauliTransferMatrix{m}, Error);
  }

  TEST_CASE("channel JSON formats agree") {
    const PauliTransferMatrix kraus = load_channel(QDIV_TEST_DATA "/amplitude_damping.json");
    // Amplitude damping with gamma = 0.36: x, y -> 0.8, z -> 0.64, shift 0.36.
    Matrix4 expected = Vector4(1, 0.8, 0.8, 0.64).asDiagonal();
    expected(3, 0) = 0.36;
    CHECK((kraus.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    const PauliTransferMatrix via_choi = channel_from_json(choi_to_json(choi_from_ptm(kraus)));
    CHECK((via_choi.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    const PauliTransferMatrix via_ptm = channel_from_json(channel_to_json(kraus));
    CHECK(via_ptm.matrix() == kraus.matrix());
  }

  TEST_CASE("channel JSON errors") {
    CHECK_THROWS_AS(load_channel(QDIV_TEST_DATA "/malformed.json"), Error);
    try {
      (void)load_channel(QDIV_TEST_DATA "/missing.json");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
    try {
      (void)channel_from_json(nlohmann::json{{"format", "ptm"}, {"matrix", {1, 2}}});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
    CHECK_THROWS_AS(channel_from_json(nlohmann::json{{"format", "bloch"}}), Error);
  }

  TEST_CASE("round trip and rank bound on random Kraus sets") {
    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
      const int rank = 1 + trial % 4;
      const PauliTransferMatrix e = random_channel(rng, rank);
      CHECK(is_cptp(e).ok);
      CHECK(kraus_rank(e) <= rank);
      CHECK((ptm_from_choi(choi_from_ptm(e)).matrix() - e.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("determinant is multiplicative") {
    Rng rng(6);
    for (int trial = 0; trial < 1000; ++trial) {
      const PauliTransferMatrix a = random_channel(rng);
      const PauliTransferMatrix b = random_channel(rng);
      CHECK(std::abs(determinant(compose(a, b)) - determinant(a) * determinant(b)) < 1e-10);
    }
  }
}
