#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdiv/divisibility.hpp"
#include "qdiv/dynamics.hpp"
#include "qdiv/error.hpp"
#include "qdiv/real_log.hpp"

using namespace qdiv;

namespace {

constexpr double kPi = std::numbers::pi;

JCParams small_params() {
  JCParams p;
  p.alpha = {1.5, 0.5};
  p.g = 1.0;
  p.wa = 2.0;
  p.wf = 2.5;
  p.n_max = JCParams::default_n_max(p.alpha);
  return p;
}

double tomographic_pe(const PauliTransferMatrix& e) { return 0.5 * (1.0 + apply(e, Vector3(0, 0, -1))(2)); }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("commutator term") {
    // F(s_b) = (i/3) sum_j [s_j, s_b] = (i/3) sum_j 2i eps_{jbk} s_k.
    Matrix4 expected = Matrix4::Zero();
    for (int b = 1; b <= 3; ++b) {
      for (int j = 1; j <= 3; ++j) {
        for (int k = 1; k <= 3; ++k) {
          const int eps = (j - b) * (b - k) * (k - j) / 2;
          expected(k, b) += -2.0 / 3 * eps;
        }
      }
    }
    CHECK((anot_commutator_ptm() - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(anot_commutator_ptm()(1, 2)) == doctest::Approx(2.0 / 3));
  }

  TEST_CASE("collision map examples") {
    CHECK((anot_map(0).matrix() - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((anot_map(kPi / 2).matrix() - Vector4(1, -1.0 / 3, -1.0 / 3, -1.0 / 3).asDiagonal().toDenseMatrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    const PauliTransferMatrix mid = anot_map(kPi / 4);
    Eigen::JacobiSVD<Matrix3> svd(mid.bloch().delta);
    CHECK((svd.singularValues() - Vector3(2.0 / 3, 2.0 / 3, 1.0 / 3)).norm() < 1e-12);
    CHECK(std::abs(is_cptp(mid).min_choi_eigenvalue) < 1e-12);
  }

  TEST_CASE("collision map is CPTP on a dense grid") {
    for (int i = 0; i < 2000; ++i) {
      const double t = 2 * kPi * i / 1999;
      CHECK(is_cptp(anot_map(t)).min_choi_eigenvalue >= -1e-9);
    }
  }

  TEST_CASE("collision map determinant") {
    CHECK(determinant(anot_map(0)) == doctest::Approx(1.0));
    CHECK(determinant(anot_map(kPi / 2)) == doctest::Approx(-1.0 / 27));
    int crossings = 0;
    std::vector<double> at;
    double prev = determinant(anot_map(0));
    const int n = 4000;
    for (int i = 1; i <= n; ++i) {
      const double t = kPi * i / n;
      const double d = determinant(anot_map(t));
      if ((d < 0) != (prev < 0)) {
        ++crossings;
        at.push_back(t);
      }
      prev = d;
    }
    REQUIRE(crossings == 2);
    CHECK(std::abs(at[0] - kPi / 3) < kPi / n * 1.01);
    CHECK(std::abs(at[1] - 2 * kPi / 3) < kPi / n * 1.01);
  }

  TEST_CASE("JC channel at t = 0 is the identity") {
    const JaynesCummingsModel model(small_params());
    CHECK((model.channel(0).matrix() - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("JC channel is CPTP and its populations agree with the series") {
    const JCParams p = small_params();
    const JaynesCummingsModel model(p);
    for (int i = 0; i < 200; ++i) {
      const double t = 30.0 * i / 199;
      const PauliTransferMatrix e = model.channel(t);
      CHECK(is_cptp(e).min_choi_eigenvalue >= -1e-7);
      CHECK(std::abs(tomographic_pe(e) - jc_pe_analytic(t, p, 200)) < 1e-6);
      CHECK(std::abs(model.excited_population(t) - tomographic_pe(e)) < 1e-12);
      const auto norms = model.state_norms(t);
      CHECK(std::abs(norms[0] - 1) < 1e-10);
      CHECK(std::abs(norms[1] - 1) < 1e-10);
    }
  }

  TEST_CASE("vacuum field cannot excite a ground-state atom") {
    JCParams p;
    p.alpha = 0.0;
    p.g = 2.0;
    p.wa = 3.0;
    p.wf = 3.0;
    p.n_max = 4;
    const JaynesCummingsModel model(p);
    for (double t : {0.0, 0.3, 1.0, 7.5}) {
      CHECK(std::abs(tomographic_pe(model.channel(t))) < 1e-14);
      CHECK(std::abs(jc_pe_analytic(t, p, 5)) < 1e-15);
    }
  }

  TEST_CASE("resonant series reduces to the cosine sum") {
    JCParams p;
    p.alpha = 2.0;
    p.g = 1.3;
    p.wa = p.wf = 4.0;
    for (double t : {0.0, 0.7, 2.2, 9.0}) {
      double sz = 0;
      for (int n = 0; n < 120; ++n) {
        const double pn = std::exp(-4.0 + n * std::log(4.0) - std::lgamma(n + 1.0));
        sz -= pn * std::cos(2 * p.g * std::sqrt(n) * t);
      }
      CHECK(jc_pe_analytic(t, p, 120) == doctest::Approx((sz + 1) / 2).epsilon(1e-12));
    }
    CHECK(jc_pe_analytic(0.0, p, 120) == doctest::Approx(0.0));
    CHECK_THROWS_AS(jc_pe_analytic(1.0, p, 5), Error);
  }

  TEST_CASE("JC parameter validation") {
    JCParams p = small_params();
    p.n_max = 3;
    CHECK_THROWS_AS(JaynesCummingsModel{p}, Error);
    p = small_params();
    p.g = 0;
    CHECK_THROWS_AS(JaynesCummingsModel{p}, Error);
    CHECK(JCParams::default_n_max(6.0) == 84);
  }

  TEST_CASE("intermediate maps") {
    const PauliTransferMatrix e = anot_map(0.4);
    CHECK((intermediate_map(e, e) - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    const Matrix4 gen = Vector4(0, -0.3, -0.5, -0.6).asDiagonal();
    Matrix4 g2 = gen;
    g2(1, 2) = 0.2;
    g2(2, 1) = -0.2;
    const Matrix4 step = intermediate_map(exp_generator(g2, 0.5), exp_generator(g2, 1.7));
    CHECK((step - expm(1.2 * g2)).cwiseAbs().maxCoeff() < 1e-9);
    try {
      (void)intermediate_map(PauliTransferMatrix::pauli(0.5, 0, 0), e);
      FAIL("expected rejection");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Singular);
      CHECK(err.witness() < 1e-7);
    }
    // Near pi/2 the collision map's propagators stop being completely positive.
    int failures = 0;
    for (double t : {1.45, 1.5, 1.55}) {
      const Matrix4 m = intermediate_map(anot_map(t), anot_map(t + 0.05));
      if (choi_min_eigenvalue(m) < -1e-6) ++failures;
    }
    CHECK(failures == 3);
  }

  TEST_CASE("interval divisibility of a semigroup and of the collision map") {
    const Matrix4 gen = Vector4(0, -0.3, -0.5, -0.6).asDiagonal();
    const auto semigroup = [&](double t) { return exp_generator(gen, t); };
    const IntervalDivisibility ok = interval_divisibility(semigroup, uniform_grid(3, 50));
    CHECK(ok.cp_divisible);
    CHECK(ok.p_divisible_sampled);
    const IntervalDivisibility bad = interval_divisibility(anot_map, uniform_grid(1.0, 60));
    CHECK_FALSE(bad.cp_divisible);
    REQUIRE(bad.first_cp_failure);
  }

  TEST_CASE("sampled positivity") {
    CHECK(sampled_positivity(Matrix4::Identity()) == doctest::Approx(0.0).epsilon(1e-12));
    Matrix4 m = Matrix4::Identity();
    m(3, 3) = 1.2;
    CHECK(sampled_positivity(m) < -0.05);
  }

  TEST_CASE("trajectory grid, tracing and CSV") {
    CHECK(uniform_grid(3.0, 1) == std::vector<double>{0.0});
    const auto grid = uniform_grid(kPi, 7);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == kPi);
    const auto points = trace_trajectory(anot_map, grid);
    REQUIRE(points.size() == 7);
    CHECK(points[0].delta == 1.0);
    CHECK(points[0].chi == 0);
    CHECK(points[3].delta == 0.0);
    CHECK(points[3].chi == 1);
    CHECK_THROWS_AS(trace_trajectory(anot_map, {1.0, 0.5}), Error);

    std::stringstream ss;
    write_trajectory_csv(ss, points);
    const auto back = parse_trajectory_csv(ss);
    REQUIRE(back.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      CHECK(back[i].t == points[i].t);
      CHECK(back[i].delta == points[i].delta);
      CHECK(back[i].chi == points[i].chi);
      CHECK(back[i].det == points[i].det);
      CHECK_FALSE(back[i].pe);
    }

    const JaynesCummingsModel model(small_params());
    const auto jc = trace_trajectory([&](double t) { return model.channel(t); }, uniform_grid(2.0, 5),
                                     [&](double t) { return model.excited_population(t); });
    std::stringstream js;
    write_trajectory_csv(js, jc);
    const auto jb = parse_trajectory_csv(js);
    REQUIRE(jb.size() == 5);
    for (std::size_t i = 0; i < jb.size(); ++i) CHECK(*jb[i].pe == *jc[i].pe);
    std::stringstream broken("t,delta\n1,2\n");
    CHECK_THROWS_AS(parse_trajectory_csv(broken), Error);
  }
}
