#include "doctest.h"

#include <cmath>

#include "modkit/core.hpp"
#include "modkit/random.hpp"

using namespace modkit;

namespace {

RLOperatord random_antilinear(Rng& rng, int d) {
  return RLOperatord::antilinear_from_complex(rng.complex_matrix(d, d) +
                                              2.0 * Eigen::MatrixXcd::Identity(d, d));
}

Eigen::MatrixXcd random_positive(Rng& rng, int d) {
  Eigen::MatrixXcd a = rng.complex_matrix(d, d);
  return a * a.adjoint() + 0.5 * Eigen::MatrixXcd::Identity(d, d);
}

}  // namespace

TEST_CASE("complex structure squares to minus one") {
  for (int d : {1, 3, 7}) {
    Eigen::MatrixXd i = ComplexStructured(d).matrix();
    CHECK((i * i + Eigen::MatrixXd::Identity(2 * d, 2 * d)).norm() < 1e-14);
    CHECK((i.transpose() + i).norm() == 0.0);
  }
}

TEST_CASE("realification matches complex arithmetic") {
  Rng rng(3);
  const int d = 4;
  Eigen::MatrixXcd a = rng.complex_matrix(d, d);
  Eigen::VectorXcd v = rng.complex_vector(d);
  Eigen::VectorXd lin = realify<double>(a) * realify_vector<double>(v);
  CHECK((complexify_vector<double>(lin) - a * v).norm() < 1e-13);
  Eigen::VectorXd anti = realify_antilinear<double>(a) * realify_vector<double>(v);
  CHECK((complexify_vector<double>(anti) - a * v.conjugate()).norm() < 1e-13);
  CHECK(RLOperatord::from_complex(a).complex_matrix().isApprox(a));
  CHECK(RLOperatord::antilinear_from_complex(a).complex_matrix().isApprox(a));
}

TEST_CASE("hermitian form is linear in the second argument") {
  Rng rng(5);
  Eigen::VectorXcd v = rng.complex_vector(3), w = rng.complex_vector(3);
  std::complex<double> h = hermitian_form<double>(realify_vector<double>(v), realify_vector<double>(w));
  CHECK(std::abs(h - v.dot(w)) < 1e-13);
}

TEST_CASE("linearity tags are validated") {
  Rng rng(7);
  Eigen::MatrixXd m = rng.normal_matrix(4, 4);
  CHECK(RLOperatord::classify(m).linearity() == Linearity::General);
  CHECK_THROWS_AS(RLOperatord(m, Linearity::ComplexLinear), Error);
  RLOperatord j = RLOperatord::conjugation(2);
  CHECK(RLOperatord::classify(j.matrix()).linearity() == Linearity::Antilinear);
  CHECK((j * j).linearity() == Linearity::ComplexLinear);
}

TEST_CASE("transpose of an antilinear operator is its adjoint") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rng.integer(1, 6);
    RLOperatord a = random_antilinear(rng, d);
    CHECK(a.transpose().anticommutator_defect() < 1e-12);
    Eigen::VectorXd u = rng.normal_vector(2 * d), v = rng.normal_vector(2 * d);
    Eigen::VectorXd tu = a.transpose() * u, av = a * v;
    CHECK(std::abs(tu.dot(v) - av.dot(u)) < 1e-11);
  }
}

TEST_CASE("antiunitaries conjugate the hermitian form") {
  Rng rng(13);
  const int d = 3;
  RLOperatord j = RLOperatord::antilinear_from_complex(rng.unitary(d));
  Eigen::VectorXd v = rng.normal_vector(2 * d), w = rng.normal_vector(2 * d);
  std::complex<double> before = hermitian_form<double>(v, w);
  Eigen::VectorXd jv = j * v, jw = j * w;
  std::complex<double> after = hermitian_form<double>(jv, jw);
  CHECK(std::abs(after - std::conj(before)) < 1e-12);
}

TEST_CASE("antilinear polar decomposition") {
  SUBCASE("conjugation is its own polar part") {
    PolarPaird p = antilinear_polar(RLOperatord::conjugation(2));
    CHECK((p.delta.matrix() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-14);
    CHECK(operator_distance(p.j, RLOperatord::conjugation(2)) < 1e-14);
  }
  SUBCASE("recomposition on random operators") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = rng.integer(1, 8);
      RLOperatord s = random_antilinear(rng, d);
      PolarPaird p = antilinear_polar(s);
      Eigen::MatrixXd root = operator_function(p.delta, SpectralFunction::power(0.5)).matrix();
      CHECK((p.j.matrix() * root - s.matrix()).norm() < 1e-10 * s.matrix().norm());
    }
  }
  SUBCASE("S = J0 P recovers (P, J0)") {
    Rng rng(19);
    const int d = 3;
    Eigen::MatrixXcd u = rng.unitary(d);
    Eigen::MatrixXcd p = random_positive(rng, d);
    // v -> u conj(p v) = (u conj(p)) conj(v)
    RLOperatord s = RLOperatord::antilinear_from_complex(u * p.conjugate());
    PolarPaird pp = antilinear_polar(s);
    Eigen::MatrixXcd delta = pp.delta.complex_matrix();
    CHECK((delta - p * p).norm() < 1e-10);
    CHECK((pp.j.complex_matrix() - u).norm() < 1e-10);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(antilinear_polar(RLOperatord::identity(2)), Error);
    Eigen::MatrixXcd sing = Eigen::MatrixXcd::Zero(2, 2);
    sing(0, 0) = 1.0;
    try {
      antilinear_polar(RLOperatord::antilinear_from_complex(sing));
      FAIL("expected Singular");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Singular);
    }
  }
}

TEST_CASE("operator functions") {
  Rng rng(23);
  const int d = 3;
  RLOperatord p = RLOperatord::from_complex(random_positive(rng, d));
  RLOperatord round = operator_function(operator_function(p, SpectralFunction::log()), SpectralFunction::exp());
  CHECK((round.matrix() - p.matrix()).norm() < 1e-12 * p.matrix().norm());
  RLOperatord a = operator_function(p, SpectralFunction::power(0.3));
  RLOperatord b = operator_function(a, SpectralFunction::power(1.0 / 0.3));
  CHECK((b.matrix() - p.matrix()).norm() < 1e-10 * p.matrix().norm());
  CHECK(operator_function(RLOperatord::identity(2), SpectralFunction::power(-2.7)).matrix().isIdentity(1e-14));

  Eigen::MatrixXcd nine = Eigen::MatrixXcd::Zero(2, 2);
  nine(0, 0) = 9.0;
  nine(1, 1) = 1.0 / 9.0;
  Eigen::MatrixXcd q = rng.unitary(2);
  RLOperatord n = RLOperatord::from_complex(q * nine * q.adjoint());
  Eigen::MatrixXcd quarter = operator_function(n, SpectralFunction::power(-0.25)).complex_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(quarter);
  CHECK(std::abs(es.eigenvalues()(0) - std::pow(9.0, -0.25)) < 1e-13);
  CHECK(std::abs(es.eigenvalues()(1) - std::pow(9.0, 0.25)) < 1e-13);

  Eigen::MatrixXcd neg = -Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(operator_function(RLOperatord::from_complex(neg), SpectralFunction::log()), Error);
}

TEST_CASE("imaginary powers form a one-parameter unitary group") {
  Rng rng(29);
  RLOperatord p = RLOperatord::from_complex(random_positive(rng, 3));
  RLOperatord a = imaginary_power(p, 0.4), b = imaginary_power(p, -1.1), c = imaginary_power(p, -0.7);
  CHECK(((a * b).matrix() - c.matrix()).norm() < 1e-12);
  CHECK((a.matrix().transpose() * a.matrix()).isIdentity(1e-12));
}

TEST_CASE("subspace arithmetic") {
  Rng rng(31);
  SUBCASE("distance to itself") {
    RealSubspaced v = RealSubspaced::span(rng.normal_matrix(6, 3));
    CHECK(subspace_distance(v, v) < 1e-14);
  }
  SUBCASE("coordinate intersection") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 2), b = Eigen::MatrixXd::Zero(4, 2);
    a(0, 0) = a(1, 1) = 1.0;
    b(1, 0) = b(2, 1) = 1.0;
    RealSubspaced x = subspace_intersection(RealSubspaced::span(a), RealSubspaced::span(b));
    REQUIRE(x.dim() == 1);
    CHECK(std::abs(std::abs(x.basis()(1, 0)) - 1.0) < 1e-14);
    CHECK(subspace_sum(RealSubspaced::span(a), RealSubspaced::span(b)).dim() == 3);
  }
  SUBCASE("lines at an angle") {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd u = rng.normal_vector(4), w = rng.normal_vector(4);
      const double cosang = std::abs(u.dot(w)) / (u.norm() * w.norm());
      const double sinang = std::sqrt(1.0 - cosang * cosang);
      CHECK(std::abs(subspace_distance(RealSubspaced::span(u), RealSubspaced::span(w)) - sinang) < 1e-12);
    }
  }
  SUBCASE("complement") {
    RealSubspaced v = RealSubspaced::span(rng.normal_matrix(8, 3));
    RealSubspaced c = orthogonal_complement(v);
    CHECK(c.dim() == 5);
    CHECK((v.basis().transpose() * c.basis()).norm() < 1e-14);
    CHECK((c.basis().transpose() * c.basis()).isIdentity(1e-12));
  }
  SUBCASE("mismatch") {
    CHECK_THROWS_AS(subspace_distance(RealSubspaced::real_points(2), RealSubspaced::real_points(3)), Error);
  }
}
