#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "modkit/vn.hpp"

using namespace modkit;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd unit(int n, int i, int j) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

StarAlgebra diagonal(int n) {
  std::vector<Eigen::MatrixXcd> g;
  for (int i = 0; i < n; ++i) g.push_back(unit(n, i, i));
  return generate_algebra(n, g);
}

std::vector<double> sorted_eigs(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((h + h.adjoint()) / 2.0);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("algebra generation") {
  CHECK(generate_algebra(3, {}).dim() == 1);
  CHECK(diagonal(2).dim() == 2);
  Rng rng(1);
  Eigen::MatrixXcd a = rng.complex_matrix(3, 3), b = rng.complex_matrix(3, 3);
  StarAlgebra full = generate_algebra(3, {a + a.adjoint(), b + b.adjoint()});
  CHECK(full.dim() == 9);
  CHECK(full.closure_residual() < 1e-10);
  CHECK_THROWS_AS(generate_algebra(3, {a + a.adjoint(), b + b.adjoint()}, 5), Error);
}

TEST_CASE("commutants") {
  Rng rng(2);
  Eigen::MatrixXcd a = rng.complex_matrix(3, 3), b = rng.complex_matrix(3, 3);
  StarAlgebra full = generate_algebra(3, {a + a.adjoint(), b + b.adjoint()});
  CHECK(commutant(full).dim() == 1);
  StarAlgebra d = diagonal(2);
  CHECK(algebra_distance(commutant(d), d) < 1e-12);

  // (M2 ⊗ 1)' = 1 ⊗ M2 on C^2 ⊗ C^2
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  std::vector<Eigen::MatrixXcd> left, right;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      left.push_back(kron(unit(2, i, j), id));
      right.push_back(kron(id, unit(2, i, j)));
    }
  StarAlgebra l = generate_algebra(4, left);
  CHECK(algebra_distance(commutant(l), StarAlgebra::from_span(4, right)) < 1e-12);
  CHECK(algebra_distance(commutant(commutant(l)), l) < 1e-10);
}

TEST_CASE("cyclic and separating vectors") {
  StarAlgebra d = diagonal(2);
  Eigen::VectorXcd both(2);
  both << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  VectorStatus s = vector_status(d, both);
  CHECK(s.cyclic);
  CHECK(s.separating);
  CHECK(s.cyclic_for_commutant);
  Eigen::VectorXcd e1(2);
  e1 << 1.0, 0.0;
  VectorStatus t = vector_status(d, e1);
  CHECK_FALSE(t.cyclic);
  CHECK_FALSE(t.separating);
  Rng rng(3);
  Eigen::MatrixXcd a = rng.complex_matrix(2, 2), b = rng.complex_matrix(2, 2);
  StarAlgebra m2 = generate_algebra(2, {a + a.adjoint(), b + b.adjoint()});
  VectorStatus u = vector_status(m2, rng.complex_vector(2).normalized());
  CHECK(u.cyclic);
  CHECK_FALSE(u.separating);
  CHECK_THROWS_AS(tomita_modular(m2, rng.complex_vector(2).normalized()), Error);
}

TEST_CASE("abelian model has trivial modular operator") {
  Rng rng(4);
  const int n = 4;
  Eigen::VectorXcd omega = rng.complex_vector(n).normalized();
  TomitaReport r = tomita_modular(diagonal(n), omega);
  CHECK(r.data.triple.delta.matrix().isIdentity(1e-10));
  // J is conjugation in the Omega-weighted basis: J(f Omega) = conj(f) Omega
  Eigen::VectorXcd f = rng.complex_vector(n);
  Eigen::VectorXcd fomega = f.cwiseProduct(omega);
  Eigen::VectorXcd expect = f.conjugate().cwiseProduct(omega);
  Eigen::VectorXd got = r.data.triple.j * realify_vector<double>(fomega);
  CHECK((complexify_vector<double>(got) - expect).norm() < 1e-10);
  CHECK(r.jmj_distance < 1e-8);
}

TEST_CASE("Hilbert-Schmidt model") {
  SUBCASE("D = diag(0.8, 0.2)") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 0.8;
    d(1, 1) = 0.2;
    HsModel h = hs_model(d);
    TomitaReport r = tomita_modular(h.left, h.omega);
    std::vector<double> spec = complex_spectrum(r.data.triple.delta);
    std::vector<double> expect{0.25, 1.0, 1.0, 4.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(spec[i] - expect[i]) < 1e-10);
    CHECK((r.data.triple.delta.complex_matrix() - h.delta_closed).norm() < 1e-10);
    CHECK(operator_distance(r.data.triple.j, h.j_closed) < 1e-10);
  }
  SUBCASE("random densities") {
    Rng rng(5);
    for (int k = 1; k <= 4; ++k) {
      HsModel h = hs_model(random_density(rng, k));
      TomitaReport r = tomita_modular(h.left, h.omega);
      CHECK((r.data.triple.delta.complex_matrix() - h.delta_closed).norm() < 1e-8);
      CHECK(operator_distance(r.data.triple.j, h.j_closed) < 1e-8);
      CHECK(r.jmj_distance < 1e-8);
      CHECK(r.flow_residual < 1e-8);
      CHECK(r.j_omega < 1e-10);
      CHECK(r.delta_omega < 1e-10);
      CHECK(r.commutant_space < 1e-8);
      // closed form, checked on a matrix directly: A -> D A D^{-1} and A -> A*
      Eigen::MatrixXcd a = rng.complex_matrix(k, k);
      Eigen::VectorXcd moved = r.data.triple.delta.complex_matrix() * vec_row_major(a);
      CHECK((unvec_row_major(moved, k) - h.density * a * h.density.inverse()).norm() < 1e-8 * (1.0 + a.norm()));
      Eigen::VectorXd ja = r.data.triple.j * realify_vector<double>(vec_row_major(a));
      CHECK((unvec_row_major(complexify_vector<double>(ja), k) - a.adjoint()).norm() < 1e-8);
    }
  }
}

TEST_CASE("random block algebras") {
  Rng master(6);
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = master.split(trial);
    std::vector<int> blocks{2, 1};
    if (trial % 3 == 1) blocks = {1, 1, 2};
    if (trial % 3 == 2) blocks = {3};
    BlockInstance inst = random_block_algebra(rng, blocks);
    CHECK(inst.algebra.closure_residual() < 1e-10);
    TomitaReport r = tomita_modular(inst.algebra, inst.omega);
    CHECK(r.jmj_distance < 1e-8);
    CHECK(r.flow_residual < 1e-8);
    CHECK(r.center_residual < 1e-8);
    CHECK(r.commutant_space < 1e-8);
    CHECK(spectrum_inversion_symmetric(r.data.triple.delta));
  }
}

TEST_CASE("natural cone polar decomposition") {
  Eigen::MatrixXcd pos(2, 2);
  pos << 0.6, 0.1, 0.1, 0.3;
  ConePolar p = cone_polar(pos);
  CHECK((p.multiplier - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  ConePolar q = cone_polar(swap / std::sqrt(2.0));
  CHECK((q.positive - Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-12);
  CHECK((q.multiplier - swap).norm() < 1e-12);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = rng.integer(2, 4);
    Eigen::MatrixXcd xi = rng.complex_matrix(k, k);
    xi /= xi.norm();
    ConePolar c = cone_polar(xi);
    CHECK(c.residual < 1e-12);
    CHECK((c.multiplier * c.multiplier.adjoint()).isIdentity(1e-10));
    CHECK(sorted_eigs(c.positive).front() > 0.0);
    // uniqueness: perturbing by another right unitary leaves the positive part
    Eigen::MatrixXcd u = rng.unitary(k);
    CHECK((cone_polar(xi * u).positive - c.positive).norm() < 1e-10);
    // the cone conjugation is constant on the cone
    HsModel h = hs_model(random_density(rng, k));
    Eigen::VectorXcd cone_vec = vec_row_major(c.positive / c.positive.norm());
    TomitaReport r = tomita_modular(h.left, cone_vec);
    CHECK(operator_distance(r.data.triple.j, h.j_closed) < 1e-8);
  }
  Eigen::MatrixXcd sing = Eigen::MatrixXcd::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(cone_polar(sing), Error);
}

TEST_CASE("subalgebras give distinct standard spaces") {
  Rng rng(8);
  HsModel h = hs_model(random_density(rng, 2));
  StarAlgebra trivial = generate_algebra(4, {});
  SubalgebraMap one = subalgebra_standard_map(h.left, h.omega, {trivial});
  CHECK(one.spaces[0].dim() == 1);
  CHECK(subspace_contains(one.spaces[0], RealSubspaced::span(realify_vector<double>(h.omega))));

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  std::vector<StarAlgebra> masas;
  Eigen::MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cd(0, -1), cd(0, 1), 0;
  sz << 1, 0, 0, -1;
  for (const auto& s : {sx, sy, sz}) masas.push_back(generate_algebra(4, {kron(s, id)}));
  SubalgebraMap m = subalgebra_standard_map(h.left, h.omega, masas);
  CHECK(m.min_pairwise_distance > 1e-6);

  SubalgebraMap nest = subalgebra_standard_map(h.left, h.omega, {masas[2], h.left});
  CHECK(nest.monotone);
  CHECK(nest.spaces[0].dim() == 2);
  CHECK(nest.spaces[1].dim() == 4);
  CHECK(subspace_contains(nest.spaces[1], nest.spaces[0]));

  StarAlgebra outside = generate_algebra(4, {kron(id, sx)});
  CHECK_THROWS_AS(subalgebra_standard_map(h.left, h.omega, {outside}), Error);
}
