#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "modkit/fock.hpp"

using namespace modkit;
using cd = std::complex<double>;

namespace {

Eigen::VectorXcd basis_vec(int d, int k) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
  e(k) = 1.0;
  return e;
}

// one-particle state |{k}> sits at index 2^k
Eigen::VectorXcd one_particle(const FermiContext& ctx, const Eigen::VectorXcd& f) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(ctx.dim());
  for (int k = 0; k < ctx.d(); ++k) out(1 << k) = f(k);
  return out;
}

// Gamma(U) is fixed by Gamma(U) Omega = Omega and Gamma(U) c*(f) = c*(Uf) Gamma(U).
double lift_defect(const FermiContext& ctx, const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& g) {
  double r = (g * ctx.vacuum() - ctx.vacuum()).norm();
  for (int k = 0; k < ctx.d(); ++k) {
    const Eigen::VectorXcd e = basis_vec(ctx.d(), k);
    r = std::max(r, (g * ctx.creator(e) - ctx.creator(u * e) * g).norm());
  }
  return r;
}

Eigen::MatrixXd half_example() {
  Eigen::MatrixXd c(2, 2);
  c << 0.0, 0.5, -0.5, 0.0;
  return c;
}

}  // namespace

TEST_CASE("canonical anticommutation relations") {
  for (int d = 1; d <= 5; ++d) {
    FermiContext ctx(d);
    CHECK(ctx.dim() == (1 << d));
    CHECK(ctx.car_residual() < 1e-12);
    CHECK((ctx.klein() * ctx.klein() - ctx.parity()).norm() < 1e-12);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(ctx.dim(), ctx.dim());
    const cd i(0.0, 1.0);
    CHECK((ctx.klein() * (1.0 + i) - (id + i * ctx.parity())).norm() < 1e-12);
  }
  CHECK_THROWS_AS(FermiContext(11), Error);
  Rng rng(10);
  FermiContext ctx(3);
  const Eigen::VectorXcd f = rng.complex_vector(3), g = rng.complex_vector(3);
  CHECK((ctx.creator(f) * ctx.vacuum() - one_particle(ctx, f)).norm() < 1e-12);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8);
  CHECK((ctx.annihilator(f) * ctx.creator(g) + ctx.creator(g) * ctx.annihilator(f) - f.dot(g) * id).norm() < 1e-12);
  CHECK((ctx.annihilator(f) * ctx.annihilator(g) + ctx.annihilator(g) * ctx.annihilator(f)).norm() < 1e-12);
}

TEST_CASE("field operators") {
  FermiContext one(1);
  const Eigen::VectorXcd e1 = basis_vec(1, 0);
  const Eigen::MatrixXcd b = field_operator(one, e1);
  CHECK((b * b - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  const Eigen::MatrixXcd bi = field_operator(one, cd(0.0, 1.0) * e1);
  CHECK((bi * b + b * bi).norm() < 1e-12);
  Rng rng(11);
  FermiContext ctx(4);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXcd f = rng.complex_vector(4), g = rng.complex_vector(4);
    const Eigen::MatrixXcd bf = field_operator(ctx, f), bg = field_operator(ctx, g);
    CHECK((bf - bf.adjoint()).norm() < 1e-12);
    CHECK((bf * bg + bg * bf - 2.0 * f.dot(g).real() * id).norm() < 1e-11);
  }
  CHECK_THROWS_AS(field_operator(ctx, rng.complex_vector(3)), Error);
}

TEST_CASE("fermionic algebras") {
  FermiContext one(1);
  CHECK(fermi_algebra(one, RealSubspaced::zero(1)).dim() == 1);
  CHECK(fermi_algebra(one, RealSubspaced::real_points(1)).dim() == 2);
  for (int d = 1; d <= 3; ++d) {
    FermiContext ctx(d);
    RealSubspaced all = RealSubspaced::span(Eigen::MatrixXd::Identity(2 * d, 2 * d));
    CHECK(fermi_algebra(ctx, all).dim() == (1 << (2 * d)));
  }
  Rng rng(12);
  FermiContext ctx(3);
  CHECK(fermi_algebra(ctx, random_standard(rng, 3).space()).dim() == 8);
  CHECK_THROWS_AS(fermi_algebra(FermiContext(6), RealSubspaced::zero(6)), Error);
}

TEST_CASE("second quantization") {
  FermiContext one(1);
  const double theta = 0.7;
  Eigen::MatrixXcd ph(1, 1);
  ph(0, 0) = std::polar(1.0, theta);
  RLOperatord g = second_quantize_minus(one, RLOperatord::from_complex(ph));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(2, 2);
  expect(0, 0) = 1.0;
  expect(1, 1) = std::polar(1.0, theta);
  CHECK((g.complex_matrix() - expect).norm() < 1e-14);

  FermiContext ctx(3);
  CHECK(second_quantize_minus(ctx, RLOperatord::identity(3)).matrix().isIdentity(1e-14));
  RLOperatord conj = second_quantize_minus(ctx, RLOperatord::conjugation(3));
  CHECK(conj.linearity() == Linearity::Antilinear);
  CHECK(operator_distance(conj, RLOperatord::conjugation(8)) < 1e-14);
  CHECK_THROWS_AS(second_quantize_minus(ctx, RLOperatord::from_complex(2.0 * Eigen::MatrixXcd::Identity(3, 3))), Error);

  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 4;
    FermiContext c(d);
    const Eigen::MatrixXcd u = rng.unitary(d), w = rng.unitary(d);
    RLOperatord t = RLOperatord::from_complex(u), s = RLOperatord::antilinear_from_complex(w);
    CHECK(lift_defect(c, u, exterior_lift(c, u)) < 1e-12);
    CHECK(operator_distance(second_quantize_minus(c, t * s), second_quantize_minus(c, t) * second_quantize_minus(c, s)) < 1e-10);
    CHECK(operator_distance(second_quantize_minus(c, s * s), second_quantize_minus(c, s) * second_quantize_minus(c, s)) < 1e-10);
    RLOperatord gs = second_quantize_minus(c, s);
    const Eigen::MatrixXd& m = gs.matrix();
    CHECK((m.transpose() * m).isIdentity(1e-10));
  }
}

TEST_CASE("twisted duality") {
  FermiContext one(1);
  TwistedDualityReport z = twisted_duality_check(one, RealSubspaced::zero(1));
  CHECK(z.complement_dim == 4);
  CHECK(z.twisted_dim == 4);
  CHECK(z.distance < 1e-10);

  TwistedDualityReport r1 = twisted_duality_check(one, RealSubspaced::real_points(1));
  CHECK(r1.complement_dim == 2);
  CHECK(r1.distance < 1e-10);
  // V^perp = R(i e1): R(V^perp) = span{1, b(i e1)}
  StarAlgebra expect = StarAlgebra::from_span(
      2, {Eigen::MatrixXcd::Identity(2, 2), field_operator(one, basis_vec(1, 0) * cd(0.0, 1.0))});
  CHECK(algebra_distance(fermi_algebra(one, orthogonal_complement(RealSubspaced::real_points(1))), expect) < 1e-12);

  Rng rng(14);
  for (int trial = 0; trial < 9; ++trial) {
    const int d = 2 + trial % 2;
    FermiContext ctx(d);
    TwistedDualityReport r = twisted_duality_check(ctx, random_standard(rng, d).space());
    CHECK(r.complement_dim == r.twisted_dim);
    CHECK(r.distance < 1e-8);
    CHECK(r.super_commutator < 1e-10);
  }
  // a non-standard subspace
  FermiContext ctx(2);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 1);
  b(0, 0) = 1.0;
  TwistedDualityReport r = twisted_duality_check(ctx, RealSubspaced::span(b));
  CHECK(r.distance < 1e-8);
}

TEST_CASE("second-quantized modular objects") {
  SUBCASE("one mode, real line") {
    FermiContext one(1);
    FermiModularReport r = fermi_modular_check(one, StandardSubspace(RealSubspaced::real_points(1)));
    CHECK(r.tomita.data.triple.delta.matrix().isIdentity(1e-10));
    const RLOperatord& j = r.tomita.data.triple.j;
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
    e1(1) = 1.0;
    CHECK((complexify_vector<double>(Eigen::VectorXd(j * realify_vector<double>(one.vacuum()))) - one.vacuum()).norm() < 1e-10);
    CHECK((complexify_vector<double>(Eigen::VectorXd(j * realify_vector<double>(e1))) - e1).norm() < 1e-10);
    CHECK(r.j_residual < 1e-8);
  }
  SUBCASE("real points") {
    for (int d = 1; d <= 3; ++d) {
      FermiContext ctx(d);
      FermiModularReport r = fermi_modular_check(ctx, StandardSubspace(RealSubspaced::real_points(d)));
      CHECK(r.delta_residual < 1e-8);
      CHECK(r.tomita.data.triple.delta.matrix().isIdentity(1e-8));
      // Z~ Gamma(i conj) a|S> = (-i)^{|S| mod 2} i^{|S|} conj(a)|S>
      Eigen::MatrixXcd signs = Eigen::MatrixXcd::Zero(ctx.dim(), ctx.dim());
      for (int s = 0; s < ctx.dim(); ++s) signs(s, s) = (std::popcount(static_cast<unsigned>(s)) % 4 < 2) ? 1.0 : -1.0;
      CHECK(operator_distance(r.tomita.data.triple.j, RLOperatord::antilinear_from_complex(signs)) < 1e-8);
    }
  }
  SUBCASE("c = 1/2 embedded in C^2") {
    FermiContext ctx(2);
    StandardSubspace v = from_c(canonical_real_form(2), half_example());
    FermiModularReport r = fermi_modular_check(ctx, v);
    std::vector<double> spec = complex_spectrum(r.tomita.data.triple.delta);
    std::vector<double> expect{1.0 / 9.0, 1.0, 1.0, 9.0};
    std::sort(spec.begin(), spec.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(spec[k] - expect[k]) < 1e-8 * expect[k] * 10);
    CHECK(r.delta_residual < 1e-8);
    CHECK(r.j_residual < 1e-8);
  }
  SUBCASE("random standard subspaces") {
    Rng rng(15);
    for (int trial = 0; trial < 9; ++trial) {
      const int d = 1 + trial % 3;
      FermiContext ctx(d);
      StandardSubspace v = random_standard(rng, d);
      FermiModularReport r = fermi_modular_check(ctx, v);
      CHECK(r.delta_residual < 1e-8);
      CHECK(r.j_residual < 1e-8);
      FermiModularReport t = fermi_modular_check(ctx, v, true);
      CHECK(t.delta_residual < 1e-8);
      CHECK(t.j_residual < 1e-8);
      CHECK(t.super_j_residual < 1e-8);
    }
  }
}

TEST_CASE("coherent vectors") {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  CHECK(std::abs(coherent_inner(CoherentVector::exponential(zero), CoherentVector::exponential(zero)) - 1.0) < 1e-15);
  Rng rng(16);
  const Eigen::VectorXcd v = rng.complex_vector(2);
  const CoherentVector ev = CoherentVector::exponential(v);
  CHECK(std::abs(coherent_inner(ev, ev) - std::exp(v.squaredNorm())) < 1e-12 * std::exp(v.squaredNorm()));

  CoherentVector merged;
  merged.add(1.0, v);
  merged.add(2.0, v + Eigen::VectorXcd::Constant(2, 1e-12));
  CHECK(merged.terms().size() == 1);
  CHECK(std::abs(merged.terms().front().coef - 3.0) < 1e-15);

  for (int trial = 0; trial < 100; ++trial) {
    CoherentVector x, y;
    for (int k = 0; k < 3; ++k) {
      x.add(rng.cnormal(), rng.complex_vector(2) / 2.0);
      y.add(rng.cnormal(), rng.complex_vector(2) / 2.0);
    }
    const cd xy = coherent_inner(x, y);
    CHECK(std::abs(xy - std::conj(coherent_inner(y, x))) < 1e-12 * (1.0 + std::abs(xy)));
    const double xx = coherent_inner(x, x).real(), yy = coherent_inner(y, y).real();
    CHECK(xx > 0.0);
    CHECK(std::norm(xy) <= xx * yy * (1.0 + 1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x.gram());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("Weyl operators on exponential vectors") {
  Rng rng(17);
  const int d = 3;
  CoherentVector xi;
  for (int k = 0; k < 3; ++k) xi.add(rng.cnormal(), rng.complex_vector(d) / 2.0);
  const CoherentVector same = weyl_apply(Eigen::VectorXcd::Zero(d), xi);
  CHECK(std::abs(coherent_inner(same, same) - coherent_inner(xi, xi)) < 1e-12 * coherent_inner(xi, xi).real());

  const Eigen::VectorXcd x = rng.complex_vector(d) / 2.0;
  const CoherentVector omega = CoherentVector::exponential(Eigen::VectorXcd::Zero(d));
  const CoherentVector shifted = weyl_apply(x, omega);
  CHECK((shifted.terms().front().label - x).norm() < 1e-15);
  CHECK(std::abs(shifted.terms().front().coef - std::exp(-0.5 * x.squaredNorm())) < 1e-15);
  const Eigen::VectorXcd w = rng.complex_vector(d);
  CHECK(std::abs(coherent_inner(omega, weyl_operator(w, omega)) - std::exp(-0.25 * w.squaredNorm())) < 1e-14);

  const CoherentVector moved = weyl_apply(x, xi);
  CHECK(std::abs(coherent_inner(moved, moved) - coherent_inner(xi, xi)) < 1e-12 * coherent_inner(xi, xi).real());
  const CoherentVector back = weyl_apply(-x, moved);
  for (std::size_t k = 0; k < xi.terms().size(); ++k) {
    CHECK((back.terms()[k].label - xi.terms()[k].label).norm() < 1e-14);
    CHECK(std::abs(back.terms()[k].coef - xi.terms()[k].coef) < 1e-13);
  }

  // parallel real shifts commute without phase
  const Eigen::VectorXcd r = Eigen::VectorXcd::Constant(d, 0.3);
  const CoherentVector p1 = weyl_apply(r, weyl_apply(2.0 * r, xi));
  const CoherentVector p2 = weyl_apply(3.0 * r, xi);
  CHECK(std::abs(coherent_inner(xi, p1) - coherent_inner(xi, p2)) < 1e-12 * coherent_inner(xi, xi).real());
}

TEST_CASE("bosonic consistency checks") {
  Rng rng(18);
  for (int d = 1; d <= 4; ++d) {
    StandardSubspace v = random_standard(rng, d);
    BoseReport r = bose_checks(v, rng, 20);
    CHECK(r.weyl_residual < 1e-12);
    CHECK(r.weyl_w_residual < 1e-12);
    CHECK(r.gamma_residual < 1e-12);
    CHECK(r.modular_residual < 1e-10);
    CHECK(r.locality_residual < 1e-12);
  }
  // fixed points of S: the lift reproduces the label
  StandardSubspace h = from_c(canonical_real_form(2), half_example());
  ModularTriple m = modular_objects(h);
  const Eigen::VectorXcd fixed = complexify_vector<double>(Eigen::VectorXd(h.basis().col(0)));
  const CoherentVector out = exponential_lift(m.j, exponential_lift(operator_function(m.delta, SpectralFunction::power(0.5)),
                                                                      CoherentVector::exponential(fixed)));
  CHECK((out.terms().front().label - fixed).norm() < 1e-10);
}
