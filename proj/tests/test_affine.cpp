#include "doctest.h"

#include <cmath>
#include <numbers>

#include "modkit/affine.hpp"

using namespace modkit;
using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;

namespace {

constexpr double kPi = std::numbers::pi;

CVec random_cvec(Rng& rng, int n) { return rng.complex_vector(n); }

// Re<u, v> on C^N
double real_inner(const CVec& u, const CVec& v) { return u.dot(v).real(); }

template <typename F>
void expect_throws_kind(F&& f, ErrorKind kind) {
  bool thrown = false;
  try {
    f();
  } catch (const Error& e) {
    thrown = true;
    CHECK(e.kind() == kind);
  }
  CHECK(thrown);
}

}  // namespace

TEST_CASE("strip grid and unitary Fourier transform") {
  expect_throws_kind([] { StripGrid(12, 1.0); }, ErrorKind::InvalidGrid);
  expect_throws_kind([] { StripGrid(4, 1.0); }, ErrorKind::InvalidGrid);
  expect_throws_kind([] { StripGrid(16, 0.0); }, ErrorKind::InvalidGrid);

  const StripGrid g(16, 3.0);
  CHECK(g.h() == doctest::Approx(0.375));
  CHECK(g.node(0) == -3.0);
  Rng rng(11);
  const CVec psi = random_cvec(rng, 16);
  const CVec c = g.forward(psi);
  for (int k = 0; k < 16; ++k) {
    const int m = k < 8 ? k : k - 16;
    const double p = kPi * m / 3.0;
    cd s = 0.0;
    for (int j = 0; j < 16; ++j) s += psi(j) * std::exp(cd(0.0, -p * g.node(j)));
    CHECK(std::abs(c(k) - s / 4.0) < 1e-12);
  }
  CHECK(std::abs(c.norm() - psi.norm()) < 1e-12);
  CHECK((g.backward(c) - psi).norm() < 1e-12);
  CHECK(g.frequencies()(8) == 0.0);
}

TEST_CASE("affine representation on the grid") {
  const AffineRep rep = build_rep(64, 4.0);
  const StripGrid& g = rep.grid();
  Rng rng(5);
  const CVec psi = random_cvec(rng, 64);

  CHECK((rep.element(0.0, 0, false).apply(psi) - psi).norm() == 0.0);
  CHECK((rep.translation(0.7).apply(rep.translation(-1.9).apply(psi)) - rep.translation(-1.2).apply(psi)).norm() <
        1e-12);
  const CVec shifted = rep.dilation(3).apply(psi);
  for (int j = 0; j < 61; ++j) CHECK(shifted(j) == psi(j + 3));
  CHECK(rep.generator_min() == std::exp(-4.0));
  CHECK(rep.generator_min() > 0.0);

  // reflection: U_(0,-1) U_(b,1) U_(0,-1) = U_(-b,1)
  const CVec lhs = rep.reflection().apply(rep.translation(0.8).apply(rep.reflection().apply(psi)));
  CHECK((lhs - rep.translation(-0.8).apply(psi)).norm() < 1e-12);

  // U_(b1,a1) U_(b2,a2) = U_(b1 + a1 b2, a1 a2) on a probe away from the wrap band
  const CVec probe = gaussian_samples(g, {0.0, 0.4});
  const int k1 = 4, k2 = -2;
  const double a1 = std::exp(k1 * g.h());
  for (bool r1 : {false, true})
    for (bool r2 : {false, true}) {
      const double b1 = 0.6, b2 = -0.9;
      const double s1 = r1 ? -a1 : a1;
      const GridOperator prod = rep.element(b1, k1, r1) * rep.element(b2, k2, r2);
      const GridOperator direct = rep.element(b1 + s1 * b2, k1 + k2, r1 != r2);
      CHECK((prod.apply(probe) - direct.apply(probe)).norm() < 1e-12);
    }

  AffineRep empty;
  CHECK_FALSE(empty.built());
  expect_throws_kind([&] { empty.translation(1.0); }, ErrorKind::NotBuilt);
}

TEST_CASE("grid operators compose like their realified matrices") {
  const AffineRep rep(16, 8.0);
  const auto g = rep.grid_ptr();
  Rng rng(21);
  std::vector<GridOperator> ops = {rep.translation(0.4), rep.dilation(5),         rep.reflection(),
                                   rep.fractional_shift(0.37), rep.delta_power(0.25), rep.delta_it(0.3),
                                   rep.reflection() * rep.fractional_shift(-0.2)};
  const Eigen::MatrixXcd m = rng.complex_matrix(16, 16);
  ops.push_back(GridOperator::dense(g, m, false));
  ops.push_back(GridOperator::dense(g, m, true));

  for (const GridOperator& a : ops) {
    const RLOperatord ra = a.to_rl();
    CHECK(ra.linearity() == (a.antilinear() ? Linearity::Antilinear : Linearity::ComplexLinear));
    const GridOperator back = GridOperator::from_rl(g, ra);
    const CVec v = random_cvec(rng, 16);
    CHECK((back.apply(v) - a.apply(v)).norm() < 1e-12);
    for (const GridOperator& b : ops) {
      const GridOperator ab = a * b;
      CHECK(operator_distance(ab.to_rl(), ra * b.to_rl()) < 1e-11);
    }
  }
  CHECK((rep.translation(1.0) * rep.dilation(2)).kind() == GridKind::DiagonalShift);
  CHECK((rep.fractional_shift(1.0) * rep.delta_it(0.1)).kind() == GridKind::FourierDiagonal);
  CHECK((rep.reflection() * rep.reflection()).antilinear() == false);
}

TEST_CASE("standard subspace V0 and its family") {
  const AffineRep rep(16, 16.0);
  const auto g = rep.grid_ptr();
  const StandardSubspace v0 = standard_family(rep, 0.0);
  CHECK(is_standard(v0.space()).standard);
  const ModularTriple mt = modular_objects(v0);
  CHECK(operator_distance(mt.j, rep.reflection().to_rl()) < 1e-8);
  CHECK(operator_distance(mt.delta, rep.delta_power(1.0).to_rl()) < 1e-7 * mt.delta.matrix().norm());
  CHECK(spectrum_inversion_symmetric(rep.delta_power(1.0).to_rl()));
  // U(e^t) = Delta^{-it/2pi} acts as the shift theta -> theta + t
  for (double t : {0.3, -1.1})
    CHECK(operator_distance(modular_flow(mt, t, ModularScaling::Group), rep.fractional_shift(t).to_rl()) < 1e-7);

  CHECK(subspace_distance(standard_family(rep, 0.0).space(), v0.space()) == 0.0);
  for (double x : {0.5, -1.3}) {
    const StandardSubspace vx = standard_family(rep, x);
    CHECK(is_standard(vx.space()).standard);
    const RealSubspaced moved = standard_family(rep, 0.7).space().mapped(rep.translation(x).to_rl().matrix());
    CHECK(subspace_distance(moved, standard_family(rep, x + 0.7).space()) < 1e-10);
  }

  // pairwise Fourier projection against the dense projector
  Rng rng(3);
  const Eigen::MatrixXd proj = v0.space().projector();
  for (int i = 0; i < 5; ++i) {
    const CVec psi = random_cvec(rng, 16);
    const CVec dense = complexify_vector<double>(proj * realify_vector<double>(psi));
    CHECK((rep.project_v0(psi) - dense).norm() < 1e-12);
  }
  const CVec xi = analytic_probe(rep.grid(), {0.5, 1.0});
  CHECK((rep.project_v0(xi) - xi).norm() < 1e-12);
  expect_throws_kind([] { standard_family(AffineRep(512, 4.0), 0.0); }, ErrorKind::DimensionOverflow);
}

TEST_CASE("V0 projection is the real orthogonal projection onto Fix(J Delta^1/2)") {
  for (auto [n, l] : {std::pair{16, 8.0}, std::pair{32, 12.0}}) {
    const AffineRep rep(n, l);
    const GridOperator s = rep.reflection() * rep.delta_power(0.5);
    Rng rng(8);
    const CVec q = rep.project_v0(random_cvec(rng, n));
    for (int i = 0; i < 4; ++i) {
      const CVec psi = random_cvec(rng, n);
      const CVec p = rep.project_v0(psi);
      CHECK((rep.project_v0(p) - p).norm() < 1e-12);
      CHECK(std::abs(real_inner(psi - p, q)) < 1e-12);
      CHECK((s.apply(p) - p).norm() < 1e-9 * p.norm());
    }
  }
}

TEST_CASE("Borchers relation on bulk probes") {
  const AffineRep rep(256, 4.0);
  const BorchersReport zero = borchers_check(rep, {}, 0.0);
  CHECK(zero.max_residual == 0.0);

  const BorchersReport bulk = borchers_check(rep, {{-0.5, 0.3}, {0.2, 0.25}}, 1.3, 0.5);
  CHECK(bulk.k == 16);
  CHECK(bulk.max_residual < 1e-12);
  CHECK(bulk.within_wrap_budget);

  const BorchersReport wide = borchers_check(rep, {{0.0, 1.0}, {2.5, 0.6}}, 1.0);
  CHECK(wide.within_wrap_budget);
  CHECK(wide.entries[1].residual > wide.entries[0].residual);

  const BorchersReport fine = borchers_check(AffineRep(1024, 8.0), {}, 1.0);
  CHECK(fine.max_residual <= borchers_check(rep, {}, 1.0).max_residual / 10.0);
}

TEST_CASE("half-sided inclusion residuals") {
  const AffineRep coarse(256, 4.0), fine(1024, 8.0);
  const InclusionReport z = inclusion_residual(coarse, 0.0);
  CHECK(z.residual < 1e-14);
  expect_throws_kind([&] { inclusion_residual(coarse, -1.0); }, ErrorKind::InvalidParameters);

  const InclusionReport c = inclusion_residual(coarse, 1.0), f = inclusion_residual(fine, 1.0);
  CHECK(f.residual <= c.residual / 10.0);
  CHECK(f.reverse_residual >= 100.0 * f.residual);
  CHECK(f.reverse_residual > 0.1);
  // V_s for s >= 0 sits inside V_0; the family is decreasing
  for (double b : {0.25, 0.5, 2.0}) CHECK(inclusion_residual(fine, b).residual < 1e-5);
}

TEST_CASE("inner functions on the strip") {
  const AffineRep rep(256, 4.0);
  const InnerFunctionReport one = inner_function_check(0.0, &rep);
  CHECK(one.max_modulus == doctest::Approx(1.0));
  CHECK(one.symmetry_residual == 0.0);
  CHECK(one.endomorphism_residual < 1e-14);

  const InnerFunctionReport r = inner_function_check(1.0, &rep);
  CHECK(r.max_modulus <= 1.0 + 1e-12);
  CHECK(r.symmetry_residual < 1e-12);
  CHECK(r.endomorphism_residual == doctest::Approx(inclusion_residual(rep, 1.0).residual));
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-3, 3), y = rng.uniform(0, kPi);
    const cd z(x, y);
    CHECK(std::abs(std::exp(cd(0.0, 1.0) * std::exp(z))) == doctest::Approx(std::exp(-std::exp(x) * std::sin(y))));
  }

  bool thrown = false;
  try {
    inner_function_check(-1.0);
  } catch (const Error& e) {
    thrown = true;
    CHECK(e.kind() == ErrorKind::NotDecaying);
  }
  CHECK(thrown);
  const StripFunction grow = [](cd z) { return std::exp(cd(0.0, -1.0) * std::exp(z)); };
  const auto w = growth_witness(grow);
  REQUIRE(w.has_value());
  CHECK(std::abs(grow(*w)) > 1.0);

  // Cayley transform of e^z: inner and symmetric
  const StripFunction cayley = [](cd z) {
    const cd w = std::exp(z);
    return (w - cd(0.0, 1.0)) / (w + cd(0.0, 1.0));
  };
  const InnerFunctionReport cr = inner_function_check(cayley, &rep);
  CHECK(cr.max_modulus <= 1.0 + 1e-12);
  CHECK(cr.symmetry_residual < 1e-12);
  CHECK(cr.endomorphism_residual < 1e-2);
  const StripFunction twisted = [](cd z) { return cd(0.0, 1.0) * std::exp(cd(0.0, 1.0) * std::exp(z)); };
  CHECK(inner_function_check(twisted).symmetry_residual > 1.0);
}

TEST_CASE("modular intersection limit") {
  const AffineRep coarse(256, 4.0), fine(1024, 8.0);
  ModularIntersectionOptions same;
  same.x = 0.0;
  const ModularIntersectionReport id = modular_intersection_check(coarse, same);
  for (double s : id.limit_residuals) CHECK(s < 1e-13);
  CHECK(id.mi2_residual < 1e-13);

  const ModularIntersectionReport c = modular_intersection_check(coarse);
  const ModularIntersectionReport f = modular_intersection_check(fine);
  CHECK_FALSE(c.converged);
  CHECK(f.converged);
  CHECK(f.best_limit_residual < f.tolerance);
  expect_throws_kind([&] { require_converged(c); }, ErrorKind::NotConverged);
  require_converged(f);
  CHECK(f.mi2_residual <= c.mi2_residual / 10.0);
  // decay towards U_(-1,1) until wrap-around takes over
  for (std::size_t i = 1; i < f.times.size() && f.times[i] <= f.best_time; ++i)
    CHECK(f.limit_residuals[i] < f.limit_residuals[i - 1]);
  // continuum value S_t = U_(e^{-2 pi t} - 1, 1) on the probe
  const CVec xi = analytic_probe(fine.grid(), {0.0, 0.5});
  const double t = f.times[2];
  const double gap = (fine.translation(std::exp(-2 * kPi * t) - 1.0).apply(xi) - fine.translation(-1.0).apply(xi)).norm();
  CHECK(f.limit_residuals[2] == doctest::Approx(gap).epsilon(1e-4));

  ModularIntersectionOptions grp;
  grp.scaling = ModularScaling::Group;
  const ModularIntersectionReport fg = modular_intersection_check(fine, grp);
  REQUIRE(fg.times.size() == f.times.size());
  for (std::size_t i = 0; i < f.times.size(); ++i) {
    CHECK(fg.times[i] == doctest::Approx(2 * kPi * f.times[i]));
    CHECK(fg.limit_residuals[i] == doctest::Approx(f.limit_residuals[i]));
  }
  CHECK(fg.mi2_residual == doctest::Approx(f.mi2_residual).epsilon(1e-6));
}

TEST_CASE("Heisenberg lift") {
  const AffineRep rep(256, 8.0);
  Rng rng(2);
  const CVec psi = random_cvec(rng, 256);
  CHECK((rep.heisenberg(0.0).apply(psi) - psi).norm() == 0.0);
  for (double s : {0.4, -1.7, 3.0}) {
    const HeisenbergReport r = heisenberg_lift(rep, s, 12, {0.0, 0.8});
    CHECK(r.relation_residual < 1e-12);
    CHECK(r.relation_residual <= 2.0 * r.wrap + 1e-15);
    CHECK(r.global_residual > 0.0);
    CHECK(r.j_commutation == 0.0);
  }
  CHECK(heisenberg_lift(rep, 0.0, 5).global_residual == 0.0);
}

TEST_CASE("two light-ray model") {
  const AffineRep small(64, 4.0);
  TwoRayOptions trivial;
  trivial.bp = trivial.bm = 0.0;
  const TwoRayReport t0 = two_ray_poincare(small, small, trivial);
  CHECK(t0.covariance_residual < 1e-15);
  CHECK(t0.jrel_residual < 1e-15);
  CHECK(t0.inclusion_plus < 1e-13);

  const TwoRayReport r = two_ray_poincare(small, small);
  CHECK(r.dim == 4096);
  CHECK(r.covariance_residual < 1e-10);
  CHECK(r.jrel_residual < 1e-12);
  CHECK(r.v_probe_defect < 1e-12);
  CHECK(r.inclusion_plus_reverse > 10.0 * r.inclusion_plus);
  CHECK(r.inclusion_minus_reverse > 10.0 * r.inclusion_minus);

  const TwoRayReport big = two_ray_poincare(AffineRep(256, 4.0), AffineRep(256, 4.0));
  CHECK(big.inclusion_plus < r.inclusion_plus);
  CHECK(refinement_passes(r.jrel_residual, big.jrel_residual));

  expect_throws_kind([] { two_ray_poincare(AffineRep(2048, 4.0), AffineRep(1024, 4.0)); },
                     ErrorKind::DimensionOverflow);
  expect_throws_kind([&] { two_ray_poincare(small, AffineRep(64, 2.0)); }, ErrorKind::InvalidGrid);
}

TEST_CASE("two-ray projection against its defining relation") {
  const AffineRep a(8, 8.0);
  const TwoRayModel m(a, a);
  const GridOperator half = a.delta_power(0.5), inv_half = a.delta_power(-0.5);
  // S = J_V (Delta^{1/2} x Delta^{-1/2})
  auto s_apply = [&](const Eigen::MatrixXcd& psi) {
    Eigen::MatrixXcd out(8, 8);
    for (int j = 0; j < 8; ++j) out.col(j) = half.apply(psi.col(j));
    for (int i = 0; i < 8; ++i) out.row(i) = inv_half.apply(out.row(i).transpose()).transpose();
    return Eigen::MatrixXcd(out.conjugate());
  };
  Rng rng(17);
  const Eigen::MatrixXcd phi = m.project_v(rng.complex_matrix(8, 8));
  for (int i = 0; i < 5; ++i) {
    const Eigen::MatrixXcd psi = rng.complex_matrix(8, 8);
    const Eigen::MatrixXcd p = m.project_v(psi);
    CHECK((s_apply(p) - p).norm() < 1e-9 * p.norm());
    CHECK((m.project_v(p) - p).norm() < 1e-12);
    CHECK(std::abs((psi - p).cwiseProduct(phi.conjugate()).sum().real()) < 1e-12);
  }
  // real dimension of the range equals the complex dimension
  Eigen::MatrixXd cols(128, 128);
  for (int c = 0; c < 128; ++c) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(8, 8);
    e(c % 64 % 8, c % 64 / 8) = c < 64 ? cd(1.0, 0.0) : cd(0.0, 1.0);
    const Eigen::MatrixXcd p = m.project_v(e);
    cols.col(c) << Eigen::Map<const Eigen::MatrixXd>(Eigen::MatrixXd(p.real()).data(), 64, 1),
        Eigen::Map<const Eigen::MatrixXd>(Eigen::MatrixXd(p.imag()).data(), 64, 1);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(cols);
  lu.setThreshold(1e-10);
  CHECK(lu.rank() == 64);
}

TEST_CASE("truncated sl2 lowest-weight model") {
  for (int m : {1, 2}) {
    const Sl2Model s = sl2_lowest_weight(m, 12);
    REQUIRE(s.l0.rows() == 13);
    for (int k = 0; k <= 12; ++k) {
      CHECK(s.l0(k, k).real() == m + k);
      if (k < 12) CHECK(s.lm1(k + 1, k).real() == doctest::Approx(std::sqrt((k + 1.0) * (2.0 * m + k))));
    }
    CHECK(s.lowest_residual == 0.0);
    CHECK(s.bracket_residual < 1e-12);
    CHECK(s.conjugation_residual < 1e-12);
    CHECK(s.skew_residual < 1e-12);
    // the top level is a truncation boundary
    const Eigen::MatrixXcd top = s.l1 * s.lm1 - s.lm1 * s.l1 + 2.0 * s.l0;
    CHECK(top.col(12).norm() > 1.0);
    const RLOperatord c = s.conjugation();
    CHECK(operator_distance(c * RLOperatord::from_complex(s.t) * c, RLOperatord::from_complex(-s.t)) < 1e-12);
  }
  expect_throws_kind([] { sl2_lowest_weight(0, 12); }, ErrorKind::InvalidParameters);
  expect_throws_kind([] { sl2_lowest_weight(1, 2); }, ErrorKind::InvalidParameters);
}

TEST_CASE("refinement rule") {
  CHECK(refinement_passes(1e-3, 1e-4));
  CHECK_FALSE(refinement_passes(1e-3, 2e-4));
  CHECK(refinement_passes(1e-16, 2e-16));
}
