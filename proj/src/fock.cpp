#include "modkit/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace modkit {

namespace {

using cd = std::complex<double>;

constexpr int kMaxFermiModes = 10;
constexpr int kMaxAlgebraModes = 5;

std::vector<int> bits_of(unsigned s, int d) {
  std::vector<int> out;
  for (int k = 0; k < d; ++k)
    if (s & (1u << k)) out.push_back(k);
  return out;
}

double phase_residual(cd lhs, cd rhs, double scale) { return std::abs(lhs - rhs) / std::max(scale, 1e-300); }

double coherent_norm(const CoherentVector& x) { return std::sqrt(std::max(0.0, coherent_inner(x, x).real())); }

CoherentVector random_coherent(Rng& rng, int d, int terms) {
  CoherentVector x;
  for (int k = 0; k < terms; ++k) x.add(rng.cnormal(), rng.complex_vector(d) / std::sqrt(2.0 * d));
  return x;
}

Eigen::VectorXcd random_in(Rng& rng, const RealSubspaced& v) {
  return complexify_vector<double>(Eigen::VectorXd(v.basis() * rng.normal_vector(v.dim()))) / std::sqrt(std::max(1, v.dim()));
}

}  // namespace

FermiContext::FermiContext(int d) : d_(d) {
  if (d < 0 || d > kMaxFermiModes) throw Error(ErrorKind::DimensionOverflow, "too many fermionic modes");
  const int n = 1 << d;
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXcd ck = Eigen::MatrixXcd::Zero(n, n);
    for (unsigned s = 0; s < static_cast<unsigned>(n); ++s) {
      if (!(s & (1u << k))) continue;
      const int below = std::popcount(s & ((1u << k) - 1u));
      ck(s ^ (1u << k), s) = (below % 2 == 0) ? 1.0 : -1.0;
    }
    c_.push_back(ck);
  }
  z_ = Eigen::MatrixXcd::Zero(n, n);
  zt_ = Eigen::MatrixXcd::Zero(n, n);
  for (unsigned s = 0; s < static_cast<unsigned>(n); ++s) {
    const double z = (std::popcount(s) % 2 == 0) ? 1.0 : -1.0;
    z_(s, s) = z;
    zt_(s, s) = (1.0 + cd(0.0, z)) / cd(1.0, 1.0);
  }
}

Eigen::VectorXcd FermiContext::vacuum() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  v(0) = 1.0;
  return v;
}

Eigen::MatrixXcd FermiContext::annihilator(const Eigen::VectorXcd& f) const {
  if (f.size() != d_) throw Error(ErrorKind::DimensionMismatch, "mode vector size differs from d");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int k = 0; k < d_; ++k) out += std::conj(f(k)) * c_[k];
  return out;
}

Eigen::MatrixXcd FermiContext::creator(const Eigen::VectorXcd& f) const { return annihilator(f).adjoint(); }

double FermiContext::car_residual() const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim(), dim());
  double r = 0.0;
  for (int k = 0; k < d_; ++k)
    for (int l = 0; l < d_; ++l) {
      const Eigen::MatrixXcd cl_dag = c_[l].adjoint();
      r = std::max(r, (c_[k] * cl_dag + cl_dag * c_[k] - (k == l ? 1.0 : 0.0) * id).norm());
      r = std::max(r, (c_[k] * c_[l] + c_[l] * c_[k]).norm());
    }
  return r;
}

Eigen::MatrixXcd field_operator(const FermiContext& ctx, const Eigen::VectorXcd& f) {
  const Eigen::MatrixXcd a = ctx.annihilator(f);
  return a + a.adjoint();
}

StarAlgebra fermi_algebra(const FermiContext& ctx, const RealSubspaced& v) {
  if (ctx.d() > kMaxAlgebraModes) throw Error(ErrorKind::DimensionOverflow, "Fock space too large for algebra generation");
  if (v.dim_c() != ctx.d()) throw Error(ErrorKind::DimensionMismatch, "subspace ambient differs from d");
  std::vector<Eigen::MatrixXcd> gens;
  for (int k = 0; k < v.dim(); ++k)
    gens.push_back(field_operator(ctx, complexify_vector<double>(Eigen::VectorXd(v.basis().col(k)))));
  return generate_algebra(ctx.dim(), gens);
}

Eigen::MatrixXcd exterior_lift(const FermiContext& ctx, const Eigen::MatrixXcd& m) {
  const int d = ctx.d();
  if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::DimensionMismatch, "matrix size differs from d");
  const int n = ctx.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (unsigned s = 0; s < static_cast<unsigned>(n); ++s) {
    const std::vector<int> cols = bits_of(s, d);
    for (unsigned t = 0; t < static_cast<unsigned>(n); ++t) {
      if (std::popcount(s) != std::popcount(t)) continue;
      const std::vector<int> rows = bits_of(t, d);
      if (rows.empty()) {
        out(t, s) = 1.0;
        continue;
      }
      Eigen::MatrixXcd minor(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) minor(i, j) = m(rows[i], cols[j]);
      out(t, s) = minor.determinant();
    }
  }
  return out;
}

RLOperatord second_quantize_minus(const FermiContext& ctx, const RLOperatord& t, double tol) {
  if (t.dim_c() != ctx.d()) throw Error(ErrorKind::DimensionMismatch, "operator size differs from d");
  const Eigen::MatrixXd& m = t.matrix();
  if ((m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).norm() > tol)
    throw Error(ErrorKind::NotIsometric, "second quantization needs a unitary or antiunitary operator");
  const Eigen::MatrixXcd lift = exterior_lift(ctx, t.complex_matrix());
  if (t.linearity() == Linearity::Antilinear) return RLOperatord::antilinear_from_complex(lift);
  return RLOperatord::from_complex(lift);
}

TwistedDualityReport twisted_duality_check(const FermiContext& ctx, const RealSubspaced& v) {
  if (ctx.d() > 4) throw Error(ErrorKind::DimensionOverflow, "twisted duality check limited to d <= 4");
  TwistedDualityReport rep;
  const RealSubspaced perp = orthogonal_complement(v);
  const StarAlgebra left = fermi_algebra(ctx, perp);
  const StarAlgebra twisted = conjugate_algebra(commutant(fermi_algebra(ctx, v)), ctx.klein().inverse());
  rep.complement_dim = left.dim();
  rep.twisted_dim = twisted.dim();
  rep.distance = algebra_distance(left, twisted);
  const Eigen::MatrixXcd& z = ctx.parity();
  for (const auto& a : left.basis()) {
    const Eigen::MatrixXcd even = (a + z * a * z) / 2.0;
    const Eigen::MatrixXcd odd = (a - z * a * z) / 2.0;
    for (int k = 0; k < v.dim(); ++k) {
      const Eigen::MatrixXcd b = field_operator(ctx, complexify_vector<double>(Eigen::VectorXd(v.basis().col(k))));
      const Eigen::MatrixXcd sc = (even * b - b * even) + (odd * b + b * odd);
      rep.super_commutator = std::max(rep.super_commutator, sc.norm());
    }
  }
  return rep;
}

FermiModularReport fermi_modular_check(const FermiContext& ctx, const StandardSubspace& v, bool zeta_twist) {
  if (ctx.d() > 4) throw Error(ErrorKind::DimensionOverflow, "modular check limited to d <= 4");
  if (v.dim_c() != ctx.d()) throw Error(ErrorKind::DimensionMismatch, "subspace ambient differs from d");
  const ModularTriple m = modular_objects(v);
  RealSubspaced space = v.space();
  RLOperatord jv = m.j;
  const RLOperatord i_op = RLOperatord::from_complex(cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(ctx.d(), ctx.d()));
  if (zeta_twist) {
    const cd zeta = std::polar(1.0, M_PI / 4.0);
    space = space.mapped(realify<double>(Eigen::MatrixXcd(zeta * Eigen::MatrixXcd::Identity(ctx.d(), ctx.d()))));
    jv = i_op * m.j;  // J_{zeta V} = i J_V
  }
  FermiModularReport rep{tomita_modular(fermi_algebra(ctx, space), ctx.vacuum()), {}, {}};
  rep.zeta_twist = zeta_twist;
  rep.delta_expected = exterior_lift(ctx, m.delta.complex_matrix());
  rep.delta_residual = (rep.tomita.data.triple.delta.complex_matrix() - rep.delta_expected).norm();
  const RLOperatord klein = RLOperatord::from_complex(ctx.klein());
  rep.j_expected = klein * second_quantize_minus(ctx, i_op * jv);
  rep.j_residual = operator_distance(rep.tomita.data.triple.j, rep.j_expected);
  if (zeta_twist)
    rep.super_j_residual = operator_distance(klein * rep.tomita.data.triple.j, second_quantize_minus(ctx, m.j));
  return rep;
}

CoherentVector CoherentVector::exponential(const Eigen::VectorXcd& v, cd coef) {
  CoherentVector x;
  x.add(coef, v);
  return x;
}

void CoherentVector::add(cd coef, const Eigen::VectorXcd& label) {
  if (!terms_.empty() && terms_.front().label.size() != label.size())
    throw Error(ErrorKind::DimensionMismatch, "label size differs");
  for (auto& t : terms_)
    if ((t.label - label).norm() < merge_tol) {
      t.coef += coef;
      return;
    }
  terms_.push_back({coef, label});
}

Eigen::MatrixXcd CoherentVector::gram() const {
  const Eigen::Index n = static_cast<Eigen::Index>(terms_.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = std::exp(terms_[j].label.dot(terms_[k].label));
  return g;
}

cd coherent_inner(const CoherentVector& x, const CoherentVector& y) {
  cd s = 0.0;
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) {
      if (a.label.size() != b.label.size()) throw Error(ErrorKind::DimensionMismatch, "label size differs");
      s += std::conj(a.coef) * b.coef * std::exp(a.label.dot(b.label));
    }
  return s;
}

CoherentVector weyl_apply(const Eigen::VectorXcd& x, const CoherentVector& xi) {
  CoherentVector out;
  for (const auto& t : xi.terms()) {
    if (t.label.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "shift size differs from labels");
    out.add(t.coef * std::exp(-x.dot(t.label) - 0.5 * x.squaredNorm()), t.label + x);
  }
  return out;
}

CoherentVector weyl_operator(const Eigen::VectorXcd& v, const CoherentVector& xi) {
  return weyl_apply(cd(0.0, 1.0 / std::sqrt(2.0)) * v, xi);
}

CoherentVector exponential_lift(const RLOperatord& t, const CoherentVector& xi) {
  if (t.linearity() == Linearity::General) throw Error(ErrorKind::NotComplexLinear, "lift needs a linear or antilinear operator");
  const bool anti = t.linearity() == Linearity::Antilinear;
  CoherentVector out;
  for (const auto& term : xi.terms()) {
    const Eigen::VectorXd image = t * realify_vector<double>(term.label);
    out.add(anti ? std::conj(term.coef) : term.coef, complexify_vector<double>(image));
  }
  return out;
}

BoseReport bose_checks(const StandardSubspace& v, Rng& rng, int samples) {
  const int d = v.dim_c();
  const ModularTriple m = modular_objects(v);
  const RLOperatord half = operator_function(m.delta, SpectralFunction::power(0.5));
  const RealSubspaced vprime = symplectic_complement(v).space();
  BoseReport rep;
  for (int s = 0; s < samples; ++s) {
    const CoherentVector xi = random_coherent(rng, d, 3);
    const CoherentVector probe = random_coherent(rng, d, 3);
    const double scale = coherent_norm(xi) * coherent_norm(probe);
    const Eigen::VectorXcd x = rng.complex_vector(d) / std::sqrt(2.0 * d);
    const Eigen::VectorXcd y = rng.complex_vector(d) / std::sqrt(2.0 * d);

    const cd uxy = coherent_inner(probe, weyl_apply(x, weyl_apply(y, xi)));
    const cd usum = coherent_inner(probe, weyl_apply(x + y, xi));
    rep.weyl_residual = std::max(rep.weyl_residual, phase_residual(uxy, std::exp(cd(0.0, -x.dot(y).imag())) * usum, scale));

    const cd wxy = coherent_inner(probe, weyl_operator(x, weyl_operator(y, xi)));
    const cd wsum = coherent_inner(probe, weyl_operator(x + y, xi));
    rep.weyl_w_residual =
        std::max(rep.weyl_w_residual, phase_residual(wxy, std::exp(cd(0.0, -0.5 * x.dot(y).imag())) * wsum, scale));

    const RLOperatord u = RLOperatord::from_complex(rng.unitary(d));
    const CoherentVector ex = CoherentVector::exponential(x), ey = CoherentVector::exponential(y);
    const cd base = coherent_inner(ex, ey);
    rep.gamma_residual = std::max(
        rep.gamma_residual,
        phase_residual(coherent_inner(exponential_lift(u, ex), exponential_lift(u, ey)), base, std::abs(base)));
    rep.gamma_residual = std::max(
        rep.gamma_residual,
        phase_residual(coherent_inner(exponential_lift(m.j, ex), exponential_lift(m.j, ey)), std::conj(base), std::abs(base)));

    const CoherentVector lhs = exponential_lift(m.j, exponential_lift(half, ex));
    const Eigen::VectorXcd sx = complexify_vector<double>(Eigen::VectorXd(m.s * realify_vector<double>(x)));
    const CoherentTerm& t = lhs.terms().front();
    rep.modular_residual = std::max(rep.modular_residual, (t.label - sx).norm() + std::abs(t.coef - 1.0));

    const Eigen::VectorXcd a = random_in(rng, v.space());
    const Eigen::VectorXcd b = random_in(rng, vprime);
    const cd ab = coherent_inner(probe, weyl_operator(a, weyl_operator(b, xi)));
    const cd ba = coherent_inner(probe, weyl_operator(b, weyl_operator(a, xi)));
    rep.locality_residual = std::max(rep.locality_residual, phase_residual(ab, ba, scale));
  }
  return rep;
}

}  // namespace modkit
