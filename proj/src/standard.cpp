#include "modkit/standard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace modkit {

namespace {

Eigen::MatrixXd i_matrix(int d) { return ComplexStructured(d).matrix(); }

Eigen::MatrixXd paired_basis(const RealSubspaced& v) {
  const Eigen::MatrixXd& b = v.basis();
  Eigen::MatrixXd m(b.rows(), 2 * b.cols());
  m << b, v.ambient().apply(b);
  return m;
}

}  // namespace

StandardDiagnostics is_standard(const RealSubspaced& v, double tol) {
  StandardDiagnostics diag;
  const int d = v.dim_c();
  const int k = v.dim();
  if (k == 0) {
    diag.standard = d == 0;
    return diag;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(paired_basis(v));
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  diag.intersection_dim = 2 * k - rank;
  diag.sigma_min = sv(sv.size() - 1);
  diag.condition = sv(0) / std::max(diag.sigma_min, 1e-300);
  diag.standard = (k == d) && diag.intersection_dim == 0;
  return diag;
}

StandardSubspace::StandardSubspace(RealSubspaced space) : space_(std::move(space)) {
  StandardDiagnostics diag = is_standard(space_);
  if (!diag.standard)
    throw Error(ErrorKind::NotStandard, "dim " + std::to_string(space_.dim()) + " in C^" +
                                            std::to_string(space_.dim_c()) + ", dim(V ∩ iV) = " +
                                            std::to_string(diag.intersection_dim));
  condition_ = diag.condition;
}

ModularTriple modular_objects(const StandardSubspace& v) {
  const int d = v.dim_c();
  const Eigen::MatrixXd m = paired_basis(v.space());
  Eigen::VectorXd signs(2 * d);
  signs.head(d).setOnes();
  signs.tail(d).setConstant(-1.0);
  Eigen::MatrixXd s = (m * signs.asDiagonal()) * m.partialPivLu().inverse();
  RLOperatord sop(s, Linearity::Antilinear, 1e-6);
  PolarPaird polar = antilinear_polar(sop);
  return {sop, polar.delta, polar.j};
}

RLOperatord modular_flow(const ModularTriple& m, double t, ModularScaling scaling) {
  const double s = scaling == ModularScaling::Raw ? t : -t / (2.0 * std::numbers::pi);
  return imaginary_power(m.delta, s);
}

RLOperatord modular_unitary(const ModularTriple& m, double t) {
  if (t == 0.0) throw Error(ErrorKind::InvalidParameters, "U^V is defined on nonzero reals");
  RLOperatord u = modular_flow(m, std::log(std::abs(t)), ModularScaling::Group);
  return t > 0 ? u : m.j * u;
}

double modular_relation_residual(const ModularTriple& m) {
  const Eigen::MatrixXd& j = m.j.matrix();
  const Eigen::MatrixXd& dl = m.delta.matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(j.rows(), j.cols());
  return (j * dl * j * dl - id).norm();
}

StandardSubspace from_modular(const RLOperatord& delta, const RLOperatord& j, double tol) {
  const Eigen::MatrixXd& jm = j.matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(jm.rows(), jm.cols());
  const double rel = (jm * delta.matrix() * jm * delta.matrix() - id).norm();
  if (rel > tol * std::max(1.0, delta.matrix().norm()))
    throw Error(ErrorKind::ModularRelationViolated, "J Delta J Delta != 1");
  RealForm form = real_form(j);
  RLOperatord quarter = operator_function(delta, SpectralFunction::power(-0.25));
  return StandardSubspace(RealSubspaced::span(quarter.matrix() * form.fixed_basis));
}

StandardSubspace symplectic_complement(const StandardSubspace& v) {
  RealSubspaced perp = orthogonal_complement(v.space());
  return StandardSubspace(RealSubspaced::span(v.space().ambient().apply(perp.basis())));
}

std::vector<double> complex_spectrum(const RLOperatord& p) {
  Eigen::MatrixXcd c = p.complex_matrix();
  c = (c + c.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

bool spectrum_inversion_symmetric(const RLOperatord& delta, double rel_tol) {
  std::vector<double> ev = complex_spectrum(delta);
  std::vector<double> logs;
  for (double e : ev) {
    if (e <= 0) return false;
    logs.push_back(std::log(e));
  }
  std::sort(logs.begin(), logs.end());
  double scale = 1.0;
  for (double l : logs) scale = std::max(scale, std::abs(l));
  const std::size_t n = logs.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(logs[i] + logs[n - 1 - i]) > rel_tol * scale) return false;
  return true;
}

RealForm real_form(const RLOperatord& j) {
  if (j.linearity() != Linearity::Antilinear)
    throw Error(ErrorKind::NotAntilinear, "real form needs an antilinear involution");
  const int d = j.dim_c();
  Eigen::MatrixXd sym = (j.matrix() + j.matrix().transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  // eigenvalues ascending: -1 block first, +1 block last
  Eigen::MatrixXd e = es.eigenvectors().rightCols(d);
  return {j, e};
}

RealForm canonical_real_form(int d) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * d, d);
  e.topRows(d).setIdentity();
  return {RLOperatord::conjugation(d), e};
}

RLOperatord complexify_on(const RealForm& form, const Eigen::MatrixXd& c) {
  const int d = form.j.dim_c();
  const Eigen::MatrixXd im = i_matrix(d);
  const Eigen::MatrixXd& e = form.fixed_basis;
  Eigen::MatrixXd op = e * c * e.transpose() + im * e * c * e.transpose() * im.transpose();
  return RLOperatord(op, Linearity::ComplexLinear, 1e-8);
}

StandardSubspace from_c(const RealForm& form, const Eigen::MatrixXd& c) {
  const int d = form.j.dim_c();
  if (c.rows() != d || c.cols() != d) throw Error(ErrorKind::DimensionMismatch, "C must be d x d");
  if ((c + c.transpose()).norm() > 1e-12 * std::max(1.0, c.norm()))
    throw Error(ErrorKind::InvalidParameters, "C must be skew-symmetric");
  if (d > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
    if (svd.singularValues()(0) >= 1.0) throw Error(ErrorKind::NormBoundViolated, "||C|| >= 1");
  }
  const Eigen::MatrixXd& e = form.fixed_basis;
  Eigen::MatrixXd basis = e + i_matrix(d) * e * c;
  return StandardSubspace(RealSubspaced::span(basis));
}

Eigen::MatrixXd to_c(const RealForm& form, const StandardSubspace& v, double tol) {
  ModularTriple m = modular_objects(v);
  if (operator_distance(m.j, form.j) > tol)
    throw Error(ErrorKind::ConjugationMismatch, "J_V differs from the given conjugation");
  const int d = v.dim_c();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * d, 2 * d);
  Eigen::MatrixXd root = operator_function(m.delta, SpectralFunction::power(0.5)).matrix();
  Eigen::MatrixXd chat = i_matrix(d) * (root - id) * (root + id).inverse();
  return form.fixed_basis.transpose() * chat * form.fixed_basis;
}

namespace {

// f(|A|) for a real skew A, with |A| = sqrt(A^T A).
Eigen::MatrixXd odd_function_of_skew(const Eigen::MatrixXd& a, double (*g)(double)) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = g(std::sqrt(std::max(vals(i), 0.0)));
  return a * es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
}

double half_tanh_ratio(double s) { return s < 1e-8 ? 0.5 - s * s / 24.0 : std::tanh(s / 2.0) / s; }
double log_ratio(double s) {
  return s < 1e-8 ? 2.0 + 2.0 * s * s / 3.0 : std::log((1.0 + s) / (1.0 - s)) / s;
}

}  // namespace

FlowEmbedding flow_embedding(const Eigen::MatrixXd& d) {
  const Eigen::Index m = d.rows();
  if (d.cols() != m) throw Error(ErrorKind::DimensionMismatch, "generator must be square");
  if ((d + d.transpose()).norm() > 1e-12 * std::max(1.0, d.norm()))
    throw Error(ErrorKind::InvalidParameters, "generator must be skew-symmetric");
  Eigen::MatrixXd c = odd_function_of_skew(d, half_tanh_ratio);
  c = ((c - c.transpose()) / 2.0).eval();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(m, m);
  gram.imag() = c;
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositive, "Gram form not positive");
  Eigen::MatrixXcd iota = llt.matrixL().adjoint();
  Eigen::MatrixXd iota_real(2 * m, m);
  iota_real << iota.real(), iota.imag();
  StandardSubspace v(RealSubspaced::span(iota_real));
  return {c, iota, iota_real, v};
}

Eigen::MatrixXd recover_generator(const FlowEmbedding& e) {
  const int m = e.v.dim_c();
  ModularTriple mt = modular_objects(e.v);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  const Eigen::MatrixXd& dl = mt.delta.matrix();
  Eigen::MatrixXd chat = i_matrix(m) * (dl - id) * (dl + id).inverse();
  Eigen::MatrixXd c = e.iota_real.transpose() * chat * e.iota_real;
  c = ((c - c.transpose()) / 2.0).eval();
  return odd_function_of_skew(c, log_ratio);
}

FactorialSplit factorial_split(const StandardSubspace& v) {
  FactorialSplit out;
  StandardSubspace vp = symplectic_complement(v);
  out.fixed = subspace_intersection(v.space(), vp.space(), 1e-7);
  RealSubspaced hfix = subspace_sum(out.fixed, out.fixed.mapped(i_matrix(v.dim_c())));
  out.summand = orthogonal_complement(hfix);
  out.v1 = subspace_intersection(v.space(), orthogonal_complement(out.fixed), 1e-7);
  const int k = out.v1.dim();
  if (k == 0) {
    out.v1_standard_in_summand = out.summand.dim() == 0;
    return out;
  }
  const Eigen::MatrixXd& b = out.v1.basis();
  Eigen::MatrixXd pair(b.rows(), 2 * k);
  pair << b, out.v1.ambient().apply(b);
  RealSubspaced hv1 = RealSubspaced::span(pair);
  out.v1_standard_in_summand = hv1.dim() == 2 * k && hv1.dim() == out.summand.dim() &&
                               subspace_distance(hv1, out.summand) < 1e-8;
  // V1' inside the summand is I (V1^perp ∩ summand)
  RealSubspaced perp_in = subspace_intersection(orthogonal_complement(out.v1), out.summand, 1e-7);
  RealSubspaced v1p = perp_in.mapped(i_matrix(v.dim_c()));
  out.v1_factor_defect = static_cast<double>(subspace_intersection(out.v1, v1p, 1e-7).dim());
  return out;
}

SplitReport split_check(const StandardSubspace& v, const RealSubspaced& v1,
                        const std::vector<double>& times, double tol) {
  if (!subspace_contains(v.space(), v1, 1e-8)) throw Error(ErrorKind::NotContained, "V1 not inside V");
  const int d = v.dim_c();
  const Eigen::MatrixXd im = i_matrix(d);
  RealSubspaced v2 = subspace_intersection(v.space(), orthogonal_complement(v1), 1e-7);
  RealSubspaced h1 = subspace_sum(v1, v1.mapped(im));
  RealSubspaced h2 = subspace_sum(v2, v2.mapped(im));
  SplitReport r;
  double cross = (h1.dim() && h2.dim()) ? (h1.basis().transpose() * h2.basis()).norm() : 0.0;
  const bool dims = h1.dim() == 2 * v1.dim() && h2.dim() == 2 * v2.dim() && h1.dim() + h2.dim() == 2 * d;
  r.direct_sum_residual = dims ? cross : std::max(cross, 1.0);
  r.orthogonality_residual =
      (v1.dim() && v2.dim()) ? ((im * v1.basis()).transpose() * v2.basis()).norm() : 0.0;
  ModularTriple m = modular_objects(v);
  r.flow_residual = 0.0;
  if (v1.dim() > 0) {
    const Eigen::MatrixXd p = v1.projector();
    for (double t : times) {
      Eigen::MatrixXd moved = modular_flow(m, t).matrix() * v1.basis();
      r.flow_residual = std::max(r.flow_residual, (moved - p * moved).norm());
    }
  }
  r.direct_sum = r.direct_sum_residual < tol;
  r.orthogonality = r.orthogonality_residual < tol;
  r.flow_invariant = r.flow_residual < tol;
  r.agree = (r.direct_sum == r.orthogonality) && (r.orthogonality == r.flow_invariant);
  return r;
}

StandardSubspace standard_from_complex(const Eigen::MatrixXcd& g) {
  Eigen::MatrixXd b(2 * g.rows(), g.cols());
  b << g.real(), g.imag();
  return StandardSubspace(RealSubspaced::span(b));
}

StandardSubspace random_standard(Rng& rng, int d, double spread) {
  Eigen::VectorXcd sv(d);
  for (int i = 0; i < d; ++i) sv(i) = std::exp(rng.uniform(-spread, spread));
  return standard_from_complex(rng.unitary(d) * sv.asDiagonal() * rng.unitary(d));
}

std::pair<RLOperatord, RLOperatord> random_modular_pair(Rng& rng, int d, double scale) {
  Eigen::MatrixXd a = rng.normal_matrix(d, d);
  a = (scale / std::sqrt(2.0 * std::max(d, 1))) * (a - a.transpose());
  Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd e = es.eigenvalues().array().exp();
  Eigen::MatrixXcd p = es.eigenvectors() * e.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
  p = ((p + p.adjoint()) / 2.0).eval();
  return {RLOperatord::from_complex(p), RLOperatord::conjugation(d)};
}

}  // namespace modkit
