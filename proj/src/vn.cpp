#include "modkit/vn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace modkit {

namespace {

using cd = std::complex<double>;

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int n) { return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n); }

// Incremental orthonormal basis with two passes of Gram-Schmidt.
class SpanBuilder {
 public:
  SpanBuilder(Eigen::Index rows, Eigen::Index capacity) : q_(rows, capacity) {}
  bool add(const Eigen::VectorXcd& v, double tol) {
    const double scale = v.norm();
    if (scale == 0.0) return false;
    Eigen::VectorXcd r = v;
    for (int pass = 0; pass < 2; ++pass)
      if (cols_ > 0) r -= q_.leftCols(cols_) * (q_.leftCols(cols_).adjoint() * r);
    const double rn = r.norm();
    if (rn <= tol * scale) return false;
    if (cols_ == q_.cols()) q_.conservativeResize(Eigen::NoChange, 2 * q_.cols() + 1);
    q_.col(cols_++) = r / rn;
    return true;
  }
  Eigen::Index size() const { return cols_; }
  Eigen::MatrixXcd matrix() const { return q_.leftCols(cols_); }

 private:
  Eigen::MatrixXcd q_;
  Eigen::Index cols_ = 0;
};

int numeric_rank(const Eigen::MatrixXcd& m, double tol = 1e-9) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

// Common kernel of the blocks, rank decided as in null_space (tol * max(1, largest singular value)).
// Candidates come from the Gram eigenproblem; their singular values are recomputed from the blocks.
Eigen::MatrixXcd constraint_kernel(const std::vector<Eigen::MatrixXcd>& blocks, double tol) {
  const Eigen::Index m = blocks.front().cols();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& b : blocks) gram.noalias() += b.adjoint() * b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const double top2 = std::max(0.0, es.eigenvalues()(m - 1));
  const double top = std::sqrt(top2);
  Eigen::Index cand = 0;
  while (cand < m && es.eigenvalues()(cand) <= 1e-10 * std::max(1.0, top2)) ++cand;
  if (cand == 0) return Eigen::MatrixXcd(m, 0);
  const Eigen::MatrixXcd q = es.eigenvectors().leftCols(cand);
  Eigen::MatrixXcd image(static_cast<Eigen::Index>(blocks.size()) * blocks.front().rows(), cand);
  Eigen::Index row = 0;
  for (const auto& b : blocks) {
    image.middleRows(row, b.rows()) = b * q;
    row += b.rows();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(image, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * std::max(1.0, top)) ++rank;
  return q * svd.matrixV().rightCols(cand - rank);
}

Eigen::MatrixXcd orbit(const StarAlgebra& a, const Eigen::VectorXcd& omega) {
  Eigen::MatrixXcd out(a.n(), a.dim());
  for (int k = 0; k < a.dim(); ++k) out.col(k) = a.element(k) * omega;
  return out;
}

}  // namespace

StarAlgebra StarAlgebra::from_span(int n, const std::vector<Eigen::MatrixXcd>& mats, double tol) {
  SpanBuilder sb(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(mats.size()));
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "matrix size differs from n");
    sb.add(vec(m), tol);
  }
  StarAlgebra a;
  a.n_ = n;
  a.q_ = sb.matrix();
  return a;
}

Eigen::MatrixXcd StarAlgebra::element(int k) const { return unvec(q_.col(k), n_); }

std::vector<Eigen::MatrixXcd> StarAlgebra::basis() const {
  std::vector<Eigen::MatrixXcd> out;
  for (int k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

double StarAlgebra::distance_to(const Eigen::MatrixXcd& x) const {
  const Eigen::VectorXcd v = vec(x);
  return (v - q_ * (q_.adjoint() * v)).norm();
}

double StarAlgebra::closure_residual() const {
  double res = distance_to(Eigen::MatrixXcd::Identity(n_, n_));
  for (int i = 0; i < dim(); ++i) {
    const Eigen::MatrixXcd bi = element(i);
    res = std::max(res, distance_to(bi.adjoint()));
    for (int j = 0; j < dim(); ++j) res = std::max(res, distance_to(bi * element(j)));
  }
  return res;
}

StarAlgebra generate_algebra(int n, const std::vector<Eigen::MatrixXcd>& generators, int cap) {
  std::vector<Eigen::MatrixXcd> gens;
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::DimensionMismatch, "generator size differs from n");
    gens.push_back(g);
    if ((g - g.adjoint()).norm() > 1e-12 * std::max(1.0, g.norm())) gens.push_back(g.adjoint());
  }
  SpanBuilder sb(static_cast<Eigen::Index>(n) * n, 16);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  sb.add(vec(id), 1e-9);
  std::deque<Eigen::MatrixXcd> queue{id};
  while (!queue.empty()) {
    Eigen::MatrixXcd b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Eigen::MatrixXcd w = g * b;
      if (sb.add(vec(w), 1e-9)) {
        if (sb.size() > cap) throw Error(ErrorKind::DimensionOverflow, "algebra exceeds the dimension cap");
        queue.push_back(w / w.norm());
      }
    }
  }
  std::vector<Eigen::MatrixXcd> cols;
  const Eigen::MatrixXcd q = sb.matrix();
  for (Eigen::Index k = 0; k < q.cols(); ++k) cols.push_back(unvec(q.col(k), n));
  StarAlgebra a = StarAlgebra::from_span(n, cols);
  a.set_generators(gens);
  return a;
}

StarAlgebra commutant(const StarAlgebra& a) {
  const int n = a.n();
  std::vector<Eigen::MatrixXcd> cons = a.generators();
  if (cons.empty() || static_cast<int>(cons.size()) > a.dim()) cons = a.basis();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  std::vector<Eigen::MatrixXcd> blocks;
  for (const auto& c : cons) blocks.push_back(kron(Eigen::MatrixXcd(c.transpose()), id) - kron(id, c));
  Eigen::MatrixXcd ker = constraint_kernel(blocks, 1e-9);
  std::vector<Eigen::MatrixXcd> mats;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) mats.push_back(unvec(ker.col(c), n));
  return StarAlgebra::from_span(n, mats);
}

StarAlgebra conjugate_algebra(const StarAlgebra& a, const Eigen::MatrixXcd& w) {
  const Eigen::MatrixXcd winv = w.inverse();
  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& b : a.basis()) mats.push_back(w * b * winv);
  StarAlgebra out = StarAlgebra::from_span(a.n(), mats);
  std::vector<Eigen::MatrixXcd> gens;
  for (const auto& g : a.generators()) gens.push_back(w * g * winv);
  out.set_generators(gens);
  return out;
}

namespace {

StarAlgebra center_with(const StarAlgebra& a, const StarAlgebra& c) {
  const Eigen::MatrixXcd& qa = a.span_matrix();
  const Eigen::MatrixXcd& qc = c.span_matrix();
  Eigen::MatrixXcd resid = qa - qc * (qc.adjoint() * qa);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(resid, Eigen::ComputeFullV);
  std::vector<Eigen::MatrixXcd> mats;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < qa.cols(); ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= 1e-8) mats.push_back(unvec(qa * svd.matrixV().col(i), a.n()));
  }
  return StarAlgebra::from_span(a.n(), mats);
}

VectorStatus status_with(const StarAlgebra& a, const StarAlgebra& comm, const Eigen::VectorXcd& omega) {
  if (omega.size() != a.n()) throw Error(ErrorKind::DimensionMismatch, "vector size differs from n");
  VectorStatus s;
  s.orbit_rank = numeric_rank(orbit(a, omega));
  s.cyclic = s.orbit_rank == a.n();
  s.separating = s.orbit_rank == a.dim();
  s.cyclic_for_commutant = numeric_rank(orbit(comm, omega)) == a.n();
  return s;
}

}  // namespace

StarAlgebra center(const StarAlgebra& a) { return center_with(a, commutant(a)); }

double algebra_distance(const StarAlgebra& a, const StarAlgebra& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "algebras on different spaces");
  if (a.dim() != b.dim()) return 1.0;
  if (a.dim() == 0) return 0.0;
  const Eigen::MatrixXcd& qa = a.span_matrix();
  const Eigen::MatrixXcd& qb = b.span_matrix();
  Eigen::MatrixXcd r = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
  return svd.singularValues()(0);
}

VectorStatus vector_status(const StarAlgebra& a, const Eigen::VectorXcd& omega) {
  return status_with(a, commutant(a), omega);
}

RealSubspaced hermitian_orbit(const StarAlgebra& a, const Eigen::VectorXcd& omega) {
  const int n = a.n();
  Eigen::MatrixXd cols(2 * n, 2 * a.dim());
  for (int k = 0; k < a.dim(); ++k) {
    const Eigen::MatrixXcd b = a.element(k);
    const Eigen::MatrixXcd h1 = (b + b.adjoint()) / 2.0;
    const Eigen::MatrixXcd h2 = (b - b.adjoint()) / cd(0.0, 2.0);
    cols.col(2 * k) = realify_vector<double>(Eigen::VectorXcd(h1 * omega));
    cols.col(2 * k + 1) = realify_vector<double>(Eigen::VectorXcd(h2 * omega));
  }
  return RealSubspaced::span(cols);
}

Eigen::MatrixXcd antilinear_conjugate(const RLOperatord& j, const Eigen::MatrixXcd& m) {
  RLOperatord op(j.matrix() * realify<double>(m) * j.matrix(), Linearity::ComplexLinear, 1e-6);
  return op.complex_matrix();
}

TomitaReport tomita_modular(const StarAlgebra& a, const Eigen::VectorXcd& omega) {
  if (omega.size() != a.n()) throw Error(ErrorKind::DimensionMismatch, "vector size differs from n");
  const StarAlgebra comm = commutant(a);
  VectorStatus st = status_with(a, comm, omega);
  if (!st.cyclic || !st.separating) throw Error(ErrorKind::NotCyclicSeparating, "Omega is not cyclic and separating");
  StandardSubspace v(hermitian_orbit(a, omega));
  ModularTriple m = modular_objects(v);
  TomitaReport rep{{v, m, omega}};
  const Eigen::VectorXd w = realify_vector<double>(omega);
  rep.j_omega = (m.j * w - w).norm();
  rep.delta_omega = (m.delta * w - w).norm();

  std::vector<Eigen::MatrixXcd> conj;
  for (const auto& b : a.basis()) conj.push_back(antilinear_conjugate(m.j, b));
  rep.jmj_distance = algebra_distance(StarAlgebra::from_span(a.n(), conj), comm);

  const Eigen::MatrixXcd logd = operator_function(m.delta, SpectralFunction::log()).complex_matrix();
  const double scale = std::max(1.0, logd.norm());
  for (const auto& b : a.basis()) rep.flow_residual = std::max(rep.flow_residual, a.distance_to(logd * b - b * logd) / scale);

  for (const auto& z : center_with(a, comm).basis())
    rep.center_residual = std::max(rep.center_residual, (antilinear_conjugate(m.j, z) - z.adjoint()).norm());

  RealSubspaced vc = hermitian_orbit(comm, omega);
  rep.commutant_space = subspace_distance(vc, symplectic_complement(v).space());
  return rep;
}

Eigen::VectorXcd vec_row_major(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd t = a.transpose();
  return Eigen::Map<const Eigen::VectorXcd>(t.data(), t.size());
}

Eigen::MatrixXcd unvec_row_major(const Eigen::VectorXcd& v, int k) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), k, k).transpose();
}

HsModel hs_model(const Eigen::MatrixXcd& density) {
  const int k = static_cast<int>(density.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(density);
  if ((density - density.adjoint()).norm() > 1e-12 || es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorKind::NotPositive, "density must be positive definite");
  HsModel h;
  h.k = k;
  h.density = density / density.trace().real();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
  std::vector<Eigen::MatrixXcd> units;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(k, k);
      e(i, j) = 1.0;
      units.push_back(kron(e, id));
    }
  h.left = StarAlgebra::from_span(k * k, units);
  h.left.set_generators(units);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ds(h.density);
  Eigen::MatrixXcd root = ds.eigenvectors() * ds.eigenvalues().cwiseSqrt().asDiagonal() * ds.eigenvectors().adjoint();
  h.omega = vec_row_major(root);
  h.delta_closed = kron(h.density, Eigen::MatrixXcd(h.density.inverse().transpose()));
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) swap(i * k + j, j * k + i) = 1.0;
  h.j_closed = RLOperatord::antilinear_from_complex(swap);
  return h;
}

Eigen::MatrixXcd random_density(Rng& rng, int k) {
  Eigen::MatrixXcd g = rng.complex_matrix(k, k);
  Eigen::MatrixXcd d = g * g.adjoint() + 0.05 * Eigen::MatrixXcd::Identity(k, k);
  return d / d.trace().real();
}

ConePolar cone_polar(const Eigen::MatrixXcd& xi) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(xi);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-12 * sv(0)) throw Error(ErrorKind::NotInvertible, "xi is singular");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(xi * xi.adjoint());
  ConePolar out;
  out.positive = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  out.multiplier = out.positive.inverse() * xi;
  out.residual = (xi - out.positive * out.multiplier).norm();
  return out;
}

SubalgebraMap subalgebra_standard_map(const StarAlgebra& a, const Eigen::VectorXcd& omega,
                                      const std::vector<StarAlgebra>& subs) {
  SubalgebraMap out;
  std::vector<std::vector<bool>> incl(subs.size(), std::vector<bool>(subs.size(), false));
  for (const auto& s : subs)
    for (const auto& b : s.basis())
      if (a.distance_to(b) > 1e-8) throw Error(ErrorKind::NotSubalgebra, "element outside the ambient algebra");
  for (const auto& s : subs) out.spaces.push_back(hermitian_orbit(s, omega));
  out.min_pairwise_distance = subs.size() > 1 ? 2.0 : 0.0;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (i == j) continue;
      bool inside = true;
      for (const auto& b : subs[i].basis()) inside = inside && subs[j].distance_to(b) < 1e-8;
      if (inside && !subspace_contains(out.spaces[j], out.spaces[i], 1e-8)) out.monotone = false;
      if (i < j) out.min_pairwise_distance = std::min(out.min_pairwise_distance, subspace_distance(out.spaces[i], out.spaces[j]));
    }
  return out;
}

BlockInstance random_block_algebra(Rng& rng, const std::vector<int>& blocks) {
  int n = 0;
  for (int k : blocks) n += k * k;
  const Eigen::MatrixXcd w = rng.unitary(n);
  std::vector<Eigen::MatrixXcd> units;
  int offset = 0;
  for (int k : blocks) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(k, k);
        e(i, j) = 1.0;
        Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(n, n);
        full.block(offset, offset, k * k, k * k) = kron(e, id);
        units.push_back(w * full * w.adjoint());
      }
    offset += k * k;
  }
  BlockInstance inst;
  inst.algebra = StarAlgebra::from_span(n, units);
  inst.algebra.set_generators(units);
  inst.omega = rng.complex_vector(n);
  inst.omega.normalize();
  inst.blocks = blocks;
  return inst;
}

}  // namespace modkit
