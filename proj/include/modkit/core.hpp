#ifndef MODKIT_CORE_HPP
#define MODKIT_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "modkit/error.hpp"

namespace modkit {

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

enum class Linearity { ComplexLinear, Antilinear, General };

inline const char* to_string(Linearity l) {
  switch (l) {
    case Linearity::ComplexLinear: return "complex-linear";
    case Linearity::Antilinear: return "antilinear";
    default: return "general";
  }
}

// Multiplication by i on R^{2d}, real parts first.
template <typename Scalar>
class ComplexStructure {
 public:
  explicit ComplexStructure(int dim_c) : d_(dim_c) {
    if (dim_c < 0) throw Error(ErrorKind::DimensionMismatch, "negative dimension");
  }
  int dim_c() const { return d_; }
  RMatrix<Scalar> matrix() const {
    RMatrix<Scalar> m = RMatrix<Scalar>::Zero(2 * d_, 2 * d_);
    m.block(0, d_, d_, d_) = -RMatrix<Scalar>::Identity(d_, d_);
    m.block(d_, 0, d_, d_) = RMatrix<Scalar>::Identity(d_, d_);
    return m;
  }
  template <typename Derived>
  RMatrix<Scalar> apply(const Eigen::MatrixBase<Derived>& x) const {
    RMatrix<Scalar> y(x.rows(), x.cols());
    y.topRows(d_) = -x.bottomRows(d_);
    y.bottomRows(d_) = x.topRows(d_);
    return y;
  }

 private:
  int d_;
};

template <typename Scalar>
RMatrix<Scalar> realify(const CMatrix<Scalar>& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  RMatrix<Scalar> out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = -m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = m.real();
  return out;
}

// v -> M conj(v)
template <typename Scalar>
RMatrix<Scalar> realify_antilinear(const CMatrix<Scalar>& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  RMatrix<Scalar> out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = -m.real();
  return out;
}

template <typename Scalar>
RVector<Scalar> realify_vector(const CVector<Scalar>& v) {
  RVector<Scalar> out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

template <typename Scalar>
CVector<Scalar> complexify_vector(const RVector<Scalar>& x) {
  const Eigen::Index d = x.size() / 2;
  CVector<Scalar> v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = std::complex<Scalar>(x(i), x(d + i));
  return v;
}

template <typename Scalar>
CMatrix<Scalar> complexify_columns(const RMatrix<Scalar>& x) {
  const Eigen::Index d = x.rows() / 2;
  CMatrix<Scalar> v(d, x.cols());
  v.real() = x.topRows(d);
  v.imag() = x.bottomRows(d);
  return v;
}

// <v, w> = g(v, w) + i g(Iv, w), linear in w.
template <typename Scalar>
std::complex<Scalar> hermitian_form(const RVector<Scalar>& v, const RVector<Scalar>& w) {
  const Eigen::Index d = v.size() / 2;
  const Scalar re = v.dot(w);
  const Scalar im = -v.tail(d).dot(w.head(d)) + v.head(d).dot(w.tail(d));
  return {re, im};
}

template <typename Scalar>
class RLOperator {
 public:
  RLOperator() = default;

  // The tag is verified against the matrix; General is always accepted.
  RLOperator(RMatrix<Scalar> m, Linearity tag, Scalar tol = Scalar(1e-9))
      : m_(std::move(m)), tag_(tag) {
    if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
      throw Error(ErrorKind::DimensionMismatch, "operator must be 2d x 2d");
    if (tag_ == Linearity::ComplexLinear && commutator_defect() > tol * scale())
      throw Error(ErrorKind::NotComplexLinear, "matrix does not commute with I");
    if (tag_ == Linearity::Antilinear && anticommutator_defect() > tol * scale())
      throw Error(ErrorKind::NotAntilinear, "matrix does not anticommute with I");
  }

  static RLOperator classify(RMatrix<Scalar> m, Scalar tol = Scalar(1e-9)) {
    RLOperator op(std::move(m), Linearity::General);
    if (op.commutator_defect() <= tol * op.scale())
      op.tag_ = Linearity::ComplexLinear;
    else if (op.anticommutator_defect() <= tol * op.scale())
      op.tag_ = Linearity::Antilinear;
    return op;
  }

  static RLOperator identity(int d) {
    return RLOperator(RMatrix<Scalar>::Identity(2 * d, 2 * d), Linearity::ComplexLinear);
  }
  static RLOperator from_complex(const CMatrix<Scalar>& m) {
    return RLOperator(realify<Scalar>(m), Linearity::ComplexLinear);
  }
  static RLOperator antilinear_from_complex(const CMatrix<Scalar>& m) {
    return RLOperator(realify_antilinear<Scalar>(m), Linearity::Antilinear);
  }
  static RLOperator conjugation(int d) {
    return antilinear_from_complex(CMatrix<Scalar>::Identity(d, d));
  }

  const RMatrix<Scalar>& matrix() const { return m_; }
  Linearity linearity() const { return tag_; }
  int dim_c() const { return static_cast<int>(m_.rows() / 2); }

  // For complex-linear T this is the matrix of T; for antilinear T it is M with Tv = M conj(v).
  CMatrix<Scalar> complex_matrix() const {
    if (tag_ == Linearity::General)
      throw Error(ErrorKind::NotComplexLinear, "general real-linear operator has no complex form");
    const int d = dim_c();
    CMatrix<Scalar> c(d, d);
    c.real() = m_.topLeftCorner(d, d);
    c.imag() = m_.bottomLeftCorner(d, d);
    return c;
  }

  RLOperator transpose() const { return RLOperator(m_.transpose(), tag_, Scalar(1e-6)); }

  RLOperator inverse() const {
    Eigen::FullPivLU<RMatrix<Scalar>> lu(m_);
    if (!lu.isInvertible()) throw Error(ErrorKind::Singular, "operator not invertible");
    return RLOperator(lu.inverse(), tag_, Scalar(1e-6));
  }

  template <typename Derived>
  RMatrix<Scalar> operator*(const Eigen::MatrixBase<Derived>& x) const {
    return m_ * x;
  }

  RLOperator operator*(const RLOperator& o) const {
    Linearity t = Linearity::General;
    if (tag_ != Linearity::General && o.tag_ != Linearity::General)
      t = (tag_ == o.tag_) ? Linearity::ComplexLinear : Linearity::Antilinear;
    RLOperator r;
    r.m_ = m_ * o.m_;
    r.tag_ = t;
    return r;
  }

  Scalar commutator_defect() const {
    ComplexStructure<Scalar> cs(dim_c());
    return (m_ * cs.matrix() - cs.matrix() * m_).norm();
  }
  Scalar anticommutator_defect() const {
    ComplexStructure<Scalar> cs(dim_c());
    return (m_ * cs.matrix() + cs.matrix() * m_).norm();
  }

 private:
  Scalar scale() const { return std::max(Scalar(1), m_.norm()); }

  RMatrix<Scalar> m_;
  Linearity tag_ = Linearity::General;
};

template <typename Scalar>
Scalar operator_distance(const RLOperator<Scalar>& a, const RLOperator<Scalar>& b) {
  return (a.matrix() - b.matrix()).norm();
}

constexpr double kRankTol = 1e-9;

template <typename Scalar>
class RealSubspace {
 public:
  RealSubspace() = default;

  // Orthonormal basis of the column span; singular values below tol * largest are dropped.
  static RealSubspace span(const RMatrix<Scalar>& vectors, Scalar tol = Scalar(kRankTol)) {
    if (vectors.rows() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "odd ambient dimension");
    RealSubspace s;
    s.d_ = static_cast<int>(vectors.rows() / 2);
    if (vectors.cols() == 0) {
      s.basis_ = RMatrix<Scalar>(vectors.rows(), 0);
      return s;
    }
    Eigen::JacobiSVD<RMatrix<Scalar>, Eigen::ColPivHouseholderQRPreconditioner> svd(vectors, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    const Scalar top = sv.size() > 0 ? sv(0) : Scalar(0);
    if (top > Scalar(0))
      while (r < sv.size() && sv(r) > tol * top) ++r;
    s.basis_ = svd.matrixU().leftCols(r);
    return s;
  }

  static RealSubspace zero(int d) {
    RealSubspace s;
    s.d_ = d;
    s.basis_ = RMatrix<Scalar>(2 * d, 0);
    return s;
  }

  static RealSubspace real_points(int d) {
    RMatrix<Scalar> b = RMatrix<Scalar>::Zero(2 * d, d);
    b.topRows(d).setIdentity();
    RealSubspace s;
    s.d_ = d;
    s.basis_ = b;
    return s;
  }

  const RMatrix<Scalar>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int dim_c() const { return d_; }
  ComplexStructure<Scalar> ambient() const { return ComplexStructure<Scalar>(d_); }
  RMatrix<Scalar> projector() const { return basis_ * basis_.transpose(); }

  RealSubspace mapped(const RMatrix<Scalar>& t) const { return span(t * basis_); }

 private:
  RMatrix<Scalar> basis_;
  int d_ = 0;
};

template <typename Scalar>
void require_same_ambient(const RealSubspace<Scalar>& a, const RealSubspace<Scalar>& b) {
  if (a.dim_c() != b.dim_c()) throw Error(ErrorKind::DimensionMismatch, "different ambient spaces");
}

template <typename Scalar>
Scalar subspace_distance(const RealSubspace<Scalar>& a, const RealSubspace<Scalar>& b) {
  require_same_ambient(a, b);
  RMatrix<Scalar> diff = a.projector() - b.projector();
  if (diff.rows() == 0) return Scalar(0);
  Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

template <typename Scalar>
RealSubspace<Scalar> subspace_sum(const RealSubspace<Scalar>& a, const RealSubspace<Scalar>& b) {
  require_same_ambient(a, b);
  RMatrix<Scalar> m(a.basis().rows(), a.dim() + b.dim());
  m << a.basis(), b.basis();
  return RealSubspace<Scalar>::span(m);
}

template <typename Scalar>
RealSubspace<Scalar> orthogonal_complement(const RealSubspace<Scalar>& a) {
  const Eigen::Index n = a.basis().rows();
  if (a.dim() == 0) return RealSubspace<Scalar>::span(RMatrix<Scalar>::Identity(n, n));
  Eigen::HouseholderQR<RMatrix<Scalar>> qr(a.basis());
  RMatrix<Scalar> q = qr.householderQ() * RMatrix<Scalar>::Identity(n, n);
  return RealSubspace<Scalar>::span(q.rightCols(n - a.dim()));
}

// Vectors of a whose distance to b is below tol (principal angles with zero sine).
template <typename Scalar>
RealSubspace<Scalar> subspace_intersection(const RealSubspace<Scalar>& a, const RealSubspace<Scalar>& b,
                                           Scalar tol = Scalar(kRankTol)) {
  require_same_ambient(a, b);
  if (a.dim() == 0 || b.dim() == 0) return RealSubspace<Scalar>::zero(a.dim_c());
  RMatrix<Scalar> resid = a.basis() - b.basis() * (b.basis().transpose() * a.basis());
  Eigen::JacobiSVD<RMatrix<Scalar>> svd(resid, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    const Scalar s = i < sv.size() ? sv(i) : Scalar(0);
    if (s <= tol) keep.push_back(i);
  }
  RMatrix<Scalar> vecs(a.basis().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) vecs.col(j) = a.basis() * svd.matrixV().col(keep[j]);
  return RealSubspace<Scalar>::span(vecs);
}

template <typename Scalar>
bool subspace_contains(const RealSubspace<Scalar>& big, const RealSubspace<Scalar>& small,
                       Scalar tol = Scalar(1e-8)) {
  require_same_ambient(big, small);
  if (small.dim() == 0) return true;
  RMatrix<Scalar> r = small.basis() - big.basis() * (big.basis().transpose() * small.basis());
  return r.norm() <= tol;
}

// Orthonormal basis of ker(a); singular values below tol * max(1, largest) count as zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> null_space(
    const Eigen::MatrixBase<Derived>& a, double tol = kRankTol) {
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return M::Identity(n, n);
  Eigen::JacobiSVD<M, Eigen::ColPivHouseholderQRPreconditioner> svd(M(a), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? static_cast<double>(sv(0)) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && static_cast<double>(sv(rank)) > tol * std::max(1.0, top)) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

// vec(A X B) = kron(B^T, A) vec(X), column-major.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(const Eigen::MatrixBase<DA>& a,
                                                                        const Eigen::MatrixBase<DB>& b) {
  Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

enum class FunctionKind { Power, Log, Exp };

struct SpectralFunction {
  FunctionKind kind;
  double exponent = 1.0;
  static SpectralFunction power(double s) { return {FunctionKind::Power, s}; }
  static SpectralFunction log() { return {FunctionKind::Log, 0.0}; }
  static SpectralFunction exp() { return {FunctionKind::Exp, 0.0}; }
};

template <typename Scalar>
RLOperator<Scalar> operator_function(const RLOperator<Scalar>& p, SpectralFunction f) {
  if (p.linearity() != Linearity::ComplexLinear)
    throw Error(ErrorKind::NotComplexLinear, "operator_function needs a complex-linear operator");
  const RMatrix<Scalar> sym = (p.matrix() + p.matrix().transpose()) / Scalar(2);
  if ((p.matrix() - sym).norm() > Scalar(1e-8) * std::max(Scalar(1), sym.norm()))
    throw Error(ErrorKind::NotPositive, "operator is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> es(sym);
  RVector<Scalar> ev = es.eigenvalues();
  if (f.kind != FunctionKind::Exp && ev.size() > 0 && ev.minCoeff() <= Scalar(0))
    throw Error(ErrorKind::NotPositive, "eigenvalue <= 0");
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    switch (f.kind) {
      case FunctionKind::Power: ev(i) = std::pow(ev(i), Scalar(f.exponent)); break;
      case FunctionKind::Log: ev(i) = std::log(ev(i)); break;
      case FunctionKind::Exp: ev(i) = std::exp(ev(i)); break;
    }
  }
  RMatrix<Scalar> out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return RLOperator<Scalar>(out, Linearity::ComplexLinear, Scalar(1e-6));
}

// P^{is} = cos(s log P) + I sin(s log P).
template <typename Scalar>
RLOperator<Scalar> imaginary_power(const RLOperator<Scalar>& p, Scalar s) {
  if (p.linearity() != Linearity::ComplexLinear)
    throw Error(ErrorKind::NotComplexLinear, "imaginary_power needs a complex-linear operator");
  const RMatrix<Scalar> sym = (p.matrix() + p.matrix().transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> es(sym);
  const RVector<Scalar>& ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() <= Scalar(0)) throw Error(ErrorKind::NotPositive, "eigenvalue <= 0");
  RVector<Scalar> c(ev.size()), sn(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Scalar a = s * std::log(ev(i));
    c(i) = std::cos(a);
    sn(i) = std::sin(a);
  }
  const RMatrix<Scalar>& q = es.eigenvectors();
  RMatrix<Scalar> cm = q * c.asDiagonal() * q.transpose();
  RMatrix<Scalar> sm = q * sn.asDiagonal() * q.transpose();
  ComplexStructure<Scalar> cs(p.dim_c());
  return RLOperator<Scalar>(cm + cs.matrix() * sm, Linearity::ComplexLinear, Scalar(1e-6));
}

template <typename Scalar>
struct PolarPair {
  RLOperator<Scalar> delta;
  RLOperator<Scalar> j;
};

// S = J Delta^{1/2} with Delta = S^T S.
template <typename Scalar>
PolarPair<Scalar> antilinear_polar(const RLOperator<Scalar>& s, Scalar tol = Scalar(1e-12)) {
  if (s.linearity() != Linearity::Antilinear)
    throw Error(ErrorKind::NotAntilinear, "antilinear_polar needs an antilinear operator");
  Eigen::JacobiSVD<RMatrix<Scalar>> svd(s.matrix());
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= tol * sv(0))
    throw Error(ErrorKind::Singular, "antilinear operator is singular");
  RMatrix<Scalar> d = s.matrix().transpose() * s.matrix();
  d = (d + d.transpose()).eval() / Scalar(2);
  RLOperator<Scalar> delta(d, Linearity::ComplexLinear, Scalar(1e-6));
  RLOperator<Scalar> inv_root = operator_function(delta, SpectralFunction::power(-0.5));
  RLOperator<Scalar> j(s.matrix() * inv_root.matrix(), Linearity::Antilinear, Scalar(1e-6));
  return {delta, j};
}

using ComplexStructured = ComplexStructure<double>;
using RLOperatord = RLOperator<double>;
using RealSubspaced = RealSubspace<double>;
using PolarPaird = PolarPair<double>;

}  // namespace modkit

#endif
