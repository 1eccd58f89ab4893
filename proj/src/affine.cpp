#include "modkit/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "modkit/error.hpp"

namespace modkit {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

int wrap_index(long j, int n) {
  long r = j % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Orthogonal projection of the pair (u, v) onto {(z, a conj z)}, 0 <= a <= 1.
void project_pair(cd& u, cd& v, double a) {
  const cd z = (u + a * std::conj(v)) / (1.0 + a * a);
  u = z;
  v = a * std::conj(z);
}

std::vector<GaussianProbe> or_default(const std::vector<GaussianProbe>& probes) {
  return probes.empty() ? std::vector<GaussianProbe>{GaussianProbe{}} : probes;
}

}  // namespace

StripGrid::StripGrid(int n, double half_length) : n_(n), l_(half_length) {
  if (n < 8 || (n & (n - 1)) != 0) throw Error(ErrorKind::InvalidGrid, "grid size must be a power of two >= 8");
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw Error(ErrorKind::InvalidGrid, "half-length must be positive");
  h_ = 2.0 * l_ / n_;
  nodes_.resize(n_);
  freq_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    nodes_(j) = -l_ + j * h_;
    const int m = j < n_ / 2 ? j : j - n_;
    freq_(j) = j == n_ / 2 ? 0.0 : kPi * m / l_;
  }
}

Eigen::VectorXcd StripGrid::forward(const Eigen::VectorXcd& psi) const {
  if (psi.size() != n_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from grid size");
  Eigen::VectorXcd out;
  fft_engine().fwd(out, psi);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int k = 0; k < n_; ++k) out(k) *= (k % 2 ? -scale : scale);
  return out;
}

Eigen::VectorXcd StripGrid::backward(const Eigen::VectorXcd& c) const {
  if (c.size() != n_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from grid size");
  Eigen::VectorXcd in = c;
  for (int k = 1; k < n_; k += 2) in(k) = -in(k);
  Eigen::VectorXcd out;
  fft_engine().inv(out, in);
  return out * std::sqrt(static_cast<double>(n_));
}

const char* to_string(GridKind k) {
  switch (k) {
    case GridKind::DiagonalShift: return "diagonal-shift";
    case GridKind::FourierDiagonal: return "fourier-diagonal";
    case GridKind::Dense: return "dense";
  }
  return "?";
}

GridOperator GridOperator::identity(std::shared_ptr<const StripGrid> g) {
  const int n = g->n();
  return diagonal(std::move(g), Eigen::VectorXcd::Ones(n));
}

GridOperator GridOperator::diagonal(std::shared_ptr<const StripGrid> g, Eigen::VectorXcd d) {
  if (d.size() != g->n()) throw Error(ErrorKind::DimensionMismatch, "diagonal length differs from grid size");
  GridOperator op(std::move(g), GridKind::DiagonalShift);
  op.values_ = std::move(d);
  return op;
}

GridOperator GridOperator::shift(std::shared_ptr<const StripGrid> g, int k) {
  const int n = g->n();
  GridOperator op = diagonal(std::move(g), Eigen::VectorXcd::Ones(n));
  op.shift_ = wrap_index(k, n);
  return op;
}

GridOperator GridOperator::conjugation(std::shared_ptr<const StripGrid> g) {
  GridOperator op = identity(std::move(g));
  op.anti_ = true;
  return op;
}

GridOperator GridOperator::fourier(std::shared_ptr<const StripGrid> g, Eigen::VectorXcd f) {
  if (f.size() != g->n()) throw Error(ErrorKind::DimensionMismatch, "multiplier length differs from grid size");
  GridOperator op(std::move(g), GridKind::FourierDiagonal);
  op.values_ = std::move(f);
  return op;
}

GridOperator GridOperator::dense(std::shared_ptr<const StripGrid> g, Eigen::MatrixXcd m, bool antilinear) {
  if (m.rows() != g->n() || m.cols() != g->n())
    throw Error(ErrorKind::DimensionMismatch, "matrix size differs from grid size");
  GridOperator op(std::move(g), GridKind::Dense);
  op.dense_ = std::move(m);
  op.anti_ = antilinear;
  return op;
}

GridOperator GridOperator::from_rl(std::shared_ptr<const StripGrid> g, const RLOperatord& op) {
  if (op.linearity() == Linearity::General)
    throw Error(ErrorKind::NotComplexLinear, "operator is neither linear nor antilinear");
  return dense(std::move(g), op.complex_matrix(), op.linearity() == Linearity::Antilinear);
}

Eigen::VectorXcd GridOperator::apply(const Eigen::VectorXcd& psi) const {
  const int n = grid_->n();
  if (psi.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length differs from grid size");
  const Eigen::VectorXcd in = anti_ ? Eigen::VectorXcd(psi.conjugate()) : psi;
  switch (kind_) {
    case GridKind::DiagonalShift: {
      Eigen::VectorXcd out(n);
      for (int j = 0; j < n; ++j) out(j) = values_(j) * in((j + shift_) % n);
      return out;
    }
    case GridKind::FourierDiagonal:
      return grid_->backward(values_.cwiseProduct(grid_->forward(in)));
    case GridKind::Dense:
      return dense_ * in;
  }
  return in;
}

GridOperator GridOperator::operator*(const GridOperator& o) const {
  const int n = grid_->n();
  if (o.grid_->n() != n) throw Error(ErrorKind::DimensionMismatch, "operators live on different grids");
  if (kind_ == GridKind::DiagonalShift && o.kind_ == GridKind::DiagonalShift) {
    GridOperator r(grid_, GridKind::DiagonalShift);
    r.values_.resize(n);
    for (int j = 0; j < n; ++j) {
      const cd b = o.values_((j + shift_) % n);
      r.values_(j) = values_(j) * (anti_ ? std::conj(b) : b);
    }
    r.shift_ = (shift_ + o.shift_) % n;
    r.anti_ = anti_ != o.anti_;
    return r;
  }
  if (kind_ == GridKind::FourierDiagonal && o.kind_ == GridKind::FourierDiagonal) {
    GridOperator r(grid_, GridKind::FourierDiagonal);
    r.values_.resize(n);
    for (int k = 0; k < n; ++k) {
      const cd b = anti_ ? std::conj(o.values_(grid_->mirror(k))) : o.values_(k);
      r.values_(k) = values_(k) * b;
    }
    r.anti_ = anti_ != o.anti_;
    return r;
  }
  const Eigen::MatrixXcd mb = o.complex_matrix();
  return dense(grid_, complex_matrix() * (anti_ ? Eigen::MatrixXcd(mb.conjugate()) : mb), anti_ != o.anti_);
}

Eigen::MatrixXcd GridOperator::complex_matrix() const {
  if (kind_ == GridKind::Dense) return dense_;
  const int n = grid_->n();
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = apply(Eigen::VectorXcd::Unit(n, j));
  return m;
}

RLOperatord GridOperator::to_rl() const {
  return anti_ ? RLOperatord::antilinear_from_complex(complex_matrix()) : RLOperatord::from_complex(complex_matrix());
}

Eigen::VectorXcd gaussian_samples(const StripGrid& g, const GaussianProbe& p) {
  if (!(p.width > 0.0)) throw Error(ErrorKind::InvalidParameters, "probe width must be positive");
  Eigen::VectorXcd v(g.n());
  for (int j = 0; j < g.n(); ++j) {
    const double u = (g.node(j) - p.center) / p.width;
    v(j) = std::exp(-0.5 * u * u);
  }
  return v / v.norm();
}

Eigen::VectorXcd analytic_probe(const StripGrid& g, const GaussianProbe& p, int sign) {
  if (!(p.width > 0.0)) throw Error(ErrorKind::InvalidParameters, "probe width must be positive");
  const int n = g.n();
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k) {
    const double q = g.frequencies()(k);
    const double expo = -0.5 * p.width * p.width * q * q + sign * 0.5 * kPi * q;
    c(k) = std::exp(cd(expo, -q * p.center));
  }
  c(n / 2) = 0.0;
  Eigen::VectorXcd v = g.backward(c);
  return v / v.norm();
}

double wrap_norm(const Eigen::VectorXcd& psi, int k) {
  const int n = static_cast<int>(psi.size());
  k = std::min(std::abs(k), n);
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    if (j < k || j >= n - k) s += std::norm(psi(j));
  return std::sqrt(s);
}

AffineRep::AffineRep(int n, double half_length) : grid_(std::make_shared<StripGrid>(n, half_length)) {}

AffineRep build_rep(int n, double half_length) { return AffineRep(n, half_length); }

void AffineRep::require_built() const {
  if (!grid_) throw Error(ErrorKind::NotBuilt, "representation has no grid");
}

const StripGrid& AffineRep::grid() const {
  require_built();
  return *grid_;
}

std::shared_ptr<const StripGrid> AffineRep::grid_ptr() const {
  require_built();
  return grid_;
}

GridOperator AffineRep::translation(double b) const {
  require_built();
  const Eigen::VectorXd& th = grid_->nodes();
  Eigen::VectorXcd d(th.size());
  for (Eigen::Index j = 0; j < th.size(); ++j) d(j) = std::exp(cd(0.0, b * std::exp(th(j))));
  return GridOperator::diagonal(grid_, std::move(d));
}

GridOperator AffineRep::dilation(int k) const {
  require_built();
  return GridOperator::shift(grid_, k);
}

GridOperator AffineRep::reflection() const {
  require_built();
  return GridOperator::conjugation(grid_);
}

GridOperator AffineRep::element(double b, int k, bool reflect) const {
  GridOperator u = translation(b) * dilation(k);
  return reflect ? u * reflection() : u;
}

GridOperator AffineRep::fractional_shift(double s) const {
  require_built();
  const Eigen::VectorXd& p = grid_->frequencies();
  Eigen::VectorXcd f(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) f(k) = std::exp(cd(0.0, p(k) * s));
  return GridOperator::fourier(grid_, std::move(f));
}

GridOperator AffineRep::delta_it(double s) const { return fractional_shift(-2.0 * kPi * s); }

GridOperator AffineRep::delta_power(double r) const {
  require_built();
  const Eigen::VectorXd& p = grid_->frequencies();
  Eigen::VectorXcd f(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) f(k) = std::exp(-2.0 * kPi * r * p(k));
  return GridOperator::fourier(grid_, std::move(f));
}

GridOperator AffineRep::heisenberg(double s) const {
  require_built();
  const Eigen::VectorXd& th = grid_->nodes();
  Eigen::VectorXcd d(th.size());
  for (Eigen::Index j = 0; j < th.size(); ++j) d(j) = std::exp(cd(0.0, s * th(j)));
  return GridOperator::diagonal(grid_, std::move(d));
}

Eigen::VectorXd AffineRep::generator() const {
  const Eigen::VectorXd& th = grid().nodes();
  Eigen::VectorXd e(th.size());
  for (Eigen::Index j = 0; j < th.size(); ++j) e(j) = std::exp(th(j));
  return e;
}

double AffineRep::generator_min() const { return generator().minCoeff(); }

Eigen::VectorXcd AffineRep::project_v0(const Eigen::VectorXcd& psi) const {
  const StripGrid& g = grid();
  const int n = g.n();
  Eigen::VectorXcd c = g.forward(psi);
  c(0) = c(0).real();
  c(n / 2) = c(n / 2).real();
  for (int k = 1; k < n / 2; ++k) project_pair(c(k), c(n - k), std::exp(-kPi * g.frequencies()(k)));
  return g.backward(c);
}

Eigen::VectorXcd AffineRep::project_vx(double x, const Eigen::VectorXcd& psi) const {
  return translation(x).apply(project_v0(translation(-x).apply(psi)));
}

StandardSubspace standard_family(const AffineRep& rep, double x) {
  const StripGrid& g = rep.grid();
  const int n = g.n();
  if (n > 256) throw Error(ErrorKind::DimensionOverflow, "dense standard subspace limited to N <= 256");
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(n, n);
  int c = 0;
  for (int k : {0, n / 2}) cols(k, c++) = 1.0;
  for (int k = 1; k < n / 2; ++k) {
    const double a = std::exp(-kPi * g.frequencies()(k));
    const double s = 1.0 / std::sqrt(1.0 + a * a);
    cols(k, c) = s;
    cols(n - k, c++) = a * s;
    cols(k, c) = cd(0.0, s);
    cols(n - k, c++) = cd(0.0, -a * s);
  }
  const GridOperator u = rep.translation(x);
  Eigen::MatrixXcd pos(n, n);
  for (int j = 0; j < n; ++j) pos.col(j) = u.apply(g.backward(cols.col(j)));
  Eigen::MatrixXd real_cols(2 * n, n);
  real_cols.topRows(n) = pos.real();
  real_cols.bottomRows(n) = pos.imag();
  return StandardSubspace(RealSubspaced::span(real_cols));
}

BorchersReport borchers_check(const AffineRep& rep, const std::vector<GaussianProbe>& probes, double b, double t) {
  const StripGrid& g = rep.grid();
  BorchersReport r;
  r.b = b;
  r.k = static_cast<int>(std::lround(t / g.h()));
  const GridOperator lhs = rep.dilation(r.k) * rep.translation(b) * rep.dilation(-r.k);
  const GridOperator rhs = rep.translation(b * std::exp(r.k * g.h()));
  for (const GaussianProbe& p : or_default(probes)) {
    const Eigen::VectorXcd psi = gaussian_samples(g, p);
    BorchersEntry e{p, (lhs.apply(psi) - rhs.apply(psi)).norm(), wrap_norm(psi, r.k)};
    r.max_residual = std::max(r.max_residual, e.residual);
    if (e.residual > 2.0 * e.wrap + 1e-14) r.within_wrap_budget = false;
    r.entries.push_back(e);
  }
  return r;
}

namespace {

double max_leak(const AffineRep& rep, const GridOperator& m, const std::vector<GaussianProbe>& probes) {
  double worst = 0.0;
  for (const GaussianProbe& p : or_default(probes)) {
    const Eigen::VectorXcd w = m.apply(analytic_probe(rep.grid(), p));
    worst = std::max(worst, (w - rep.project_v0(w)).norm());
  }
  return worst;
}

}  // namespace

InclusionReport inclusion_residual(const AffineRep& rep, double b, const std::vector<GaussianProbe>& probes) {
  if (b < 0.0) throw Error(ErrorKind::InvalidParameters, "half-sided inclusion needs b >= 0");
  InclusionReport r;
  r.b = b;
  r.residual = max_leak(rep, rep.translation(b), probes);
  r.reverse_residual = max_leak(rep, rep.translation(-b), probes);
  r.ratio = r.residual > 0.0 ? r.reverse_residual / r.residual : 0.0;
  return r;
}

namespace {

struct StripSample {
  double max_modulus = 0.0;
  cd argmax{};
};

template <typename F>
void for_strip(F&& visit) {
  constexpr int nx = 241, ny = 61;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) visit(cd(-6.0 + 12.0 * i / (nx - 1), kPi * j / (ny - 1)));
}

StripSample scan_modulus(const StripFunction& f) {
  StripSample s;
  for_strip([&](cd z) {
    const double a = std::abs(f(z));
    if (a > s.max_modulus) {
      s.max_modulus = a;
      s.argmax = z;
    }
  });
  return s;
}

std::string witness_text(cd z, double modulus) {
  std::ostringstream os;
  os << "|B| = " << modulus << " > 1 at z = " << z.real() << " + " << z.imag() << "i";
  return os.str();
}

}  // namespace

std::optional<std::complex<double>> growth_witness(const StripFunction& f, double tol) {
  const StripSample s = scan_modulus(f);
  if (s.max_modulus > 1.0 + tol) return s.argmax;
  return std::nullopt;
}

InnerFunctionReport inner_function_check(const StripFunction& f, const AffineRep* rep,
                                         const std::vector<GaussianProbe>& probes) {
  const StripSample s = scan_modulus(f);
  if (s.max_modulus > 1.0 + 1e-12)
    throw Error(ErrorKind::NotDecaying, witness_text(s.argmax, s.max_modulus));
  InnerFunctionReport r;
  r.max_modulus = s.max_modulus;
  r.argmax = s.argmax;
  for_strip([&](cd z) {
    r.symmetry_residual = std::max(r.symmetry_residual, std::abs(std::conj(f(cd(0.0, kPi) + std::conj(z))) - f(z)));
  });
  if (rep) {
    const Eigen::VectorXd& th = rep->grid().nodes();
    Eigen::VectorXcd d(th.size());
    for (Eigen::Index j = 0; j < th.size(); ++j) d(j) = f(cd(th(j), 0.0));
    r.endomorphism_residual = max_leak(*rep, GridOperator::diagonal(rep->grid_ptr(), std::move(d)), probes);
  }
  return r;
}

InnerFunctionReport inner_function_check(double b, const AffineRep* rep, const std::vector<GaussianProbe>& probes) {
  const StripFunction f = [b](cd z) { return std::exp(cd(0.0, b) * std::exp(z)); };
  if (b < 0.0) {
    const auto w = growth_witness(f);
    const cd z = w.value_or(cd(0.0, kPi / 2));
    throw Error(ErrorKind::NotDecaying, witness_text(z, std::abs(f(z))));
  }
  return inner_function_check(f, rep, probes);
}

ModularIntersectionReport modular_intersection_check(const AffineRep& rep, const ModularIntersectionOptions& opts) {
  const StripGrid& g = rep.grid();
  const bool raw = opts.scaling == ModularScaling::Raw;
  // t in the chosen scaling -> exponent s of Delta^{is}
  auto to_raw = [&](double t) { return raw ? t : t / (2.0 * kPi); };
  auto from_tau = [&](double tau) { return raw ? tau / (2.0 * kPi) : tau; };

  ModularIntersectionReport r;
  r.scaling = opts.scaling;
  r.tolerance = opts.tolerance;
  r.times = opts.times;
  if (r.times.empty())
    for (double tau = calibration::kMiTauStep; tau <= g.half_length() - calibration::kMiTauMargin + 1e-12;
         tau += calibration::kMiTauStep)
      r.times.push_back(from_tau(tau));
  r.mi2_time = opts.mi2_time >= 0.0 ? opts.mi2_time : from_tau(calibration::kMi2Tau);

  const GridOperator ux = rep.translation(opts.x);
  const GridOperator umx = rep.translation(-opts.x);
  auto s_apply = [&](double t, const Eigen::VectorXcd& v) {
    const double s = to_raw(t);
    return rep.delta_it(s).apply(ux.apply(rep.delta_it(-s).apply(umx.apply(v))));
  };

  const Eigen::VectorXcd xi = analytic_probe(g, opts.limit_probe);
  const Eigen::VectorXcd limit = umx.apply(xi);
  Eigen::VectorXcd prev = xi;
  r.best_limit_residual = std::numeric_limits<double>::infinity();
  for (double t : r.times) {
    const Eigen::VectorXcd cur = s_apply(t, xi);
    r.step_residuals.push_back((cur - prev).norm());
    const double lim = (cur - limit).norm();
    r.limit_residuals.push_back(lim);
    if (lim < r.best_limit_residual) {
      r.best_limit_residual = lim;
      r.best_time = t;
    }
    prev = cur;
  }
  if (r.times.empty()) r.best_limit_residual = (xi - limit).norm();
  r.converged = r.best_limit_residual <= r.tolerance;

  const Eigen::VectorXcd eta = analytic_probe(g, opts.mi2_probe);
  const Eigen::VectorXcd s_eta = s_apply(r.mi2_time, eta);
  const Eigen::VectorXcd jsj = s_apply(r.mi2_time, Eigen::VectorXcd(s_eta.conjugate())).conjugate();
  r.mi2_residual = (jsj - eta).norm();
  return r;
}

void require_converged(const ModularIntersectionReport& r) {
  if (r.converged) return;
  std::ostringstream os;
  os << "S_t did not reach U_(-x,1) within " << r.tolerance << "; trend:";
  for (double v : r.limit_residuals) os << ' ' << v;
  throw Error(ErrorKind::NotConverged, os.str());
}

HeisenbergReport heisenberg_lift(const AffineRep& rep, double s, int k, const GaussianProbe& probe) {
  const StripGrid& g = rep.grid();
  HeisenbergReport r;
  r.s = s;
  r.k = k;
  const GridOperator lhs = rep.dilation(k) * rep.heisenberg(s) * rep.dilation(-k);
  const cd phase = std::exp(cd(0.0, s * k * g.h()));
  const GridOperator w = rep.heisenberg(s);
  const Eigen::VectorXcd psi = gaussian_samples(g, probe);
  r.relation_residual = (lhs.apply(psi) - phase * w.apply(psi)).norm();
  r.wrap = wrap_norm(psi, k);
  r.global_residual = (lhs.values() - phase * w.values()).cwiseAbs().maxCoeff();
  const GridOperator p = GridOperator::diagonal(rep.grid_ptr(), rep.generator().cast<cd>());
  const GridOperator jpj = rep.reflection() * p * rep.reflection();
  r.j_commutation = (jpj.values() - p.values()).cwiseAbs().maxCoeff();
  return r;
}

TwoRayModel::TwoRayModel(const AffineRep& plus, const AffineRep& minus) : plus_(plus), minus_(minus) {
  if (!plus.built() || !minus.built()) throw Error(ErrorKind::NotBuilt, "two-ray model needs built factors");
  const long d = static_cast<long>(plus.grid().n()) * minus.grid().n();
  if (d > calibration::kTwoRayMaxDim) throw Error(ErrorKind::DimensionOverflow, "tensor dimension too large");
}

Eigen::MatrixXcd TwoRayModel::translate(double bp, double bm, const Eigen::MatrixXcd& psi) const {
  const Eigen::VectorXcd a = plus_.translation(bp).values();
  const Eigen::VectorXcd b = minus_.translation(bm).values();
  return (a * b.transpose()).cwiseProduct(psi);
}

Eigen::MatrixXcd TwoRayModel::boost(int k, const Eigen::MatrixXcd& psi) const {
  const int np = static_cast<int>(psi.rows()), nm = static_cast<int>(psi.cols());
  Eigen::MatrixXcd out(np, nm);
  for (int j = 0; j < nm; ++j)
    for (int i = 0; i < np; ++i) out(i, j) = psi(wrap_index(i + k, np), wrap_index(j - k, nm));
  return out;
}

Eigen::MatrixXcd TwoRayModel::conjugate(const Eigen::MatrixXcd& psi) const { return psi.conjugate(); }

Eigen::MatrixXcd TwoRayModel::forward2(const Eigen::MatrixXcd& psi) const {
  Eigen::MatrixXcd c(psi.rows(), psi.cols());
  for (Eigen::Index j = 0; j < psi.cols(); ++j) c.col(j) = plus_.grid().forward(psi.col(j));
  for (Eigen::Index i = 0; i < psi.rows(); ++i) c.row(i) = minus_.grid().forward(c.row(i).transpose()).transpose();
  return c;
}

Eigen::MatrixXcd TwoRayModel::backward2(const Eigen::MatrixXcd& c) const {
  Eigen::MatrixXcd psi(c.rows(), c.cols());
  for (Eigen::Index j = 0; j < c.cols(); ++j) psi.col(j) = plus_.grid().backward(c.col(j));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    psi.row(i) = minus_.grid().backward(psi.row(i).transpose()).transpose();
  return psi;
}

// V = Fix(J_V Delta_V^{1/2}) with Delta_V = Delta_0 x Delta_0^{-1}.
Eigen::MatrixXcd TwoRayModel::project_v(const Eigen::MatrixXcd& psi) const {
  const StripGrid& gp = plus_.grid();
  const StripGrid& gm = minus_.grid();
  Eigen::MatrixXcd c = forward2(psi);
  for (int l = 0; l < gm.n(); ++l)
    for (int k = 0; k < gp.n(); ++k) {
      const int mk = gp.mirror(k), ml = gm.mirror(l);
      const double e = gp.frequencies()(k) - gm.frequencies()(l);
      if (mk == k && ml == l) {
        c(k, l) = c(k, l).real();
      } else if (e > 0.0 || (e == 0.0 && (l < ml || (l == ml && k < mk)))) {
        project_pair(c(k, l), c(mk, ml), std::exp(-kPi * e));
      }
    }
  return backward2(c);
}

Eigen::MatrixXcd TwoRayModel::translated_conjugation(double bp, double bm, const Eigen::MatrixXcd& psi) const {
  return translate(bp, bm, conjugate(translate(-bp, -bm, psi)));
}

Eigen::MatrixXcd TwoRayModel::product_probe(const GaussianProbe& p, const GaussianProbe& q) const {
  return gaussian_samples(plus_.grid(), p) * gaussian_samples(minus_.grid(), q).transpose();
}

Eigen::MatrixXcd TwoRayModel::v_probe(const GaussianProbe& p, const GaussianProbe& q) const {
  return analytic_probe(plus_.grid(), p, 1) * analytic_probe(minus_.grid(), q, -1).transpose();
}

TwoRayReport two_ray_poincare(const AffineRep& plus, const AffineRep& minus, const TwoRayOptions& opts) {
  const TwoRayModel model(plus, minus);
  const double h = plus.grid().h();
  if (std::abs(h - minus.grid().h()) > 1e-15 * h)
    throw Error(ErrorKind::InvalidGrid, "boosts need equal grid spacing on both rays");
  TwoRayReport r;
  r.dim = model.dim();

  const int k = static_cast<int>(std::lround(opts.boost_t / h));
  const Eigen::MatrixXcd narrow = model.product_probe(opts.covariance_probe, opts.covariance_probe);
  const Eigen::MatrixXcd lhs = model.boost(k, model.translate(opts.bp, opts.bm, model.boost(-k, narrow)));
  const Eigen::MatrixXcd rhs = model.translate(std::exp(k * h) * opts.bp, std::exp(-k * h) * opts.bm, narrow);
  r.covariance_residual = (lhs - rhs).norm();
  {
    const int np = plus.grid().n(), nm = minus.grid().n(), kk = std::abs(k);
    double s = 0.0;
    for (int j = 0; j < nm; ++j)
      for (int i = 0; i < np; ++i)
        if (i < kk || i >= np - kk || j < kk || j >= nm - kk) s += std::norm(narrow(i, j));
    r.covariance_wrap = std::sqrt(s);
  }

  const Eigen::MatrixXcd xi = model.v_probe(opts.probe, opts.probe);
  r.v_probe_defect = (model.project_v(xi) - xi).norm();
  auto j1 = [&](const Eigen::MatrixXcd& v) { return model.translated_conjugation(opts.bp, 0.0, v); };
  auto j2 = [&](const Eigen::MatrixXcd& v) { return model.translated_conjugation(0.0, opts.bm, v); };
  const Eigen::MatrixXcd left = j1(j2(xi));
  const Eigen::MatrixXcd right = model.conjugate(j2(j1(model.conjugate(xi))));
  r.jrel_residual = (left - right).norm();

  auto leak = [&](double bp, double bm) {
    const Eigen::MatrixXcd w = model.translate(bp, bm, xi);
    return (w - model.project_v(w)).norm();
  };
  r.inclusion_plus = leak(opts.bp, 0.0);
  r.inclusion_plus_reverse = leak(-opts.bp, 0.0);
  r.inclusion_minus = leak(0.0, opts.bm);
  r.inclusion_minus_reverse = leak(0.0, -opts.bm);
  return r;
}

Sl2Model sl2_lowest_weight(int m, int k) {
  if (m < 1 || k < 3) throw Error(ErrorKind::InvalidParameters, "need m >= 1 and K >= 3");
  Sl2Model r;
  r.m = m;
  r.k = k;
  const int n = k + 1;
  // L_1 L_{-1} = [L_1, L_{-1}] + L_{-1} L_1 = -2 L_0 + L_{-1} L_1 on xi_{m+j-1}.
  r.lowering = Eigen::VectorXd::Zero(n);
  for (int j = 1; j < n; ++j) r.lowering(j) = r.lowering(j - 1) - 2.0 * (m + j - 1);
  // ||xi_{j}||^2 = <L_{-1} xi_{j-1}, xi_j> = -<xi_{j-1}, L_1 xi_j> = -a_j ||xi_{j-1}||^2
  Eigen::VectorXd sq(n);
  sq(0) = 1.0;
  for (int j = 1; j < n; ++j) {
    if (!(r.lowering(j) < 0.0)) throw Error(ErrorKind::NotPositive, "norm recursion lost positivity");
    sq(j) = -r.lowering(j) * sq(j - 1);
  }
  r.norms = sq.cwiseSqrt();

  r.l0 = Eigen::MatrixXcd::Zero(n, n);
  r.l1 = Eigen::MatrixXcd::Zero(n, n);
  r.lm1 = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    r.l0(j, j) = static_cast<double>(m + j);
    if (j + 1 < n) r.lm1(j + 1, j) = r.norms(j + 1) / r.norms(j);
    if (j > 0) r.l1(j - 1, j) = r.lowering(j) * r.norms(j - 1) / r.norms(j);
  }
  const cd i(0.0, 1.0);
  r.e = 0.5 * (r.l1 + r.lm1);
  r.t = i * r.l0 - 0.5 * i * (r.lm1 - r.l1);
  r.s = i * r.l0 + 0.5 * i * (r.lm1 - r.l1);

  auto interior = [&](const Eigen::MatrixXcd& x) { return x.leftCols(k).norm(); };
  r.bracket_residual = std::max({interior(r.l0 * r.lm1 - r.lm1 * r.l0 - r.lm1),
                                 interior(r.l0 * r.l1 - r.l1 * r.l0 + r.l1),
                                 interior(r.l1 * r.lm1 - r.lm1 * r.l1 + 2.0 * r.l0)});
  r.lowest_residual = r.l1.col(0).norm();
  r.conjugation_residual = std::max({(r.e.conjugate() - r.e).norm(), (r.t.conjugate() + r.t).norm(),
                                     (r.s.conjugate() + r.s).norm()});
  r.skew_residual = std::max({(r.e + r.e.adjoint()).norm(), (r.t + r.t.adjoint()).norm(),
                              (r.s + r.s.adjoint()).norm()});
  return r;
}

bool refinement_passes(double coarse, double fine) {
  return fine <= coarse / calibration::kRefinementFactor || fine <= calibration::kRoundoffFloor;
}

ConvergenceStudy affine_convergence(int coarse_n, double coarse_l, int fine_n, double fine_l) {
  ConvergenceStudy st;
  st.coarse_n = coarse_n;
  st.fine_n = fine_n;
  st.coarse_l = coarse_l;
  st.fine_l = fine_l;
  const AffineRep coarse(coarse_n, coarse_l), fine(fine_n, fine_l);
  st.generator_min_coarse = coarse.generator_min();
  st.generator_min_fine = fine.generator_min();

  auto add = [&](std::string name, double c, double f) {
    st.entries.push_back({std::move(name), c, f, refinement_passes(c, f)});
  };
  add("borchers", borchers_check(coarse, {}, 1.0).max_residual, borchers_check(fine, {}, 1.0).max_residual);
  const InclusionReport ic = inclusion_residual(coarse, 1.0), ifn = inclusion_residual(fine, 1.0);
  add("inclusion", ic.residual, ifn.residual);
  st.one_sided_ratio = ifn.ratio;
  add("mi2", modular_intersection_check(coarse).mi2_residual, modular_intersection_check(fine).mi2_residual);
  add("jrel", two_ray_poincare(coarse, coarse).jrel_residual, two_ray_poincare(fine, fine).jrel_residual);

  const bool exact_floor = st.generator_min_coarse == std::exp(-coarse_l) && st.generator_min_fine == std::exp(-fine_l);
  st.passed = exact_floor && st.one_sided_ratio >= calibration::kOneSidedRatio &&
              std::all_of(st.entries.begin(), st.entries.end(), [](const RefinementEntry& e) { return e.passed; });
  return st;
}

}  // namespace modkit
