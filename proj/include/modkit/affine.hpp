#ifndef MODKIT_AFFINE_HPP
#define MODKIT_AFFINE_HPP

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modkit/core.hpp"
#include "modkit/standard.hpp"

namespace modkit {

// Constants fixed by the (256, 4) -> (1024, 8) convergence study.
namespace calibration {
constexpr double kProbeWidth = 1.0;
constexpr double kLimitProbeWidth = 0.5;
constexpr double kNarrowProbeWidth = 0.35;
constexpr double kBorchersShift = 1.0;
constexpr double kMiTauStep = 0.5;
constexpr double kMiTauMargin = 1.5;
constexpr double kMi2Tau = 1.5707963267948966;
constexpr double kMiLimitTol = 1e-2;
constexpr double kRefinementFactor = 10.0;
constexpr double kRoundoffFloor = 1e-13;
constexpr double kOneSidedRatio = 100.0;
constexpr int kTwoRayMaxDim = 1 << 20;
// single-grid suite tolerances
constexpr double kGridTolerance = 1e-3;
constexpr double kExactTolerance = 1e-12;
}  // namespace calibration

// Periodic grid theta_j = -L + j h on [-L, L), h = 2L/N.
class StripGrid {
 public:
  StripGrid(int n, double half_length);

  int n() const { return n_; }
  double half_length() const { return l_; }
  double h() const { return h_; }
  double node(int j) const { return nodes_(j); }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  // FFT order; the unpaired Nyquist mode carries frequency 0.
  const Eigen::VectorXd& frequencies() const { return freq_; }
  int mirror(int k) const { return (n_ - k) % n_; }

  // c_k = N^{-1/2} sum_j psi_j exp(-i p_k theta_j), unitary.
  Eigen::VectorXcd forward(const Eigen::VectorXcd& psi) const;
  Eigen::VectorXcd backward(const Eigen::VectorXcd& c) const;

 private:
  int n_;
  double l_, h_;
  Eigen::VectorXd nodes_, freq_;
};

enum class GridKind { DiagonalShift, FourierDiagonal, Dense };
const char* to_string(GridKind k);

// Linear or antilinear operator on C^N held in a structured form when possible.
// DiagonalShift:   (T psi)_j = d_j psi'_{j+k}
// FourierDiagonal: T psi = F^{-1} diag(f) F psi'
// Dense:           T psi = M psi'
// where psi' = conj(psi) for antilinear T.
class GridOperator {
 public:
  static GridOperator identity(std::shared_ptr<const StripGrid> g);
  static GridOperator diagonal(std::shared_ptr<const StripGrid> g, Eigen::VectorXcd d);
  static GridOperator shift(std::shared_ptr<const StripGrid> g, int k);
  static GridOperator conjugation(std::shared_ptr<const StripGrid> g);
  static GridOperator fourier(std::shared_ptr<const StripGrid> g, Eigen::VectorXcd f);
  static GridOperator dense(std::shared_ptr<const StripGrid> g, Eigen::MatrixXcd m, bool antilinear);
  static GridOperator from_rl(std::shared_ptr<const StripGrid> g, const RLOperatord& op);

  GridKind kind() const { return kind_; }
  bool antilinear() const { return anti_; }
  int n() const { return grid_->n(); }
  const Eigen::VectorXcd& values() const { return values_; }
  int shift_power() const { return shift_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;
  GridOperator operator*(const GridOperator& o) const;

  Eigen::MatrixXcd complex_matrix() const;
  RLOperatord to_rl() const;

 private:
  GridOperator(std::shared_ptr<const StripGrid> g, GridKind k) : grid_(std::move(g)), kind_(k) {}

  std::shared_ptr<const StripGrid> grid_;
  GridKind kind_;
  bool anti_ = false;
  Eigen::VectorXcd values_;
  int shift_ = 0;
  Eigen::MatrixXcd dense_;
};

struct GaussianProbe {
  double center = 0.0;
  double width = calibration::kProbeWidth;
};

// Sampled exp(-(theta - c)^2 / 2 w^2), unit norm.
Eigen::VectorXcd gaussian_samples(const StripGrid& g, const GaussianProbe& p);
// Delta^{-sign/4} g built from the exact Fourier transform of g; lies in V0 (sign = +1)
// or in the standard subspace of Delta^{-1} (sign = -1). Unit norm.
Eigen::VectorXcd analytic_probe(const StripGrid& g, const GaussianProbe& p, int sign = 1);
// l2 norm of psi on the first and last |k| indices.
double wrap_norm(const Eigen::VectorXcd& psi, int k);

// Spectral model of U_{(b, a)}: psi(theta) -> exp(i b e^theta) psi(theta + log a).
class AffineRep {
 public:
  AffineRep() = default;
  AffineRep(int n, double half_length);

  bool built() const { return static_cast<bool>(grid_); }
  const StripGrid& grid() const;
  std::shared_ptr<const StripGrid> grid_ptr() const;

  GridOperator translation(double b) const;      // U_{(b,1)}
  GridOperator dilation(int k) const;            // U_{(0,e^{kh})}
  GridOperator reflection() const;               // U_{(0,-1)}
  GridOperator element(double b, int k, bool reflect) const;  // U_{(b, +-e^{kh})}
  GridOperator fractional_shift(double s) const;  // psi(theta) -> psi(theta + s)
  GridOperator delta_it(double s) const;          // Delta_0^{is}
  GridOperator delta_power(double r) const;       // Delta_0^r
  GridOperator heisenberg(double s) const;        // exp(i s theta)

  Eigen::VectorXd generator() const;  // e^{theta_j}
  double generator_min() const;

  Eigen::VectorXcd project_v0(const Eigen::VectorXcd& psi) const;
  Eigen::VectorXcd project_vx(double x, const Eigen::VectorXcd& psi) const;

 private:
  void require_built() const;
  std::shared_ptr<const StripGrid> grid_;
};

AffineRep build_rep(int n, double half_length);

// V_x = U_{(x,1)} V0 as a dense standard subspace (N <= 256).
StandardSubspace standard_family(const AffineRep& rep, double x);

struct BorchersEntry {
  GaussianProbe probe;
  double residual = 0.0;
  double wrap = 0.0;  // probe norm on the wrap band
};

struct BorchersReport {
  double b = 0.0;
  int k = 0;
  std::vector<BorchersEntry> entries;
  double max_residual = 0.0;
  bool within_wrap_budget = true;  // residual <= 2 * wrap for every probe
};

// || (Shift_k U_b Shift_{-k} - U_{b e^{kh}}) probe || with k = round(t / h).
BorchersReport borchers_check(const AffineRep& rep, const std::vector<GaussianProbe>& probes, double b,
                              double t = calibration::kBorchersShift);

struct InclusionReport {
  double b = 0.0;
  double residual = 0.0;
  double reverse_residual = 0.0;  // same quantity at -b
  double ratio = 0.0;
};

InclusionReport inclusion_residual(const AffineRep& rep, double b,
                                   const std::vector<GaussianProbe>& probes = {GaussianProbe{}});

using StripFunction = std::function<std::complex<double>(std::complex<double>)>;

struct InnerFunctionReport {
  double max_modulus = 0.0;
  double symmetry_residual = 0.0;
  double endomorphism_residual = 0.0;  // only with a context
  std::complex<double> argmax{};
};

// Point of the sampled strip where |B| > 1 + tol, if any.
std::optional<std::complex<double>> growth_witness(const StripFunction& f, double tol = 1e-12);

InnerFunctionReport inner_function_check(const StripFunction& f, const AffineRep* rep = nullptr,
                                         const std::vector<GaussianProbe>& probes = {GaussianProbe{}});
InnerFunctionReport inner_function_check(double b, const AffineRep* rep = nullptr,
                                         const std::vector<GaussianProbe>& probes = {GaussianProbe{}});

struct ModularIntersectionOptions {
  ModularScaling scaling = ModularScaling::Raw;  // Raw: t -> Delta^{it}; Group: t -> Delta^{it/2pi}
  double x = 1.0;                                // H2 = V_x
  std::vector<double> times;                     // empty: automatic schedule
  double mi2_time = -1.0;                        // negative: default
  double tolerance = calibration::kMiLimitTol;
  GaussianProbe limit_probe{0.0, calibration::kLimitProbeWidth};
  GaussianProbe mi2_probe{};
};

struct ModularIntersectionReport {
  ModularScaling scaling = ModularScaling::Raw;
  std::vector<double> times;
  std::vector<double> step_residuals;   // ||(S_{t_k} - S_{t_{k-1}}) probe||
  std::vector<double> limit_residuals;  // ||(S_t - U_{(-x,1)}) probe||
  double best_limit_residual = 0.0;
  double best_time = 0.0;
  double mi2_residual = 0.0;
  double mi2_time = 0.0;
  double tolerance = 0.0;
  bool converged = false;
};

ModularIntersectionReport modular_intersection_check(const AffineRep& rep,
                                                     const ModularIntersectionOptions& opts = {});
void require_converged(const ModularIntersectionReport& r);

struct HeisenbergReport {
  double s = 0.0;
  int k = 0;
  double relation_residual = 0.0;  // on the probe
  double wrap = 0.0;
  double global_residual = 0.0;    // max entry of the diagonal defect
  double j_commutation = 0.0;      // ||J P J - P||
};

HeisenbergReport heisenberg_lift(const AffineRep& rep, double s, int k,
                                 const GaussianProbe& probe = GaussianProbe{});

// Tensor product of two strip models; vectors are N+ x N- matrices.
class TwoRayModel {
 public:
  TwoRayModel(const AffineRep& plus, const AffineRep& minus);

  int dim() const { return plus_.grid().n() * minus_.grid().n(); }
  const AffineRep& plus() const { return plus_; }
  const AffineRep& minus() const { return minus_; }

  Eigen::MatrixXcd translate(double bp, double bm, const Eigen::MatrixXcd& psi) const;
  Eigen::MatrixXcd boost(int k, const Eigen::MatrixXcd& psi) const;  // U^1(e^{kh}) x U^2(e^{-kh})
  Eigen::MatrixXcd conjugate(const Eigen::MatrixXcd& psi) const;     // J_V
  Eigen::MatrixXcd project_v(const Eigen::MatrixXcd& psi) const;
  // J_{U_x V} = U_x J_V U_x^*
  Eigen::MatrixXcd translated_conjugation(double bp, double bm, const Eigen::MatrixXcd& psi) const;

  Eigen::MatrixXcd product_probe(const GaussianProbe& p, const GaussianProbe& q) const;
  Eigen::MatrixXcd v_probe(const GaussianProbe& p, const GaussianProbe& q) const;

 private:
  Eigen::MatrixXcd forward2(const Eigen::MatrixXcd& psi) const;
  Eigen::MatrixXcd backward2(const Eigen::MatrixXcd& c) const;

  AffineRep plus_, minus_;
};

struct TwoRayOptions {
  double bp = 1.0;
  double bm = -1.0;
  double boost_t = 0.5;
  GaussianProbe covariance_probe{0.0, calibration::kNarrowProbeWidth};
  GaussianProbe probe{};
};

struct TwoRayReport {
  int dim = 0;
  double covariance_residual = 0.0;
  double covariance_wrap = 0.0;
  double jrel_residual = 0.0;
  double v_probe_defect = 0.0;
  double inclusion_plus = 0.0;          // H1 = U_{(bp,0)} V
  double inclusion_plus_reverse = 0.0;  // U_{(-bp,0)} V
  double inclusion_minus = 0.0;         // H2 = U_{(0,bm)} V
  double inclusion_minus_reverse = 0.0;
};

TwoRayReport two_ray_poincare(const AffineRep& plus, const AffineRep& minus, const TwoRayOptions& opts = {});

struct Sl2Model {
  int m = 0;
  int k = 0;
  Eigen::VectorXd norms;     // ||L_{-1}^j xi_m|| relative to ||xi_m|| = 1
  Eigen::VectorXd lowering;  // L_1 xi_{m+j} = a_j xi_{m+j-1} on the unnormalized vectors
  Eigen::MatrixXcd l0, l1, lm1, e, t, s;
  double bracket_residual = 0.0;
  double lowest_residual = 0.0;
  double conjugation_residual = 0.0;
  double skew_residual = 0.0;
  RLOperatord conjugation() const { return RLOperatord::conjugation(k + 1); }
};

Sl2Model sl2_lowest_weight(int m, int k);

// Paired coarse/fine residuals for the refinement criterion.
struct RefinementEntry {
  std::string name;
  double coarse = 0.0;
  double fine = 0.0;
  bool passed = false;
};

struct ConvergenceStudy {
  int coarse_n = 0, fine_n = 0;
  double coarse_l = 0.0, fine_l = 0.0;
  double generator_min_coarse = 0.0, generator_min_fine = 0.0;
  std::vector<RefinementEntry> entries;
  double one_sided_ratio = 0.0;
  bool passed = false;
};

bool refinement_passes(double coarse, double fine);
ConvergenceStudy affine_convergence(int coarse_n, double coarse_l, int fine_n, double fine_l);

}  // namespace modkit

#endif
