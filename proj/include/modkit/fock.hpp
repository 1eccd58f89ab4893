#ifndef MODKIT_FOCK_HPP
#define MODKIT_FOCK_HPP

#include <vector>

#include "modkit/random.hpp"
#include "modkit/standard.hpp"
#include "modkit/vn.hpp"

namespace modkit {

// Fermionic Fock space over C^d, basis |S> for subsets S (bit k = mode k),
// wedge factors in ascending order.
class FermiContext {
 public:
  explicit FermiContext(int d);

  int d() const { return d_; }
  int dim() const { return 1 << d_; }
  const Eigen::MatrixXcd& c(int k) const { return c_[k]; }  // annihilation on mode k
  Eigen::MatrixXcd c_dag(int k) const { return c_[k].adjoint(); }
  const Eigen::MatrixXcd& parity() const { return z_; }
  const Eigen::MatrixXcd& klein() const { return zt_; }  // (1 + iZ)/(1 + i)
  Eigen::VectorXcd vacuum() const;

  Eigen::MatrixXcd annihilator(const Eigen::VectorXcd& f) const;  // antilinear in f
  Eigen::MatrixXcd creator(const Eigen::VectorXcd& f) const;      // c*(f) Omega = f

  // max over basis pairs of the CAR defects
  double car_residual() const;

 private:
  int d_;
  std::vector<Eigen::MatrixXcd> c_;
  Eigen::MatrixXcd z_, zt_;
};

Eigen::MatrixXcd field_operator(const FermiContext& ctx, const Eigen::VectorXcd& f);  // c(f) + c*(f)

StarAlgebra fermi_algebra(const FermiContext& ctx, const RealSubspaced& v);

// Action of an arbitrary complex matrix on the exterior algebra (minors).
Eigen::MatrixXcd exterior_lift(const FermiContext& ctx, const Eigen::MatrixXcd& m);

// Unitary or antiunitary lift; throws NotIsometric.
RLOperatord second_quantize_minus(const FermiContext& ctx, const RLOperatord& t, double tol = 1e-10);

struct TwistedDualityReport {
  int complement_dim = 0;  // dim R(V^perp)
  int twisted_dim = 0;     // dim Z~^{-1} R(V)' Z~
  double distance = 0.0;
  double super_commutator = 0.0;  // max ||[A, b(v)]_tau|| over A in R(V^perp), v in V
};

TwistedDualityReport twisted_duality_check(const FermiContext& ctx, const RealSubspaced& v);

struct FermiModularReport {
  TomitaReport tomita;
  Eigen::MatrixXcd delta_expected;
  RLOperatord j_expected;
  double delta_residual = 0.0;
  double j_residual = 0.0;
  // With zeta_twist the algebra is R(e^{i pi/4} V) and Z~ J_Fock is compared with Gamma(J_V).
  bool zeta_twist = false;
  double super_j_residual = 0.0;
};

FermiModularReport fermi_modular_check(const FermiContext& ctx, const StandardSubspace& v, bool zeta_twist = false);

// Finite combination sum c_k Exp(v_k).
struct CoherentTerm {
  std::complex<double> coef;
  Eigen::VectorXcd label;
};

class CoherentVector {
 public:
  CoherentVector() = default;
  static CoherentVector exponential(const Eigen::VectorXcd& v, std::complex<double> coef = 1.0);

  // Labels within merge_tol of an existing label are merged.
  void add(std::complex<double> coef, const Eigen::VectorXcd& label);
  const std::vector<CoherentTerm>& terms() const { return terms_; }
  Eigen::MatrixXcd gram() const;

  static constexpr double merge_tol = 1e-10;

 private:
  std::vector<CoherentTerm> terms_;
};

std::complex<double> coherent_inner(const CoherentVector& x, const CoherentVector& y);
CoherentVector weyl_apply(const Eigen::VectorXcd& x, const CoherentVector& xi);   // U_x
CoherentVector weyl_operator(const Eigen::VectorXcd& v, const CoherentVector& xi);  // W(v) = U_{iv/sqrt2}
// Exp(v) -> Exp(Tv); coefficients conjugated for antilinear T. T need not be unitary.
CoherentVector exponential_lift(const RLOperatord& t, const CoherentVector& xi);

struct BoseReport {
  double weyl_residual = 0.0;      // U_x U_y vs e^{-i Im<x,y>} U_{x+y}
  double weyl_w_residual = 0.0;    // W(v) W(w) vs e^{-i Im<v,w>/2} W(v+w)
  double gamma_residual = 0.0;     // inner products under Gamma_+ of U and J_V
  double modular_residual = 0.0;   // Gamma(J) Gamma(Delta^{1/2}) Exp(v) vs Exp(S v)
  double locality_residual = 0.0;  // Weyl operators of V and V' commute
};

BoseReport bose_checks(const StandardSubspace& v, Rng& rng, int samples);

}  // namespace modkit

#endif
