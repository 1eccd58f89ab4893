#ifndef MODKIT_VN_HPP
#define MODKIT_VN_HPP

#include <vector>

#include "modkit/random.hpp"
#include "modkit/standard.hpp"

namespace modkit {

// Unital *-subalgebra of M_n by a Frobenius-orthonormal basis.
class StarAlgebra {
 public:
  StarAlgebra() = default;
  // Orthonormalizes the span of mats; no closure is performed.
  static StarAlgebra from_span(int n, const std::vector<Eigen::MatrixXcd>& mats, double tol = 1e-9);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(q_.cols()); }
  const Eigen::MatrixXcd& span_matrix() const { return q_; }  // n^2 x dim, columns vec(b)
  Eigen::MatrixXcd element(int k) const;
  std::vector<Eigen::MatrixXcd> basis() const;
  // Smaller generating set if known; used for commutant solves.
  const std::vector<Eigen::MatrixXcd>& generators() const { return gens_; }
  void set_generators(std::vector<Eigen::MatrixXcd> g) { gens_ = std::move(g); }

  double distance_to(const Eigen::MatrixXcd& x) const;  // ||x - P x||
  double closure_residual() const;

 private:
  int n_ = 0;
  Eigen::MatrixXcd q_;
  std::vector<Eigen::MatrixXcd> gens_;
};

StarAlgebra generate_algebra(int n, const std::vector<Eigen::MatrixXcd>& generators, int cap = 4096);
StarAlgebra commutant(const StarAlgebra& a);
StarAlgebra conjugate_algebra(const StarAlgebra& a, const Eigen::MatrixXcd& w);  // w A w^{-1}
StarAlgebra center(const StarAlgebra& a);

// Operator norm distance of the Frobenius projections; 1 when dimensions differ.
double algebra_distance(const StarAlgebra& a, const StarAlgebra& b);

struct VectorStatus {
  bool cyclic = false;
  bool separating = false;
  bool cyclic_for_commutant = false;
  int orbit_rank = 0;
};

VectorStatus vector_status(const StarAlgebra& a, const Eigen::VectorXcd& omega);

// Real span of {h omega : h hermitian in a} inside realified C^n.
RealSubspaced hermitian_orbit(const StarAlgebra& a, const Eigen::VectorXcd& omega);

struct ModularData {
  StandardSubspace v;
  ModularTriple triple;
  Eigen::VectorXcd omega;
};

struct TomitaReport {
  ModularData data;
  double j_omega = 0.0;        // ||J Omega - Omega||
  double delta_omega = 0.0;    // ||Delta Omega - Omega||
  double jmj_distance = 0.0;   // J M J vs M'
  double flow_residual = 0.0;  // ad(log Delta) leaves M invariant
  double center_residual = 0.0;
  double commutant_space = 0.0;  // V_{M'} vs (V_M)'
};

TomitaReport tomita_modular(const StarAlgebra& a, const Eigen::VectorXcd& omega);

// J M J as complex matrices for an antilinear J given in realified form.
Eigen::MatrixXcd antilinear_conjugate(const RLOperatord& j, const Eigen::MatrixXcd& m);

// Hilbert-Schmidt model on M_k with row-major vectorization.
struct HsModel {
  int k = 0;
  Eigen::MatrixXcd density;  // D, trace one
  StarAlgebra left;          // A ⊗ 1
  Eigen::VectorXcd omega;    // vec(D^{1/2})
  Eigen::MatrixXcd delta_closed;  // D ⊗ (D^{-1})^T
  RLOperatord j_closed;           // A -> A*
};

HsModel hs_model(const Eigen::MatrixXcd& density);
Eigen::VectorXcd vec_row_major(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd unvec_row_major(const Eigen::VectorXcd& v, int k);
Eigen::MatrixXcd random_density(Rng& rng, int k);

struct ConePolar {
  Eigen::MatrixXcd positive;    // xi_+ = (xi xi*)^{1/2}
  Eigen::MatrixXcd multiplier;  // u with xi = xi_+ u; U' is right multiplication by u
  double residual = 0.0;
};

ConePolar cone_polar(const Eigen::MatrixXcd& xi);

struct SubalgebraMap {
  std::vector<RealSubspaced> spaces;
  double min_pairwise_distance = 0.0;
  bool monotone = true;
};

// Pairwise distances are over distinct inputs; monotonicity over all inclusions among the inputs.
SubalgebraMap subalgebra_standard_map(const StarAlgebra& a, const Eigen::VectorXcd& omega,
                                      const std::vector<StarAlgebra>& subs);

// ⊕ (M_{k_i} ⊗ 1_{k_i}) conjugated by a random unitary, with a random unit vector.
struct BlockInstance {
  StarAlgebra algebra;
  Eigen::VectorXcd omega;
  std::vector<int> blocks;
};

BlockInstance random_block_algebra(Rng& rng, const std::vector<int>& blocks);

}  // namespace modkit

#endif
