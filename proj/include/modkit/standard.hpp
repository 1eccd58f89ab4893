#ifndef MODKIT_STANDARD_HPP
#define MODKIT_STANDARD_HPP

#include <vector>

#include "modkit/core.hpp"
#include "modkit/random.hpp"

namespace modkit {

struct StandardDiagnostics {
  bool standard = false;
  int intersection_dim = 0;  // dim(V ∩ IV)
  double sigma_min = 0.0;
  double condition = 0.0;
};

StandardDiagnostics is_standard(const RealSubspaced& v, double tol = kRankTol);

class StandardSubspace {
 public:
  explicit StandardSubspace(RealSubspaced space);
  const RealSubspaced& space() const { return space_; }
  const Eigen::MatrixXd& basis() const { return space_.basis(); }
  int dim_c() const { return space_.dim_c(); }
  double condition() const { return condition_; }

 private:
  RealSubspaced space_;
  double condition_ = 0.0;
};

struct ModularTriple {
  RLOperatord s;
  RLOperatord delta;
  RLOperatord j;
};

// How a real parameter is turned into a modular unitary.
enum class ModularScaling {
  Group,  // U(e^t) = Delta^{-it/2pi}
  Raw     // t -> Delta^{it}
};

ModularTriple modular_objects(const StandardSubspace& v);

// U^V_t for t != 0 in the group convention; t < 0 includes J.
RLOperatord modular_unitary(const ModularTriple& m, double t);
RLOperatord modular_flow(const ModularTriple& m, double t, ModularScaling scaling = ModularScaling::Raw);

StandardSubspace from_modular(const RLOperatord& delta, const RLOperatord& j, double tol = 1e-8);
StandardSubspace symplectic_complement(const StandardSubspace& v);

double modular_relation_residual(const ModularTriple& m);

// Spectrum of Delta is closed under inversion with multiplicities.
bool spectrum_inversion_symmetric(const RLOperatord& delta, double rel_tol = 1e-8);
std::vector<double> complex_spectrum(const RLOperatord& p);

// An antiunitary involution with a fixed orthonormal basis of its real points.
struct RealForm {
  RLOperatord j;
  Eigen::MatrixXd fixed_basis;  // 2d x d
};

RealForm real_form(const RLOperatord& j);
RealForm canonical_real_form(int d);

// Complex-linear extension of a real operator on Fix(J).
RLOperatord complexify_on(const RealForm& form, const Eigen::MatrixXd& c);

StandardSubspace from_c(const RealForm& form, const Eigen::MatrixXd& c);
Eigen::MatrixXd to_c(const RealForm& form, const StandardSubspace& v, double tol = 1e-8);

struct FlowEmbedding {
  Eigen::MatrixXd c;         // skew form operator on R^m
  Eigen::MatrixXcd iota;     // iota(v) = iota * v
  Eigen::MatrixXd iota_real; // realified image, 2m x m
  StandardSubspace v;
};

FlowEmbedding flow_embedding(const Eigen::MatrixXd& d);

// Generator recovered from the modular operator of V through the embedding.
Eigen::MatrixXd recover_generator(const FlowEmbedding& e);

struct FactorialSplit {
  RealSubspaced fixed;    // V ∩ V'
  RealSubspaced summand;  // complement of fixed + I fixed
  RealSubspaced v1;       // V ∩ fixed^perp
  bool v1_standard_in_summand = false;
  double v1_factor_defect = 0.0;  // dim(V1 ∩ V1') inside the summand
};

FactorialSplit factorial_split(const StandardSubspace& v);

struct SplitReport {
  bool direct_sum = false;
  bool orthogonality = false;
  bool flow_invariant = false;
  bool agree = false;
  double direct_sum_residual = 0.0;
  double orthogonality_residual = 0.0;
  double flow_residual = 0.0;
};

SplitReport split_check(const StandardSubspace& v, const RealSubspaced& v1,
                        const std::vector<double>& times = {0.3, -0.7, 1.1}, double tol = 1e-8);

// V = g R^d for a complex-linear invertible g.
StandardSubspace standard_from_complex(const Eigen::MatrixXcd& g);

// g R^d with g = U1 diag(e^s) U2, s uniform in [-spread, spread].
StandardSubspace random_standard(Rng& rng, int d, double spread = 1.0);

// (P, conjugation) with P = exp(iA), A real skew: a modular pair by construction.
std::pair<RLOperatord, RLOperatord> random_modular_pair(Rng& rng, int d, double scale = 1.0);

}  // namespace modkit

#endif
