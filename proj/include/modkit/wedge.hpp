#ifndef MODKIT_WEDGE_HPP
#define MODKIT_WEDGE_HPP

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "modkit/error.hpp"
#include "modkit/random.hpp"

namespace modkit {

// Minkowski space R^{1,d-1} with [x, y] = x0 y0 - sum xi yi.
double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
Eigen::MatrixXd minkowski_metric(int d);
Eigen::VectorXd lightlike_plus(int d);   // e0 + e1
Eigen::VectorXd lightlike_minus(int d);  // e0 - e1

bool in_future_cone(const Eigen::VectorXd& x, bool closed = false, double tol = 1e-12);

// x -> a x + b
struct PoincareElement {
  Eigen::VectorXd translation;
  Eigen::MatrixXd lorentz;

  static PoincareElement identity(int d);
  static PoincareElement translate(const Eigen::VectorXd& b);
  static PoincareElement linear(const Eigen::MatrixXd& a);
  static PoincareElement boost(int d, double s);  // exp(s b0), b0 = E10 + E01

  int dim() const { return static_cast<int>(translation.size()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return lorentz * x + translation; }
  PoincareElement operator*(const PoincareElement& o) const;
  PoincareElement inverse() const;
  double metric_residual() const;  // ||a^T eta a - eta||
  bool proper() const { return lorentz.determinant() > 0.0; }
  bool orthochronous() const { return lorentz(0, 0) > 0.0; }
};

double poincare_distance(const PoincareElement& a, const PoincareElement& b);

PoincareElement reflection_r01(int d);   // diag(-1, -1, 1, ..., 1)
PoincareElement time_reversal(int d);    // diag(-1, 1, ..., 1), stabilizes W_R

// Random Lorentz transformation: rotation times boost, optionally composed with
// time reversal and a spatial reflection.
Eigen::MatrixXd random_lorentz(Rng& rng, int d, double max_rapidity = 1.0, bool orthochronous = true, bool proper = true);
PoincareElement random_poincare(Rng& rng, int d);
// Element of the stabilizer of W_R: boost, rotation of e2.., edge translation, optional time reversal.
PoincareElement random_stabilizer(Rng& rng, int d, bool allow_time_reversal = true);

// W = g W_R with W_R = {x1 > |x0|}.
struct Wedge {
  PoincareElement frame;

  static Wedge right(int d);
  int dim() const { return frame.dim(); }
  // slack > 0 accepts points within slack * (1 + |x|) of the boundary
  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;
  std::vector<Eigen::VectorXd> sample(Rng& rng, int count, double radius = 3.0) const;
};

enum class WedgeOrder { Equal, Subset, Superset, Other };
const char* to_string(WedgeOrder o);

bool wedge_includes(const Wedge& a, const Wedge& b, double tol = 1e-9);  // a ⊆ b
WedgeOrder wedge_relation(const Wedge& a, const Wedge& b, double tol = 1e-9);
// A point of a outside the closure of b, if one is found.
std::optional<Eigen::VectorXd> wedge_witness(const Wedge& a, const Wedge& b, Rng& rng, int attempts = 10000);

Wedge causal_complement(const Wedge& w);
PoincareElement wedge_reflection(const Wedge& w);

// t -> frame exp(sign log|t| b0) R01^{[t<0]} frame^{-1}
struct WedgeHom {
  PoincareElement frame;
  int sign = 1;

  PoincareElement operator()(double t) const;
  WedgeHom dual() const { return {frame, -sign}; }
};

WedgeHom wedge_hom(const Wedge& w);
PoincareElement gamma(const Wedge& w, double t);
// gamma^g, or its dual; g must be proper.
WedgeHom bgl_transport(const WedgeHom& h, const PoincareElement& g, bool dual);
// Max distance of evaluations on a fixed set of sample points of R^x.
double hom_distance(const WedgeHom& a, const WedgeHom& b);
double hom_residual(const WedgeHom& h);  // homomorphism defect on sampled pairs

// Double cone (x - V+) ∩ (y + V+) for x - y in V+.
struct DoubleCone {
  Eigen::VectorXd top, bottom;
  bool closed = false;
};
struct DoubleConeComplement {
  DoubleCone cone;
};
struct PointSet {
  std::vector<Eigen::VectorXd> points;
};
struct PointSetComplement {
  PointSet set;
};

class Region {
 public:
  using Variant = std::variant<Wedge, DoubleCone, DoubleConeComplement, PointSet, PointSetComplement>;
  Region(Variant v);

  const Variant& value() const { return v_; }
  const char* kind() const;
  int dim() const;
  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;
  // Bounded rejection sampler.
  std::vector<Eigen::VectorXd> sample(Rng& rng, int count, double radius = 3.0) const;

 private:
  Variant v_;
};

Region double_cone(const Eigen::VectorXd& top, const Eigen::VectorXd& bottom, bool closed = false);
Region causal_complement(const Region& r);
// a ⊆ b by closed-form rules; throws InvalidParameters for unsupported pairs.
bool region_includes(const Region& a, const Region& b);
bool spacelike(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct OrderReport {
  int pairs = 0;
  int a1_checked = 0;
  int a1_violations = 0;
  int a2_checked = 0;
  int a2_violations = 0;
  int double_violations = 0;  // l <= l''
  int triple_violations = 0;  // l' = l'''
  int sampling_contradictions = 0;
};

OrderReport order_axiom_check(const std::vector<Region>& regions, Rng& rng, int samples = 200);

struct WedgeConsistencyReport {
  int pairs = 0;
  int inclusions = 0;
  int denials = 0;
  int contradictions = 0;  // a sampled point violates an asserted inclusion
  int missing_witnesses = 0;
};

// Compares W_R with g W_R in both directions for each g.
WedgeConsistencyReport wedge_consistency(const std::vector<PoincareElement>& elements, Rng& rng, int samples = 10000);

}  // namespace modkit

#endif
