#ifndef MODKIT_ANTIUNITARY_HPP
#define MODKIT_ANTIUNITARY_HPP

#include <string>
#include <utility>
#include <vector>

#include "modkit/core.hpp"
#include "modkit/random.hpp"

namespace modkit {

// Finite group by multiplication table with an index-2 subgroup G1 and r outside it.
struct GroupPair {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> table;  // table[a][b] = ab
  std::vector<bool> in_g1;
  int r = 0;

  int identity() const;
  int inverse(int g) const;
  int mul(int a, int b) const { return table[a][b]; }
  int tau(int g) const { return mul(mul(r, g), inverse(r)); }
  std::vector<int> g1_elements() const;
  // Throws InvalidParameters unless the table is a group, G1 has index 2, r is outside G1.
  void validate() const;
};

GroupPair cyclic_pair(int n);      // Z_{2n} ⊃ 2Z_{2n}, r = 1
GroupPair dihedral_pair(int n);    // D_n ⊃ rotations, r = reflection
GroupPair product_pair(int n);     // Z_n × Z_2 ⊃ Z_n × {0}, r = (0, 1)
GroupPair quaternion_pair();       // Q8 × Z_2 ⊃ Q8

// Named presets: "z2", "z4", "z8", "dihedral3", "dihedral<n>", "product<n>", "q8xz2".
GroupPair preset_pair(const std::string& name);

// Element-indexed unitary matrices on G1; entries outside G1 are empty.
struct UnitaryRep {
  std::vector<Eigen::MatrixXcd> mats;
  int dim() const;
};

// Closes generator images over G1; throws InvalidRep on inconsistency.
UnitaryRep generate_unitary_rep(const GroupPair& pair, const std::vector<std::pair<int, Eigen::MatrixXcd>>& gens);

// Character k of a cyclic G1 generated by gen.
UnitaryRep cyclic_character(const GroupPair& pair, int gen, int k);
// The two-dimensional irreducible representation of Q8 inside the Q8 × Z_2 preset.
UnitaryRep quaternion_irrep(const GroupPair& pair);
UnitaryRep conjugate_rep(const UnitaryRep& u, const Eigen::MatrixXcd& w);  // w* U w
double unitary_rep_residual(const GroupPair& pair, const UnitaryRep& u);

struct AntiunitaryRep {
  GroupPair pair;
  std::vector<RLOperatord> ops;
  int dim() const { return ops.empty() ? 0 : ops.front().dim_c(); }
  UnitaryRep restriction() const;
};

AntiunitaryRep generate_antiunitary_rep(const GroupPair& pair, const std::vector<std::pair<int, RLOperatord>>& gens);

double homomorphism_residual(const AntiunitaryRep& rep);
// Throws InvalidRep for broken homomorphism, wrong linearity or non-orthogonal matrices.
void validate_rep(const AntiunitaryRep& rep, double tol = 1e-10);

enum class CommutantType { Real, Complex, Quaternionic, Reducible };
const char* to_string(CommutantType t);

struct CommutantReport {
  std::vector<Eigen::MatrixXcd> basis;  // real basis of U_G', as complex matrices
  int real_dim = 0;
  int hermitian_dim = 0;     // dim of the self-adjoint part
  int g1_complex_dim = 0;    // dim over C of U_{G1}'
  bool complexification = false;
  double complexification_residual = 0.0;
  CommutantType type = CommutantType::Reducible;
};

CommutantReport commutant_classify(const AntiunitaryRep& rep);

enum class IrrepType { Real, Complex, Quaternionic };
const char* to_string(IrrepType t);

struct TypeReport {
  IrrepType type = IrrepType::Complex;
  bool has_witness = false;
  Eigen::MatrixXcd phi;   // Phi v = phi * conj(v), normalized with phi phi* = 1
  double sign = 0.0;      // Phi^2 = sign * U_{r^2}
  double sign_residual = 0.0;
  int kernel_dim = 0;     // complex dimension of the intertwiner solve
};

// Complex solutions X of X conj(U_g) = U_{tau(g)} X over G1.
std::vector<Eigen::MatrixXcd> antilinear_intertwiners(const GroupPair& pair, const UnitaryRep& u, double tol = 1e-9);
int commutant_dim_g1(const GroupPair& pair, const UnitaryRep& u, double tol = 1e-9);

TypeReport classify_type(const GroupPair& pair, const UnitaryRep& u);

struct FourthRoot {
  Eigen::MatrixXcd j;  // antilinear J v = j conj(v)
  double fourth_power_residual = 0.0;
  double intertwining_residual = 0.0;
  int minus_dim = 0;   // dim ker(Phi^2 + 1)
};

// Normalizes any antilinear intertwiner to J with J^4 = 1; needs tau^2 = id on G1.
FourthRoot fourth_root_normalize(const GroupPair& pair, const UnitaryRep& u, const Eigen::MatrixXcd& phi);

struct Extension {
  AntiunitaryRep rep;
  bool doubled = false;
  std::vector<int> block_dims;
};

Extension extend_representation(const GroupPair& pair, const UnitaryRep& u, Rng& rng);

struct EquivalenceReport {
  bool equivalent = false;
  bool equivalent_g1 = false;
  bool agree = false;
  Eigen::MatrixXcd intertwiner;
  double residual = 0.0;
};

EquivalenceReport are_equivalent(const AntiunitaryRep& a, const AntiunitaryRep& b, Rng& rng);

}  // namespace modkit

#endif
