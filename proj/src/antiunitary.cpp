#include "modkit/antiunitary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace modkit {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd identity_c(int n) { return Eigen::MatrixXcd::Identity(n, n); }

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

// Real kernel of a real-linear map on complex n x n matrices, sampled on the 2n^2 unit inputs.
template <typename F>
std::vector<Eigen::MatrixXcd> real_kernel(int n, F&& apply, double tol) {
  const int unknowns = 2 * n * n;
  Eigen::MatrixXd cols;
  for (int k = 0; k < unknowns; ++k) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    const int idx = k % (n * n);
    x(idx % n, idx / n) = k < n * n ? cd(1.0, 0.0) : cd(0.0, 1.0);
    Eigen::VectorXd y = apply(x);
    if (k == 0) cols.resize(y.size(), unknowns);
    cols.col(k) = y;
  }
  Eigen::MatrixXd ker = null_space(cols, tol);
  std::vector<Eigen::MatrixXcd> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Eigen::MatrixXcd m(n, n);
    for (int idx = 0; idx < n * n; ++idx) m(idx % n, idx / n) = cd(ker(idx, c), ker(n * n + idx, c));
    out.push_back(m);
  }
  return out;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); }

std::vector<Eigen::MatrixXcd> complex_kernel(const Eigen::MatrixXcd& stacked, Eigen::Index n, double tol) {
  Eigen::MatrixXcd ker = null_space(stacked, tol);
  std::vector<Eigen::MatrixXcd> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) out.push_back(unvec(ker.col(c), n));
  return out;
}

// Intertwiners X with X A_g = B_g X for g in the list.
std::vector<Eigen::MatrixXcd> linear_intertwiners(const std::vector<const Eigen::MatrixXcd*>& a,
                                                  const std::vector<const Eigen::MatrixXcd*>& b, double tol) {
  const Eigen::Index n = a.front()->rows();
  Eigen::MatrixXcd stacked(a.size() * n * n, n * n);
  for (std::size_t g = 0; g < a.size(); ++g)
    stacked.middleRows(g * n * n, n * n) = kron(Eigen::MatrixXcd(a[g]->transpose()), identity_c(n)) -
                                            kron(identity_c(n), *b[g]);
  return complex_kernel(stacked, n, tol);
}

int complex_rank(const std::vector<Eigen::MatrixXcd>& mats, double tol = 1e-9) {
  if (mats.empty()) return 0;
  Eigen::MatrixXcd cols(mats.front().size(), mats.size());
  for (std::size_t k = 0; k < mats.size(); ++k) cols.col(k) = vec(mats[k]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, sv(0))) ++r;
  return r;
}

}  // namespace

int GroupPair::identity() const {
  for (int a = 0; a < order; ++a) {
    bool ok = true;
    for (int b = 0; b < order && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
    if (ok) return a;
  }
  throw Error(ErrorKind::InvalidParameters, "table has no identity");
}

int GroupPair::inverse(int g) const {
  const int e = identity();
  for (int h = 0; h < order; ++h)
    if (table[g][h] == e) return h;
  throw Error(ErrorKind::InvalidParameters, "element without inverse");
}

std::vector<int> GroupPair::g1_elements() const {
  std::vector<int> out;
  for (int g = 0; g < order; ++g)
    if (in_g1[g]) out.push_back(g);
  return out;
}

void GroupPair::validate() const {
  if (order <= 0 || static_cast<int>(table.size()) != order || static_cast<int>(in_g1.size()) != order)
    throw Error(ErrorKind::InvalidParameters, "table size mismatch");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != order) throw Error(ErrorKind::InvalidParameters, "ragged table");
    std::vector<bool> seen(order, false);
    for (int x : row) {
      if (x < 0 || x >= order || seen[x]) throw Error(ErrorKind::InvalidParameters, "row is not a permutation");
      seen[x] = true;
    }
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::InvalidParameters, "table is not associative");
  identity();
  int count = 0;
  for (int g = 0; g < order; ++g) {
    if (!in_g1[g]) continue;
    ++count;
    for (int h = 0; h < order; ++h)
      if (in_g1[h] && !in_g1[table[g][h]]) throw Error(ErrorKind::InvalidParameters, "G1 not closed");
  }
  if (2 * count != order) throw Error(ErrorKind::InvalidParameters, "G1 does not have index 2");
  if (r < 0 || r >= order || in_g1[r]) throw Error(ErrorKind::InvalidParameters, "r must lie outside G1");
  for (int g : g1_elements())
    if (!in_g1[tau(g)]) throw Error(ErrorKind::InvalidParameters, "conjugation by r leaves G1");
}

GroupPair cyclic_pair(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "n >= 1");
  GroupPair p;
  p.name = "Z" + std::to_string(2 * n);
  p.order = 2 * n;
  p.table.assign(p.order, std::vector<int>(p.order));
  p.in_g1.assign(p.order, false);
  for (int a = 0; a < p.order; ++a) {
    p.in_g1[a] = a % 2 == 0;
    for (int b = 0; b < p.order; ++b) p.table[a][b] = (a + b) % p.order;
  }
  p.r = 1;
  return p;
}

GroupPair dihedral_pair(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameters, "n >= 2");
  GroupPair p;
  p.name = "D" + std::to_string(n);
  p.order = 2 * n;
  p.table.assign(p.order, std::vector<int>(p.order));
  p.in_g1.assign(p.order, false);
  // index a + n b stands for rho^a sigma^b
  for (int x = 0; x < p.order; ++x) {
    const int a = x % n, b = x / n;
    p.in_g1[x] = b == 0;
    for (int y = 0; y < p.order; ++y) {
      const int c = y % n, d = y / n;
      const int rot = ((a + (b ? -c : c)) % n + n) % n;
      p.table[x][y] = rot + n * ((b + d) % 2);
    }
  }
  p.r = n;
  return p;
}

GroupPair product_pair(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "n >= 1");
  GroupPair p;
  p.name = "Z" + std::to_string(n) + "xZ2";
  p.order = 2 * n;
  p.table.assign(p.order, std::vector<int>(p.order));
  p.in_g1.assign(p.order, false);
  for (int x = 0; x < p.order; ++x) {
    p.in_g1[x] = x < n;
    for (int y = 0; y < p.order; ++y) p.table[x][y] = (x % n + y % n) % n + n * ((x / n + y / n) % 2);
  }
  p.r = n;
  return p;
}

GroupPair quaternion_pair() {
  // unit u in {1, i, j, k}, sign s: index u + 4 s; then b in Z_2: q + 8 b
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  GroupPair p;
  p.name = "Q8xZ2";
  p.order = 16;
  p.table.assign(16, std::vector<int>(16));
  p.in_g1.assign(16, false);
  for (int x = 0; x < 16; ++x) {
    p.in_g1[x] = x < 8;
    for (int y = 0; y < 16; ++y) {
      const int qx = x % 8, qy = y % 8;
      const int u = unit[qx % 4][qy % 4];
      const int s = (qx / 4 + qy / 4 + sign[qx % 4][qy % 4]) % 2;
      p.table[x][y] = u + 4 * s + 8 * ((x / 8 + y / 8) % 2);
    }
  }
  p.r = 8;
  return p;
}

GroupPair preset_pair(const std::string& name) {
  auto suffix = [&](const std::string& prefix) { return std::stoi(name.substr(prefix.size())); };
  if (name == "z2") return cyclic_pair(1);
  if (name == "z4") return cyclic_pair(2);
  if (name == "z8") return cyclic_pair(4);
  if (name == "q8xz2") return quaternion_pair();
  if (name == "s3") return dihedral_pair(3);
  if (name.rfind("dihedral", 0) == 0) return dihedral_pair(suffix("dihedral"));
  if (name.rfind("product", 0) == 0) return product_pair(suffix("product"));
  if (name.rfind("cyclic", 0) == 0) return cyclic_pair(suffix("cyclic"));
  throw Error(ErrorKind::UsageError, "unknown preset '" + name + "'");
}

int UnitaryRep::dim() const {
  for (const auto& m : mats)
    if (m.size() > 0) return static_cast<int>(m.rows());
  return 0;
}

UnitaryRep generate_unitary_rep(const GroupPair& pair, const std::vector<std::pair<int, Eigen::MatrixXcd>>& gens) {
  const int e = pair.identity();
  int n = gens.empty() ? 1 : static_cast<int>(gens.front().second.rows());
  UnitaryRep u;
  u.mats.assign(pair.order, Eigen::MatrixXcd());
  u.mats[e] = identity_c(n);
  std::deque<int> queue{e};
  while (!queue.empty()) {
    const int g = queue.front();
    queue.pop_front();
    for (const auto& [h, m] : gens) {
      if (!pair.in_g1[h]) throw Error(ErrorKind::InvalidRep, "generator outside G1");
      const int gh = pair.mul(g, h);
      Eigen::MatrixXcd val = u.mats[g] * m;
      if (u.mats[gh].size() == 0) {
        u.mats[gh] = val;
        queue.push_back(gh);
      } else if ((u.mats[gh] - val).norm() > 1e-9) {
        throw Error(ErrorKind::InvalidRep, "generator images violate a relation");
      }
    }
  }
  for (int g : pair.g1_elements())
    if (u.mats[g].size() == 0) throw Error(ErrorKind::InvalidRep, "generators do not reach all of G1");
  return u;
}

UnitaryRep cyclic_character(const GroupPair& pair, int gen, int k) {
  int m = 1;
  for (int x = gen; x != pair.identity(); x = pair.mul(x, gen)) ++m;
  Eigen::MatrixXcd z(1, 1);
  z(0, 0) = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  return generate_unitary_rep(pair, {{gen, z}});
}

UnitaryRep quaternion_irrep(const GroupPair& pair) {
  Eigen::MatrixXcd qi(2, 2), qj(2, 2);
  qi << cd(0, 1), 0, 0, cd(0, -1);
  qj << 0, 1, -1, 0;
  return generate_unitary_rep(pair, {{1, qi}, {2, qj}});
}

UnitaryRep conjugate_rep(const UnitaryRep& u, const Eigen::MatrixXcd& w) {
  UnitaryRep out = u;
  for (auto& m : out.mats)
    if (m.size() > 0) m = w.adjoint() * m * w;
  return out;
}

double unitary_rep_residual(const GroupPair& pair, const UnitaryRep& u) {
  double res = 0.0;
  const auto g1 = pair.g1_elements();
  const int n = u.dim();
  for (int g : g1) {
    if (u.mats[g].rows() != n || u.mats[g].cols() != n) return std::numeric_limits<double>::infinity();
    res = std::max(res, (u.mats[g].adjoint() * u.mats[g] - identity_c(n)).norm());
    for (int h : g1) res = std::max(res, (u.mats[g] * u.mats[h] - u.mats[pair.mul(g, h)]).norm());
  }
  return res;
}

UnitaryRep AntiunitaryRep::restriction() const {
  UnitaryRep u;
  u.mats.assign(pair.order, Eigen::MatrixXcd());
  for (int g : pair.g1_elements()) u.mats[g] = ops[g].complex_matrix();
  return u;
}

AntiunitaryRep generate_antiunitary_rep(const GroupPair& pair, const std::vector<std::pair<int, RLOperatord>>& gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidRep, "no generators");
  const int e = pair.identity();
  const int n = gens.front().second.dim_c();
  std::vector<bool> set(pair.order, false);
  AntiunitaryRep rep{pair, std::vector<RLOperatord>(pair.order)};
  rep.ops[e] = RLOperatord::identity(n);
  set[e] = true;
  std::deque<int> queue{e};
  while (!queue.empty()) {
    const int g = queue.front();
    queue.pop_front();
    for (const auto& [h, op] : gens) {
      const int gh = pair.mul(g, h);
      RLOperatord val = rep.ops[g] * op;
      if (!set[gh]) {
        rep.ops[gh] = val;
        set[gh] = true;
        queue.push_back(gh);
      } else if (operator_distance(rep.ops[gh], val) > 1e-9) {
        throw Error(ErrorKind::InvalidRep, "generator images violate a relation");
      }
    }
  }
  if (std::find(set.begin(), set.end(), false) != set.end())
    throw Error(ErrorKind::InvalidRep, "generators do not reach all of G");
  validate_rep(rep, 1e-9);
  return rep;
}

double homomorphism_residual(const AntiunitaryRep& rep) {
  double res = 0.0;
  for (int g = 0; g < rep.pair.order; ++g)
    for (int h = 0; h < rep.pair.order; ++h)
      res = std::max(res, ((rep.ops[g] * rep.ops[h]).matrix() - rep.ops[rep.pair.mul(g, h)].matrix()).norm());
  return res;
}

void validate_rep(const AntiunitaryRep& rep, double tol) {
  if (static_cast<int>(rep.ops.size()) != rep.pair.order) throw Error(ErrorKind::InvalidRep, "wrong number of operators");
  const int n = rep.dim();
  for (int g = 0; g < rep.pair.order; ++g) {
    const RLOperatord& op = rep.ops[g];
    if (op.dim_c() != n) throw Error(ErrorKind::InvalidRep, "dimension mismatch");
    const double lin = rep.pair.in_g1[g] ? op.commutator_defect() : op.anticommutator_defect();
    if (lin > tol) throw Error(ErrorKind::InvalidRep, "element " + std::to_string(g) + " has the wrong linearity");
    if ((op.matrix().transpose() * op.matrix() - Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() > tol)
      throw Error(ErrorKind::InvalidRep, "element " + std::to_string(g) + " is not isometric");
  }
  const double res = homomorphism_residual(rep);
  if (res > tol) throw Error(ErrorKind::InvalidRep, "homomorphism residual " + std::to_string(res));
}

const char* to_string(CommutantType t) {
  switch (t) {
    case CommutantType::Real: return "R";
    case CommutantType::Complex: return "C";
    case CommutantType::Quaternionic: return "H";
    default: return "reducible";
  }
}

const char* to_string(IrrepType t) {
  switch (t) {
    case IrrepType::Real: return "real";
    case IrrepType::Complex: return "complex";
    default: return "quaternionic";
  }
}

CommutantReport commutant_classify(const AntiunitaryRep& rep) {
  validate_rep(rep, 1e-9);
  const int n = rep.dim();
  CommutantReport out;
  out.basis = real_kernel(
      n,
      [&](const Eigen::MatrixXcd& a) {
        const Eigen::MatrixXd ar = realify<double>(a);
        Eigen::VectorXd y(rep.pair.order * 4 * n * n);
        for (int g = 0; g < rep.pair.order; ++g)
          y.segment(g * 4 * n * n, 4 * n * n) = flatten(ar * rep.ops[g].matrix() - rep.ops[g].matrix() * ar);
        return y;
      },
      1e-9);
  out.real_dim = static_cast<int>(out.basis.size());

  Eigen::MatrixXd herm(2 * n * n, out.basis.size());
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    Eigen::MatrixXcd h = (out.basis[k] + out.basis[k].adjoint()) / 2.0;
    Eigen::VectorXcd v = vec(h);
    herm.col(k) << v.real(), v.imag();
  }
  out.hermitian_dim = out.basis.empty() ? 0 : static_cast<int>(out.basis.size() - null_space(herm, 1e-9).cols());

  UnitaryRep u = rep.restriction();
  std::vector<const Eigen::MatrixXcd*> mats;
  for (int g : rep.pair.g1_elements()) mats.push_back(&u.mats[g]);
  std::vector<Eigen::MatrixXcd> g1 = linear_intertwiners(mats, mats, 1e-9);
  out.g1_complex_dim = static_cast<int>(g1.size());

  const int span_dim = complex_rank(out.basis);
  double resid = 0.0;
  if (!out.basis.empty() && !g1.empty()) {
    Eigen::MatrixXcd cols(n * n, out.basis.size());
    for (std::size_t k = 0; k < out.basis.size(); ++k) cols.col(k) = vec(out.basis[k]);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n * n, span_dim);
    for (const auto& m : g1) resid = std::max(resid, (vec(m) - q * (q.adjoint() * vec(m))).norm());
  }
  out.complexification_residual = resid;
  out.complexification = span_dim == out.real_dim && out.real_dim == out.g1_complex_dim && resid < 1e-8;

  if (out.hermitian_dim == 1) {
    switch (out.real_dim) {
      case 1: out.type = CommutantType::Real; break;
      case 2: out.type = CommutantType::Complex; break;
      case 4: out.type = CommutantType::Quaternionic; break;
      default: out.type = CommutantType::Reducible;
    }
  }
  return out;
}

std::vector<Eigen::MatrixXcd> antilinear_intertwiners(const GroupPair& pair, const UnitaryRep& u, double tol) {
  const auto g1 = pair.g1_elements();
  const Eigen::Index n = u.dim();
  Eigen::MatrixXcd stacked(g1.size() * n * n, n * n);
  for (std::size_t k = 0; k < g1.size(); ++k) {
    const int g = g1[k];
    stacked.middleRows(k * n * n, n * n) = kron(Eigen::MatrixXcd(u.mats[g].conjugate().transpose()), identity_c(n)) -
                                           kron(identity_c(n), u.mats[pair.tau(g)]);
  }
  return complex_kernel(stacked, n, tol);
}

int commutant_dim_g1(const GroupPair& pair, const UnitaryRep& u, double tol) {
  std::vector<const Eigen::MatrixXcd*> mats;
  for (int g : pair.g1_elements()) mats.push_back(&u.mats[g]);
  return static_cast<int>(linear_intertwiners(mats, mats, tol).size());
}

TypeReport classify_type(const GroupPair& pair, const UnitaryRep& u) {
  if (unitary_rep_residual(pair, u) > 1e-9) throw Error(ErrorKind::InvalidRep, "not a unitary representation of G1");
  if (commutant_dim_g1(pair, u) != 1) throw Error(ErrorKind::NotIrreducible, "commutant of U is not C");
  std::vector<Eigen::MatrixXcd> sols = antilinear_intertwiners(pair, u);
  TypeReport out;
  out.kernel_dim = static_cast<int>(sols.size());
  if (sols.empty()) {
    out.type = IrrepType::Complex;
    return out;
  }
  if (sols.size() > 1) throw Error(ErrorKind::NotIrreducible, "antilinear intertwiner is not unique");
  const int n = u.dim();
  Eigen::MatrixXcd x = sols.front();
  const double lambda = (x * x.adjoint()).trace().real() / n;
  x /= std::sqrt(lambda);
  const Eigen::MatrixXcd phi2 = x * x.conjugate();
  const Eigen::MatrixXcd& ur2 = u.mats[pair.mul(pair.r, pair.r)];
  const double s = (phi2 * ur2.adjoint()).trace().real() / n;
  out.sign = s >= 0 ? 1.0 : -1.0;
  out.sign_residual = (phi2 - out.sign * ur2).norm();
  out.phi = x;
  out.has_witness = true;
  out.type = out.sign > 0 ? IrrepType::Real : IrrepType::Quaternionic;
  return out;
}

FourthRoot fourth_root_normalize(const GroupPair& pair, const UnitaryRep& u, const Eigen::MatrixXcd& phi) {
  for (int g : pair.g1_elements())
    if (pair.tau(pair.tau(g)) != g) throw Error(ErrorKind::InvalidParameters, "tau is not an involution on G1");
  const Eigen::Index n = phi.rows();
  const Eigen::MatrixXcd phi2 = phi * phi.conjugate();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(phi2);
  const Eigen::MatrixXcd& q = schur.matrixU();
  Eigen::VectorXcd a(n);
  FourthRoot out;
  for (Eigen::Index i = 0; i < n; ++i) {
    const cd t = schur.matrixT()(i, i);
    if (std::abs(t + 1.0) < 1e-8) {
      a(i) = 1.0;
      ++out.minus_dim;
    } else {
      a(i) = std::sqrt(t);
    }
  }
  Eigen::MatrixXcd ainv = q * a.cwiseInverse().asDiagonal() * q.adjoint();
  out.j = ainv * phi;
  Eigen::MatrixXcd j2 = out.j * out.j.conjugate();
  out.fourth_power_residual = (j2 * j2 - identity_c(static_cast<int>(n))).norm();
  for (int g : pair.g1_elements())
    out.intertwining_residual =
        std::max(out.intertwining_residual, (out.j * u.mats[g].conjugate() - u.mats[pair.tau(g)] * out.j).norm());
  return out;
}

Extension extend_representation(const GroupPair& pair, const UnitaryRep& u, Rng& rng) {
  pair.validate();
  if (unitary_rep_residual(pair, u) > 1e-9) throw Error(ErrorKind::InvalidRep, "not a unitary representation of G1");
  const int n = u.dim();
  const int r2 = pair.mul(pair.r, pair.r);
  const int rinv = pair.inverse(pair.r);

  std::vector<const Eigen::MatrixXcd*> mats;
  for (int g : pair.g1_elements()) mats.push_back(&u.mats[g]);
  std::vector<Eigen::MatrixXcd> comm = linear_intertwiners(mats, mats, 1e-9);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& c : comm) h += rng.normal() * (c + c.adjoint()) + rng.normal() * cd(0, 1) * (c - c.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double gap = 1e-6 * std::max(1.0, ev.cwiseAbs().maxCoeff());

  Extension out;
  std::vector<Eigen::MatrixXcd> blocks;
  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && ev(end) - ev(end - 1) < gap) ++end;
    blocks.push_back(es.eigenvectors().middleCols(start, end - start));
    out.block_dims.push_back(end - start);
    start = end;
  }

  bool all_real = true;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& w : blocks) {
    TypeReport t;
    try {
      t = classify_type(pair, conjugate_rep(u, w));
    } catch (const Error&) {
      all_real = false;
      break;
    }
    if (t.type != IrrepType::Real) {
      all_real = false;
      break;
    }
    x += w * t.phi * w.transpose();
  }

  AntiunitaryRep rep{pair, std::vector<RLOperatord>(pair.order)};
  if (all_real) {
    const RLOperatord phi = RLOperatord::antilinear_from_complex(x);
    for (int g = 0; g < pair.order; ++g) {
      if (pair.in_g1[g])
        rep.ops[g] = RLOperatord::from_complex(u.mats[g]);
      else
        rep.ops[g] = RLOperatord::from_complex(u.mats[pair.mul(g, rinv)]) * phi;
    }
  } else {
    out.doubled = true;
    auto doubled = [&](int g) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      m.topLeftCorner(n, n) = u.mats[g];
      m.bottomRightCorner(n, n) = u.mats[pair.tau(g)].conjugate();
      return m;
    };
    // J(v, w) = (conj w, conj(U_{r^2} v))
    Eigen::MatrixXcd jm = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    jm.topRightCorner(n, n) = identity_c(n);
    jm.bottomLeftCorner(n, n) = u.mats[r2].conjugate();
    const RLOperatord j = RLOperatord::antilinear_from_complex(jm);
    for (int g = 0; g < pair.order; ++g) {
      if (pair.in_g1[g])
        rep.ops[g] = RLOperatord::from_complex(doubled(g));
      else
        rep.ops[g] = RLOperatord::from_complex(doubled(pair.mul(g, rinv))) * j;
    }
  }
  validate_rep(rep, 1e-8);
  out.rep = std::move(rep);
  return out;
}

EquivalenceReport are_equivalent(const AntiunitaryRep& a, const AntiunitaryRep& b, Rng& rng) {
  if (a.dim() != b.dim() || a.pair.order != b.pair.order)
    throw Error(ErrorKind::DimensionMismatch, "representations of different size");
  const int n = a.dim();
  EquivalenceReport out;

  auto invertible = [](const Eigen::MatrixXcd& t) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
    const auto& sv = svd.singularValues();
    return sv.size() > 0 && sv(sv.size() - 1) > 1e-8 * sv(0);
  };
  auto combine = [&](const std::vector<Eigen::MatrixXcd>& basis) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& m : basis) t += rng.normal() * m;
    return t;
  };

  std::vector<Eigen::MatrixXcd> full = real_kernel(
      n,
      [&](const Eigen::MatrixXcd& psi) {
        const Eigen::MatrixXd pr = realify<double>(psi);
        Eigen::VectorXd y(a.pair.order * 4 * n * n);
        for (int g = 0; g < a.pair.order; ++g)
          y.segment(g * 4 * n * n, 4 * n * n) = flatten(pr * a.ops[g].matrix() - b.ops[g].matrix() * pr);
        return y;
      },
      1e-9);
  if (!full.empty()) {
    Eigen::MatrixXcd t = combine(full);
    if (invertible(t)) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
      out.intertwiner = svd.matrixU() * svd.matrixV().adjoint();
      const Eigen::MatrixXd wr = realify<double>(out.intertwiner);
      for (int g = 0; g < a.pair.order; ++g)
        out.residual = std::max(out.residual, (wr * a.ops[g].matrix() - b.ops[g].matrix() * wr).norm());
      out.equivalent = out.residual < 1e-8;
    }
  }

  UnitaryRep ua = a.restriction(), ub = b.restriction();
  std::vector<const Eigen::MatrixXcd*> ma, mb;
  for (int g : a.pair.g1_elements()) {
    ma.push_back(&ua.mats[g]);
    mb.push_back(&ub.mats[g]);
  }
  std::vector<Eigen::MatrixXcd> part = linear_intertwiners(ma, mb, 1e-9);
  out.equivalent_g1 = !part.empty() && invertible(combine(part));
  out.agree = out.equivalent == out.equivalent_g1;
  return out;
}

}  // namespace modkit
