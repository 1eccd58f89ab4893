#include "modkit/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "modkit/affine.hpp"
#include "modkit/antiunitary.hpp"
#include "modkit/fock.hpp"
#include "modkit/wedge.hpp"

namespace modkit {

namespace {

using Vec = Eigen::VectorXd;

// Collects checks; residuals of the same name are folded into their maximum.
class Recorder {
 public:
  Recorder(Report& r, const SuiteOptions& o) : report_(r), opts_(o) {}

  void check(const std::string& group, const std::string& name, double residual, double tol,
             const std::string& provenance) {
    const double t = opts_.tol ? *opts_.tol : tol;
    for (auto& c : report_.checks)
      if (c.group == group && c.name == name) {
        const double worst = std::isfinite(residual) ? std::max(c.residual, residual) : residual;
        c = make_check(group, name, worst, t, provenance);
        return;
      }
    report_.checks.push_back(make_check(group, name, residual, t, provenance));
  }

  void flag(const std::string& group, const std::string& name, bool ok, const std::string& provenance) {
    for (auto& c : report_.checks)
      if (c.group == group && c.name == name) {
        if (!ok) c = make_flag(group, name, false, provenance);
        return;
      }
    report_.checks.push_back(make_flag(group, name, ok, provenance));
  }

 private:
  Report& report_;
  const SuiteOptions& opts_;
};

int trials_or(const SuiteOptions& o, int fallback) { return o.trials > 0 ? o.trials : fallback; }

Eigen::MatrixXd half_example() {
  Eigen::MatrixXd c(2, 2);
  c << 0.0, 0.5, -0.5, 0.0;
  return c;
}

std::vector<double> sorted_real_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < m.rows(); ++k) out.push_back(es.eigenvalues()(k).real());
  std::sort(out.begin(), out.end());
  return out;
}

StandardSubspace with_real_summand(Rng& rng, int d) {
  if (d == 1) return StandardSubspace(RealSubspaced::real_points(1));
  const StandardSubspace inner = random_standard(rng, d - 1);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
  g.topLeftCorner(d - 1, d - 1) = complexify_columns<double>(inner.basis());
  g(d - 1, d - 1) = 1.0;
  return standard_from_complex(g);
}

void standard_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  const int trials = trials_or(o, 200);
  if (o.dim < 0 || o.dim > 16) throw Error(ErrorKind::UsageError, "--dim must be in 1..16 for standard");
  const Rng master(o.seed);
  int with_fixed = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = master.split(static_cast<std::uint64_t>(trial));
    const int d = o.dim > 0 ? o.dim : rng.integer(1, 8);
    const bool real_part = trial % 4 == 3;
    const StandardSubspace v = real_part ? with_real_summand(rng, d) : random_standard(rng, d);
    const ModularTriple m = modular_objects(v);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * d, 2 * d);

    const Eigen::MatrixXd root = operator_function(m.delta, SpectralFunction::power(0.5)).matrix();
    const Eigen::MatrixXd s = m.j.matrix() * root;
    rec.check("bijection", "fix-distance", subspace_distance(RealSubspaced::span(s + id), v.space()), 1e-9,
              "identity");
    rec.check("bijection", "from-modular", subspace_distance(from_modular(m.delta, m.j).space(), v.space()), 1e-9,
              "identity");
    rec.check("modular-relation", "j-delta-j-delta", modular_relation_residual(m), 1e-9, "identity");
    rec.check("modular-relation", "j-involution", (m.j.matrix() * m.j.matrix() - id).norm(), 1e-9, "identity");

    const StandardSubspace vp = symplectic_complement(v);
    const ModularTriple mp = modular_objects(vp);
    rec.check("duality", "j-complement", operator_distance(mp.j, m.j), 1e-9, "identity");
    rec.check("duality", "delta-complement-inverse", (mp.delta.matrix() * m.delta.matrix() - id).norm(), 1e-9,
              "identity");
    rec.check("duality", "double-complement", subspace_distance(symplectic_complement(vp).space(), v.space()), 1e-9,
              "identity");
    rec.check("duality", "complement-is-jv", subspace_distance(vp.space(), v.space().mapped(m.j.matrix())), 1e-9,
              "identity");

    const RealSubspaced meet = subspace_intersection(v.space(), vp.space());
    const RealSubspaced eigen1 = RealSubspaced::span(null_space(m.delta.matrix() - id, 1e-8));
    const RealSubspaced fixed = subspace_intersection(v.space(), eigen1);
    rec.flag("factorial", "meet-dim-matches-eigenspace", meet.dim() == fixed.dim(), "oracle");
    rec.flag("factorial", "real-summand-detected", !real_part || meet.dim() >= 1, "oracle");
    if (meet.dim() == fixed.dim()) rec.check("factorial", "meet-distance", subspace_distance(meet, fixed), 1e-9, "oracle");
    if (meet.dim() > 0) ++with_fixed;
  }

  // closed-form example c = 1/2 through two independent paths
  {
    const StandardSubspace v = from_c(canonical_real_form(2), half_example());
    const ModularTriple m = modular_objects(v);
    const std::vector<double> polar = complex_spectrum(m.delta);
    const double err_polar = std::max(std::abs(polar[0] - 1.0 / 9.0), std::abs(polar[1] - 9.0));
    const std::complex<double> i(0.0, 1.0);
    const Eigen::MatrixXcd ic = i * half_example().cast<std::complex<double>>();
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd cayley = (one - ic) * (one + ic).inverse();
    const std::vector<double> formula = sorted_real_eigenvalues(cayley * cayley);
    const double err_formula = std::max(std::abs(formula[0] - 1.0 / 9.0), std::abs(formula[1] - 9.0));
    const Eigen::MatrixXcd root = operator_function(m.delta, SpectralFunction::power(0.5)).complex_matrix();
    rec.check("closed-form", "spectrum-polar", err_polar, 1e-10, "closed-form");
    rec.check("closed-form", "spectrum-formula", err_formula, 1e-10, "closed-form");
    rec.check("closed-form", "paths-agree", (root - cayley).norm(), 1e-10, "oracle");
    rep.data["closed_form_spectrum"] = polar;
  }

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = master.split(static_cast<std::uint64_t>(trials + trial));
    const int msz = o.dim > 0 ? std::min(o.dim, 8) : rng.integer(1, 8);
    const Eigen::MatrixXd a = rng.normal_matrix(msz, msz);
    const Eigen::MatrixXd dgen = 0.75 * (a - a.transpose());
    const FlowEmbedding e = flow_embedding(dgen);
    rec.check("flow", "generator-recovery", (recover_generator(e) - dgen).norm(), 1e-9, "identity");
    const ModularTriple mt = modular_objects(e.v);
    const Vec x = rng.normal_vector(msz);
    for (double t : {0.3, -0.3, 1.0, -1.0}) {
      const Vec lhs = modular_flow(mt, t).matrix() * (e.iota_real * x);
      const Eigen::MatrixXd rot = (t * dgen).exp();
      const Vec rhs = e.iota_real * (rot * x);
      rec.check("flow", "embedding-intertwines", (lhs - rhs).norm() / std::max(1.0, x.norm()), 1e-8, "oracle");
    }
  }
  rep.data["trials"] = trials;
  rep.data["instances_with_nontrivial_meet"] = with_fixed;
}

// Dimension of {X real : X I = I X, X U_g = U_g X} by a direct kernel count.
int brute_commutant_dim(const AntiunitaryRep& rep) {
  const int m = 2 * rep.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  std::vector<Eigen::MatrixXd> cons;
  cons.push_back(ComplexStructured(rep.dim()).matrix());
  for (const auto& op : rep.ops) cons.push_back(op.matrix());
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(cons.size()) * m * m, m * m);
  for (std::size_t k = 0; k < cons.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * m * m, m * m) =
        kron(Eigen::MatrixXd(cons[k].transpose()), id) - kron(id, cons[k]);
  return static_cast<int>(null_space(stacked, 1e-9).cols());
}

struct GroupCase {
  std::string preset;
  IrrepType irrep;
  CommutantType commutant;
  int real_dim;
};

const std::vector<GroupCase>& group_cases() {
  static const std::vector<GroupCase> cases{
      {"dihedral3", IrrepType::Real, CommutantType::Real, 1},
      {"product3", IrrepType::Complex, CommutantType::Complex, 2},
      {"q8xz2", IrrepType::Quaternionic, CommutantType::Quaternionic, 4},
  };
  return cases;
}

UnitaryRep irreducible_input(const GroupPair& pair, const std::string& preset) {
  if (preset == "q8xz2") return quaternion_irrep(pair);
  return cyclic_character(pair, 1, 1);
}

void group_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  const Rng master(o.seed);
  const int trials = trials_or(o, 5);
  Json classes = Json::object();
  int idx = 0;
  for (const GroupCase& gc : group_cases()) {
    if (!o.preset.empty() && o.preset != "convergence" && o.preset != gc.preset) {
      ++idx;
      continue;
    }
    const std::string grp = "type-" + gc.preset;
    const GroupPair pair = preset_pair(gc.preset);
    const UnitaryRep u = irreducible_input(pair, gc.preset);
    const TypeReport t = classify_type(pair, u);
    rec.flag(grp, "irrep-type", t.type == gc.irrep, "closed-form");
    Rng rng = master.split(static_cast<std::uint64_t>(1000 * idx));
    const Extension e = extend_representation(pair, u, rng);
    const CommutantReport c = commutant_classify(e.rep);
    const int brute = brute_commutant_dim(e.rep);
    rec.flag(grp, "commutant-type", c.type == gc.commutant, "closed-form");
    rec.check(grp, "commutant-dim-expected", std::abs(c.real_dim - gc.real_dim), 0.0, "closed-form");
    rec.check(grp, "commutant-dim-brute-force", std::abs(c.real_dim - brute), 0.0, "brute-force");
    rec.check(grp, "homomorphism", homomorphism_residual(e.rep), 1e-10, "identity");

    for (int trial = 0; trial < trials; ++trial) {
      Rng r1 = master.split(static_cast<std::uint64_t>(1000 * idx + 2 * trial + 1));
      Rng r2 = master.split(static_cast<std::uint64_t>(1000 * idx + 2 * trial + 2));
      // an independently built extension of a unitarily conjugated copy of the same input
      const Eigen::MatrixXcd w = r1.unitary(u.dim());
      const Extension a = extend_representation(pair, u, r1);
      const Extension b = extend_representation(pair, conjugate_rep(u, w), r2);
      const EquivalenceReport eq = are_equivalent(a.rep, b.rep, r2);
      rec.flag("extension-uniqueness", gc.preset + "-equivalent", eq.equivalent && eq.agree, "oracle");
      rec.check("extension-uniqueness", gc.preset + "-intertwiner", eq.residual, 1e-8, "identity");
    }
    classes[gc.preset] = {{"irrep", to_string(t.type)},
                          {"commutant", to_string(c.type)},
                          {"real_dim", c.real_dim},
                          {"brute_force_dim", brute},
                          {"doubled", e.doubled}};
    ++idx;
  }
  rep.data["classification"] = classes;
}

void vn_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  const Rng master(o.seed);
  const int kmax = o.dim > 0 ? std::min(o.dim, 4) : 4;
  for (int k = 1; k <= kmax; ++k) {
    Rng rng = master.split(static_cast<std::uint64_t>(k));
    const HsModel h = hs_model(random_density(rng, k));
    const TomitaReport r = tomita_modular(h.left, h.omega);
    rec.check("hilbert-schmidt", "delta-closed-form", (r.data.triple.delta.complex_matrix() - h.delta_closed).norm(),
              1e-8, "closed-form");
    rec.check("hilbert-schmidt", "j-closed-form", operator_distance(r.data.triple.j, h.j_closed), 1e-8, "closed-form");
    rec.check("hilbert-schmidt", "jmj-commutant", r.jmj_distance, 1e-8, "identity");
    const Eigen::MatrixXcd a = rng.complex_matrix(k, k);
    const Eigen::VectorXcd moved = r.data.triple.delta.complex_matrix() * vec_row_major(a);
    rec.check("hilbert-schmidt", "delta-acts-by-conjugation",
              (unvec_row_major(moved, k) - h.density * a * h.density.inverse()).norm() / (1.0 + a.norm()), 1e-8,
              "closed-form");
  }
  const int trials = trials_or(o, 50);
  const std::vector<std::vector<int>> shapes{{2, 1}, {1, 1, 2}, {3}, {1, 2}, {2, 2}};
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = master.split(static_cast<std::uint64_t>(100 + trial));
    const BlockInstance inst = random_block_algebra(rng, shapes[trial % shapes.size()]);
    const TomitaReport r = tomita_modular(inst.algebra, inst.omega);
    rec.check("block-algebras", "modular-invariance", r.flow_residual, 1e-8, "identity");
    rec.check("block-algebras", "jmj-commutant", r.jmj_distance, 1e-8, "identity");
    rec.check("block-algebras", "commutant-standard-space", r.commutant_space, 1e-8, "identity");
    rec.check("block-algebras", "center-conjugated", r.center_residual, 1e-8, "identity");
  }
  rep.data["block_trials"] = trials;
}

void fock_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  const Rng master(o.seed);
  if (o.fermi_dim < 0 || o.fermi_dim > 5) throw Error(ErrorKind::UsageError, "--fermi-dim must be in 1..5");
  const int lo = o.fermi_dim > 0 ? o.fermi_dim : 1, hi = o.fermi_dim > 0 ? o.fermi_dim : 4;
  const int per_dim = trials_or(o, 20);
  Json timing = Json::object();
  for (int d = lo; d <= hi; ++d) {
    const auto t0 = std::chrono::steady_clock::now();
    const FermiContext ctx(d);
    for (int trial = 0; trial < per_dim; ++trial) {
      Rng rng = master.split(static_cast<std::uint64_t>(100 * d + trial));
      const StandardSubspace v = random_standard(rng, d);
      const TwistedDualityReport td = twisted_duality_check(ctx, v.space());
      rec.check("twisted-duality", "complement-vs-twisted-commutant", td.distance, 1e-8, "identity");
      rec.check("twisted-duality", "super-commutator", td.super_commutator, 1e-8, "identity");
      rec.check("twisted-duality", "dimension", std::abs(td.complement_dim - td.twisted_dim), 0.0, "identity");
      const FermiModularReport fm = fermi_modular_check(ctx, v);
      rec.check("fermi-modular", "delta-second-quantized", fm.delta_residual, 1e-8, "identity");
      rec.check("fermi-modular", "j-twisted-second-quantized", fm.j_residual, 1e-8, "identity");
    }
    timing[std::to_string(d)] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  for (int d = 1; d <= 5; ++d) rec.check("car", "anticommutators", FermiContext(d).car_residual(), 1e-12, "identity");

  const int samples = 100;
  for (int d = 1; d <= 3; ++d) {
    Rng rng = master.split(static_cast<std::uint64_t>(1000 + d));
    const StandardSubspace v = random_standard(rng, d);
    const BoseReport b = bose_checks(v, rng, samples);
    rec.check("weyl", "weyl-relation", b.weyl_residual, 1e-12, "identity");
    rec.check("weyl", "weyl-w-relation", b.weyl_w_residual, 1e-12, "identity");
    rec.check("weyl", "second-quantized-modular", b.modular_residual, 1e-10, "identity");
    const CoherentVector omega = CoherentVector::exponential(Eigen::VectorXcd::Zero(d));
    for (int k = 0; k < samples; ++k) {
      const Eigen::VectorXcd w = rng.complex_vector(d);
      const std::complex<double> val = coherent_inner(omega, weyl_operator(w, omega));
      rec.check("weyl", "vacuum-expectation", std::abs(val - std::exp(-0.25 * w.squaredNorm())), 1e-12, "closed-form");
    }
  }
  rep.timings["fermi_seconds_by_dim"] = timing;
}

PoincareElement wedge_preserving(Rng& rng, int d) {
  Vec t = Vec::Zero(d);
  if (rng.uniform() < 0.7) {
    t = rng.normal_vector(d);
    t(1) = std::abs(t(0)) + std::abs(rng.normal());
  }
  return PoincareElement::translate(t) * random_stabilizer(rng, d);
}

void wedge_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  const Rng master(o.seed);
  const int d = o.dim > 0 ? o.dim : 4;
  if (d < 2) throw Error(ErrorKind::UsageError, "--dim must be at least 2 for wedge");
  const int n = trials_or(o, 500);
  Rng rng = master.split(0);
  std::vector<PoincareElement> elems;
  for (int k = 0; k < n; ++k) elems.push_back(k % 2 == 0 ? random_poincare(rng, d) : wedge_preserving(rng, d));
  Rng srng = master.split(1);
  const WedgeConsistencyReport wc = wedge_consistency(elems, srng, 10000);
  rec.check("wedge-inclusion", "sampling-contradictions", wc.contradictions, 0.0, "sampling");
  rec.check("wedge-inclusion", "missing-witnesses", wc.missing_witnesses, 0.0, "sampling");

  Rng grng = master.split(2);
  std::vector<Region> regions;
  for (int k = 0; k < 11; ++k) {
    const Wedge w{random_poincare(grng, d)};
    regions.push_back(Region(w));
    const Vec p = w.sample(grng, 1).front();
    Vec h = Vec::Zero(d);
    h(0) = grng.uniform(0.1, 1.0);
    const Vec q = (k % 2 == 0) ? p : Vec(grng.normal_vector(d));
    regions.push_back(double_cone(q + h, q - h));
    const Wedge c = causal_complement(w);
    const Vec s = c.sample(grng, 1).front();
    regions.push_back(double_cone(s + 0.5 * h, s - 0.5 * h));
  }
  const OrderReport orr = order_axiom_check(regions, grng, 100);
  rec.check("order-axioms", "a1-violations", orr.a1_violations, 0.0, "sampling");
  rec.check("order-axioms", "a2-violations", orr.a2_violations, 0.0, "sampling");
  rec.check("order-axioms", "double-complement-violations", orr.double_violations, 0.0, "identity");
  rec.check("order-axioms", "triple-complement-violations", orr.triple_violations, 0.0, "identity");
  rec.check("order-axioms", "sampling-contradictions", orr.sampling_contradictions, 0.0, "sampling");
  rec.flag("order-axioms", "at-least-1000-pairs", orr.pairs >= 1000, "sampling");
  rep.data["wedge_pairs"] = wc.pairs;
  rep.data["wedge_inclusions"] = wc.inclusions;
  rep.data["wedge_denials"] = wc.denials;
  rep.data["region_pairs"] = orr.pairs;
}

void affine_suite(const SuiteOptions& o, Report& rep) {
  Recorder rec(rep, o);
  if (o.grid_n < 8 || (o.grid_n & (o.grid_n - 1)) != 0)
    throw Error(ErrorKind::UsageError, "--grid-n must be a power of two, at least 8");
  if (!(o.grid_l > 0.0)) throw Error(ErrorKind::UsageError, "--grid-l must be positive");
  const AffineRep rep_grid(o.grid_n, o.grid_l);

  rec.flag("generator", "floor-exact", rep_grid.generator_min() == std::exp(-o.grid_l), "closed-form");
  rec.flag("generator", "positive", rep_grid.generator_min() > 0.0, "closed-form");

  const BorchersReport br = borchers_check(rep_grid, {}, calibration::kBorchersShift);
  double wrap = 0.0;
  for (const auto& e : br.entries) wrap = std::max(wrap, e.wrap);
  rec.check("borchers", "bulk-residual-within-wrap-budget", br.max_residual, std::max(2.0 * wrap, 1e-12),
            "convergence");
  const InclusionReport inc = inclusion_residual(rep_grid, 1.0);
  rec.check("inclusion", "half-sided-residual", inc.residual, calibration::kGridTolerance, "convergence");
  rep.data["inclusion_reverse"] = inc.reverse_residual;
  rep.data["one_sided_ratio"] = inc.ratio;
  const ModularIntersectionReport mi = modular_intersection_check(rep_grid);
  rec.check("modular-intersection", "mi2", mi.mi2_residual, calibration::kGridTolerance, "convergence");
  rep.data["mi_times"] = mi.times;
  rep.data["mi_limit_residuals"] = mi.limit_residuals;
  rep.data["mi_converged"] = mi.converged;
  const TwoRayReport tr = two_ray_poincare(rep_grid, rep_grid);
  rec.check("two-ray", "j-rel", tr.jrel_residual, calibration::kExactTolerance, "identity");
  rec.check("two-ray", "boost-covariance", tr.covariance_residual, std::max(2.0 * tr.covariance_wrap, 1e-12),
            "identity");
  rep.data["two_ray_inclusion"] = {tr.inclusion_plus, tr.inclusion_plus_reverse, tr.inclusion_minus,
                                   tr.inclusion_minus_reverse};

  for (double b : {0.5, 1.0, 2.0}) {
    const InnerFunctionReport ir = inner_function_check(b);
    rec.check("inner-functions", "modulus-bound", std::max(0.0, ir.max_modulus - 1.0), 1e-12, "closed-form");
    rec.check("inner-functions", "boundary-symmetry", ir.symmetry_residual, 1e-12, "closed-form");
  }
  bool rejected = false;
  try {
    inner_function_check(-1.0);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::NotDecaying;
  }
  const StripFunction grow = [](std::complex<double> z) { return std::exp(std::complex<double>(0.0, -1.0) * std::exp(z)); };
  rec.flag("inner-functions", "negative-b-rejected-with-witness", rejected && growth_witness(grow).has_value(),
           "closed-form");

  for (int m : {1, 2}) {
    const Sl2Model s = sl2_lowest_weight(m, 12);
    rec.check("sl2", "brackets", s.bracket_residual, 1e-12, "identity");
    rec.check("sl2", "conjugation", s.conjugation_residual, 1e-12, "identity");
    rec.check("sl2", "lowest-weight", s.lowest_residual, 1e-12, "identity");
    rec.check("sl2", "skew", s.skew_residual, 1e-12, "identity");
  }

  Series sb{"borchers", "N", {}}, si{"inclusion", "N", {}}, sm{"mi2", "N", {}};
  for (auto [n, l] : std::vector<std::pair<int, double>>{{128, 3.0}, {256, 4.0}, {512, 6.0}, {1024, 8.0}}) {
    const AffineRep g(n, l);
    sb.points.emplace_back(n, borchers_check(g, {}, calibration::kBorchersShift).max_residual);
    si.points.emplace_back(n, inclusion_residual(g, 1.0).residual);
    sm.points.emplace_back(n, modular_intersection_check(g).mi2_residual);
  }
  rep.series = {sb, si, sm};

  if (o.preset == "convergence") {
    const ConvergenceStudy st = affine_convergence(256, 4.0, 1024, 8.0);
    for (const auto& e : st.entries)
      rec.check("convergence", e.name + "-refinement", e.fine,
                std::max(e.coarse / calibration::kRefinementFactor, calibration::kRoundoffFloor), "convergence");
    rec.check("convergence", "one-sided-ratio", calibration::kOneSidedRatio / std::max(st.one_sided_ratio, 1e-300),
              1.0, "convergence");
    rec.flag("convergence", "generator-floor-exact",
             st.generator_min_coarse == std::exp(-4.0) && st.generator_min_fine == std::exp(-8.0), "closed-form");
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"standard", "group", "vn", "fock", "wedge", "affine"};
  return names;
}

Json options_to_json(const std::string& command, const SuiteOptions& o) {
  Json j;
  j["command"] = command;
  j["dim"] = o.dim;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  j["tol"] = o.tol ? Json(*o.tol) : Json(nullptr);
  j["grid_n"] = o.grid_n;
  j["grid_l"] = o.grid_l;
  j["fermi_dim"] = o.fermi_dim;
  j["preset"] = o.preset;
  return j;
}

Report run_suite(const std::string& command, const SuiteOptions& opts) {
  if (opts.trials < 0) throw Error(ErrorKind::UsageError, "--trials must be nonnegative");
  if (opts.tol && !(*opts.tol >= 0.0)) throw Error(ErrorKind::UsageError, "--tol must be nonnegative");
  if (!opts.preset.empty() && opts.preset != "convergence") {
    const auto& gc = group_cases();
    if (std::none_of(gc.begin(), gc.end(), [&](const GroupCase& c) { return c.preset == opts.preset; }))
      throw Error(ErrorKind::UsageError, "unknown preset '" + opts.preset + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = command;
  rep.seed = opts.seed;
  rep.input = options_to_json(command, opts);
  if (command == "all") {
    for (const auto& name : suite_names()) rep.append(run_suite(name, opts));
  } else if (command == "standard") {
    standard_suite(opts, rep);
  } else if (command == "group") {
    group_suite(opts, rep);
  } else if (command == "vn") {
    vn_suite(opts, rep);
  } else if (command == "fock") {
    fock_suite(opts, rep);
  } else if (command == "wedge") {
    wedge_suite(opts, rep);
  } else if (command == "affine") {
    affine_suite(opts, rep);
  } else {
    throw Error(ErrorKind::UsageError, "unknown command '" + command + "'");
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace modkit
