#include "modkit/wedge.hpp"

#include <algorithm>
#include <cmath>

namespace modkit {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

void check_dim(int a, int b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, "Minkowski dimensions differ");
}

// v0 - |v_spatial|: positive exactly on the open forward cone
double cone_margin(const Vec& v) { return v(0) - v.tail(v.size() - 1).norm(); }

double scale_of(const Vec& v) { return 1.0 + v.norm(); }

// W_R = {[x, l+] < 0 < [x, l-]}, i.e. x0 - x1 < 0 < x0 + x1
double plus_coord(const Vec& x) { return x(0) - x(1); }
double minus_coord(const Vec& x) { return x(0) + x(1); }

bool in_right_wedge(const Vec& x, double slack) {
  const double s = slack * scale_of(x);
  return plus_coord(x) < s && minus_coord(x) > -s;
}

bool outside_right_closure(const Vec& x, double margin) {
  const double m = margin * scale_of(x);
  return plus_coord(x) > m || minus_coord(x) < -m;
}

std::vector<Vec> sample_right_wedge(Rng& rng, int d, int count, double radius) {
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.uniform(-radius, radius);
    const double gap = (k % 2 == 0) ? rng.uniform(0.0, radius) : radius * std::pow(10.0, -rng.uniform(0.0, 8.0));
    x(1) = std::abs(x(0)) + std::max(gap, 1e-300);
    out.push_back(x);
  }
  return out;
}

// Boost taking e0 to the unit timelike vector u.
Mat boost_to(const Vec& u) {
  const int d = static_cast<int>(u.size());
  Mat b = Mat::Identity(d, d);
  const double g = u(0);
  const Vec p = u.tail(d - 1);
  b(0, 0) = g;
  b.block(0, 1, 1, d - 1) = p.transpose();
  b.block(1, 0, d - 1, 1) = p;
  const double pn2 = p.squaredNorm();
  if (pn2 > 0.0) b.block(1, 1, d - 1, d - 1) += (g - 1.0) * p * p.transpose() / pn2;
  return b;
}

Mat random_rotation(Rng& rng, int n) {
  if (n == 0) return Mat(0, 0);
  Eigen::HouseholderQR<Mat> qr(rng.normal_matrix(n, n));
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Mat spatial_reflection(int d) {
  Mat p = Mat::Identity(d, d);
  p(d - 1, d - 1) = -1.0;
  return p;
}

const std::vector<double>& hom_samples() {
  static const std::vector<double> t{0.3, 1.7, std::exp(1.0), 0.05, -1.0, -0.4, -2.5};
  return t;
}

bool dc_valid(const DoubleCone& c) {
  return c.top.size() == c.bottom.size() && cone_margin(c.top - c.bottom) > 0.0;
}

bool dc_contains(const DoubleCone& c, const Vec& z, double slack) {
  const double a = cone_margin(c.top - z), b = cone_margin(z - c.bottom);
  const double s = slack * scale_of(z);
  if (c.closed) return a >= -s && b >= -s;
  return a > -s && b > -s;
}

// z outside (bottom + V+) ∪ (top - V+), closed versions for closed cones
bool dcc_contains(const DoubleCone& c, const Vec& z, double slack) {
  const double a = cone_margin(c.top - z), b = cone_margin(z - c.bottom);
  const double s = slack * scale_of(z);
  auto in_cone = [&](double m) { return c.closed ? m >= s : m > s; };
  return !in_cone(a) && !in_cone(b);
}

bool future_closed(const Vec& v) { return cone_margin(v) >= -1e-12 * scale_of(v); }
bool future_open(const Vec& v) { return cone_margin(v) > 1e-12 * scale_of(v); }

std::vector<Vec> box_rejection(Rng& rng, const Region& r, const Vec& center, double radius, int count) {
  std::vector<Vec> out;
  const int d = static_cast<int>(center.size());
  for (long attempt = 0; static_cast<int>(out.size()) < count && attempt < 200L * count + 1000; ++attempt) {
    Vec z(d);
    for (int i = 0; i < d; ++i) z(i) = center(i) + rng.uniform(-radius, radius);
    if (r.contains(z)) out.push_back(z);
  }
  return out;
}

}  // namespace

double minkowski(const Vec& x, const Vec& y) {
  check_dim(static_cast<int>(x.size()), static_cast<int>(y.size()));
  return x(0) * y(0) - x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

Mat minkowski_metric(int d) {
  Mat eta = -Mat::Identity(d, d);
  eta(0, 0) = 1.0;
  return eta;
}

Vec lightlike_plus(int d) {
  Vec l = Vec::Zero(d);
  l(0) = 1.0;
  l(1) = 1.0;
  return l;
}

Vec lightlike_minus(int d) {
  Vec l = Vec::Zero(d);
  l(0) = 1.0;
  l(1) = -1.0;
  return l;
}

bool in_future_cone(const Vec& x, bool closed, double tol) {
  const double m = cone_margin(x);
  return closed ? m >= -tol * scale_of(x) : m > tol * scale_of(x);
}

bool spacelike(const Vec& x, const Vec& y) {
  const Vec v = x - y;
  return minkowski(v, v) < 0.0;
}

PoincareElement PoincareElement::identity(int d) { return {Vec::Zero(d), Mat::Identity(d, d)}; }
PoincareElement PoincareElement::translate(const Vec& b) { return {b, Mat::Identity(b.size(), b.size())}; }
PoincareElement PoincareElement::linear(const Mat& a) { return {Vec::Zero(a.rows()), a}; }

PoincareElement PoincareElement::boost(int d, double s) {
  PoincareElement g = identity(d);
  g.lorentz(0, 0) = g.lorentz(1, 1) = std::cosh(s);
  g.lorentz(0, 1) = g.lorentz(1, 0) = std::sinh(s);
  return g;
}

PoincareElement PoincareElement::operator*(const PoincareElement& o) const {
  check_dim(dim(), o.dim());
  return {translation + lorentz * o.translation, lorentz * o.lorentz};
}

PoincareElement PoincareElement::inverse() const {
  const Mat eta = minkowski_metric(dim());
  const Mat inv = eta * lorentz.transpose() * eta;
  return {-inv * translation, inv};
}

double PoincareElement::metric_residual() const {
  const Mat eta = minkowski_metric(dim());
  return (lorentz.transpose() * eta * lorentz - eta).norm();
}

double poincare_distance(const PoincareElement& a, const PoincareElement& b) {
  return (a.lorentz - b.lorentz).norm() + (a.translation - b.translation).norm();
}

PoincareElement reflection_r01(int d) {
  PoincareElement r = PoincareElement::identity(d);
  r.lorentz(0, 0) = r.lorentz(1, 1) = -1.0;
  return r;
}

PoincareElement time_reversal(int d) {
  PoincareElement r = PoincareElement::identity(d);
  r.lorentz(0, 0) = -1.0;
  return r;
}

Mat random_lorentz(Rng& rng, int d, double max_rapidity, bool orthochronous, bool proper) {
  if (d < 2) throw Error(ErrorKind::InvalidParameters, "Minkowski dimension must be at least 2");
  Vec n = rng.normal_vector(d - 1);
  n /= n.norm();
  const double eta = rng.uniform(-max_rapidity, max_rapidity);
  Vec u = Vec::Zero(d);
  u(0) = std::cosh(eta);
  u.tail(d - 1) = std::sinh(eta) * n;
  Mat rot = Mat::Identity(d, d);
  rot.block(1, 1, d - 1, d - 1) = random_rotation(rng, d - 1);
  Mat a = rot * boost_to(u);
  if (!orthochronous) a = time_reversal(d).lorentz * a;
  if ((a.determinant() > 0.0) != proper) a = spatial_reflection(d) * a;
  return a;
}

PoincareElement random_poincare(Rng& rng, int d) {
  const bool ortho = rng.uniform() < 0.5, proper = rng.uniform() < 0.5;
  return {rng.normal_vector(d), random_lorentz(rng, d, 1.0, ortho, proper)};
}

PoincareElement random_stabilizer(Rng& rng, int d, bool allow_time_reversal) {
  PoincareElement g = PoincareElement::boost(d, rng.uniform(-1.5, 1.5));
  PoincareElement rot = PoincareElement::identity(d);
  if (d > 2) {
    Eigen::HouseholderQR<Mat> qr(rng.normal_matrix(d - 2, d - 2));
    rot.lorentz.block(2, 2, d - 2, d - 2) = qr.householderQ() * Mat::Identity(d - 2, d - 2);
    rot.translation.tail(d - 2) = rng.normal_vector(d - 2);
  }
  g = rot * g;
  if (allow_time_reversal && rng.uniform() < 0.5) g = time_reversal(d) * g;
  return g;
}

Wedge Wedge::right(int d) { return {PoincareElement::identity(d)}; }

bool Wedge::contains(const Vec& x, double slack) const {
  check_dim(dim(), static_cast<int>(x.size()));
  return in_right_wedge(frame.inverse().apply(x), slack);
}

std::vector<Vec> Wedge::sample(Rng& rng, int count, double radius) const {
  std::vector<Vec> pts = sample_right_wedge(rng, dim(), count, radius);
  for (auto& p : pts) p = frame.apply(p);
  return pts;
}

const char* to_string(WedgeOrder o) {
  switch (o) {
    case WedgeOrder::Equal: return "equal";
    case WedgeOrder::Subset: return "subset";
    case WedgeOrder::Superset: return "superset";
    case WedgeOrder::Other: return "other";
  }
  return "?";
}

bool wedge_includes(const Wedge& a, const Wedge& b, double tol) {
  check_dim(a.dim(), b.dim());
  const int d = a.dim();
  const PoincareElement h = b.frame.inverse() * a.frame;
  const double s = tol * scale_of(h.translation);
  if (plus_coord(h.translation) > s || minus_coord(h.translation) < -s) return false;
  const Vec lp = lightlike_plus(d), lm = lightlike_minus(d);
  Vec ap = h.lorentz * lp, am = h.lorentz * lm;
  ap /= ap.norm();
  am /= am.norm();
  const Vec up = lp / lp.norm(), um = lm / lm.norm();
  const bool keep = (ap - up).norm() < tol && (am - um).norm() < tol;
  const bool swap = (ap + um).norm() < tol && (am + up).norm() < tol;
  return keep || swap;
}

WedgeOrder wedge_relation(const Wedge& a, const Wedge& b, double tol) {
  const bool ab = wedge_includes(a, b, tol), ba = wedge_includes(b, a, tol);
  if (ab && ba) return WedgeOrder::Equal;
  if (ab) return WedgeOrder::Subset;
  if (ba) return WedgeOrder::Superset;
  return WedgeOrder::Other;
}

std::optional<Vec> wedge_witness(const Wedge& a, const Wedge& b, Rng& rng, int attempts) {
  check_dim(a.dim(), b.dim());
  const int d = a.dim();
  const PoincareElement binv = b.frame.inverse();
  auto good = [&](const Vec& y) { return in_right_wedge(y, 0.0) && outside_right_closure(binv.apply(a.frame.apply(y)), 1e-9); };
  Vec e1 = Vec::Zero(d);
  e1(1) = 1.0;
  for (double eps = 1e-1; eps > 1e-13; eps /= 10.0)
    if (good(eps * e1)) return a.frame.apply(eps * e1);
  std::vector<Vec> gens{lightlike_plus(d), -lightlike_minus(d)};
  for (int k = 2; k < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = 1.0;
    gens.push_back(e);
    gens.push_back(-e);
  }
  for (const auto& u : gens)
    for (double delta : {1e-2, 1e-4})
      for (double lambda = 1.0; lambda < 1e9; lambda *= 10.0) {
        const Vec y = lambda * (u + delta * e1);
        if (good(y)) return a.frame.apply(y);
      }
  for (int k = 0; k < attempts; ++k) {
    const Vec y = sample_right_wedge(rng, d, 1, 10.0).front();
    if (good(y)) return a.frame.apply(y);
  }
  return std::nullopt;
}

Wedge causal_complement(const Wedge& w) { return {w.frame * reflection_r01(w.dim())}; }

PoincareElement wedge_reflection(const Wedge& w) { return w.frame * reflection_r01(w.dim()) * w.frame.inverse(); }

PoincareElement WedgeHom::operator()(double t) const {
  if (t == 0.0) throw Error(ErrorKind::InvalidParameters, "R^x excludes zero");
  const int d = frame.dim();
  PoincareElement core = PoincareElement::boost(d, sign * std::log(std::abs(t)));
  if (t < 0.0) core = core * reflection_r01(d);
  return frame * core * frame.inverse();
}

WedgeHom wedge_hom(const Wedge& w) {
  const Vec lp = w.frame.lorentz * lightlike_plus(w.dim());
  return {w.frame, lp(0) > 0.0 ? 1 : -1};
}

PoincareElement gamma(const Wedge& w, double t) { return wedge_hom(w)(t); }

WedgeHom bgl_transport(const WedgeHom& h, const PoincareElement& g, bool dual) {
  if (!g.proper()) throw Error(ErrorKind::NotProper, "transport needs an orientation-preserving element");
  WedgeHom out{g * h.frame, h.sign};
  return dual ? out.dual() : out;
}

double hom_distance(const WedgeHom& a, const WedgeHom& b) {
  double r = 0.0;
  for (double t : hom_samples()) r = std::max(r, poincare_distance(a(t), b(t)));
  return r;
}

double hom_residual(const WedgeHom& h) {
  double r = 0.0;
  for (double s : hom_samples())
    for (double t : hom_samples()) r = std::max(r, poincare_distance(h(s) * h(t), h(s * t)));
  const PoincareElement m = h(-1.0);
  return std::max(r, poincare_distance(m * m, PoincareElement::identity(h.frame.dim())));
}

Region::Region(Variant v) : v_(std::move(v)) {
  if (const auto* c = std::get_if<DoubleCone>(&v_); c && !dc_valid(*c))
    throw Error(ErrorKind::EmptyRegion, "double cone needs top - bottom in V+");
  if (const auto* c = std::get_if<DoubleConeComplement>(&v_); c && !dc_valid(c->cone))
    throw Error(ErrorKind::EmptyRegion, "double cone needs top - bottom in V+");
}

const char* Region::kind() const {
  static const char* names[] = {"wedge", "double_cone", "double_cone_complement", "points", "points_complement"};
  return names[v_.index()];
}

int Region::dim() const {
  return std::visit(
      [](const auto& r) -> int {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Wedge>) return r.dim();
        else if constexpr (std::is_same_v<T, DoubleCone>) return static_cast<int>(r.top.size());
        else if constexpr (std::is_same_v<T, DoubleConeComplement>) return static_cast<int>(r.cone.top.size());
        else if constexpr (std::is_same_v<T, PointSet>) return r.points.empty() ? 0 : static_cast<int>(r.points.front().size());
        else return r.set.points.empty() ? 0 : static_cast<int>(r.set.points.front().size());
      },
      v_);
}

bool Region::contains(const Vec& x, double slack) const {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Wedge>) return r.contains(x, slack);
        else if constexpr (std::is_same_v<T, DoubleCone>) return dc_contains(r, x, slack);
        else if constexpr (std::is_same_v<T, DoubleConeComplement>) return dcc_contains(r.cone, x, slack);
        else if constexpr (std::is_same_v<T, PointSet>) {
          for (const auto& p : r.points)
            if ((p - x).norm() <= std::max(slack, 1e-12) * scale_of(p)) return true;
          return false;
        } else {
          for (const auto& p : r.set.points) {
            const Vec v = x - p;
            if (minkowski(v, v) >= slack * (1.0 + v.squaredNorm())) return false;
          }
          return true;
        }
      },
      v_);
}

std::vector<Vec> Region::sample(Rng& rng, int count, double radius) const {
  return std::visit(
      [&](const auto& r) -> std::vector<Vec> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Wedge>) return r.sample(rng, count, radius);
        else if constexpr (std::is_same_v<T, DoubleCone>) {
          const int d = static_cast<int>(r.top.size());
          const Vec c = (r.top + r.bottom) / 2.0, h = (r.top - r.bottom) / 2.0;
          const double tau = std::sqrt(minkowski(h, h));
          const Mat b = boost_to(h / tau);
          std::vector<Vec> out;
          for (int k = 0; k < count; ++k) {
            const double t = rng.uniform(-tau, tau);
            Vec dir = rng.normal_vector(d - 1);
            if (dir.norm() > 0.0) dir /= dir.norm();
            double frac = std::pow(rng.uniform(), 1.0 / std::max(1, d - 1));
            if (k % 2 == 1) frac = 1.0 - std::pow(10.0, -rng.uniform(1.0, 8.0));
            Vec y(d);
            y(0) = t;
            y.tail(d - 1) = (tau - std::abs(t)) * frac * dir;
            out.push_back(c + b * y);
          }
          return out;
        } else if constexpr (std::is_same_v<T, DoubleConeComplement>) {
          const Vec c = (r.cone.top + r.cone.bottom) / 2.0;
          return box_rejection(rng, *this, c, radius + 2.0 * (r.cone.top - r.cone.bottom).norm(), count);
        } else if constexpr (std::is_same_v<T, PointSet>) {
          std::vector<Vec> out;
          for (int k = 0; k < count && !r.points.empty(); ++k) out.push_back(r.points[k % r.points.size()]);
          return out;
        } else {
          Vec c = Vec::Zero(dim());
          for (const auto& p : r.set.points) c += p / static_cast<double>(r.set.points.size());
          return box_rejection(rng, *this, c, radius, count);
        }
      },
      v_);
}

Region double_cone(const Vec& top, const Vec& bottom, bool closed) { return Region(DoubleCone{top, bottom, closed}); }

Region causal_complement(const Region& r) {
  return std::visit(
      [&](const auto& x) -> Region {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Wedge>) return Region(causal_complement(x));
        else if constexpr (std::is_same_v<T, DoubleCone>) return Region(DoubleConeComplement{x});
        else if constexpr (std::is_same_v<T, DoubleConeComplement>) return Region(x.cone);
        else if constexpr (std::is_same_v<T, PointSet>) {
          if (x.points.empty()) throw Error(ErrorKind::InvalidParameters, "complement of the empty set is not a bounded region");
          return Region(PointSetComplement{x});
        } else {
          const auto& p = x.set.points;
          if (p.size() == 1) return Region(PointSet{p});
          if (p.size() == 2) {
            if (cone_margin(p[0] - p[1]) > 0.0) return double_cone(p[0], p[1], true);
            if (cone_margin(p[1] - p[0]) > 0.0) return double_cone(p[1], p[0], true);
          }
          throw Error(ErrorKind::InvalidParameters, "causal completion supported for one point or a timelike pair");
        }
      },
      r.value());
}

bool region_includes(const Region& a, const Region& b) {
  check_dim(a.dim(), b.dim());
  const auto& va = a.value();
  const auto& vb = b.value();
  if (const auto* ps = std::get_if<PointSet>(&va)) {
    for (const auto& p : ps->points)
      if (!b.contains(p)) return false;
    return true;
  }
  if (std::holds_alternative<PointSetComplement>(va))
    throw Error(ErrorKind::InvalidParameters, "inclusion of a point-set complement is not supported");
  if (const auto* pc = std::get_if<PointSetComplement>(&vb)) {
    const Region comp = causal_complement(a);
    for (const auto& p : pc->set.points)
      if (!comp.contains(p)) return false;
    return true;
  }
  if (std::holds_alternative<PointSet>(vb)) return false;

  if (const auto* wa = std::get_if<Wedge>(&va)) {
    if (const auto* wb = std::get_if<Wedge>(&vb)) return wedge_includes(*wa, *wb);
    if (std::holds_alternative<DoubleCone>(vb)) return false;
    const DoubleCone& c = std::get<DoubleConeComplement>(vb).cone;
    // W misses bottom + V+ and top - V+
    const PoincareElement inv = wa->frame.inverse();
    const Vec y = inv.apply(c.bottom), x = inv.apply(c.top);
    const double tol = 1e-12;
    if (wa->frame.orthochronous()) return plus_coord(y) >= -tol * scale_of(y) && minus_coord(x) <= tol * scale_of(x);
    return minus_coord(y) <= tol * scale_of(y) && plus_coord(x) >= -tol * scale_of(x);
  }
  if (const auto* ca = std::get_if<DoubleCone>(&va)) {
    if (const auto* wb = std::get_if<Wedge>(&vb)) {
      const double slack = ca->closed ? 0.0 : 1e-12;
      return wb->contains(ca->top, slack) && wb->contains(ca->bottom, slack);
    }
    if (const auto* cb = std::get_if<DoubleCone>(&vb)) {
      if (ca->closed && !cb->closed) return future_open(cb->top - ca->top) && future_open(ca->bottom - cb->bottom);
      return future_closed(cb->top - ca->top) && future_closed(ca->bottom - cb->bottom);
    }
    const DoubleCone& cb = std::get<DoubleConeComplement>(vb).cone;
    return !future_open(ca->top - cb.bottom) && !future_open(cb.top - ca->bottom);
  }
  const DoubleCone& ca = std::get<DoubleConeComplement>(va).cone;
  if (const auto* cb = std::get_if<DoubleConeComplement>(&vb))
    return future_closed(cb->cone.bottom - ca.bottom) && future_closed(ca.top - cb->cone.top);
  return false;
}

OrderReport order_axiom_check(const std::vector<Region>& regions, Rng& rng, int samples) {
  OrderReport rep;
  std::vector<Region> comps;
  for (const auto& r : regions) comps.push_back(causal_complement(r));
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Region dbl = causal_complement(comps[i]);
    const Region tpl = causal_complement(dbl);
    if (!region_includes(regions[i], dbl)) ++rep.double_violations;
    if (!region_includes(comps[i], tpl) || !region_includes(tpl, comps[i])) ++rep.triple_violations;
  }
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = 0; j < regions.size(); ++j) {
      if (i == j) continue;
      ++rep.pairs;
      const bool inc = region_includes(regions[i], regions[j]);
      if (inc) {
        ++rep.a1_checked;
        if (!region_includes(comps[j], comps[i])) ++rep.a1_violations;
        for (const auto& p : regions[i].sample(rng, samples))
          if (!regions[j].contains(p, 1e-9)) {
            ++rep.sampling_contradictions;
            break;
          }
      }
      ++rep.a2_checked;
      const bool lhs = region_includes(regions[i], comps[j]);
      if (lhs != region_includes(regions[j], comps[i])) ++rep.a2_violations;
      if (lhs) {
        const auto pi = regions[i].sample(rng, samples), pj = regions[j].sample(rng, samples);
        for (std::size_t k = 0; k < pi.size() && k < pj.size(); ++k) {
          const Vec v = pi[k] - pj[k];
          if (minkowski(v, v) > 1e-9 * (1.0 + v.squaredNorm())) {
            ++rep.sampling_contradictions;
            break;
          }
        }
      }
    }
  return rep;
}

WedgeConsistencyReport wedge_consistency(const std::vector<PoincareElement>& elements, Rng& rng, int samples) {
  WedgeConsistencyReport rep;
  for (const auto& g : elements) {
    const Wedge a = Wedge::right(g.dim()), b{g};
    for (int dir = 0; dir < 2; ++dir) {
      const Wedge& x = dir == 0 ? a : b;
      const Wedge& y = dir == 0 ? b : a;
      ++rep.pairs;
      if (wedge_includes(x, y)) {
        ++rep.inclusions;
        for (const auto& p : x.sample(rng, samples))
          if (!y.contains(p, 1e-9)) {
            ++rep.contradictions;
            break;
          }
      } else {
        ++rep.denials;
        if (!wedge_witness(x, y, rng)) ++rep.missing_witnesses;
      }
    }
  }
  return rep;
}

}  // namespace modkit
