#pragma once

#include "g2glue/affine.hpp"
#include "g2glue/metric.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace g2glue {

// ---------------------------------------------------------------------------
// Group closure in GL(7,Z) ⋉ (Q/Z)^7.

struct ClosedGroup {
  std::vector<NamedGenerator> generators;
  std::vector<AffineIsometry> elements;  // reduced mod 1; elements[0] = id
  std::vector<std::vector<int>> words;   // generator index words, left-to-right composition
  std::map<AffineIsometry, int> index;
  std::vector<std::vector<int>> table;   // table[i][j] = idx of e_i ∘ e_j
  std::vector<int> inv;

  int order() const { return (int)elements.size(); }

  int idx(const AffineIsometry& g) const {
    auto it = index.find(g.reduce_mod1());
    return it == index.end() ? -1 : it->second;
  }

  // order of element i in the group
  int element_order(int i) const {
    int o = 1, cur = i;
    while (cur != 0) { cur = table[cur][i]; ++o; }
    return o;
  }
};

inline std::optional<ClosedGroup> group_closure(const std::vector<NamedGenerator>& gens,
                                                int bound = 10000) {
  ClosedGroup G;
  G.generators = gens;
  AffineIsometry id = AffineIsometry::identity();
  G.elements.push_back(id);
  G.words.push_back({});
  G.index[id] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      AffineIsometry p = G.elements[e].compose(gens[gi].map).reduce_mod1();
      if (G.index.count(p)) continue;
      if ((int)G.elements.size() >= bound) return std::nullopt;  // NotClosed
      int id_new = (int)G.elements.size();
      G.index[p] = id_new;
      G.elements.push_back(p);
      auto w = G.words[e];
      w.push_back((int)gi);
      G.words.push_back(w);
      queue.push_back(id_new);
    }
  }
  int n = G.order();
  G.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      G.table[i][j] = G.index.at(G.elements[i].compose(G.elements[j]).reduce_mod1());
  G.inv.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (G.table[i][j] == 0) { G.inv[i] = j; break; }
  return G;
}

// ---------------------------------------------------------------------------
// Affine subtori of T^7 with canonical representatives.

struct AffineSubtorus {
  std::vector<Rational> basepoint = std::vector<Rational>(7);
  ZMat directions{7, 0};  // HNF basis of the saturated direction lattice
  ZMat dual{0, 7};        // canonical integral dual basis (rows kill directions)

  int dim() const { return directions.cols; }

  bool contains(const std::vector<Rational>& x) const {
    for (int i = 0; i < dual.rows; ++i) {
      Rational s = 0;
      for (int j = 0; j < 7; ++j) s += Rational(dual(i, j)) * (x[j] - basepoint[j]);
      if (!is_integer(s)) return false;
    }
    return true;
  }

  bool operator==(const AffineSubtorus& o) const {
    return directions == o.directions && basepoint == o.basepoint;
  }
  bool operator<(const AffineSubtorus& o) const {
    if (directions.cols != o.directions.cols) return directions.cols < o.directions.cols;
    if (!(directions == o.directions)) return directions < o.directions;
    return basepoint < o.basepoint;
  }
};

// Canonicalizes (directions spanned by the given columns, point on the torus).
inline AffineSubtorus make_subtorus(const ZMat& raw_dirs, const std::vector<Rational>& point) {
  AffineSubtorus s;
  s.directions = hnf_column_basis(raw_dirs);
  int d = s.directions.cols;
  // canonical dual basis: HNF of the saturated left kernel
  auto ker = left_integer_kernel(s.directions);
  ZMat kt(7, (int)ker.size());
  for (size_t c = 0; c < ker.size(); ++c)
    for (int r = 0; r < 7; ++r) kt(r, (int)c) = ker[c][r];
  ZMat kh = hnf_column_basis(kt);
  s.dual = ZMat(kh.cols, 7);
  for (int i = 0; i < kh.cols; ++i)
    for (int j = 0; j < 7; ++j) s.dual(i, j) = kh(j, i);
  // canonical basepoint: solve dual · x = frac(dual · point) with free vars 0
  int m = s.dual.rows;
  QMat aug(m, 8);
  for (int i = 0; i < m; ++i) {
    Rational c = 0;
    for (int j = 0; j < 7; ++j) {
      aug(i, j) = Rational(s.dual(i, j));
      c += Rational(s.dual(i, j)) * point[j];
    }
    aug(i, 7) = frac_mod1(c);
  }
  auto pivots = rref(aug);
  std::vector<Rational> x(7);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] < 7) x[pivots[r]] = aug((int)r, 7);
  s.basepoint = x;
  (void)d;
  return s;
}

inline AffineSubtorus transform(const AffineIsometry& h, const AffineSubtorus& s) {
  ZMat nd(7, s.directions.cols);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < s.directions.cols; ++j) {
      Integer v = 0;
      for (int k = 0; k < 7; ++k) v += h.linear(i, k) * s.directions(k, j);
      nd(i, j) = v;
    }
  return make_subtorus(nd, h.apply(s.basepoint));
}

// Solves (A−I)x ≡ −t (mod Z^7); returns the parallel solution components.
inline std::vector<AffineSubtorus> fixed_locus(const AffineIsometry& g) {
  ZMat M(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) M(i, j) = g.linear(i, j) - (i == j ? 1 : 0);
  auto s = smith_normal_form(M);
  std::vector<Rational> Ut(7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) Ut[i] += Rational(s.u(i, j)) * g.translation[j];
  for (int i = s.rank; i < 7; ++i)
    if (!is_integer(Ut[i])) return {};
  ZMat dirs(7, 7 - s.rank);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7 - s.rank; ++c) dirs(r, c) = s.v(r, s.rank + c);
  QMat Vq = to_q(s.v);
  std::vector<AffineSubtorus> out;
  std::vector<Integer> j(s.rank, 0);
  while (true) {
    std::vector<Rational> y(7);
    for (int i = 0; i < s.rank; ++i)
      y[i] = frac_mod1((Rational(j[i]) - Ut[i]) / Rational(s.d(i, i)));
    out.push_back(make_subtorus(dirs, Vq.apply(y)));
    int k = s.rank - 1;
    while (k >= 0) {
      j[k] += 1;
      if (j[k] < s.d(k, k)) break;
      j[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Solves B·mu = t + n over (mu in Q^d, n in Z^7), i.e. decides whether t is a
// plane direction modulo the integer lattice.
inline std::optional<std::pair<std::vector<Rational>, std::vector<Integer>>> solve_in_span(
    const ZMat& B, const std::vector<Rational>& t) {
  auto s = smith_normal_form(B);
  std::vector<Rational> Ut(B.rows);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.rows; ++j) Ut[i] += Rational(s.u(i, j)) * t[j];
  std::vector<Rational> m(B.rows);  // correction in transformed coordinates
  for (int i = s.rank; i < B.rows; ++i) {
    if (!is_integer(Ut[i])) return std::nullopt;
    m[i] = -Ut[i];
  }
  std::vector<Rational> nu(B.cols);
  for (int i = 0; i < s.rank; ++i) nu[i] = Ut[i] / Rational(s.d(i, i));
  std::vector<Rational> mu(B.cols);
  for (int i = 0; i < B.cols; ++i)
    for (int j = 0; j < B.cols; ++j) mu[i] += Rational(s.v(i, j)) * nu[j];
  QMat Uinv = inverse(to_q(s.u));
  std::vector<Rational> nq = Uinv.apply(m);
  std::vector<Integer> n(B.rows);
  for (int i = 0; i < B.rows; ++i) {
    if (!is_integer(nq[i])) return std::nullopt;
    n[i] = num(nq[i]);
  }
  // verify exactly
  for (int i = 0; i < B.rows; ++i) {
    Rational lhs = 0;
    for (int j = 0; j < B.cols; ++j) lhs += Rational(B(i, j)) * mu[j];
    if (lhs != t[i] + Rational(n[i])) return std::nullopt;
  }
  return std::make_pair(mu, n);
}

// ---------------------------------------------------------------------------
// Singular strata.

struct SingularStratum {
  std::string name;
  AffineSubtorus rep;
  std::vector<AffineSubtorus> orbit;
  int orbit_size = 0;
  std::vector<int> pointwise;  // element ids fixing rep pointwise, including 0
  std::vector<int> setwise;    // element ids preserving rep setwise
  std::vector<int> K;          // normal subgroup: pointwise fixers and plane translations
  std::vector<std::vector<int>> cosets;  // cosets of K in setwise; cosets[0] = K
  QMat lattice{0, 0};          // base-torus lattice in plane coordinates (columns)
  std::vector<ZMat> coset_torus_action;                  // per coset rep
  std::vector<std::vector<Rational>> coset_torus_shift;  // per coset rep
  std::vector<bool> coset_free;                          // per coset (index 0 = K, true)
  int H_order = 1;
  std::string base_type;       // "T3", "T3/Z2", ...
  bool admissible_base = true;
};

struct SingularSet {
  ClosedGroup group;
  std::vector<SingularStratum> strata;
  std::map<int, int> components_per_element;  // element id -> #fixed components
};

// 3x3-ish action of a setwise stabilizer on plane coordinates: L·B = B·M.
inline std::optional<ZMat> plane_action(const ZMat& B, const ZMat& L) {
  QMat Bq = to_q(B);
  QMat G = Bq.transpose() * Bq;
  QMat LB(7, B.cols);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < B.cols; ++j) {
      Rational v = 0;
      for (int k = 0; k < 7; ++k) v += Rational(L(i, k)) * Bq(k, j);
      LB(i, j) = v;
    }
  QMat Mq = inverse(G) * Bq.transpose() * LB;
  ZMat M(B.cols, B.cols);
  for (int i = 0; i < B.cols; ++i)
    for (int j = 0; j < B.cols; ++j) {
      if (!is_integer(Mq(i, j))) return std::nullopt;
      M(i, j) = num(Mq(i, j));
    }
  if (!(Bq * to_q(M) == LB)) return std::nullopt;
  return M;
}

namespace detail {

// subgroup closure by indices within a closed group
inline std::vector<int> subgroup_closure(const ClosedGroup& G, std::vector<int> gens) {
  std::set<int> have{0};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int g : gens) {
      int p = G.table[e][g];
      if (have.insert(p).second) queue.push_back(p);
    }
  }
  return std::vector<int>(have.begin(), have.end());
}

}  // namespace detail

// Fills the group-theoretic data of a stratum given its orbit representative.
inline void analyze_stratum(const ClosedGroup& G, SingularStratum& s) {
  const AffineSubtorus& rep = s.rep;
  const ZMat& B = rep.directions;
  int d = B.cols;
  s.pointwise.clear();
  s.setwise.clear();
  for (int i = 0; i < G.order(); ++i) {
    const AffineIsometry& e = G.elements[i];
    if (!(transform(e, rep) == rep)) continue;
    s.setwise.push_back(i);
    // pointwise: fixes directions and the basepoint
    bool pw = true;
    ZMat LB(7, d);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < d; ++c) {
        Integer v = 0;
        for (int k = 0; k < 7; ++k) v += e.linear(r, k) * B(k, c);
        LB(r, c) = v;
      }
    if (!(LB == B)) pw = false;
    if (pw) {
      auto y = e.apply(rep.basepoint);
      for (int r = 0; r < 7 && pw; ++r)
        if (!is_integer(y[r] - rep.basepoint[r])) pw = false;
    }
    if (pw) s.pointwise.push_back(i);
  }
  // K = <pointwise, pure translations in setwise>
  std::vector<int> kgens;
  for (int i : s.setwise)
    if (i != 0 && (G.elements[i].linear_is_identity() ||
                   std::find(s.pointwise.begin(), s.pointwise.end(), i) != s.pointwise.end()))
      kgens.push_back(i);
  s.K = detail::subgroup_closure(G, kgens);
  // cosets of K in setwise
  s.cosets.clear();
  {
    std::set<int> seen;
    std::vector<int> setw = s.setwise;
    std::sort(setw.begin(), setw.end());
    std::set<int> kset(s.K.begin(), s.K.end());
    for (int i : setw) {
      if (seen.count(i)) continue;
      std::vector<int> coset;
      for (int k : s.K) {
        int p = G.table[i][k];
        coset.push_back(p);
        seen.insert(p);
      }
      std::sort(coset.begin(), coset.end());
      s.cosets.push_back(coset);
    }
    // put the coset containing the identity first
    for (size_t c = 0; c < s.cosets.size(); ++c)
      if (std::binary_search(s.cosets[c].begin(), s.cosets[c].end(), 0)) {
        std::swap(s.cosets[0], s.cosets[c]);
        break;
      }
  }
  s.H_order = (int)s.cosets.size();
  // plane-coordinate data: lattice of base-torus translations
  std::vector<std::vector<Rational>> lat_gens;
  for (int i = 0; i < d; ++i) {
    std::vector<Rational> e(d);
    e[i] = 1;
    lat_gens.push_back(e);
  }
  for (int i : s.setwise) {
    const AffineIsometry& e = G.elements[i];
    if (!e.linear_is_identity()) continue;
    auto y = e.apply(rep.basepoint);
    std::vector<Rational> c(7);
    for (int r = 0; r < 7; ++r) c[r] = y[r] - rep.basepoint[r];
    auto sol = solve_in_span(B, c);
    if (sol) lat_gens.push_back(sol->first);
  }
  {
    Integer q = 1;
    for (auto& v : lat_gens)
      for (auto& x : v) q = boost::multiprecision::lcm(q, den(x));
    ZMat gi(d, (int)lat_gens.size());
    for (size_t c = 0; c < lat_gens.size(); ++c)
      for (int r = 0; r < d; ++r) gi(r, (int)c) = num(lat_gens[c][r] * Rational(q));
    ZMat H = hnf_column_basis(gi);
    s.lattice = to_q(H) * (Rational(1) / Rational(q));
  }
  // per-coset action data and freeness
  s.coset_torus_action.clear();
  s.coset_torus_shift.clear();
  s.coset_free.assign(s.cosets.size(), true);
  QMat P = s.lattice;
  QMat Pinv = (d > 0) ? inverse(P) : QMat(0, 0);
  for (size_t ci = 0; ci < s.cosets.size(); ++ci) {
    int repi = s.cosets[ci][0];
    // prefer the identity as representative of K
    if (ci == 0) repi = 0;
    const AffineIsometry& e = G.elements[repi];
    auto M = plane_action(B, e.linear);
    ZMat Mm = M ? *M : ZMat::identity(d);
    auto y = e.apply(rep.basepoint);
    std::vector<Rational> c(7);
    for (int r = 0; r < 7; ++r) c[r] = y[r] - rep.basepoint[r];
    auto sol = solve_in_span(B, c);
    std::vector<Rational> mu = sol ? sol->first : std::vector<Rational>(d);
    s.coset_torus_action.push_back(Mm);
    s.coset_torus_shift.push_back(mu);
    if (ci == 0) continue;
    // free on the base torus iff (M−I)λ ≡ −mu (mod lattice) has no solution
    QMat MI(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) MI(i, j) = Rational(Mm(i, j)) - (i == j ? 1 : 0);
    QMat Aq = Pinv * MI * P;
    ZMat A(d, d);
    bool integral = true;
    for (int i = 0; i < d && integral; ++i)
      for (int j = 0; j < d; ++j)
        if (is_integer(Aq(i, j))) A(i, j) = num(Aq(i, j)); else { integral = false; break; }
    bool has_fixed = false;
    if (integral) {
      auto b = Pinv.apply(mu);
      auto sm = smith_normal_form(A);
      std::vector<Rational> Ub(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Ub[i] += Rational(sm.u(i, j)) * b[j];
      has_fixed = true;
      for (int i = sm.rank; i < d; ++i)
        if (!is_integer(Ub[i])) { has_fixed = false; break; }
    }
    s.coset_free[ci] = !has_fixed;
    if (has_fixed) s.admissible_base = false;
  }
  if (s.H_order == 1) {
    s.base_type = "T" + std::to_string(d);
  } else {
    // cyclicity of H via the coset multiplication
    auto coset_of = [&](int el) {
      for (size_t c = 0; c < s.cosets.size(); ++c)
        if (std::binary_search(s.cosets[c].begin(), s.cosets[c].end(), el)) return (int)c;
      return -1;
    };
    bool cyclic = false;
    for (size_t c = 1; c < s.cosets.size(); ++c) {
      int o = 1, cur = s.cosets[c][0];
      while (coset_of(cur) != 0) { cur = G.table[cur][s.cosets[c][0]]; ++o; }
      if (o == s.H_order) { cyclic = true; break; }
    }
    s.base_type = "T" + std::to_string(d) + (cyclic ? "/Z" : "/H") + std::to_string(s.H_order);
  }
}

inline SingularSet singular_set(const OrbifoldPresentation& Y, int bound = 10000) {
  Y.validate();
  auto Gopt = group_closure(Y.generators, bound);
  if (!Gopt) throw std::domain_error("NotClosed: group closure exceeds bound");
  SingularSet S;
  S.group = std::move(*Gopt);
  const ClosedGroup& G = S.group;
  std::set<AffineSubtorus> comps;
  for (int i = 1; i < G.order(); ++i) {
    auto f = fixed_locus(G.elements[i]);
    S.components_per_element[i] = (int)f.size();
    comps.insert(f.begin(), f.end());
  }
  // orbit decomposition under the full group
  std::set<AffineSubtorus> unseen = comps;
  std::vector<SingularStratum> strata;
  while (!unseen.empty()) {
    AffineSubtorus seed = *unseen.begin();
    std::set<AffineSubtorus> orbit;
    std::deque<AffineSubtorus> queue{seed};
    orbit.insert(seed);
    while (!queue.empty()) {
      AffineSubtorus cur = queue.front();
      queue.pop_front();
      for (auto& g : Y.generators) {
        auto img = transform(g.map, cur);
        if (orbit.insert(img).second) queue.push_back(img);
      }
    }
    SingularStratum st;
    st.rep = *orbit.begin();  // canonical: minimal component
    st.orbit.assign(orbit.begin(), orbit.end());
    st.orbit_size = (int)orbit.size();
    analyze_stratum(G, st);
    strata.push_back(std::move(st));
    for (auto& t : orbit) unseen.erase(t);
  }
  // directions compare by pivot rows first, so that e.g. span(e1,e4,e5)
  // precedes span(e2,e4,e6)
  auto pivot_rows = [](const ZMat& d) {
    std::vector<int> p;
    for (int c = 0; c < d.cols; ++c)
      for (int r = 0; r < d.rows; ++r)
        if (d(r, c) != 0) { p.push_back(r); break; }
    std::sort(p.begin(), p.end());
    return p;
  };
  std::sort(strata.begin(), strata.end(),
            [&](const SingularStratum& a, const SingularStratum& b) {
    if (a.rep.dim() != b.rep.dim()) return a.rep.dim() < b.rep.dim();
    if (a.base_type != b.base_type) return a.base_type < b.base_type;
    auto pa = pivot_rows(a.rep.directions), pb = pivot_rows(b.rep.directions);
    if (pa != pb) return pa < pb;
    if (!(a.rep.directions == b.rep.directions)) return a.rep.directions < b.rep.directions;
    return a.rep.basepoint < b.rep.basepoint;
  });
  for (size_t i = 0; i < strata.size(); ++i) strata[i].name = "S_" + std::to_string(i + 1);
  S.strata = std::move(strata);
  return S;
}

// ---------------------------------------------------------------------------
// Local models (T^3 × C^2/G)/H.

struct LocalModel {
  std::vector<int> torus_coords, normal_coords;
  HyperkahlerTriple triple;
  std::string ade;  // "A1", "A2", ..., "D4", ..., "E6", "E7", "E8"
  int G_order = 1;
  int G_generator = 0;                 // element id of a cyclic generator (cyclic case)
  std::vector<int> G_elements;         // nontrivial pointwise element ids
  std::vector<QMat> G_normal_actions;  // 4×4 blocks
  int H_order = 1;
  std::string base_type;
  std::vector<int> H_reps;                               // nontrivial coset reps
  std::vector<ZMat> H_torus_actions;                     // on plane coordinates
  std::vector<std::vector<Rational>> H_torus_shifts;
  std::vector<QMat> H_triple_actions;                    // 3×3 on (ω1, ω2, ω3)
  std::vector<int> H_fixed_omega;                        // 1..3, or 0 when none/identity
};

struct LocalModelOutcome {
  bool admissible = false;
  std::string reason;  // NotAdmissibleReason when !admissible
  LocalModel model;
};

inline LocalModelOutcome local_model(const ClosedGroup& G, const SingularStratum& s,
                                     const AlternatingForm& phi) {
  LocalModelOutcome out;
  LocalModel& m = out.model;
  if (s.rep.dim() != 3)
    throw std::domain_error("Unsupported: local models require 3-dimensional strata");
  // coordinate-aligned directions required for the triple extraction
  for (int c = 0; c < 3; ++c) {
    int hit = -1;
    for (int r = 0; r < 7; ++r) {
      if (s.rep.directions(r, c) == 0) continue;
      if (hit >= 0 || s.rep.directions(r, c) != 1) hit = -2;
      else if (hit == -1) hit = r;
    }
    if (hit < 0) throw std::domain_error("Unsupported: stratum directions are not coordinate axes");
    m.torus_coords.push_back(hit + 1);
  }
  std::sort(m.torus_coords.begin(), m.torus_coords.end());
  m.triple = extract_triple(phi, m.torus_coords);
  m.normal_coords = m.triple.normal;

  // G: pointwise stabilizer must fix the triple (i.e. lie in SU(2))
  m.G_order = (int)s.pointwise.size();
  if (m.G_order <= 1) {
    out.admissible = false;
    out.reason = "trivial pointwise stabilizer";
    return out;
  }
  for (int i : s.pointwise) {
    if (i == 0) continue;
    m.G_elements.push_back(i);
    const AffineIsometry& e = G.elements[i];
    QMat blk(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        blk(r, c) = Rational(e.linear(m.normal_coords[r] - 1, m.normal_coords[c] - 1));
    m.G_normal_actions.push_back(blk);
    for (int w = 0; w < 3; ++w)
      if (!(pullback(linear_as_q(e), m.triple.omega[w]) == m.triple.omega[w])) {
        out.admissible = false;
        out.reason = "normal action of a pointwise stabilizer does not fix the hyperkahler triple";
        return out;
      }
  }
  // classify G
  {
    int k = m.G_order;
    int maxo = 1, gen = 0;
    for (int i : s.pointwise) {
      if (i == 0) continue;
      int o = G.element_order(i);
      if (o > maxo) { maxo = o; gen = i; }
    }
    if (maxo == k) {
      m.ade = "A" + std::to_string(k - 1);
      m.G_generator = gen;
    } else if (2 * maxo == k && k % 4 == 0) {
      m.ade = "D" + std::to_string(k / 4 + 2);
    } else if (k == 24) {
      m.ade = "E6";
    } else if (k == 48) {
      m.ade = "E7";
    } else if (k == 120) {
      m.ade = "E8";
    } else {
      throw std::domain_error("Unsupported: unrecognized pointwise stabilizer structure");
    }
  }
  // H: residual action
  m.H_order = s.H_order;
  m.base_type = s.base_type;
  if (!s.admissible_base) {
    out.admissible = false;
    out.reason = "residual group does not act freely on the T3 factor";
    return out;
  }
  auto pairs = index_pairs();
  QMat Om(21, 3);
  for (int w = 0; w < 3; ++w)
    for (int i = 0; i < 21; ++i) Om(i, w) = m.triple.omega[w].coefficient(pairs[i]);
  for (size_t ci = 1; ci < s.cosets.size(); ++ci) {
    int repi = s.cosets[ci][0];
    m.H_reps.push_back(repi);
    m.H_torus_actions.push_back(s.coset_torus_action[ci]);
    m.H_torus_shifts.push_back(s.coset_torus_shift[ci]);
    const AffineIsometry& e = G.elements[repi];
    // solve pullback(ω_i) = Σ_j R(j,i) ω_j exactly
    QMat aug(21, 3 + 3);
    for (int i = 0; i < 21; ++i)
      for (int w = 0; w < 3; ++w) aug(i, w) = Om(i, w);
    for (int w = 0; w < 3; ++w) {
      auto p = pullback(linear_as_q(e), m.triple.omega[w]);
      for (int i = 0; i < 21; ++i) aug(i, 3 + w) = p.coefficient(pairs[i]);
    }
    auto pivots = rref(aug);
    QMat R(3, 3);
    bool consistent = true;
    for (size_t r = 0; r < pivots.size(); ++r)
      if (pivots[r] >= 3) consistent = false;
    if (consistent)
      for (int r = 0; r < (int)pivots.size(); ++r)
        for (int w = 0; w < 3; ++w) R(pivots[r], w) = aug(r, 3 + w);
    if (!consistent) {
      out.admissible = false;
      out.reason = "residual action does not preserve the span of the hyperkahler triple";
      return out;
    }
    m.H_triple_actions.push_back(R);
    int fixed = 0;
    for (int w = 0; w < 3; ++w) {
      bool ax = true;
      for (int r = 0; r < 3; ++r)
        if (R(r, w) != (r == w ? 1 : 0)) ax = false;
      if (ax && fixed == 0) fixed = w + 1;
    }
    if (R == QMat::identity(3)) fixed = 0;
    m.H_fixed_omega.push_back(fixed);
  }
  out.admissible = true;
  return out;
}

// ---------------------------------------------------------------------------
// Deck group relations and local fundamental groups.

struct DeckRelation {
  std::string lhs;                  // e.g. "sigma2^2" or "[alpha,beta]"
  bool in_lattice = false;
  std::vector<Rational> lattice;    // translation closing the relation (integral when in_lattice)
};

struct DeckGroup {
  ClosedGroup point_group;
  std::vector<DeckRelation> relations;
};

inline DeckGroup deck_group(const OrbifoldPresentation& Y, int bound = 10000) {
  Y.validate();
  auto Gopt = group_closure(Y.generators, bound);
  if (!Gopt) throw std::domain_error("NotClosed: group closure exceeds bound");
  DeckGroup D;
  D.point_group = std::move(*Gopt);
  for (auto& g : Y.generators) {
    int i = D.point_group.idx(g.map);
    int o = D.point_group.element_order(i);
    AffineIsometry p = AffineIsometry::identity();
    for (int k = 0; k < o; ++k) p = p.compose(g.map);
    DeckRelation r;
    r.lhs = g.name + "^" + std::to_string(o);
    r.lattice = p.translation;
    r.in_lattice = p.linear_is_identity();
    for (auto& x : p.translation)
      if (!is_integer(x)) r.in_lattice = false;
    D.relations.push_back(r);
  }
  for (size_t i = 0; i < Y.generators.size(); ++i)
    for (size_t j = i + 1; j < Y.generators.size(); ++j) {
      const auto& a = Y.generators[i].map;
      const auto& b = Y.generators[j].map;
      AffineIsometry c = a.compose(b).compose(a.inverse()).compose(b.inverse());
      DeckRelation r;
      r.lhs = "[" + Y.generators[i].name + "," + Y.generators[j].name + "]";
      r.lattice = c.translation;
      r.in_lattice = c.linear_is_identity();
      for (auto& x : c.translation)
        if (!is_integer(x)) r.in_lattice = false;
      D.relations.push_back(r);
    }
  return D;
}

struct LocalFundamentalGroup {
  AffineSubtorus lifted;                  // the chosen lifted component
  std::vector<AffineIsometry> z3_gens;    // lattice translations along the plane
  std::vector<AffineIsometry> g_gens;     // pointwise stabilizer lifts
  std::vector<AffineIsometry> h_gens;     // residual coset lifts
};

inline LocalFundamentalGroup local_pi1(const ClosedGroup& G, const SingularStratum& s) {
  LocalFundamentalGroup L;
  L.lifted = s.rep;
  const ZMat& B = s.rep.directions;
  const auto& x0 = s.rep.basepoint;
  int d = B.cols;
  for (int c = 0; c < d; ++c) {
    std::vector<Rational> v(7);
    for (int r = 0; r < 7; ++r)
      for (int k = 0; k < d; ++k) v[r] += Rational(B(r, k)) * s.lattice(k, c);
    L.z3_gens.push_back(AffineIsometry::pure_translation(v));
  }
  for (int i : s.pointwise) {
    if (i == 0) continue;
    AffineIsometry e = G.elements[i];
    auto y = e.apply(x0);
    for (int r = 0; r < 7; ++r) e.translation[r] += x0[r] - y[r];
    L.g_gens.push_back(e);
  }
  for (size_t ci = 1; ci < s.cosets.size(); ++ci) {
    AffineIsometry e = G.elements[s.cosets[ci][0]];
    auto y = e.apply(x0);
    std::vector<Rational> c(7);
    for (int r = 0; r < 7; ++r) c[r] = y[r] - x0[r];
    auto sol = solve_in_span(B, c);
    if (!sol) throw std::logic_error("setwise stabilizer without plane-parallel lift");
    for (int r = 0; r < 7; ++r) e.translation[r] += Rational(sol->second[r]);
    L.h_gens.push_back(e);
  }
  return L;
}

// Does g map the lifted plane (basepoint + span directions, in R^7, no mod 1)
// to itself?
inline bool stabilizes_lifted_plane(const AffineIsometry& g, const AffineSubtorus& s) {
  // need L·span(B) = span(B) and g(x0) − x0 ∈ span(B) over the *reals*, i.e.
  // exactly in the rational span
  QMat Bq = to_q(s.directions);
  int d = s.directions.cols;
  QMat LB(7, d);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < d; ++j) {
      Rational v = 0;
      for (int k = 0; k < 7; ++k) v += Rational(g.linear(i, k)) * Bq(k, j);
      LB(i, j) = v;
    }
  QMat cat(7, 2 * d);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < d; ++j) { cat(i, j) = Bq(i, j); cat(i, d + j) = LB(i, j); }
  if (rank(cat) != rank(Bq)) return false;
  auto y = g.apply(s.basepoint);
  QMat aug(7, d + 1);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < d; ++j) aug(i, j) = Bq(i, j);
    aug(i, d) = y[i] - s.basepoint[i];
  }
  for (int c : rref(aug))
    if (c == d) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Canonical form for finitely generated deck subgroups (translation lattice +
// finitely many cosets), used for conjugacy comparisons of local π1's.

struct DeckSubgroup {
  QMat lattice{7, 0};  // canonical basis of the translation part (columns)
  std::vector<std::pair<ZMat, std::vector<Rational>>> cosets;  // sorted, translations reduced

  bool operator==(const DeckSubgroup& o) const {
    return lattice == o.lattice && cosets == o.cosets;
  }
};

namespace detail {

inline QMat canonical_lattice(const std::vector<std::vector<Rational>>& gens) {
  if (gens.empty()) return QMat(7, 0);
  Integer q = 1;
  for (auto& v : gens)
    for (auto& x : v) q = boost::multiprecision::lcm(q, den(x));
  ZMat gi(7, (int)gens.size());
  for (size_t c = 0; c < gens.size(); ++c)
    for (int r = 0; r < 7; ++r) gi(r, (int)c) = num(gens[c][r] * Rational(q));
  ZMat H = hnf_column_basis(gi);
  return to_q(H) * (Rational(1) / Rational(q));
}

// reduce v modulo integer combinations of lattice columns (HNF, pivots in
// increasing rows); canonical representative
inline std::vector<Rational> reduce_mod_lattice(std::vector<Rational> v, const QMat& lat) {
  for (int c = 0; c < lat.cols; ++c) {
    int p = -1;
    for (int r = 0; r < 7; ++r)
      if (lat(r, c) != 0) { p = r; break; }
    if (p < 0) continue;
    Integer f = rfloor(v[p] / lat(p, c));
    if (f != 0)
      for (int r = 0; r < 7; ++r) v[r] -= Rational(f) * lat(r, c);
  }
  return v;
}

}  // namespace detail

inline DeckSubgroup canonical_subgroup(const std::vector<AffineIsometry>& gens, int bound = 10000) {
  std::vector<std::vector<Rational>> lat_gens;
  std::vector<AffineIsometry> work;
  for (auto& g : gens) {
    if (g.linear_is_identity()) lat_gens.push_back(g.translation);
    else work.push_back(g);
    work.push_back(g.inverse());
  }
  while (true) {
    QMat lat = detail::canonical_lattice(lat_gens);
    std::map<ZMat, std::vector<Rational>> cosets;
    cosets[ZMat::identity(7)] = std::vector<Rational>(7);
    std::deque<AffineIsometry> queue;
    queue.push_back(AffineIsometry::identity());
    bool grew = false;
    int steps = 0;
    while (!queue.empty() && !grew) {
      AffineIsometry e = queue.front();
      queue.pop_front();
      for (auto& g : work) {
        if (++steps > bound) throw std::domain_error("NotClosed: deck subgroup closure exceeds bound");
        AffineIsometry p = e.compose(g);
        auto t = detail::reduce_mod_lattice(p.translation, lat);
        auto it = cosets.find(p.linear);
        if (it == cosets.end()) {
          cosets[p.linear] = t;
          AffineIsometry rep;
          rep.linear = p.linear;
          rep.translation = t;
          queue.push_back(rep);
        } else if (!(it->second == t)) {
          // difference is a new pure translation in the subgroup
          std::vector<Rational> diff(7);
          bool nz = false;
          for (int r = 0; r < 7; ++r) {
            diff[r] = t[r] - it->second[r];
            if (diff[r] != 0) nz = true;
          }
          if (nz) {
            lat_gens.push_back(diff);
            grew = true;
            break;
          }
        }
      }
    }
    if (grew) continue;
    DeckSubgroup out;
    out.lattice = lat;
    for (auto& [l, t] : cosets) out.cosets.emplace_back(l, t);
    std::sort(out.cosets.begin(), out.cosets.end());
    return out;
  }
}

}  // namespace g2glue
