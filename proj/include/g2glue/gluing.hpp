#pragma once

#include "g2glue/ade.hpp"
#include "g2glue/orbifold.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace g2glue {

// ---------------------------------------------------------------------------
// SO(3) gauge elements with exact entries.

struct GaugeElement {
  QMat matrix = QMat::identity(3);
  std::string label;  // "1", "a", "b", "c" for Klein group members; else ""

  static GaugeElement identity() { return GaugeElement{QMat::identity(3), "1"}; }

  bool is_identity() const { return matrix == QMat::identity(3); }

  GaugeElement operator*(const GaugeElement& o) const {
    GaugeElement r;
    r.matrix = matrix * o.matrix;
    return r;
  }

  GaugeElement inverse() const {
    GaugeElement r;
    r.matrix = matrix.transpose();  // orthogonal
    return r;
  }

  bool operator==(const GaugeElement& o) const { return matrix == o.matrix; }

  void check() const {
    if (!(matrix.transpose() * matrix == QMat::identity(3)) || determinant(matrix) != 1)
      throw std::invalid_argument("gauge element must be exact SO(3)");
  }
};

inline GaugeElement klein_element(const std::string& name) {
  GaugeElement g;
  g.label = name;
  auto diag = [](int a, int b, int c) {
    QMat m(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
  };
  if (name == "1" || name == "e" || name == "id") { g.matrix = diag(1, 1, 1); g.label = "1"; }
  else if (name == "a") g.matrix = diag(1, -1, -1);
  else if (name == "b") g.matrix = diag(-1, 1, -1);
  else if (name == "c") g.matrix = diag(-1, -1, 1);
  else throw std::invalid_argument("unknown Klein group element: " + name);
  return g;
}

inline std::vector<GaugeElement> klein_group() {
  return {klein_element("1"), klein_element("a"), klein_element("b"), klein_element("c")};
}

inline std::string gauge_label(const GaugeElement& g) {
  for (auto& v : klein_group())
    if (v == g) return v.label;
  return "<matrix>";
}

// ---------------------------------------------------------------------------
// Flat connection representations of the deck group.

struct FlatConnectionRep {
  std::map<std::string, GaugeElement> assignment;  // generator name -> image
  // tau1..tau7 may be assigned; default is the identity
};

struct ValidatedRep {
  bool ok = false;
  std::string violation;
  std::vector<GaugeElement> gen_images;            // parallel to presentation generators
  std::array<GaugeElement, 7> tau_images;
  std::vector<GaugeElement> element_images;        // parallel to closure elements
  std::vector<AffineIsometry> exact_elements;      // unreduced word representatives
};

inline GaugeElement gauge_power(const GaugeElement& g, const Integer& n) {
  GaugeElement base = n < 0 ? g.inverse() : g;
  Integer k = n < 0 ? -n : n;
  GaugeElement r = GaugeElement::identity();
  for (Integer i = 0; i < k; ++i) r = r * base;
  return r;
}

inline ValidatedRep validate_rep(const FlatConnectionRep& rep, const ClosedGroup& G) {
  ValidatedRep V;
  for (auto& g : G.generators) {
    auto it = rep.assignment.find(g.name);
    if (it == rep.assignment.end()) {
      V.violation = "RelationViolation: no image assigned to generator '" + g.name + "'";
      return V;
    }
    it->second.check();
    V.gen_images.push_back(it->second);
  }
  for (int i = 0; i < 7; ++i) {
    auto it = rep.assignment.find("tau" + std::to_string(i + 1));
    V.tau_images[i] = it == rep.assignment.end() ? GaugeElement::identity() : it->second;
    V.tau_images[i].check();
  }
  auto tau_image = [&](const std::vector<Rational>& v) {
    GaugeElement r = GaugeElement::identity();
    for (int i = 0; i < 7; ++i) {
      if (!is_integer(v[i])) throw std::logic_error("non-integral lattice vector");
      r = r * gauge_power(V.tau_images[i], num(v[i]));
    }
    return r;
  };
  // exact word representatives and their images
  for (int i = 0; i < G.order(); ++i) {
    AffineIsometry e = AffineIsometry::identity();
    GaugeElement img = GaugeElement::identity();
    for (int gi : G.words[i]) {
      e = e.compose(G.generators[gi].map);
      img = img * V.gen_images[gi];
    }
    V.exact_elements.push_back(e);
    V.element_images.push_back(img);
  }
  // relation check: for all pairs, exact_i ∘ exact_j = tau_v ∘ exact_k
  for (int i = 0; i < G.order(); ++i)
    for (int j = 0; j < G.order(); ++j) {
      int k = G.table[i][j];
      AffineIsometry p = V.exact_elements[i].compose(V.exact_elements[j]);
      std::vector<Rational> v(7);
      for (int r = 0; r < 7; ++r) v[r] = p.translation[r] - V.exact_elements[k].translation[r];
      GaugeElement lhs = V.element_images[i] * V.element_images[j];
      GaugeElement rhs = tau_image(v) * V.element_images[k];
      if (!(lhs == rhs)) {
        V.violation = "RelationViolation: images break the relation closing element #" +
                      std::to_string(i) + " * #" + std::to_string(j);
        return V;
      }
    }
  // lattice conjugation: g tau_i g^{-1} = tau_{L e_i}
  for (int i = 0; i < G.order(); ++i)
    for (int c = 0; c < 7; ++c) {
      std::vector<Rational> v(7);
      for (int r = 0; r < 7; ++r) v[r] = Rational(G.elements[i].linear(r, c));
      GaugeElement lhs = V.element_images[i] * V.tau_images[c] * V.element_images[i].inverse();
      if (!(lhs == tau_image(v))) {
        V.violation = "RelationViolation: lattice conjugation fails for tau" + std::to_string(c + 1);
        return V;
      }
    }
  V.ok = true;
  return V;
}

// Image of an arbitrary exact deck transformation under the validated rep.
inline GaugeElement rep_image(const ValidatedRep& V, const ClosedGroup& G,
                              const AffineIsometry& g) {
  int k = G.idx(g);
  if (k < 0) throw std::invalid_argument("element not in the deck group");
  std::vector<Rational> v(7);
  for (int r = 0; r < 7; ++r) v[r] = g.translation[r] - V.exact_elements[k].translation[r];
  GaugeElement t = GaugeElement::identity();
  for (int i = 0; i < 7; ++i) {
    if (!is_integer(v[i])) throw std::logic_error("non-integral lattice offset");
    t = t * gauge_power(V.tau_images[i], num(v[i]));
  }
  return t * V.element_images[k];
}

// ---------------------------------------------------------------------------
// Monodromy restriction along a stratum's local fundamental group.

struct MonodromyRestriction {
  bool g_trivial = true;
  int g_weight = 0;                       // weight of mu|G for cyclic G
  std::vector<Rational> axis;             // rotation axis of mu(G) when nontrivial
  std::vector<GaugeElement> g_images;     // images of the G generators
  std::vector<GaugeElement> h_images;     // images of the H coset lifts
  std::vector<GaugeElement> z3_images;    // images of the Z^3 generators
  bool z3_trivial = true;
};

inline std::vector<Rational> rotation_axis(const QMat& R) {
  QMat M = R - QMat::identity(3);
  auto k = kernel_basis(M);
  if (k.size() != 1) throw std::domain_error("Unsupported: gauge image has no unique rotation axis");
  return k[0];
}

inline MonodromyRestriction monodromy_restriction(const ValidatedRep& V, const ClosedGroup& G,
                                                  const LocalFundamentalGroup& lp, int G_order) {
  MonodromyRestriction m;
  for (auto& g : lp.g_gens) m.g_images.push_back(rep_image(V, G, g));
  for (auto& g : lp.h_gens) m.h_images.push_back(rep_image(V, G, g));
  for (auto& g : lp.z3_gens) {
    m.z3_images.push_back(rep_image(V, G, g));
    if (!m.z3_images.back().is_identity()) m.z3_trivial = false;
  }
  for (auto& img : m.g_images)
    if (!img.is_identity()) m.g_trivial = false;
  if (!m.g_trivial) {
    // weight of a cyclic monodromy: match the trace 1 + 2cos(2 pi w / k)
    const GaugeElement* gen = nullptr;
    for (auto& img : m.g_images)
      if (!img.is_identity()) { gen = &img; break; }
    m.axis = rotation_axis(gen->matrix);
    if (G_order == 2) {
      m.g_weight = 1;
    } else {
      Rational tr = gen->matrix(0, 0) + gen->matrix(1, 1) + gen->matrix(2, 2);
      int found = 0;
      for (int w = 1; w < G_order; ++w) {
        auto c = Cyclotomic::two_cos(G_order, w).as_rational();
        if (c && Rational(1) + *c == tr) { found = w; break; }
      }
      if (found == 0) throw std::domain_error("Unsupported: irrational monodromy weight");
      m.g_weight = found;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Regularity of the induced flat connection.

struct RegularityResult {
  bool regular = false;
  int fixed_dim_g = 0;
  int fixed_dim_R7g = 0;
};

inline RegularityResult regularity_check(const ValidatedRep& V, const ClosedGroup& G) {
  // stack (R - I) for the so(3)-action and (L (x) R - I) for R^7 (x) so(3)
  std::vector<QMat> small, big;
  auto add = [&](const QMat& L, const QMat& R) {
    small.push_back(R - QMat::identity(3));
    QMat M(21, 21);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) M(3 * i + a, 3 * j + b) = L(i, j) * R(a, b);
    big.push_back(M - QMat::identity(21));
  };
  for (size_t gi = 0; gi < G.generators.size(); ++gi)
    add(linear_as_q(G.generators[gi].map), V.gen_images[gi].matrix);
  for (int i = 0; i < 7; ++i) add(QMat::identity(7), V.tau_images[i].matrix);
  auto common_fixed = [](const std::vector<QMat>& mats, int n) {
    QMat stack((int)mats.size() * n, n);
    for (size_t m = 0; m < mats.size(); ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) stack((int)m * n + i, j) = mats[m](i, j);
    return n - rank(stack);
  };
  RegularityResult r;
  r.fixed_dim_g = common_fixed(small, 3);
  r.fixed_dim_R7g = common_fixed(big, 21);
  r.regular = r.fixed_dim_g == 0 && r.fixed_dim_R7g == 0;
  return r;
}

// ---------------------------------------------------------------------------
// H-lift rule engine.

// Sign of the induced action on H^2(X) for a Z_2 residual action whose fixed
// complex-structure axis is omega_{f}, depending on how the singularity is
// desingularised.  The resolution is Kahler for omega_1; an action rotating
// (omega_2, omega_3) about omega_1 negates H^2 of the resolution and fixes
// H^2 of the smoothing, and the roles swap for the other axes.
inline int h2_action_sign(const std::string& choice, int fixed_omega) {
  bool resolution = choice == "resolution";
  if (fixed_omega == 0) return 1;  // acts trivially on the triple
  if (resolution) return fixed_omega == 1 ? -1 : 1;
  return fixed_omega == 1 ? 1 : -1;
}

struct LiftOutcome {
  bool exists = false;
  std::string rule;
  std::string reason;  // when obstructed
  GaugeElement decoration = GaugeElement::identity();
};

// Decides whether the Z_2-action on the desingularisation X lifts to
// (E, A) with the prescribed boundary gauge action.
inline LiftOutcome lift_existence(const InstantonDescriptor& d, const std::string& choice,
                                  int fixed_omega, const GaugeElement& boundary_action,
                                  const std::vector<Rational>& axis) {
  LiftOutcome out;
  if (d.kind == "Trivial") {
    out.exists = true;
    out.rule = "trivial-bundle";
    out.decoration = boundary_action;
    return out;
  }
  int s = h2_action_sign(choice, fixed_omega);
  if (s == -1) {
    out.reason = "Obstructed: the residual action acts by -1 on H^2(X), no lift preserves A";
    out.rule = "h2-sign";
    return out;
  }
  if (boundary_action.is_identity()) {
    out.exists = true;
    out.rule = "h2-sign";
    out.decoration = boundary_action;
    return out;
  }
  // nontrivial boundary action: must be realizable by a constant gauge
  // transformation preserving A, i.e. a rotation about the descriptor axis
  if (boundary_action.matrix.apply(axis) == axis) {
    out.exists = true;
    out.rule = "h2-sign+compose-constant-gauge";
    out.decoration = boundary_action;
    return out;
  }
  out.reason = "Obstructed: boundary action is not realizable by a constant gauge preserving A";
  out.rule = "boundary-gauge";
  return out;
}

// ---------------------------------------------------------------------------
// Gluing-data search and certificates.

struct StratumGluing {
  std::string stratum;
  std::string choice;  // "resolution" | "smoothing"
  InstantonDescriptor descriptor;
  bool ok = false;
  std::string rule;
  std::string obstruction;
  GaugeElement decoration = GaugeElement::identity();
  std::vector<std::string> m_assignment;  // gauge labels for the Z^3 generators
  int h2_sign = 1;
};

struct GluingResult {
  bool certified = false;
  std::vector<StratumGluing> strata;
  std::vector<std::string> obstructions;
};

struct StratumContext {
  const SingularStratum* stratum = nullptr;
  LocalModelOutcome model;
  LocalFundamentalGroup pi1;
  MonodromyRestriction mu;
};

inline std::vector<StratumContext> analyze_strata(const SingularSet& S, const ValidatedRep& V,
                                                  const AlternatingForm& phi) {
  std::vector<StratumContext> out;
  for (auto& s : S.strata) {
    StratumContext c;
    c.stratum = &s;
    c.model = local_model(S.group, s, phi);
    c.pi1 = local_pi1(S.group, s);
    c.mu = monodromy_restriction(V, S.group, c.pi1, c.model.model.G_order);
    out.push_back(std::move(c));
  }
  return out;
}

inline GluingResult find_gluing_data(const SingularSet& S, const ValidatedRep& V,
                                     const std::map<std::string, std::string>& choices,
                                     const AlternatingForm& phi) {
  GluingResult R;
  auto contexts = analyze_strata(S, V, phi);
  for (auto& c : contexts) {
    StratumGluing sg;
    sg.stratum = c.stratum->name;
    auto itc = choices.find(sg.stratum);
    sg.choice = itc == choices.end() ? "resolution" : itc->second;
    if (sg.choice != "resolution" && sg.choice != "smoothing")
      throw std::invalid_argument("bad resolution choice for " + sg.stratum);
    if (!c.model.admissible) {
      sg.obstruction = "NotAdmissible: " + c.model.reason;
      R.strata.push_back(sg);
      R.obstructions.push_back(sg.stratum + ": " + sg.obstruction);
      continue;
    }
    const LocalModel& lm = c.model.model;
    // descriptor from mu|G
    if (c.mu.g_trivial) {
      sg.descriptor = instanton_descriptor(lm.G_order, 0, 0);
    } else {
      if (lm.ade[0] != 'A')
        throw std::domain_error("Unsupported: concrete descriptors exist only for cyclic G");
      sg.descriptor = instanton_descriptor(lm.G_order, 0, c.mu.g_weight);
    }
    int fixed_omega = lm.H_fixed_omega.empty() ? 0 : lm.H_fixed_omega[0];
    sg.h2_sign = lm.H_order > 1 ? h2_action_sign(sg.choice, fixed_omega) : 1;
    bool ok = true;
    // H-bullet: lift of the residual action, with the monodromy boundary value
    if (lm.H_order > 1) {
      if (lm.H_order != 2) throw std::domain_error("Unsupported: residual group larger than Z_2");
      GaugeElement w = c.mu.h_images.empty() ? GaugeElement::identity() : c.mu.h_images[0];
      auto lo = lift_existence(sg.descriptor, sg.choice, fixed_omega, w,
                               c.mu.g_trivial ? std::vector<Rational>{} : c.mu.axis);
      sg.rule = lo.rule;
      if (!lo.exists) {
        sg.obstruction = lo.reason;
        ok = false;
      } else {
        sg.decoration = lo.decoration;
      }
    } else {
      sg.rule = "no-residual-action";
    }
    // Z^3-bullet: monodromy along the stratum lattice must preserve A
    if (ok && sg.descriptor.kind != "Trivial") {
      for (auto& mz : c.mu.z3_images) {
        if (mz.is_identity()) continue;
        if (!(mz.matrix.apply(c.mu.axis) == c.mu.axis)) {
          sg.obstruction =
              "Obstructed: lattice monodromy does not preserve the instanton (off-axis gauge action)";
          ok = false;
          break;
        }
      }
    }
    for (auto& mz : c.mu.z3_images) sg.m_assignment.push_back(gauge_label(mz));
    // commutation bullet: decoration conjugates m as H conjugates the lattice
    if (ok && lm.H_order > 1) {
      for (size_t hi = 0; hi < c.pi1.h_gens.size() && ok; ++hi) {
        const AffineIsometry& h = c.pi1.h_gens[hi];
        for (size_t zi = 0; zi < c.pi1.z3_gens.size(); ++zi) {
          AffineIsometry conj = h.compose(c.pi1.z3_gens[zi]).compose(h.inverse());
          GaugeElement lhs = sg.decoration * c.mu.z3_images[zi] * sg.decoration.inverse();
          GaugeElement rhs = rep_image(V, S.group, conj);
          if (!(lhs == rhs)) {
            sg.obstruction = "Obstructed: decoration fails the lattice commutation condition";
            ok = false;
            break;
          }
        }
      }
    }
    sg.ok = ok;
    if (!ok) R.obstructions.push_back(sg.stratum + ": " + sg.obstruction);
    R.strata.push_back(sg);
  }
  R.certified = R.obstructions.empty();
  return R;
}

// ---------------------------------------------------------------------------
// Topology report.

struct TopologyReport {
  std::vector<std::pair<std::string, Rational>> p1;          // stratum -> k_j
  std::map<std::string, std::vector<int>> w2;                // stratum -> mod-2 pairings
  int b1 = 0, b2 = 0, b3 = 0;
};

// dim of the invariant constant p-forms of the point group
inline int invariant_form_dim(const ClosedGroup& G, int p) {
  // basis of strictly increasing p-indices
  std::vector<MultiIndex> basis;
  std::vector<int> comb(p);
  std::function<void(int, int)> gen = [&](int start, int pos) {
    if (pos == p) { basis.push_back(MultiIndex(comb.begin(), comb.end())); return; }
    for (int i = start; i <= 7; ++i) { comb[pos] = i; gen(i + 1, pos + 1); }
  };
  gen(1, 0);
  int n = (int)basis.size();
  QMat stack(n * G.order(), n);
  for (int e = 0; e < G.order(); ++e) {
    QMat L = linear_as_q(G.elements[e]);
    for (int j = 0; j < n; ++j) {
      auto f = pullback(L, AlternatingForm::monomial(basis[j]));
      for (int i = 0; i < n; ++i) stack(e * n + i, j) = f.coefficient(basis[i]) - (i == j ? 1 : 0);
    }
  }
  return n - rank(stack);
}

inline TopologyReport topology_report(const SingularSet& S, const GluingResult& R,
                                      const std::map<std::string, std::string>& choices,
                                      const AlternatingForm& phi) {
  TopologyReport T;
  T.b1 = invariant_form_dim(S.group, 1);
  T.b2 = invariant_form_dim(S.group, 2);
  T.b3 = invariant_form_dim(S.group, 3);
  for (size_t si = 0; si < S.strata.size(); ++si) {
    const SingularStratum& s = S.strata[si];
    auto lm = local_model(S.group, s, phi);
    if (!lm.admissible) continue;
    auto itc = choices.find(s.name);
    std::string choice = itc == choices.end() ? "resolution" : itc->second;
    int h2dim = lm.model.G_order - 1;  // b_2 of the ALE space for A_{k-1}
    if (lm.model.H_order == 1) {
      T.b2 += h2dim;
      T.b3 += 3 * h2dim;
    } else if (lm.model.H_order == 2) {
      int f = lm.model.H_fixed_omega.empty() ? 0 : lm.model.H_fixed_omega[0];
      int sgn = h2_action_sign(choice, f);
      if (lm.model.G_order != 2)
        throw std::domain_error("Unsupported: H^2-action data only available for A_1");
      if (sgn == 1) T.b2 += 1;
      // H action on H^1(T^3) is the plane action; count fixed vectors of sgn*M
      QMat M = to_q(lm.model.H_torus_actions[0]) * Rational(sgn);
      T.b3 += 3 - rank(M - QMat::identity(3));
    } else {
      throw std::domain_error("Unsupported: residual group larger than Z_2");
    }
  }
  for (auto& sg : R.strata) {
    T.p1.emplace_back(sg.stratum, sg.descriptor.energy);
    std::vector<int> pair;
    if (sg.descriptor.kind != "Trivial") {
      // pair w2 against the H-invariant exceptional classes (A_1: one class,
      // invariant iff the H^2-action sign is +1)
      bool invariant = sg.h2_sign == 1;
      if (invariant)
        for (int i = 1; i < sg.descriptor.k; ++i) pair.push_back(sg.descriptor.w2[i]);
    }
    T.w2[sg.stratum] = pair;
  }
  return T;
}

}  // namespace g2glue
