#pragma once

#include "g2glue/forms.hpp"
#include "g2glue/linalg.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace g2glue {

enum class Orbit { Definite, Split, Degenerate };

// Metric induced by a non-degenerate 3-form.  volume is exact when
// det(B)/6^7 is a rational 9th power, otherwise absent (symbolic ninth root).
struct Metric7 {
  QMat entries{7, 7};              // the metric g (Definite, rational case) or B itself
  std::pair<int, int> sig{0, 0};   // signature (p, q)
  std::optional<Rational> volume;  // rational volume, when recoverable
  Orbit orbit = Orbit::Degenerate;
  QMat bilinear{7, 7};             // the raw form B(u,v)
};

// B(u, v) := coefficient of i(u)phi ^ i(v)phi ^ phi against dx^{1..7}.
inline QMat induced_bilinear(const AlternatingForm& phi) {
  if (phi.degree() != 3) throw std::invalid_argument("need a 3-form");
  QMat B(7, 7);
  std::vector<AlternatingForm> contr;
  for (int i = 1; i <= 7; ++i) contr.push_back(interior(basis_vector(i), phi));
  for (int u = 0; u < 7; ++u)
    for (int v = u; v < 7; ++v) {
      auto w = wedge(wedge(contr[u], contr[v]), phi);
      B(u, v) = w.coefficient({1, 2, 3, 4, 5, 6, 7});
      B(v, u) = B(u, v);
    }
  return B;
}

inline Metric7 nondegeneracy_and_metric(const AlternatingForm& phi) {
  Metric7 m;
  m.bilinear = induced_bilinear(phi);
  QMat B = m.bilinear;
  Rational det = determinant(B);
  if (det == 0) {
    m.orbit = Orbit::Degenerate;
    m.entries = B;
    return m;
  }
  m.sig = signature(B);
  auto [p, q] = m.sig;
  if (p == 7 || q == 7) {
    m.orbit = Orbit::Definite;
    Rational pow67 = det;
    for (int i = 0; i < 7; ++i) pow67 /= 6;
    auto vol = rational_nth_root(pow67, 9);
    if (vol) {
      m.volume = *vol;
      m.entries = B * (Rational(1) / (6 * *vol));
    } else {
      m.entries = B;  // conformal class only
    }
  } else if ((p == 3 && q == 4) || (p == 4 && q == 3)) {
    m.orbit = Orbit::Split;
    m.entries = B;
  } else {
    m.orbit = Orbit::Degenerate;  // not in an open orbit
    m.entries = B;
  }
  return m;
}

// Hodge star for a positive definite rational metric with rational volume.
// orientation: +1 for the standard orientation of dx^{1..7}.
inline AlternatingForm hodge_star(const AlternatingForm& a, const Metric7& g, int orientation = 1) {
  if (g.orbit != Orbit::Definite || !g.volume)
    throw std::domain_error("UnsupportedMetric: need definite metric with rational volume");
  QMat ginv = inverse(g.entries);
  int k = a.degree();
  Rational volc = *g.volume * orientation;
  AlternatingForm out(7 - k);
  // enumerate all increasing k-multi-indices A; dx^A ^ *a = <dx^A, a> vol
  std::vector<int> idx(k);
  std::vector<MultiIndex> all;
  MultiIndex cur;
  // generate combinations
  std::vector<int> comb(k);
  std::function<void(int, int)> gen = [&](int start, int pos) {
    if (pos == k) { all.push_back(MultiIndex(comb.begin(), comb.end())); return; }
    for (int i = start; i <= 7; ++i) { comb[pos] = i; gen(i + 1, pos + 1); }
  };
  gen(1, 0);
  for (auto& A : all) {
    // <dx^A, a> = sum_B a_B det(ginv[A_i][B_j])
    Rational inner = 0;
    for (auto& [B, c] : a.terms()) {
      QMat sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = ginv(A[i] - 1, B[j] - 1);
      inner += c * determinant(sub);
    }
    if (inner == 0) continue;
    MultiIndex comp;
    for (int i = 1; i <= 7; ++i)
      if (std::find(A.begin(), A.end(), i) == A.end()) comp.push_back(i);
    MultiIndex whole = A;
    whole.insert(whole.end(), comp.begin(), comp.end());
    int s = sort_index(whole);
    // dx^A ^ (c dx^comp) = c * s * vol-form ; require = inner * volc
    out.add_term(comp, inner * volc / s);
  }
  return out;
}

// Theta(phi) = *_phi phi, defined on the Definite orbit with rational volume.
inline AlternatingForm theta(const AlternatingForm& phi) {
  Metric7 g = nondegeneracy_and_metric(phi);
  if (g.orbit == Orbit::Degenerate) throw std::domain_error("Degenerate 3-form");
  if (g.orbit == Orbit::Split) throw std::domain_error("UnsupportedMetric: split orbit");
  int orientation = 1;
  if (g.sig.second == 7) {
    // negative definite B: volume comes out negative, metric stays positive
    // definite; nothing else to do (vol sign already folded in).
  }
  return hodge_star(phi, g, orientation);
}

struct Lambda2Split {
  std::vector<AlternatingForm> eigen2;       // 7-dim eigenspace, eigenvalue 2
  std::vector<AlternatingForm> eigen_minus1; // 14-dim eigenspace, eigenvalue -1
};

inline std::vector<MultiIndex> index_pairs() {
  std::vector<MultiIndex> p;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) p.push_back({i, j});
  return p;
}

// Diagonalizes w -> *(phi ^ w) on Lambda^2.  Spectrum must be exactly
// {2 (x7), -1 (x14)} for a G2 3-form.
inline Lambda2Split lambda2_split(const AlternatingForm& phi) {
  Metric7 g = nondegeneracy_and_metric(phi);
  if (g.orbit != Orbit::Definite || !g.volume)
    throw std::domain_error("lambda2_split needs a definite 3-form with rational volume");
  auto pairs = index_pairs();
  QMat T(21, 21);
  for (int j = 0; j < 21; ++j) {
    auto w = hodge_star(wedge(phi, AlternatingForm::monomial(pairs[j])), g);
    for (int i = 0; i < 21; ++i) T(i, j) = w.coefficient(pairs[i]);
  }
  auto eigenspace = [&](const Rational& lambda) {
    QMat M = T;
    for (int i = 0; i < 21; ++i) M(i, i) -= lambda;
    return kernel_basis(M);
  };
  auto to_forms = [&](const std::vector<std::vector<Rational>>& vecs) {
    std::vector<AlternatingForm> out;
    for (auto& v : vecs) {
      AlternatingForm f(2);
      for (int i = 0; i < 21; ++i)
        if (v[i] != 0) f.add_term(pairs[i], v[i]);
      out.push_back(f);
    }
    return out;
  };
  Lambda2Split s;
  s.eigen2 = to_forms(eigenspace(2));
  s.eigen_minus1 = to_forms(eigenspace(-1));
  if (s.eigen2.size() != 7 || s.eigen_minus1.size() != 14)
    throw std::domain_error("SpectrumMismatch: Lambda^2 eigenspaces are not (7, 14)");
  return s;
}

// Projection of a 2-form onto the coordinates of a multi-index list, as a
// coefficient vector; helper for membership tests.
inline std::vector<Rational> form_to_vec(const AlternatingForm& f, const std::vector<MultiIndex>& basis) {
  std::vector<Rational> v;
  for (auto& b : basis) v.push_back(f.coefficient(b));
  return v;
}

// Is f in the span of the given forms? Exact rank test.
inline bool in_span(const AlternatingForm& f, const std::vector<AlternatingForm>& span) {
  auto pairs = index_pairs();
  QMat M((int)span.size() + 1, 21);
  for (size_t i = 0; i < span.size(); ++i)
    for (int j = 0; j < 21; ++j) M((int)i, j) = span[i].coefficient(pairs[j]);
  for (int j = 0; j < 21; ++j) M((int)span.size(), j) = f.coefficient(pairs[j]);
  QMat Mo = M;
  QMat top((int)span.size(), 21);
  for (int i = 0; i < (int)span.size(); ++i) top.a[i] = Mo.a[i];
  return rank(M) == rank(top);
}

struct HyperkahlerTriple {
  std::array<AlternatingForm, 3> omega{AlternatingForm(2), AlternatingForm(2), AlternatingForm(2)};
  std::vector<int> torus;   // 3 coordinates
  std::vector<int> normal;  // 4 coordinates
};

// Splits phi = d^{t1 t2 t3} + d^{t1}^w1 + d^{t2}^w2 - d^{t3}^w3 along a
// coordinate 3+4 partition; the w_i live on the normal coordinates.
inline HyperkahlerTriple extract_triple(const AlternatingForm& phi, std::vector<int> torus) {
  if (phi.degree() != 3 || torus.size() != 3) throw std::invalid_argument("bad input");
  std::sort(torus.begin(), torus.end());
  HyperkahlerTriple t;
  t.torus = torus;
  for (int i = 1; i <= 7; ++i)
    if (std::find(torus.begin(), torus.end(), i) == torus.end()) t.normal.push_back(i);

  for (int a = 0; a < 3; ++a) {
    AlternatingForm om(2);
    for (auto& [idx, c] : phi.terms()) {
      auto pos = std::find(idx.begin(), idx.end(), torus[a]);
      if (pos == idx.end()) continue;
      int others = 0;
      for (int b = 0; b < 3; ++b)
        if (b != a && std::find(idx.begin(), idx.end(), torus[b]) != idx.end()) ++others;
      if (others != 0) continue;
      int p = (int)(pos - idx.begin());
      MultiIndex rest;
      for (auto q = idx.begin(); q != idx.end(); ++q)
        if (q != pos) rest.push_back(*q);
      om.add_term(rest, (p % 2 == 0 ? c : -c));
    }
    if (a == 2) om = om * Rational(-1);
    t.omega[a] = om;
  }

  // reconstruct and compare
  AlternatingForm rec = AlternatingForm::monomial({torus[0], torus[1], torus[2]});
  for (int a = 0; a < 3; ++a) {
    Rational sgn = (a == 2) ? -1 : 1;
    rec = rec + wedge(AlternatingForm::monomial({torus[a]}), t.omega[a]) * sgn;
  }
  if (!(rec == phi)) throw std::domain_error("NotProductForm: residual terms after extraction");

  // quaternionic relations: w_i ^ w_j = 2 delta_ij * vol4 up to a global scale
  AlternatingForm sq = wedge(t.omega[0], t.omega[0]);
  if (sq.is_zero()) throw std::domain_error("NotProductForm: degenerate omega_1");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto w = wedge(t.omega[i], t.omega[j]);
      if (i == j ? !(w == sq) : !w.is_zero())
        throw std::domain_error("NotProductForm: quaternionic relations fail");
    }
  return t;
}

}  // namespace g2glue
