#pragma once

#include "g2glue/cyclotomic.hpp"
#include "g2glue/linalg.hpp"

#include <string>
#include <vector>

namespace g2glue {

struct ConjClass {
  std::string name;
  int size = 1;
  Cyclotomic su2_trace;  // trace of a class representative in the defining rep
};

struct ADEGroupData {
  std::string type_tag;  // "A1", ..., "D4", ..., "E6", "E7", "E8"
  int order = 0;
  std::vector<ConjClass> classes;
  std::vector<int> irr_dims;
  std::vector<std::vector<Cyclotomic>> chars;  // chars[irrep][class]

  int num_classes() const { return (int)classes.size(); }

  // <chi_a, chi_b> = (1/|G|) sum_c size_c chi_a(c) conj(chi_b(c))
  Cyclotomic inner(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) const {
    Cyclotomic s(1);
    for (int c = 0; c < num_classes(); ++c)
      s = s + a[c] * b[c].conj() * Rational(classes[c].size);
    return s * Rational(1, order);
  }
};

struct ADETag {
  char series = 'A';
  int rank = 1;
};

inline ADETag parse_ade_tag(const std::string& tag) {
  if (tag.size() < 2 || (tag[0] != 'A' && tag[0] != 'D' && tag[0] != 'E'))
    throw std::invalid_argument("bad ADE tag: " + tag);
  ADETag t;
  t.series = tag[0];
  t.rank = std::stoi(tag.substr(1));
  if (t.rank < 1) throw std::invalid_argument("bad ADE tag: " + tag);
  if (t.series == 'D' && t.rank < 4) throw std::invalid_argument("bad ADE tag: " + tag);
  if (t.series == 'E' && (t.rank < 6 || t.rank > 8)) throw std::invalid_argument("bad ADE tag: " + tag);
  return t;
}

namespace detail {

inline ADEGroupData cyclic_group_data(int k) {  // A_{k-1} = Z_k
  ADEGroupData g;
  g.type_tag = "A" + std::to_string(k - 1);
  g.order = k;
  for (int j = 0; j < k; ++j) {
    ConjClass c;
    c.name = "g^" + std::to_string(j);
    c.size = 1;
    c.su2_trace = Cyclotomic::two_cos(k, j);
    g.classes.push_back(c);
  }
  for (int i = 0; i < k; ++i) {
    g.irr_dims.push_back(1);
    std::vector<Cyclotomic> row;
    for (int j = 0; j < k; ++j) row.push_back(Cyclotomic::zeta(k, (long long)i * j));
    g.chars.push_back(row);
  }
  return g;
}

inline ADEGroupData binary_dihedral_data(int rank) {  // D_rank = Dic_{rank-2}, order 4(rank-2)
  int n = rank - 2;
  ADEGroupData g;
  g.type_tag = "D" + std::to_string(rank);
  g.order = 4 * n;
  // classes: e, a^j (j=1..n-1), a^n = -e, b-even, b-odd
  {
    ConjClass c{"e", 1, Cyclotomic::from_rational(2)};
    g.classes.push_back(c);
  }
  for (int j = 1; j < n; ++j) {
    ConjClass c{"a^" + std::to_string(j), 2, Cyclotomic::two_cos(2 * n, j)};
    g.classes.push_back(c);
  }
  g.classes.push_back({"-e", 1, Cyclotomic::from_rational(-2)});
  g.classes.push_back({"b", n, Cyclotomic::from_rational(0)});
  g.classes.push_back({"ab", n, Cyclotomic::from_rational(0)});
  int nc = g.num_classes();
  auto row_1dim = [&](int w, const Cyclotomic& z) {
    // chi(a) = w (=+-1), chi(b) = z
    std::vector<Cyclotomic> row(nc, Cyclotomic::from_rational(1));
    for (int j = 1; j < n; ++j) row[j] = Cyclotomic::from_rational(w > 0 || j % 2 == 0 ? 1 : -1);
    row[n] = Cyclotomic::from_rational(w > 0 || n % 2 == 0 ? 1 : -1);
    row[n + 1] = z;
    row[n + 2] = z * Cyclotomic::from_rational(w);
    return row;
  };
  // w = +1: z = +-1 ; w = -1: z^2 = (-1)^n
  g.irr_dims.push_back(1);
  g.chars.push_back(row_1dim(1, Cyclotomic::from_rational(1)));
  g.irr_dims.push_back(1);
  g.chars.push_back(row_1dim(1, Cyclotomic::from_rational(-1)));
  Cyclotomic z = (n % 2 == 0) ? Cyclotomic::from_rational(1) : Cyclotomic::zeta(4, 1);
  g.irr_dims.push_back(1);
  g.chars.push_back(row_1dim(-1, z));
  g.irr_dims.push_back(1);
  g.chars.push_back(row_1dim(-1, z * Cyclotomic::from_rational(-1)));
  for (int h = 1; h < n; ++h) {
    std::vector<Cyclotomic> row(nc, Cyclotomic(1));
    row[0] = Cyclotomic::from_rational(2);
    for (int j = 1; j < n; ++j) row[j] = Cyclotomic::two_cos(2 * n, (long long)h * j);
    row[n] = Cyclotomic::from_rational(h % 2 == 0 ? 2 : -2);
    row[n + 1] = Cyclotomic::from_rational(0);
    row[n + 2] = Cyclotomic::from_rational(0);
    g.irr_dims.push_back(2);
    g.chars.push_back(row);
  }
  return g;
}

inline ADEGroupData binary_tetrahedral_data() {  // E6, 2T, order 24
  ADEGroupData g;
  g.type_tag = "E6";
  g.order = 24;
  auto r = [](long long v) { return Cyclotomic::from_rational(Rational(v)); };
  Cyclotomic w = Cyclotomic::zeta(3, 1), w2 = Cyclotomic::zeta(3, 2);
  // classes: 1a, 2a, 4a, 6a, 6b, 3a, 3b
  g.classes = {{"1a", 1, r(2)}, {"2a", 1, r(-2)}, {"4a", 6, r(0)},
               {"6a", 4, r(1)}, {"6b", 4, r(1)},  {"3a", 4, r(-1)}, {"3b", 4, r(-1)}};
  g.irr_dims = {1, 1, 1, 2, 2, 2, 3};
  g.chars = {
      {r(1), r(1), r(1), r(1), r(1), r(1), r(1)},
      {r(1), r(1), r(1), w, w2, w, w2},
      {r(1), r(1), r(1), w2, w, w2, w},
      {r(2), r(-2), r(0), r(1), r(1), r(-1), r(-1)},
      {r(2), r(-2), r(0), w, w2, w * r(-1), w2 * r(-1)},
      {r(2), r(-2), r(0), w2, w, w2 * r(-1), w * r(-1)},
      {r(3), r(3), r(-1), r(0), r(0), r(0), r(0)},
  };
  return g;
}

inline ADEGroupData binary_octahedral_data() {  // E7, 2O, order 48
  ADEGroupData g;
  g.type_tag = "E7";
  g.order = 48;
  auto r = [](long long v) { return Cyclotomic::from_rational(Rational(v)); };
  Cyclotomic s2 = Cyclotomic::two_cos(8, 1);  // sqrt(2)
  Cyclotomic ms2 = s2 * r(-1);
  // classes: 1a, 2a, 4a(+-i..), 8a, 8b, 4b, 6a, 3a
  g.classes = {{"1a", 1, r(2)},  {"2a", 1, r(-2)}, {"4a", 6, r(0)}, {"8a", 6, s2},
               {"8b", 6, ms2},   {"4b", 12, r(0)}, {"6a", 8, r(1)}, {"3a", 8, r(-1)}};
  g.irr_dims = {1, 1, 2, 2, 2, 3, 3, 4};
  g.chars = {
      {r(1), r(1), r(1), r(1), r(1), r(1), r(1), r(1)},
      {r(1), r(1), r(1), r(-1), r(-1), r(-1), r(1), r(1)},
      {r(2), r(2), r(2), r(0), r(0), r(0), r(-1), r(-1)},
      {r(2), r(-2), r(0), s2, ms2, r(0), r(1), r(-1)},
      {r(2), r(-2), r(0), ms2, s2, r(0), r(1), r(-1)},
      {r(3), r(3), r(-1), r(-1), r(-1), r(1), r(0), r(0)},
      {r(3), r(3), r(-1), r(1), r(1), r(-1), r(0), r(0)},
      {r(4), r(-4), r(0), r(0), r(0), r(0), r(-1), r(1)},
  };
  return g;
}

inline ADEGroupData binary_icosahedral_data() {  // E8, 2I, order 120
  ADEGroupData g;
  g.type_tag = "E8";
  g.order = 120;
  auto r = [](long long v) { return Cyclotomic::from_rational(Rational(v)); };
  // alpha = (1+sqrt5)/2 = -z^2-z^3, beta = (1-sqrt5)/2 = -z-z^4  (z = zeta_5)
  Cyclotomic al = (Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3)) * r(-1);
  Cyclotomic be = (Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 4)) * r(-1);
  Cyclotomic mal = al * r(-1), mbe = be * r(-1);
  // classes: 1a, 2a, 4a, 6a, 3a, 10a, 5a, 10b, 5b; traces 2,-2,0,1,-1,al,-be,be,-al
  g.classes = {{"1a", 1, r(2)},   {"2a", 1, r(-2)}, {"4a", 30, r(0)},
               {"6a", 20, r(1)},  {"3a", 20, r(-1)}, {"10a", 12, al},
               {"5a", 12, mbe},   {"10b", 12, be},   {"5b", 12, mal}};
  g.irr_dims = {1, 2, 2, 3, 3, 4, 4, 5, 6};
  g.chars = {
      {r(1), r(1), r(1), r(1), r(1), r(1), r(1), r(1), r(1)},
      {r(2), r(-2), r(0), r(1), r(-1), al, mbe, be, mal},
      {r(2), r(-2), r(0), r(1), r(-1), be, mal, al, mbe},
      {r(3), r(3), r(-1), r(0), r(0), be, al, al, be},
      {r(3), r(3), r(-1), r(0), r(0), al, be, be, al},
      {r(4), r(4), r(0), r(1), r(1), r(-1), r(-1), r(-1), r(-1)},
      {r(4), r(-4), r(0), r(-1), r(1), r(1), r(-1), r(1), r(-1)},
      {r(5), r(5), r(1), r(-1), r(-1), r(0), r(0), r(0), r(0)},
      {r(6), r(-6), r(0), r(0), r(0), r(-1), r(1), r(-1), r(1)},
  };
  return g;
}

}  // namespace detail

inline ADEGroupData ade_group(const std::string& tag) {
  ADETag t = parse_ade_tag(tag);
  ADEGroupData g;
  if (t.series == 'A') g = detail::cyclic_group_data(t.rank + 1);
  else if (t.series == 'D') g = detail::binary_dihedral_data(t.rank);
  else if (t.rank == 6) g = detail::binary_tetrahedral_data();
  else if (t.rank == 7) g = detail::binary_octahedral_data();
  else g = detail::binary_icosahedral_data();
  // structural invariants
  int sz = 0, sq = 0;
  for (auto& c : g.classes) sz += c.size;
  for (int d : g.irr_dims) sq += d * d;
  if (sz != g.order || sq != g.order)
    throw std::logic_error("ADE table invariant violation for " + tag);
  return g;
}

inline ZMat cartan_matrix(const std::string& tag) {
  ADETag t = parse_ade_tag(tag);
  int n = t.rank;
  ZMat C(n, n);
  auto bond = [&](int i, int j) { C(i, j) = -1; C(j, i) = -1; };
  for (int i = 0; i < n; ++i) C(i, i) = 2;
  if (t.series == 'A') {
    for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
  } else if (t.series == 'D') {
    for (int i = 0; i + 1 < n - 2; ++i) bond(i, i + 1);
    bond(n - 3, n - 2);
    bond(n - 3, n - 1);
  } else {
    // E-series: path 0..n-2, branch node attached to vertex 2 of the path
    for (int i = 0; i + 1 < n - 1; ++i) bond(i, i + 1);
    bond(2, n - 1);
  }
  return C;
}

inline QMat cartan_inverse(const std::string& tag) { return inverse(to_q(cartan_matrix(tag))); }

inline Rational intersection_pairing(const std::string& tag, int i, int j) {
  QMat Ci = cartan_inverse(tag);
  if (i < 1 || j < 1 || i > Ci.rows || j > Ci.rows)
    throw std::invalid_argument("intersection_pairing: index out of range");
  return -Ci(i - 1, j - 1);
}

// McKay adjacency: A(i,j) = multiplicity of irrep j in Q (x) irrep i, where Q
// is the defining 2-dimensional representation (character = su2 traces).
inline ZMat mckay_graph(const ADEGroupData& g) {
  int n = (int)g.chars.size();
  ZMat A(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<Cyclotomic> qi;
    for (int c = 0; c < g.num_classes(); ++c) qi.push_back(g.classes[c].su2_trace * g.chars[i][c]);
    for (int j = 0; j < n; ++j) {
      Cyclotomic m = g.inner(qi, g.chars[j]);
      auto r = m.as_rational();
      if (!r || !is_integer(*r) || *r < 0)
        throw std::domain_error("McKayMismatch: non-integral tensor multiplicity");
      A(i, j) = num(*r);
    }
  }
  // sanity: symmetric with Q self-dual
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A(i, j) != A(j, i)) throw std::domain_error("McKayMismatch: asymmetric graph");
  return A;
}

// Boundary contribution of the Nakajima index formula:
//   (2/|G|) * sum_{g != e} size(g) * (chi(g) - dim) / (2 - tr g)
inline Rational index_correction(const ADEGroupData& g, const std::vector<Cyclotomic>& chi,
                                 int dim) {
  if ((int)chi.size() != g.num_classes())
    throw std::invalid_argument("class function has wrong length");
  Cyclotomic s(1);
  for (int c = 0; c < g.num_classes(); ++c) {
    Cyclotomic numr = chi[c] - Cyclotomic::from_rational(dim);
    Cyclotomic denr = Cyclotomic::from_rational(2) - g.classes[c].su2_trace;
    if (denr.is_zero()) {
      if (!numr.is_zero())
        throw std::domain_error("NonRationalResult: pole at a trivial-trace class");
      continue;  // identity class contributes nothing
    }
    s = s + (numr / denr) * Rational(g.classes[c].size);
  }
  auto r = s.as_rational();
  if (!r) throw std::domain_error("NonRationalResult: correction term is not rational");
  return *r * Rational(2, g.order);
}

// ---------------------------------------------------------------------------
// Cyclic instanton descriptors A_{n,m}.

struct InstantonDescriptor {
  std::string kind = "Trivial";  // "Trivial" | "Cyclic"
  int k = 1, n = 0, m = 0;       // Z_k data; n, m residues mod k
  Rational energy = 0;
  bool rigid = true;
  std::vector<int> w2;           // length k, mod-2 coords in the c1(R_i) basis; w2[0] = 0
  std::string monodromy = "trivial";
};

inline InstantonDescriptor instanton_descriptor(int k, int n, int m) {
  if (k < 2) throw std::invalid_argument("instanton_descriptor: k >= 2 required");
  InstantonDescriptor d;
  d.k = k;
  d.n = ((n % k) + k) % k;
  d.m = ((m % k) + k) % k;
  d.w2.assign(k, 0);
  if (d.m == 0) {
    d.kind = "Trivial";
    d.energy = 0;
    d.monodromy = "trivial";
    return d;
  }
  d.kind = "Cyclic";
  d.energy = Rational((k - d.m) * (Integer)d.m, k);
  d.rigid = true;
  int a = (d.n + d.m) % k, b = d.n;
  if (a != 0) d.w2[a] = (d.w2[a] + 1) % 2;
  if (b != 0) d.w2[b] = (d.w2[b] + 1) % 2;
  d.monodromy = "weight_" + std::to_string(d.m);
  return d;
}

inline Integer instanton_index(const InstantonDescriptor& d) {
  if (d.kind == "Trivial") return 0;
  ADEGroupData g = detail::cyclic_group_data(d.k);
  // adjoint character of E_{n,m} = R (+) (R_n^* (x) R_{n+m}):
  // chi(g^j) = 1 + zeta^{mj} + zeta^{-mj}, dim 3
  std::vector<Cyclotomic> chi;
  for (int j = 0; j < d.k; ++j)
    chi.push_back(Cyclotomic::from_rational(1) + Cyclotomic::two_cos(d.k, (long long)d.m * j));
  Rational idx = Rational(2) * d.energy + index_correction(g, chi, 3);
  if (!is_integer(idx) || idx < 0)
    throw std::domain_error("NonIntegerIndex: index formula did not produce a non-negative integer");
  return num(idx);
}

}  // namespace g2glue
