#pragma once

#include "g2glue/linalg.hpp"
#include "g2glue/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace g2glue {

using MultiIndex = std::vector<int>;  // strictly increasing, entries in 1..7

// Sorts an index tuple, returning the permutation parity; 0 if repeated.
inline int sort_index(MultiIndex& idx) {
  int sign = 1;
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

// Constant-coefficient alternating form on R^7 with exact rational
// coefficients, stored on strictly increasing multi-indices.
class AlternatingForm {
 public:
  explicit AlternatingForm(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > 7) throw std::invalid_argument("degree out of range");
  }

  int degree() const { return degree_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }

  static AlternatingForm zero(int degree) { return AlternatingForm(degree); }

  static AlternatingForm monomial(MultiIndex idx, Rational c = 1) {
    int s = sort_index(idx);
    AlternatingForm f((int)idx.size());
    if (s != 0 && c != 0) f.terms_[idx] = s * c;
    return f;
  }

  static AlternatingForm constant(Rational c) {
    AlternatingForm f(0);
    if (c != 0) f.terms_[{}] = c;
    return f;
  }

  void add_term(MultiIndex idx, const Rational& c) {
    int s = sort_index(idx);
    if (s == 0 || c == 0) return;
    if ((int)idx.size() != degree_) throw std::invalid_argument("degree mismatch");
    auto it = terms_.find(idx);
    Rational v = (it == terms_.end() ? Rational(0) : it->second) + s * c;
    if (v == 0) {
      if (it != terms_.end()) terms_.erase(it);
    } else {
      terms_[idx] = v;
    }
  }

  Rational coefficient(MultiIndex idx) const {
    int s = sort_index(idx);
    if (s == 0) return 0;
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : s * it->second;
  }

  bool is_zero() const { return terms_.empty(); }

  AlternatingForm operator+(const AlternatingForm& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
    AlternatingForm r = *this;
    for (auto& [idx, c] : o.terms_) r.add_term(idx, c);
    return r;
  }

  AlternatingForm operator-(const AlternatingForm& o) const { return *this + o * Rational(-1); }

  AlternatingForm operator*(const Rational& s) const {
    AlternatingForm r(degree_);
    if (s == 0) return r;
    for (auto& [idx, c] : terms_) r.terms_[idx] = c * s;
    return r;
  }

  bool operator==(const AlternatingForm& o) const {
    return degree_ == o.degree_ && terms_ == o.terms_;
  }

 private:
  int degree_;
  std::map<MultiIndex, Rational> terms_;
};

inline AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
  int d = a.degree() + b.degree();
  if (d > 7) return AlternatingForm::zero(7);  // necessarily zero; degree capped
  AlternatingForm r(d);
  for (auto& [ia, ca] : a.terms())
    for (auto& [ib, cb] : b.terms()) {
      MultiIndex idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(idx, ca * cb);
    }
  return r;
}

// Interior product i(u), contracting into the first slot.
inline AlternatingForm interior(const std::vector<Rational>& u, const AlternatingForm& a) {
  if (u.size() != 7) throw std::invalid_argument("need a 7-vector");
  if (a.degree() == 0) return AlternatingForm::zero(0);
  AlternatingForm r(a.degree() - 1);
  for (auto& [idx, c] : a.terms()) {
    for (size_t p = 0; p < idx.size(); ++p) {
      const Rational& up = u[idx[p] - 1];
      if (up == 0) continue;
      MultiIndex rest;
      for (size_t q = 0; q < idx.size(); ++q)
        if (q != p) rest.push_back(idx[q]);
      r.add_term(rest, (p % 2 == 0 ? up : -up) * c);
    }
  }
  return r;
}

// Pullback A^*(form) for a linear map A (i.e. substitute dx^i -> sum_j A_ij dx^j...
// precisely: (A^* w)(v_1..v_k) = w(Av_1, .., Av_k)).
inline AlternatingForm pullback(const QMat& A, const AlternatingForm& a) {
  AlternatingForm r(a.degree());
  // dx^i pulls back to sum_j A(i-1, j-1) dx^j
  std::vector<AlternatingForm> rows;
  for (int i = 1; i <= 7; ++i) {
    AlternatingForm one(1);
    for (int j = 1; j <= 7; ++j)
      if (A(i - 1, j - 1) != 0) one.add_term({j}, A(i - 1, j - 1));
    rows.push_back(one);
  }
  for (auto& [idx, c] : a.terms()) {
    AlternatingForm t = AlternatingForm::constant(c);
    for (int i : idx) t = wedge(t, rows[i - 1]);
    if (a.degree() == 0) {
      r = r + t;
    } else {
      for (auto& [ti, tc] : t.terms()) r.add_term(ti, tc);
    }
  }
  return r;
}

inline std::vector<Rational> basis_vector(int i) {
  std::vector<Rational> v(7);
  v[i - 1] = 1;
  return v;
}

// The standard associative 3-form.
inline const AlternatingForm& phi0() {
  static const AlternatingForm f = [] {
    AlternatingForm g(3);
    g.add_term({1, 2, 3}, 1);
    g.add_term({1, 4, 5}, 1);
    g.add_term({1, 6, 7}, 1);
    g.add_term({2, 4, 6}, 1);
    g.add_term({2, 5, 7}, -1);
    g.add_term({3, 4, 7}, -1);
    g.add_term({3, 5, 6}, -1);
    return g;
  }();
  return f;
}

inline const AlternatingForm& vol0() {
  static const AlternatingForm f = AlternatingForm::monomial({1, 2, 3, 4, 5, 6, 7});
  return f;
}

}  // namespace g2glue
