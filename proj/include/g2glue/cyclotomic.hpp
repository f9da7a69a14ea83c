#pragma once

#include "g2glue/rational.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

namespace g2glue {

namespace detail {

// polynomial helpers over Q, coefficients ascending
using Poly = std::vector<Rational>;

inline void ptrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ptrim(r);
  return r;
}

// a = q*b + r with deg r < deg b
inline std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b) {
  ptrim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    ptrim(a);
  }
  ptrim(q);
  return {q, a};
}

inline const Poly& cyclotomic_poly(int n) {
  static std::map<int, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the product of Phi_d for proper divisors d
  Poly xn(n + 1);
  xn[0] = -1;
  xn[n] = 1;
  Poly p = xn;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) {
      auto [q, r] = pdivmod(p, cyclotomic_poly(d));
      if (!r.empty()) throw std::logic_error("cyclotomic division failure");
      p = q;
    }
  return cache.emplace(n, p).first->second;
}

}  // namespace detail

// Exact element of Q(zeta_N), reduced modulo the N-th cyclotomic polynomial.
class Cyclotomic {
 public:
  explicit Cyclotomic(int level = 1) : level_(level), c_(degree(level)) {}

  static int degree(int n) { return (int)detail::cyclotomic_poly(n).size() - 1; }

  static Cyclotomic from_rational(const Rational& r, int level = 1) {
    Cyclotomic z(level);
    detail::Poly p{r};
    z.assign(p);
    return z;
  }

  static Cyclotomic zeta(int n, long long j = 1) {
    Cyclotomic z(n);
    j %= n;
    if (j < 0) j += n;
    detail::Poly p((size_t)j + 1);
    p[(size_t)j] = 1;
    z.assign(p);
    return z;
  }

  // 2cos(2*pi*j/n) = zeta^j + zeta^-j
  static Cyclotomic two_cos(int n, long long j) { return zeta(n, j) + zeta(n, -j); }

  int level() const { return level_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  std::optional<Rational> as_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_.empty() ? Rational(0) : c_[0];
  }

  Cyclotomic promote(int m) const {
    if (m == level_) return *this;
    if (m % level_ != 0) throw std::invalid_argument("level must be a multiple");
    int s = m / level_;
    Cyclotomic r(m);
    detail::Poly p;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (p.size() < i * s + 1) p.resize(i * s + 1);
      p[i * s] = c_[i];
    }
    r.assign(p);
    return r;
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    int m = std::lcm(level_, o.level_);
    Cyclotomic a = promote(m), b = o.promote(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }

  Cyclotomic operator-(const Cyclotomic& o) const {
    int m = std::lcm(level_, o.level_);
    Cyclotomic a = promote(m), b = o.promote(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }

  Cyclotomic operator*(const Cyclotomic& o) const {
    int m = std::lcm(level_, o.level_);
    Cyclotomic a = promote(m), b = o.promote(m);
    Cyclotomic r(m);
    r.assign(detail::pmul(a.poly(), b.poly()));
    return r;
  }

  Cyclotomic operator*(const Rational& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  bool operator==(const Cyclotomic& o) const {
    int m = std::lcm(level_, o.level_);
    return promote(m).c_ == o.promote(m).c_;
  }

  // complex conjugation: zeta -> zeta^{-1}
  Cyclotomic conj() const {
    Cyclotomic acc(level_);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      acc = acc + zeta(level_, -(long long)i) * c_[i];
    }
    return acc;
  }

  // multiplicative inverse via the extended Euclidean algorithm in Q[x]
  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
    detail::Poly r0 = detail::cyclotomic_poly(level_), r1 = poly();
    detail::Poly s0{}, s1{Rational(1)};
    while (true) {
      detail::ptrim(r1);
      if (r1.empty()) throw std::logic_error("non-invertible cyclotomic element");
      if (r1.size() == 1) {
        Cyclotomic out(level_);
        detail::Poly s = s1;
        Rational inv = Rational(1) / r1[0];
        for (auto& x : s) x *= inv;
        out.assign(s);
        return out;
      }
      auto [q, r2] = detail::pdivmod(r0, r1);
      detail::Poly qs = detail::pmul(q, s1);
      detail::Poly s2 = s0;
      if (s2.size() < qs.size()) s2.resize(qs.size());
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      detail::ptrim(s2);
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
    }
  }

  Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

  std::complex<double> to_complex() const {
    std::complex<double> s = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
      double v = (double)num(c_[i]) / (double)den(c_[i]);
      double th = 2.0 * M_PI * (double)i / (double)level_;
      s += v * std::complex<double>(std::cos(th), std::sin(th));
    }
    return s;
  }

 private:
  detail::Poly poly() const {
    detail::Poly p(c_.begin(), c_.end());
    detail::ptrim(p);
    return p;
  }

  void assign(detail::Poly p) {
    auto [q, r] = detail::pdivmod(std::move(p), detail::cyclotomic_poly(level_));
    (void)q;
    std::fill(c_.begin(), c_.end(), Rational(0));
    for (size_t i = 0; i < r.size(); ++i) c_[i] = r[i];
  }

  int level_;
  std::vector<Rational> c_;
};

}  // namespace g2glue
