#pragma once

#include "g2glue/forms.hpp"
#include "g2glue/linalg.hpp"

#include <string>
#include <vector>

namespace g2glue {

// Affine map x -> Ax + t of R^7 with integral orthogonal linear part.
// Translations are exact rationals; reduce_mod1() gives the torus quotient
// representative.
struct AffineIsometry {
  ZMat linear{7, 7};
  std::vector<Rational> translation = std::vector<Rational>(7);

  static AffineIsometry identity() {
    AffineIsometry g;
    g.linear = ZMat::identity(7);
    return g;
  }

  static AffineIsometry pure_translation(const std::vector<Rational>& v) {
    AffineIsometry g = identity();
    g.translation = v;
    return g;
  }

  bool linear_is_identity() const { return linear == ZMat::identity(7); }

  // A A^T = I over Z forces a signed permutation.
  bool linear_is_orthogonal() const {
    ZMat t(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Integer s = 0;
        for (int k = 0; k < 7; ++k) s += linear(i, k) * linear(j, k);
        t(i, j) = s;
      }
    return t == ZMat::identity(7);
  }

  AffineIsometry compose(const AffineIsometry& o) const {  // this after o
    AffineIsometry r;
    r.linear = linear * o.linear;
    for (int i = 0; i < 7; ++i) {
      Rational s = translation[i];
      for (int j = 0; j < 7; ++j) s += Rational(linear(i, j)) * o.translation[j];
      r.translation[i] = s;
    }
    return r;
  }

  AffineIsometry inverse() const {
    AffineIsometry r;
    // orthogonal integral: inverse of linear part is its transpose
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) r.linear(i, j) = linear(j, i);
    for (int i = 0; i < 7; ++i) {
      Rational s = 0;
      for (int j = 0; j < 7; ++j) s -= Rational(r.linear(i, j)) * translation[j];
      r.translation[i] = s;
    }
    return r;
  }

  AffineIsometry reduce_mod1() const {
    AffineIsometry r = *this;
    for (auto& x : r.translation) x = frac_mod1(x);
    return r;
  }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    std::vector<Rational> y(7);
    for (int i = 0; i < 7; ++i) {
      y[i] = translation[i];
      for (int j = 0; j < 7; ++j) y[i] += Rational(linear(i, j)) * x[j];
    }
    return y;
  }

  bool operator==(const AffineIsometry& o) const {
    return linear == o.linear && translation == o.translation;
  }
  bool operator<(const AffineIsometry& o) const {
    if (!(linear == o.linear)) return linear < o.linear;
    return translation < o.translation;
  }

  bool is_identity() const {
    if (!linear_is_identity()) return false;
    for (auto& x : translation)
      if (x != 0) return false;
    return true;
  }
};

inline QMat linear_as_q(const AffineIsometry& g) { return to_q(g.linear); }

// Pullback of phi by the linear part equals phi?
inline bool preserves_phi(const AffineIsometry& g, const AlternatingForm& phi) {
  return pullback(linear_as_q(g), phi) == phi;
}

// Named generator for presentations and configs.
struct NamedGenerator {
  std::string name;
  AffineIsometry map;
};

struct OrbifoldPresentation {
  std::vector<NamedGenerator> generators;
  AlternatingForm phi = phi0();

  void validate() const {
    for (auto& g : generators) {
      if (!g.map.linear_is_orthogonal())
        throw std::invalid_argument("generator '" + g.name + "': linear part not integral orthogonal");
      if (!preserves_phi(g.map, phi))
        throw std::invalid_argument("generator '" + g.name + "' does not preserve phi");
    }
  }
};

}  // namespace g2glue
