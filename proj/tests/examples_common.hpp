#pragma once

// The three generalised Kummer configurations used across the test suite,
// built programmatically so the tests do not depend on the fixture files.

#include "g2glue/gluing.hpp"

namespace g2glue::testing {

inline NamedGenerator diag_gen(const std::string& name, std::array<int, 7> d,
                               std::array<const char*, 7> t = {"0", "0", "0", "0", "0", "0", "0"}) {
  NamedGenerator g;
  g.name = name;
  for (int i = 0; i < 7; ++i) {
    g.map.linear(i, i) = d[i];
    g.map.translation[i] = parse_rational(t[i]);
  }
  return g;
}

inline NamedGenerator gen_alpha() {
  return diag_gen("alpha", {1, 1, 1, -1, -1, -1, -1});
}
inline NamedGenerator gen_beta() {
  return diag_gen("beta", {1, -1, -1, 1, 1, -1, -1}, {"0", "0", "0", "0", "0", "1/2", "0"});
}
inline NamedGenerator gen_gamma() {
  return diag_gen("gamma", {-1, 1, -1, 1, -1, 1, -1}, {"0", "0", "0", "0", "0", "0", "1/2"});
}
inline NamedGenerator gen_sigma1() {
  return diag_gen("sigma1", {1, 1, 1, 1, 1, 1, 1}, {"0", "0", "1/2", "1/2", "1/2", "0", "0"});
}
inline NamedGenerator gen_sigma2() {
  return diag_gen("sigma2", {1, 1, 1, 1, 1, 1, 1}, {"0", "1/2", "0", "1/2", "0", "0", "0"});
}
inline NamedGenerator gen_sigma3() {
  return diag_gen("sigma3", {1, 1, 1, 1, 1, 1, 1}, {"1/2", "0", "0", "0", "1/2", "1/2", "0"});
}

inline std::vector<NamedGenerator> gamma_generators() {
  return {gen_alpha(), gen_beta(), gen_gamma()};
}

inline OrbifoldPresentation t7_gamma() {
  OrbifoldPresentation Y;
  Y.generators = gamma_generators();
  return Y;
}

inline OrbifoldPresentation example1_orbifold() {
  OrbifoldPresentation Y;
  Y.generators = {gen_alpha(), gen_beta(), gen_gamma(), gen_sigma2(), gen_sigma3()};
  return Y;
}

inline OrbifoldPresentation example3_orbifold() {
  OrbifoldPresentation Y;
  Y.generators = {gen_alpha(), gen_beta(), gen_gamma(), gen_sigma1(), gen_sigma2(), gen_sigma3()};
  return Y;
}

inline FlatConnectionRep rep_of(std::map<std::string, std::string> assign) {
  FlatConnectionRep r;
  for (auto& [k, v] : assign) r.assignment[k] = klein_element(v);
  return r;
}

inline FlatConnectionRep example1_rep() {
  return rep_of({{"alpha", "a"}, {"beta", "1"}, {"gamma", "1"}, {"sigma2", "a"}, {"sigma3", "b"}});
}

inline FlatConnectionRep example2_rep() {
  return rep_of({{"alpha", "a"}, {"beta", "b"}, {"gamma", "1"}, {"sigma2", "b"}, {"sigma3", "a"}});
}

inline FlatConnectionRep example2_variant_rep() {
  return rep_of({{"alpha", "a"}, {"beta", "b"}, {"gamma", "1"}, {"sigma2", "b"}, {"sigma3", "c"}});
}

inline FlatConnectionRep example3_rep() {
  return rep_of({{"alpha", "1"}, {"beta", "1"}, {"gamma", "b"},
                 {"sigma1", "a"}, {"sigma2", "b"}, {"sigma3", "1"}});
}

}  // namespace g2glue::testing
