#pragma once

#include "g2glue/config.hpp"
#include "g2glue/version.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace g2glue {

// nlohmann::json with std::map object storage: keys come out sorted, so a
// report serializes canonically (same bytes for the same input, always).
using json = nlohmann::json;

namespace detail {

inline std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace detail

inline std::string rstr(const Rational& r) { return to_string(r); }

inline json json_vector(const std::vector<Rational>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(rstr(x));
  return a;
}

inline json json_zmat(const ZMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

inline json json_qmat(const QMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rstr(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json json_form(const AlternatingForm& f) {
  json terms = json::array();
  for (auto& [idx, c] : f.terms()) {
    std::string name = "dx";
    for (int i : idx) name += std::to_string(i);
    terms.push_back(json{{"coeff", rstr(c)}, {"form", name}});
  }
  return terms;
}

inline json report_shell(const std::string& subcommand, const std::string& config_text) {
  json r;
  r["tool"] = "g2glue";
  r["version"] = G2GLUE_VERSION;
  r["subcommand"] = subcommand;
  r["input_digest"] = detail::fnv1a_hex(config_text);
  r["status"] = "Success";
  return r;
}

// --- g2check: the identity suite on the model three-form -------------------

inline json report_g2check() {
  json out;
  AlternatingForm phi = phi0();
  Metric7 m = nondegeneracy_and_metric(phi);
  out["orbit"] =
      m.orbit == Orbit::Definite ? "definite" : (m.orbit == Orbit::Split ? "split" : "degenerate");
  bool ok = m.orbit == Orbit::Definite && m.volume.has_value();
  out["metric_is_identity"] = ok && m.entries == QMat::identity(7);
  out["volume"] = ok ? rstr(*m.volume) : "";
  AlternatingForm psi = theta(phi);
  out["psi"] = json_form(psi);
  out["phi_wedge_psi_is_7vol"] = wedge(phi, psi) == vol0() * Rational(7);
  auto split = lambda2_split(phi);
  out["lambda2_multiplicities"] = {(int)split.eigen2.size(), (int)split.eigen_minus1.size()};
  bool pass = out["metric_is_identity"].get<bool>() && out["phi_wedge_psi_is_7vol"].get<bool>() &&
              split.eigen2.size() == 7 && split.eigen_minus1.size() == 14;
  out["all_identities_pass"] = pass;
  return out;
}

// --- analyze: singular set, local models, pi1 ------------------------------

inline json json_stratum(const ClosedGroup& G, const SingularStratum& s,
                         const AlternatingForm& phi) {
  json j;
  j["name"] = s.name;
  j["dim"] = s.rep.dim();
  j["base_type"] = s.base_type;
  j["orbit_size"] = s.orbit_size;
  j["basepoint"] = json_vector(s.rep.basepoint);
  j["directions"] = json_zmat(s.rep.directions);
  j["stabilizer_order"] = (int)s.pointwise.size();
  j["residual_order"] = s.H_order;
  if (s.rep.dim() == 3) {
    auto lm = local_model(G, s, phi);
    j["admissible"] = lm.admissible;
    if (lm.admissible) {
      j["ade"] = lm.model.ade;
      j["torus_coords"] = lm.model.torus_coords;
      j["normal_coords"] = lm.model.normal_coords;
      if (!lm.model.H_fixed_omega.empty()) j["fixed_omega"] = lm.model.H_fixed_omega[0];
    } else {
      j["reason"] = lm.reason;
    }
    auto pi1 = local_pi1(G, s);
    json p;
    p["lattice_rank"] = (int)pi1.z3_gens.size();
    p["stabilizer_gens"] = (int)pi1.g_gens.size();
    p["residual_gens"] = (int)pi1.h_gens.size();
    j["pi1"] = p;
  }
  return j;
}

inline json report_analyze(const JobConfig& cfg, const SingularSet& S) {
  json out;
  out["group_order"] = S.group.order();
  out["generators"] = cfg.generator_order;
  json strata = json::array();
  bool all_adm = true;
  AlternatingForm phi = cfg.presentation.phi;
  for (auto& s : S.strata) {
    json j = json_stratum(S.group, s, phi);
    if (j.contains("admissible") && !j["admissible"].get<bool>()) all_adm = false;
    strata.push_back(j);
  }
  out["strata"] = strata;
  out["stratum_count"] = (int)S.strata.size();
  out["admissible"] = all_adm;
  return out;
}

// --- regularity ------------------------------------------------------------

inline json report_regularity(const RegularityResult& r) {
  json out;
  out["regular"] = r.regular;
  out["fixed_dim_g"] = r.fixed_dim_g;
  out["fixed_dim_R7_tensor_g"] = r.fixed_dim_R7g;
  return out;
}

// --- gluing ----------------------------------------------------------------

inline json report_gluing(const GluingResult& R) {
  json out;
  out["certified"] = R.certified;
  json strata = json::array();
  for (auto& sg : R.strata) {
    json j;
    j["stratum"] = sg.stratum;
    j["choice"] = sg.choice;
    j["ok"] = sg.ok;
    j["rule"] = sg.rule;
    json d;
    d["kind"] = sg.descriptor.kind;
    d["energy"] = rstr(sg.descriptor.energy);
    d["monodromy"] = sg.descriptor.monodromy;
    d["rigid"] = sg.descriptor.rigid;
    j["descriptor"] = d;
    if (!sg.ok) j["obstruction"] = sg.obstruction;
    j["decoration"] = gauge_label(sg.decoration);
    j["m_assignment"] = sg.m_assignment;
    strata.push_back(j);
  }
  out["strata"] = strata;
  out["obstructions"] = R.obstructions;
  return out;
}

// --- topology ---------------------------------------------------------------

inline json report_topology(const TopologyReport& T) {
  json out;
  out["b1"] = T.b1;
  out["b2"] = T.b2;
  out["b3"] = T.b3;
  json p1 = json::array();
  for (auto& [name, k] : T.p1) p1.push_back(json{{"stratum", name}, {"energy", rstr(k)}});
  out["p1_contributions"] = p1;
  json w2;
  for (auto& [name, pr] : T.w2) w2[name] = pr;
  out["w2_pairings"] = w2;
  return out;
}

// --- text rendering ---------------------------------------------------------

inline void render_text(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_text(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (auto& e : j) {
      if (e.is_object() || e.is_array()) {
        os << pad << "-\n";
        render_text(e, os, indent + 2);
      } else {
        os << pad << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

inline std::string emit_report(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::ostringstream os;
  render_text(report, os);
  return os.str();
}

}  // namespace g2glue
