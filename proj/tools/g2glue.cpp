#include "g2glue/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace g2glue;

namespace {

struct Options {
  std::string config;
  std::string format = "json";
  std::string out;
  std::string fixtures = "fixtures";
  bool write_golden = false;
  int bound = 0;  // 0 = take the config's value
};

int status_code(const std::string& status) {
  if (status == "Success") return 0;
  if (status == "Obstructed" || status == "NotAdmissible") return 2;
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ParseError: cannot read file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  JobConfig cfg;
  std::string text;
};

Loaded load(const Options& opt) {
  if (opt.config.empty()) throw std::runtime_error("ParseError: --config is required");
  Loaded l;
  l.text = slurp(opt.config);
  l.cfg = config_from_toml(parse_toml(l.text));
  if (opt.bound > 0) l.cfg.bound = opt.bound;
  return l;
}

ValidatedRep validated_rep_or_throw(const JobConfig& cfg, const ClosedGroup& G) {
  if (!cfg.has_rep)
    throw std::runtime_error("ValidationError: config has no [representation] section");
  auto V = validate_rep(cfg.rep, G);
  if (!V.ok) throw std::runtime_error(V.violation);
  return V;
}

json run_analyze(const JobConfig& cfg, std::string& status) {
  auto S = singular_set(cfg.presentation, cfg.bound);
  json r = report_analyze(cfg, S);
  if (!r["admissible"].get<bool>()) status = "NotAdmissible";
  return r;
}

json run_regularity(const JobConfig& cfg, std::string& status) {
  auto G = group_closure(cfg.presentation.generators, cfg.bound);
  if (!G) throw std::runtime_error("NotClosed: group closure exceeds bound");
  auto V = validated_rep_or_throw(cfg, *G);
  auto r = regularity_check(V, *G);
  if (!r.regular) status = "Obstructed";
  return report_regularity(r);
}

json run_gluing(const JobConfig& cfg, std::string& status) {
  auto S = singular_set(cfg.presentation, cfg.bound);
  auto V = validated_rep_or_throw(cfg, S.group);
  auto R = find_gluing_data(S, V, cfg.resolution, cfg.presentation.phi);
  json r = report_gluing(R);
  r["regularity"] = report_regularity(regularity_check(V, S.group));
  if (!R.certified) {
    status = "Obstructed";
    for (auto& o : R.obstructions)
      if (o.find("NotAdmissible") != std::string::npos) status = "NotAdmissible";
  }
  return r;
}

json run_topology(const JobConfig& cfg, std::string& status) {
  (void)status;
  auto S = singular_set(cfg.presentation, cfg.bound);
  auto V = validated_rep_or_throw(cfg, S.group);
  auto R = find_gluing_data(S, V, cfg.resolution, cfg.presentation.phi);
  auto T = topology_report(S, R, cfg.resolution, cfg.presentation.phi);
  return report_topology(T);
}

json run_all(const JobConfig& cfg, std::string& status) {
  json r;
  std::string st = "Success";
  r["analyze"] = run_analyze(cfg, st);
  r["regularity"] = run_regularity(cfg, st);
  std::string glue_status = "Success";
  auto S = singular_set(cfg.presentation, cfg.bound);
  auto V = validated_rep_or_throw(cfg, S.group);
  auto R = find_gluing_data(S, V, cfg.resolution, cfg.presentation.phi);
  r["gluing"] = report_gluing(R);
  if (!R.certified) glue_status = "Obstructed";
  auto T = topology_report(S, R, cfg.resolution, cfg.presentation.phi);
  r["topology"] = report_topology(T);
  if (st != "Success") status = st;
  else if (glue_status != "Success") status = glue_status;
  return r;
}

std::string full_report(const std::string& subcommand, const std::string& cfg_text,
                        const json& result, const std::string& status,
                        const std::string& format) {
  json rep = report_shell(subcommand, cfg_text);
  rep["status"] = status;
  rep["result"] = result;
  return emit_report(rep, format);
}

json run_examples(const Options& opt, std::string& status) {
  json out;
  bool all_match = true;
  for (std::string name : {"example1", "example2", "example3"}) {
    std::string cfg_path = opt.fixtures + "/" + name + ".toml";
    std::string text = slurp(cfg_path);
    JobConfig cfg = config_from_toml(parse_toml(text));
    std::string st = "Success";
    json result = run_all(cfg, st);
    std::string rendered = full_report("all", text, result, st, "json");
    std::string golden_path = opt.fixtures + "/" + name + ".golden.json";
    if (opt.write_golden) {
      std::ofstream f(golden_path, std::ios::binary);
      f << rendered;
    }
    std::string golden = slurp(golden_path);
    json e;
    e["status"] = st;
    e["matches_golden"] = rendered == golden;
    e["report"] = json::parse(rendered);
    if (rendered != golden) all_match = false;
    out[name] = e;
  }
  out["all_match"] = all_match;
  if (!all_match) status = "Error";
  return out;
}

int emit(const Options& opt, const std::string& rendered) {
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << opt.out << "\n";
      return 1;
    }
    f << rendered;
  } else {
    std::cout << rendered;
  }
  return -1;  // signal: not an error path
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for flat G2 orbifolds and instanton gluing data"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "job configuration file");
    if (needs_config) c->required();
    sub->add_option("--format", opt.format, "output format: json | text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--bound", opt.bound, "group closure bound override");
    sub->add_option("--out", opt.out, "write the report to this path instead of stdout");
  };

  auto* c_g2check = app.add_subcommand("g2check", "verify the model G2 identities");
  add_common(c_g2check, false);
  auto* c_analyze = app.add_subcommand("analyze", "singular set, local models, and local pi1 data");
  add_common(c_analyze, true);
  auto* c_reg = app.add_subcommand("regularity", "regularity of the flat connection");
  add_common(c_reg, true);
  auto* c_glue = app.add_subcommand("gluing", "search for certified gluing data");
  add_common(c_glue, true);
  auto* c_top = app.add_subcommand("topology", "Betti numbers and characteristic-class pairings");
  add_common(c_top, true);
  auto* c_ex = app.add_subcommand("examples", "run the shipped fixtures against golden outputs");
  add_common(c_ex, false);
  c_ex->add_option("--fixtures", opt.fixtures, "directory with fixture configs and goldens");
  c_ex->add_flag("--write-golden", opt.write_golden, "regenerate the golden files in place");

  CLI11_PARSE(app, argc, argv);

  std::string sub = app.get_subcommands()[0]->get_name();
  std::string status = "Success";
  json result;
  std::string cfg_text;
  try {
    if (sub == "g2check") {
      if (!opt.config.empty()) cfg_text = slurp(opt.config);
      result = report_g2check();
      if (!result["all_identities_pass"].get<bool>()) status = "Obstructed";
    } else if (sub == "examples") {
      result = run_examples(opt, status);
    } else {
      Loaded l = load(opt);
      cfg_text = l.text;
      if (sub == "analyze") result = run_analyze(l.cfg, status);
      else if (sub == "regularity") result = run_regularity(l.cfg, status);
      else if (sub == "gluing") result = run_gluing(l.cfg, status);
      else if (sub == "topology") result = run_topology(l.cfg, status);
    }
  } catch (const std::exception& e) {
    json rep = report_shell(sub, cfg_text);
    rep["status"] = "Error";
    rep["error"] = e.what();
    std::string rendered = emit_report(rep, opt.format);
    int rc = emit(opt, rendered);
    return rc >= 0 ? rc : 1;
  }
  std::string rendered = full_report(sub, cfg_text, result, status, opt.format);
  int rc = emit(opt, rendered);
  if (rc >= 0) return rc;
  return status_code(status);
}
