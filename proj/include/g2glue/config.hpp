#pragma once

#include "g2glue/gluing.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace g2glue {

// Minimal TOML-subset reader: [section] / [section.sub] headers, `key = value`
// entries with string, integer, or (nested, possibly multiline) array values,
// '#' comments.  Enough for the fixture configs; errors carry line numbers.

struct TomlValue {
  enum Kind { Str, Int, Arr } kind = Int;
  std::string s;
  long long i = 0;
  std::vector<TomlValue> arr;
};

namespace detail {

struct TomlParser {
  std::string text;
  size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("ParseError: line " + std::to_string(line) + ": " + msg);
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') ++line;
    ++pos;
  }

  void skip_ws(bool newlines) {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string parse_bare() {
    std::string out;
    while (!eof()) {
      char c = peek();
      if (isalnum((unsigned char)c) || c == '_' || c == '-' || c == '.') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    if (out.empty()) fail("expected a key");
    return out;
  }

  std::string parse_string() {
    advance();  // opening quote
    std::string out;
    while (!eof() && peek() != '"') {
      if (peek() == '\n') fail("unterminated string");
      out += peek();
      advance();
    }
    if (eof()) fail("unterminated string");
    advance();
    return out;
  }

  TomlValue parse_value() {
    skip_ws(false);
    if (eof()) fail("expected a value");
    TomlValue v;
    char c = peek();
    if (c == '"') {
      v.kind = TomlValue::Str;
      v.s = parse_string();
    } else if (c == '[') {
      v.kind = TomlValue::Arr;
      advance();
      skip_ws(true);
      while (!eof() && peek() != ']') {
        v.arr.push_back(parse_value());
        skip_ws(true);
        if (!eof() && peek() == ',') {
          advance();
          skip_ws(true);
        }
      }
      if (eof()) fail("unterminated array");
      advance();
    } else if (c == '-' || isdigit((unsigned char)c)) {
      v.kind = TomlValue::Int;
      std::string num;
      if (c == '-') { num += c; advance(); }
      while (!eof() && isdigit((unsigned char)peek())) { num += peek(); advance(); }
      if (num.empty() || num == "-") fail("bad number");
      v.i = std::stoll(num);
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return v;
  }
};

}  // namespace detail

struct TomlDoc {
  // section -> key -> value; generator sections keep insertion order separately
  std::map<std::string, std::map<std::string, TomlValue>> sections;
  std::vector<std::string> section_order;
};

inline TomlDoc parse_toml(const std::string& text) {
  detail::TomlParser p;
  p.text = text;
  TomlDoc doc;
  std::string current;
  doc.sections[current];
  doc.section_order.push_back(current);
  while (true) {
    p.skip_ws(true);
    if (p.eof()) break;
    if (p.peek() == '[') {
      p.advance();
      p.skip_ws(false);
      current = p.parse_bare();
      p.skip_ws(false);
      if (p.eof() || p.peek() != ']') p.fail("expected ']'");
      p.advance();
      if (!doc.sections.count(current)) doc.section_order.push_back(current);
      doc.sections[current];
    } else {
      std::string key = p.parse_bare();
      p.skip_ws(false);
      if (p.eof() || p.peek() != '=') p.fail("expected '=' after key '" + key + "'");
      p.advance();
      doc.sections[current][key] = p.parse_value();
      p.skip_ws(false);
      if (!p.eof() && p.peek() != '\n' && p.peek() != '#') p.fail("trailing characters after value");
    }
  }
  return doc;
}

struct JobConfig {
  std::string name;
  OrbifoldPresentation presentation;
  std::vector<std::string> generator_order;
  FlatConnectionRep rep;
  bool has_rep = false;
  std::map<std::string, std::string> resolution;
  int bound = 10000;
};

namespace detail {

inline GaugeElement gauge_from_value(const TomlValue& v, const std::string& key) {
  if (v.kind == TomlValue::Str) return klein_element(v.s);
  if (v.kind == TomlValue::Arr) {
    if (v.arr.size() != 3) throw std::runtime_error("ValidationError: " + key + ": need a 3x3 matrix");
    GaugeElement g;
    for (int i = 0; i < 3; ++i) {
      auto& row = v.arr[i];
      if (row.kind != TomlValue::Arr || row.arr.size() != 3)
        throw std::runtime_error("ValidationError: " + key + ": need a 3x3 matrix");
      for (int j = 0; j < 3; ++j) {
        if (row.arr[j].kind == TomlValue::Int) g.matrix(i, j) = Rational(row.arr[j].i);
        else if (row.arr[j].kind == TomlValue::Str) g.matrix(i, j) = parse_rational(row.arr[j].s);
        else throw std::runtime_error("ValidationError: " + key + ": bad matrix entry");
      }
    }
    g.check();
    g.label = gauge_label(g);
    return g;
  }
  throw std::runtime_error("ValidationError: " + key + ": expected a name or matrix");
}

}  // namespace detail

inline JobConfig config_from_toml(const TomlDoc& doc) {
  JobConfig cfg;
  auto opt = doc.sections.find("options");
  if (opt != doc.sections.end()) {
    auto it = opt->second.find("bound");
    if (it != opt->second.end()) {
      if (it->second.kind != TomlValue::Int || it->second.i < 1)
        throw std::runtime_error("ValidationError: options.bound must be a positive integer");
      cfg.bound = (int)it->second.i;
    }
    it = opt->second.find("name");
    if (it != opt->second.end() && it->second.kind == TomlValue::Str) cfg.name = it->second.s;
  }
  for (auto& sec : doc.section_order) {
    if (sec.rfind("generators.", 0) != 0) continue;
    std::string name = sec.substr(std::string("generators.").size());
    auto& kv = doc.sections.at(sec);
    auto lin = kv.find("linear");
    auto tr = kv.find("translation");
    if (lin == kv.end()) throw std::runtime_error("ValidationError: generator '" + name + "' lacks linear");
    NamedGenerator g;
    g.name = name;
    if (lin->second.kind != TomlValue::Arr || lin->second.arr.size() != 7)
      throw std::runtime_error("ValidationError: generator '" + name + "': linear must be 7 rows");
    for (int i = 0; i < 7; ++i) {
      auto& row = lin->second.arr[i];
      if (row.kind != TomlValue::Arr || row.arr.size() != 7)
        throw std::runtime_error("ValidationError: generator '" + name + "': linear rows must have 7 entries");
      for (int j = 0; j < 7; ++j) {
        if (row.arr[j].kind != TomlValue::Int)
          throw std::runtime_error("ValidationError: generator '" + name + "': non-integral linear entry");
        g.map.linear(i, j) = row.arr[j].i;
      }
    }
    if (tr != kv.end()) {
      if (tr->second.kind != TomlValue::Arr || tr->second.arr.size() != 7)
        throw std::runtime_error("ValidationError: generator '" + name + "': translation must have 7 entries");
      for (int i = 0; i < 7; ++i) {
        auto& e = tr->second.arr[i];
        if (e.kind == TomlValue::Str) g.map.translation[i] = parse_rational(e.s);
        else if (e.kind == TomlValue::Int) g.map.translation[i] = Rational(e.i);
        else throw std::runtime_error("ValidationError: generator '" + name + "': bad translation entry");
        g.map.translation[i] = frac_mod1(g.map.translation[i]);
      }
    }
    if (!g.map.linear_is_orthogonal())
      throw std::runtime_error("ValidationError: generator '" + name + "': linear part not integral orthogonal");
    cfg.presentation.generators.push_back(g);
    cfg.generator_order.push_back(name);
  }
  auto rep = doc.sections.find("representation");
  if (rep != doc.sections.end()) {
    cfg.has_rep = true;
    for (auto& [key, val] : rep->second)
      cfg.rep.assignment[key] = detail::gauge_from_value(val, "representation." + key);
  }
  auto res = doc.sections.find("resolution");
  if (res != doc.sections.end()) {
    for (auto& [key, val] : res->second) {
      if (val.kind != TomlValue::Str || (val.s != "resolution" && val.s != "smoothing"))
        throw std::runtime_error("ValidationError: resolution." + key +
                                 " must be \"resolution\" or \"smoothing\"");
      cfg.resolution[key] = val.s;
    }
  }
  cfg.presentation.validate();
  return cfg;
}

inline JobConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ParseError: cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_toml(parse_toml(ss.str()));
}

}  // namespace g2glue
