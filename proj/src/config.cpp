// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "fracmix/error.hpp"
#include "fracmix/harness.hpp"

namespace fracmix {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& t, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  require(pos == t.size() && !t.empty(), "cannot parse " + what + " '" + t + "'");
  return v;
}

int to_int(const std::string& t, const std::string& what) {
  const double v = to_double(t, what);
  require(v == static_cast<int>(v), what + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    // allow fractions like 1/16
    const auto slash = item.find('/');
    if (slash != std::string::npos) {
      out.push_back(to_double(trim(item.substr(0, slash)), "number") /
                    to_double(trim(item.substr(slash + 1)), "number"));
    } else {
      out.push_back(to_double(item, "number"));
    }
  }
  require(!out.empty(), "empty list '" + text + "'");
  return out;
}

TruncationRule parse_calibration(const std::string& text) {
  const auto at = text.find('@');
  require(at != std::string::npos, "calibration must read H0@h0, got '" + text + "'");
  TruncationRule t;
  t.H0 = parse_list(text.substr(0, at)).at(0);
  t.h0 = parse_list(text.substr(at + 1)).at(0);
  require(t.H0 > 0.0 && t.h0 > 0.0, "calibration values must be positive");
  return t;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "experiment") {
      const auto id = experiment_from_string(v);
      if (id != cfg.id) {
        const auto d = ExperimentConfig::defaults(id);
        cfg.id = id;
        cfg.s_list = d.s_list;
        cfg.h_ladder = d.h_ladder;
        cfg.cal = d.cal;
        cfg.cal2 = d.cal2;
        cfg.method = d.method;
      }
    }
  }
  for (const auto& [k, v] : kv) {
    if (k == "experiment" || k == "paper-scale" || k == "dim") {
      continue;
    } else if (k == "s") {
      cfg.s_list = parse_list(v);
    } else if (k == "h") {
      cfg.h_ladder = parse_list(v);
    } else if (k == "method") {
      cfg.method = method_from_string(v);
    } else if (k == "cal") {
      cfg.cal = parse_calibration(v);
    } else if (k == "cal2") {
      cfg.cal2 = parse_calibration(v);
    } else if (k == "out") {
      cfg.out = v;
    } else if (k == "threads") {
      cfg.threads = to_int(v, "threads");
    } else if (k == "far-order") {
      cfg.quad.far_order = to_int(v, "far-order");
    } else if (k == "near-order") {
      cfg.quad.near_order = to_int(v, "near-order");
    } else if (k == "singular-order") {
      cfg.quad.singular_order = to_int(v, "singular-order");
    } else {
      throw ValidationError("unknown config key '" + k + "'");
    }
  }
}

}  // namespace fracmix
