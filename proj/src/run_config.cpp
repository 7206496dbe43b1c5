// SPDX-License-Identifier: Apache-2.0
#include "helmres/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace helmres::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    require(pos == v.size(), ErrorCode::InvalidArgument, "trailing junk");
    return x;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "config value for '" + key + "' is not a number: " + v);
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long x = std::stol(v, &pos);
    require(pos == v.size(), ErrorCode::InvalidArgument, "trailing junk");
    return x;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "config value for '" + key + "' is not an integer: " + v);
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidArgument, "cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      require(s.back() == ']', ErrorCode::InvalidArgument,
              "malformed section header at line " + std::to_string(lineno));
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"geometry", "truncation", "campaign",
                                    "output", "run", "verify", "oracle"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      require(ok, ErrorCode::InvalidArgument, "unknown config section [" + section + "]");
      continue;
    }
    size_t eq = s.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidArgument,
            "expected key = value at line " + std::to_string(lineno));
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    std::string qual = section + "." + key;

    if (qual == "geometry.a") cfg.a = parse_double(qual, val);
    else if (qual == "geometry.b") cfg.b = parse_double(qual, val);
    else if (qual == "geometry.L") cfg.L = parse_double(qual, val);
    else if (qual == "geometry.eps") cfg.eps = parse_double(qual, val);
    else if (qual == "geometry.eps_list") {
      cfg.eps_list.clear();
      std::istringstream vs(val);
      std::string tok;
      while (std::getline(vs, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) cfg.eps_list.push_back(parse_double(qual, tok));
      }
    } else if (qual == "truncation.k_neck") {
      cfg.trunc.k_neck = int(parse_int(qual, val));
    } else if (qual == "truncation.m_cavity") {
      cfg.trunc.m_cavity = int(parse_int(qual, val));
    } else if (qual == "truncation.abs_tol") {
      cfg.trunc.quad.abs_tol = parse_double(qual, val);
    } else if (qual == "truncation.rel_tol") {
      cfg.trunc.quad.rel_tol = parse_double(qual, val);
    } else if (qual == "truncation.max_subdivisions") {
      cfg.trunc.quad.max_subdivisions = int(parse_int(qual, val));
    } else if (qual == "truncation.corner_extrapolation") {
      cfg.trunc.corner_extrapolation = parse_int(qual, val) != 0;
    } else if (qual == "truncation.record_doubling_drift") {
      cfg.trunc.record_doubling_drift = parse_int(qual, val) != 0;
    } else if (qual == "campaign.name") {
      cfg.campaign = val;
    } else if (qual == "output.dir") {
      cfg.out_dir = val;
    } else if (qual == "run.seed") {
      cfg.seed = unsigned(parse_int(qual, val));
    } else if (qual == "run.threads") {
      cfg.threads = int(parse_int(qual, val));
    } else if (qual == "verify.gamma2_target") {
      cfg.gamma2_target = parse_double(qual, val);
    } else if (qual == "oracle.points_across") {
      cfg.oracle_points_across = int(parse_int(qual, val));
    } else if (qual == "oracle.sigma") {
      cfg.oracle_sigma = parse_double(qual, val);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown config key '" + qual + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  require(a > 0.0 && b > 0.0 && L > 0.0, ErrorCode::InvalidArgument,
          "geometry sides must be positive");
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  trunc.validate();
  require(threads >= 1, ErrorCode::InvalidArgument, "threads must be >= 1");
  require(oracle_points_across >= 6, ErrorCode::InvalidArgument,
          "oracle needs at least 6 points across the half-neck");
}

void RunConfig::require_eps_list() const {
  require(!eps_list.empty(), ErrorCode::InvalidArgument,
          "missing required config key 'geometry.eps_list'");
}

std::string RunConfig::emit() const {
  std::ostringstream out;
  out << "[geometry]\n";
  out << "a = " << fmt(a) << "\n";
  out << "b = " << fmt(b) << "\n";
  out << "L = " << fmt(L) << "\n";
  out << "eps = " << fmt(eps) << "\n";
  if (!eps_list.empty()) {
    out << "eps_list = ";
    for (size_t i = 0; i < eps_list.size(); ++i) {
      if (i) out << ",";
      out << fmt(eps_list[i]);
    }
    out << "\n";
  }
  out << "[truncation]\n";
  out << "k_neck = " << trunc.k_neck << "\n";
  out << "m_cavity = " << trunc.m_cavity << "\n";
  out << "abs_tol = " << fmt(trunc.quad.abs_tol) << "\n";
  out << "rel_tol = " << fmt(trunc.quad.rel_tol) << "\n";
  out << "max_subdivisions = " << trunc.quad.max_subdivisions << "\n";
  out << "corner_extrapolation = " << (trunc.corner_extrapolation ? 1 : 0) << "\n";
  out << "record_doubling_drift = " << (trunc.record_doubling_drift ? 1 : 0) << "\n";
  if (!campaign.empty()) {
    out << "[campaign]\n";
    out << "name = " << campaign << "\n";
  }
  out << "[output]\n";
  out << "dir = " << out_dir << "\n";
  out << "[run]\n";
  out << "seed = " << seed << "\n";
  out << "threads = " << threads << "\n";
  out << "[verify]\n";
  out << "gamma2_target = " << fmt(gamma2_target) << "\n";
  out << "[oracle]\n";
  out << "points_across = " << oracle_points_across << "\n";
  out << "sigma = " << fmt(oracle_sigma) << "\n";
  return out.str();
}

}  // namespace helmres::cli
