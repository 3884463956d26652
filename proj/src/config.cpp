// SPDX-License-Identifier: Apache-2.0
#include "starbif/config.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "starbif/expr.hpp"

namespace starbif {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Entry {
  std::string value;
  int line;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double parse_number(const Entry& e, const std::string& key) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail(e.line, "value of '" + key + "' is not a number");
  return v;
}

long parse_int(const Entry& e, const std::string& key) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') fail(e.line, "value of '" + key + "' is not an integer");
  return v;
}

bool parse_bool(const Entry& e, const std::string& key) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail(e.line, "value of '" + key + "' must be true or false");
}

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"domain", {"kind", "a", "b", "radius"}},
    {"potential", {"constant", "radial_poly", "expr"}},
    {"nonlinearity", {"kappa", "kappa_expr", "q", "q_expr"}},
    {"sweep", {"n", "r_min", "r_points", "k", "nu_max", "refine_tol_r", "tol_zero"}},
    {"bifurcation", {"enabled", "tol_newton", "match_tol", "seed_amplitude"}},
    {"output", {"dir"}},
};

SectionMap read_sections(const std::string& text) {
  SectionMap sections;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      const auto known = kKnownKeys.find(section);
      if (known == kKnownKeys.end()) fail(line, "unknown section [" + section + "]");
      sections[section];  // record even if empty
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    if (section.empty()) fail(line, "key outside of any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto& allowed = kKnownKeys.at(section);
    bool ok = false;
    for (const auto& k : allowed) ok = ok || (k == key);
    if (!ok) fail(line, "unknown key '" + key + "' in section [" + section + "]");
    auto [it, inserted] = sections[section].emplace(key, Entry{value, line});
    if (!inserted)
      fail(line, "duplicate key '" + key + "' (first defined on line " +
                     std::to_string(it->second.line) + ")");
  }
  return sections;
}

}  // namespace

ProblemSpec parse_config(const std::string& text) {
  const SectionMap sections = read_sections(text);
  ProblemSpec spec;

  // --- domain ---
  const auto dom_it = sections.find("domain");
  if (dom_it == sections.end()) throw ConfigError("missing [domain] section");
  const auto& dom = dom_it->second;
  const auto kind_it = dom.find("kind");
  if (kind_it == dom.end()) throw ConfigError("[domain] requires 'kind'");
  if (kind_it->second.value == "interval") {
    spec.domain.kind = DomainKind::Interval;
    if (dom.count("radius")) fail(dom.at("radius").line, "'radius' is not an interval parameter");
    if (dom.count("a")) spec.domain.a = parse_number(dom.at("a"), "a");
    if (dom.count("b")) spec.domain.b = parse_number(dom.at("b"), "b");
  } else if (kind_it->second.value == "disk") {
    spec.domain.kind = DomainKind::Disk;
    if (dom.count("a")) fail(dom.at("a").line, "'a' is not a disk parameter");
    if (dom.count("b")) fail(dom.at("b").line, "'b' is not a disk parameter");
    if (dom.count("radius")) spec.domain.radius = parse_number(dom.at("radius"), "radius");
  } else {
    fail(kind_it->second.line, "kind must be 'interval' or 'disk'");
  }

  // --- potential ---
  const auto pot_it = sections.find("potential");
  if (pot_it == sections.end()) throw ConfigError("missing [potential] section");
  const auto& pot = pot_it->second;
  const int given = static_cast<int>(pot.count("constant") + pot.count("radial_poly") +
                                     pot.count("expr"));
  if (given != 1)
    throw ConfigError("[potential] requires exactly one of constant | radial_poly | expr");
  if (pot.count("constant")) {
    spec.potential_kind = ProblemSpec::PotentialKind::Constant;
    spec.potential_constant = parse_number(pot.at("constant"), "constant");
  } else if (pot.count("radial_poly")) {
    spec.potential_kind = ProblemSpec::PotentialKind::RadialPoly;
    std::istringstream vs(pot.at("radial_poly").value);
    std::string tok;
    while (vs >> tok) {
      char* end = nullptr;
      const double c = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        fail(pot.at("radial_poly").line, "radial_poly expects a list of numbers");
      spec.potential_coeffs.push_back(c);
    }
    if (spec.potential_coeffs.empty())
      fail(pot.at("radial_poly").line, "radial_poly needs at least one coefficient");
  } else {
    spec.potential_kind = ProblemSpec::PotentialKind::Expression;
    spec.potential_expr = pot.at("expr").value;
    try {
      parse_potential_expr(spec.potential_expr,
                           spec.domain.kind == DomainKind::Interval ? 1 : 2,
                           1.0);
    } catch (const ConfigError& err) {
      fail(pot.at("expr").line, err.what());
    }
  }

  // --- nonlinearity (optional) ---
  if (const auto nl_it = sections.find("nonlinearity"); nl_it != sections.end()) {
    const auto& nl = nl_it->second;
    if (nl.count("kappa") && nl.count("kappa_expr"))
      fail(nl.at("kappa_expr").line, "give either 'kappa' or 'kappa_expr', not both");
    if (nl.count("q") && nl.count("q_expr"))
      fail(nl.at("q_expr").line, "give either 'q' or 'q_expr', not both");
    if (nl.count("kappa")) spec.kappa_constant = parse_number(nl.at("kappa"), "kappa");
    if (nl.count("kappa_expr")) {
      spec.kappa_is_expr = true;
      spec.kappa_expr = nl.at("kappa_expr").value;
      try {
        parse_potential_expr(spec.kappa_expr, spec.domain.kind == DomainKind::Interval ? 1 : 2,
                             1.0);
      } catch (const ConfigError& err) {
        fail(nl.at("kappa_expr").line, err.what());
      }
    }
    if (nl.count("q")) spec.q_constant = parse_number(nl.at("q"), "q");
    if (nl.count("q_expr")) {
      spec.q_is_expr = true;
      spec.q_expr = nl.at("q_expr").value;
      try {
        parse_potential_expr(spec.q_expr, spec.domain.kind == DomainKind::Interval ? 1 : 2, 1.0);
      } catch (const ConfigError& err) {
        fail(nl.at("q_expr").line, err.what());
      }
    }
  }

  // --- sweep (optional) ---
  if (const auto sw_it = sections.find("sweep"); sw_it != sections.end()) {
    const auto& sw = sw_it->second;
    if (sw.count("n")) {
      spec.n = static_cast<int>(parse_int(sw.at("n"), "n"));
      if (spec.n < 8) fail(sw.at("n").line, "n must be >= 8");
    }
    if (sw.count("r_min")) {
      spec.sweep.r_min = parse_number(sw.at("r_min"), "r_min");
      if (!(spec.sweep.r_min > 0.0)) fail(sw.at("r_min").line, "r_min must be positive");
      if (!(spec.sweep.r_min < 1.0)) fail(sw.at("r_min").line, "r_min must be below 1");
    }
    if (sw.count("r_points")) {
      spec.sweep.r_points = static_cast<int>(parse_int(sw.at("r_points"), "r_points"));
      if (spec.sweep.r_points < 2) fail(sw.at("r_points").line, "r_points must be >= 2");
    }
    if (sw.count("k")) {
      spec.sweep.k = static_cast<int>(parse_int(sw.at("k"), "k"));
      if (spec.sweep.k < 1) fail(sw.at("k").line, "k must be >= 1");
    }
    if (sw.count("nu_max")) {
      spec.nu_max = static_cast<int>(parse_int(sw.at("nu_max"), "nu_max"));
      if (spec.nu_max < 0) fail(sw.at("nu_max").line, "nu_max must be >= 0");
    }
    if (sw.count("refine_tol_r")) {
      spec.sweep.refine_tol_r = parse_number(sw.at("refine_tol_r"), "refine_tol_r");
      if (!(spec.sweep.refine_tol_r > 0.0))
        fail(sw.at("refine_tol_r").line, "refine_tol_r must be positive");
    }
    if (sw.count("tol_zero")) {
      const Entry& e = sw.at("tol_zero");
      if (e.value == "auto")
        spec.sweep.tol_zero = -1.0;
      else {
        spec.sweep.tol_zero = parse_number(e, "tol_zero");
        if (!(spec.sweep.tol_zero > 0.0)) fail(e.line, "tol_zero must be positive or 'auto'");
      }
    }
  }

  // --- bifurcation (optional) ---
  if (const auto bf_it = sections.find("bifurcation"); bf_it != sections.end()) {
    const auto& bf = bf_it->second;
    if (bf.count("enabled")) spec.run_bifurcation = parse_bool(bf.at("enabled"), "enabled");
    if (bf.count("tol_newton")) {
      spec.probe.tol_newton = parse_number(bf.at("tol_newton"), "tol_newton");
      if (!(spec.probe.tol_newton > 0.0))
        fail(bf.at("tol_newton").line, "tol_newton must be positive");
    }
    if (bf.count("match_tol")) {
      spec.probe.match_tol = parse_number(bf.at("match_tol"), "match_tol");
      if (!(spec.probe.match_tol > 0.0)) fail(bf.at("match_tol").line, "match_tol must be positive");
    }
    if (bf.count("seed_amplitude")) {
      const Entry& e = bf.at("seed_amplitude");
      if (e.value == "auto")
        spec.probe.seed_amplitude = -1.0;
      else {
        spec.probe.seed_amplitude = parse_number(e, "seed_amplitude");
        if (!(spec.probe.seed_amplitude > 0.0))
          fail(e.line, "seed_amplitude must be positive or 'auto'");
      }
    }
  }

  // --- output (optional) ---
  if (const auto out_it = sections.find("output"); out_it != sections.end()) {
    const auto& out = out_it->second;
    if (out.count("dir")) {
      spec.output_dir = out.at("dir").value;
      if (spec.output_dir.empty()) fail(out.at("dir").line, "output dir must not be empty");
    }
  }

  return spec;
}

std::string render_config(const ProblemSpec& s) {
  std::ostringstream os;
  os << "[domain]\n";
  if (s.domain.kind == DomainKind::Interval) {
    os << "kind = interval\n";
    os << "a = " << fmt(s.domain.a) << "\n";
    os << "b = " << fmt(s.domain.b) << "\n";
  } else {
    os << "kind = disk\n";
    os << "radius = " << fmt(s.domain.radius) << "\n";
  }
  os << "\n[potential]\n";
  switch (s.potential_kind) {
    case ProblemSpec::PotentialKind::Constant:
      os << "constant = " << fmt(s.potential_constant) << "\n";
      break;
    case ProblemSpec::PotentialKind::RadialPoly: {
      os << "radial_poly =";
      for (double c : s.potential_coeffs) os << ' ' << fmt(c);
      os << "\n";
      break;
    }
    case ProblemSpec::PotentialKind::Expression:
      os << "expr = " << s.potential_expr << "\n";
      break;
  }
  os << "\n[nonlinearity]\n";
  if (s.kappa_is_expr)
    os << "kappa_expr = " << s.kappa_expr << "\n";
  else
    os << "kappa = " << fmt(s.kappa_constant) << "\n";
  if (s.q_is_expr)
    os << "q_expr = " << s.q_expr << "\n";
  else
    os << "q = " << fmt(s.q_constant) << "\n";
  os << "\n[sweep]\n";
  os << "n = " << s.n << "\n";
  os << "r_min = " << fmt(s.sweep.r_min) << "\n";
  os << "r_points = " << s.sweep.r_points << "\n";
  os << "k = " << s.sweep.k << "\n";
  os << "nu_max = " << s.nu_max << "\n";
  os << "refine_tol_r = " << fmt(s.sweep.refine_tol_r) << "\n";
  if (s.sweep.tol_zero < 0.0)
    os << "tol_zero = auto\n";
  else
    os << "tol_zero = " << fmt(s.sweep.tol_zero) << "\n";
  os << "\n[bifurcation]\n";
  os << "enabled = " << (s.run_bifurcation ? "true" : "false") << "\n";
  os << "tol_newton = " << fmt(s.probe.tol_newton) << "\n";
  os << "match_tol = " << fmt(s.probe.match_tol) << "\n";
  if (s.probe.seed_amplitude < 0.0)
    os << "seed_amplitude = auto\n";
  else
    os << "seed_amplitude = " << fmt(s.probe.seed_amplitude) << "\n";
  os << "\n[output]\n";
  os << "dir = " << s.output_dir << "\n";
  return os.str();
}

bool spec_equal(const ProblemSpec& a, const ProblemSpec& b) {
  return a.domain.kind == b.domain.kind && a.domain.a == b.domain.a && a.domain.b == b.domain.b &&
         a.domain.radius == b.domain.radius && a.potential_kind == b.potential_kind &&
         a.potential_constant == b.potential_constant &&
         a.potential_coeffs == b.potential_coeffs && a.potential_expr == b.potential_expr &&
         a.kappa_is_expr == b.kappa_is_expr && a.kappa_constant == b.kappa_constant &&
         a.kappa_expr == b.kappa_expr && a.q_is_expr == b.q_is_expr &&
         a.q_constant == b.q_constant && a.q_expr == b.q_expr && a.n == b.n &&
         a.nu_max == b.nu_max && a.sweep.r_min == b.sweep.r_min &&
         a.sweep.r_points == b.sweep.r_points && a.sweep.k == b.sweep.k &&
         a.sweep.tol_zero == b.sweep.tol_zero && a.sweep.refine_tol_r == b.sweep.refine_tol_r &&
         a.run_bifurcation == b.run_bifurcation && a.probe.tol_newton == b.probe.tol_newton &&
         a.probe.match_tol == b.probe.match_tol &&
         a.probe.seed_amplitude == b.probe.seed_amplitude && a.output_dir == b.output_dir;
}

Domain domain_of(const ProblemSpec& spec) { return make_domain(spec.domain); }

PotentialField potential_of(const ProblemSpec& spec, const Domain& d) {
  switch (spec.potential_kind) {
    case ProblemSpec::PotentialKind::Constant:
      return PotentialField::constant(spec.potential_constant);
    case ProblemSpec::PotentialKind::RadialPoly:
      return PotentialField::radial_poly(spec.potential_coeffs);
    case ProblemSpec::PotentialKind::Expression:
      return parse_potential_expr(spec.potential_expr, d.dimension(), d.diameter());
  }
  return PotentialField::constant(0.0);
}

NonlinearitySpec nonlinearity_of(const ProblemSpec& spec, const Domain& d) {
  NonlinearitySpec gs;
  gs.f = potential_of(spec, d);
  gs.kappa = spec.kappa_is_expr
                 ? parse_potential_expr(spec.kappa_expr, d.dimension(), d.diameter())
                 : PotentialField::constant(spec.kappa_constant);
  gs.q = spec.q_is_expr ? parse_potential_expr(spec.q_expr, d.dimension(), d.diameter())
                        : PotentialField::constant(spec.q_constant);
  return gs;
}

}  // namespace starbif
