#pragma once

// JSON and CSV serialization of fields, polynomials and reports.

#include <cctype>
#include <cstdint>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pf2/audit.hpp"
#include "pf2/errors.hpp"
#include "pf2/fields.hpp"
#include "pf2/linearized.hpp"
#include "pf2/mvpoly.hpp"
#include "pf2/semifields.hpp"
#include "pf2/surfaces.hpp"

namespace pf2 {

using json = nlohmann::ordered_json;

inline std::string fe_hex(Fe x) { return "0x" + GF2n::hex(x.bits); }

inline Fe parse_fe(const GF2n& f, const std::string& s) {
  std::string body = s;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty() || body.size() > 8) throw usage_error("bad field element '" + s + "'");
  std::uint64_t v = 0;
  for (char ch : body) {
    int d;
    if (ch >= '0' && ch <= '9') {
      d = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      d = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      d = ch - 'A' + 10;
    } else {
      throw usage_error("bad field element '" + s + "'");
    }
    v = v << 4U | static_cast<unsigned>(d);
  }
  return f.element(v);
}

// "(coeff_hex,u,v);(coeff_hex,u,v);..." -> sum coeff x^(2^u + 2^v). An empty
// string or "0" is the zero polynomial.
inline DOPoly parse_do_spec(std::shared_ptr<const Tower> t, const std::string& spec) {
  DOPoly f(t);
  std::string s;
  for (char ch : spec) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "0") return f;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ';') {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw usage_error("polynomial spec: expected '(' at offset " + std::to_string(pos));
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw usage_error("polynomial spec: unclosed '('");
    const std::string body = s.substr(pos + 1, close - pos - 1);
    const std::size_t c1 = body.find(',');
    const std::size_t c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string::npos || body.find(',', c2 + 1) != std::string::npos) {
      throw usage_error("polynomial spec: term '(" + body + ")' needs coeff,u,v");
    }
    auto index = [&](const std::string& x) {
      if (x.empty() || x.size() > 3 || x.find_first_not_of("0123456789") != std::string::npos) {
        throw usage_error("polynomial spec: bad exponent index '" + x + "'");
      }
      return static_cast<unsigned>(std::stoul(x));
    };
    f.add_term(parse_fe(t->field(), body.substr(0, c1)), index(body.substr(c1 + 1, c2 - c1 - 1)),
               index(body.substr(c2 + 1)));
    pos = close + 1;
  }
  return f;
}

inline json tuple_json(const std::vector<Fe>& t) {
  json a = json::array();
  for (Fe x : t) a.push_back(fe_hex(x));
  return a;
}

inline json tuples_json(const std::vector<std::vector<Fe>>& ts) {
  json a = json::array();
  for (const auto& t : ts) a.push_back(tuple_json(t));
  return a;
}

inline json field_json(const Tower& t) {
  return json{{"n", t.n()}, {"modulus", "0x" + GF2n::hex(t.field().spec().modulus())}, {"m", t.m()}, {"k", t.k()}};
}

inline json field_json(const GF2n& f) {
  return json{{"n", f.degree()}, {"modulus", "0x" + GF2n::hex(f.spec().modulus())}, {"m", f.degree()}, {"k", 1}};
}

inline json linearized_json(const LinearizedPoly& l) { return tuple_json(l.coeffs()); }

inline json dopoly_json(const DOPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) {
    const auto [u, v] = exponent_pair(e, f.tower().n());
    terms.push_back({{"u", u}, {"v", v}, {"exp", e}, {"coeff", fe_hex(c)}});
  }
  return json{{"field", field_json(f.tower())}, {"spec", f.to_string()}, {"terms", terms}};
}

inline json mvpoly_json(const MvPoly& p) {
  json terms = json::array();
  for (const auto& [key, c] : p.terms()) terms.push_back({{"exp", p.unpack(key)}, {"coeff", fe_hex(c)}});
  return json{{"nvars", p.nvars()}, {"spec", p.to_string()}, {"terms", terms}};
}

inline MvPoly mvpoly_from_json(const json& j, std::shared_ptr<const GF2n> field) {
  MvPoly p(field, j.at("nvars").get<unsigned>());
  for (const auto& t : j.at("terms")) p.add_term(t.at("exp").get<Exponents>(), parse_fe(*field, t.at("coeff")));
  return p;
}

inline json factorization_json(const Factorization& fz) {
  json factors = json::array();
  for (const auto& [l, mult] : fz.factors) {
    factors.push_back({{"form", l.to_string()}, {"coeffs", tuple_json(l.coeffs())}, {"multiplicity", mult}});
  }
  return json{{"factors", factors}, {"remainder", mvpoly_json(fz.remainder)}, {"nodes", fz.nodes}};
}

inline json audit_json(const AuditReport& r) {
  json j{{"family", r.family},        {"q", r.q},
         {"k", r.k},                  {"mode", r.mode},
         {"tested", r.tested},        {"planar", tuples_json(r.planar)},
         {"extras", tuples_json(r.extras)}};
  if (r.mode == "sufficiency") j["failures"] = tuples_json(r.failures);
  return j;
}

// One row per planar tuple: family,q,k,c0,c1[,c2],extra.
inline std::string audit_csv(const AuditReport& r) {
  std::ostringstream os;
  const std::size_t width = r.planar.empty() ? 0 : r.planar.front().size();
  os << "family,q,k";
  for (std::size_t i = 0; i < width; ++i) os << ",c" << i;
  os << ",extra\n";
  const std::set<std::vector<Fe>> extras(r.extras.begin(), r.extras.end());
  for (const auto& t : r.planar) {
    os << r.family << ',' << r.q << ',' << r.k;
    for (Fe x : t) os << ',' << fe_hex(x);
    os << ',' << (extras.count(t) ? 1 : 0) << '\n';
  }
  return os.str();
}

inline json problem27_json(const Problem27Report& r) {
  return json{{"m", r.m},
              {"support_size", r.support_size},
              {"tested", r.tested},
              {"planar", tuples_json(r.planar)},
              {"candidates", tuples_json(r.candidates)}};
}

inline std::string problem27_csv(const Problem27Report& r) {
  std::ostringstream os;
  os << "m";
  for (unsigned i = 0; i < r.m; ++i) os << ",c" << i;
  os << ",candidate\n";
  const std::set<std::vector<Fe>> cand(r.candidates.begin(), r.candidates.end());
  for (const auto& t : r.planar) {
    os << r.m;
    for (Fe x : t) os << ',' << fe_hex(x);
    os << ',' << (cand.count(t) ? 1 : 0) << '\n';
  }
  return os.str();
}

inline json nuclei_json(const NucleiReport& r) {
  return json{{"order", r.order},
              {"left", r.left.size()},
              {"middle", r.middle.size()},
              {"right", r.right.size()},
              {"is_associative", r.is_associative},
              {"is_field", r.is_field}};
}

inline json langweil_json(const LangWeilReport& r) {
  return json{{"q", r.q},
              {"k", r.k},
              {"d", r.d},
              {"count", r.count},
              {"expected", r.expected},
              {"deviation", r.deviation},
              {"rhs", r.rhs},
              {"certified", r.certified},
              {"within_bound", r.within_bound},
              {"vacuous", r.vacuous},
              {"affine_agrees", r.affine_agrees}};
}

inline std::string langweil_csv_header() { return "q,k,d,count,rhs,certified\n"; }

inline std::string langweil_csv_row(const LangWeilReport& r) {
  std::ostringstream os;
  os << r.q << ',' << r.k << ',' << r.d << ',' << r.count << ',' << r.rhs << ',' << (r.certified ? 1 : 0) << '\n';
  return os.str();
}

// Row-major product table as little-endian uint32 values.
inline void dump_table(const Presemifield& p, std::ostream& os) {
  if (p.n() > kMaxNucleiDegree) throw budget_error("table dumps need n <= 10");
  const std::uint32_t size = static_cast<std::uint32_t>(p.size());
  for (std::uint32_t x = 0; x < size; ++x) {
    for (std::uint32_t y = 0; y < size; ++y) {
      const std::uint32_t v = p.mul(Fe{x}, Fe{y}).bits;
      const char bytes[4] = {static_cast<char>(v & 0xFFU), static_cast<char>(v >> 8U & 0xFFU),
                             static_cast<char>(v >> 16U & 0xFFU), static_cast<char>(v >> 24U & 0xFFU)};
      os.write(bytes, 4);
    }
  }
}

}  // namespace pf2
