// pf2: command-line front end for the planar-function toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pf2/pf2.hpp"

using namespace pf2;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kDisagree = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  unsigned m = 2;
  unsigned k = 0;
  std::string family;
  std::string mode = "sufficiency";
  std::uint64_t budget = std::uint64_t{1} << 24;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";

  std::string poly;
  std::string params;
  std::string coeffs;
  std::string e = "0x1";
  std::string table;
  unsigned support = 2;
  unsigned max_n = 20;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--m", cfg.m, "base field degree (q = 2^m)")->check(CLI::Range(1U, 32U));
  sub->add_option("--k", cfg.k, "extension degree over GF(q); 0 picks the family default")->check(CLI::Range(0U, 32U));
  sub->add_option("--family", cfg.family, "family tag (P1, P2, P3, P4a, P4b, SZ-monomial, ...)");
  sub->add_option("--mode", cfg.mode, "audit mode")->check(CLI::IsMember({"sufficiency", "converse"}));
  sub->add_option("--budget", cfg.budget, "cap on candidates visited by sweeps");
  sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 256U));
  sub->add_option("--seed", cfg.seed, "seed for sampled checks");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

json meta(const RunConfig& cfg) {
  return json{{"tool", "pf2"},    {"version", kVersion},         {"command", cfg.command},
              {"seed", cfg.seed}, {"budget", cfg.budget},        {"threads", cfg.threads}};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw usage_error("cannot open output file '" + cfg.out + "'");
  os << text;
}

// CSV preamble lines carrying the run metadata.
std::string csv_meta(const RunConfig& cfg, const json& field) {
  std::ostringstream os;
  os << "# tool=pf2 version=" << kVersion << " command=" << cfg.command << " modulus=" << field.at("modulus").get<std::string>()
     << " n=" << field.at("n") << " budget=" << cfg.budget << " seed=" << cfg.seed << "\n";
  return os.str();
}

std::vector<Fe> parse_fe_list(const GF2n& f, const std::string& s) {
  std::vector<Fe> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_fe(f, item));
  }
  return out;
}

std::shared_ptr<const Tower> tower_for(const RunConfig& cfg, unsigned family_default) {
  const unsigned k = cfg.k != 0 ? cfg.k : (family_default != 0 ? family_default : 1);
  if (cfg.m * k > kMaxDegree) throw usage_error("m * k must be at most 32");
  return Tower::get(cfg.m, k);
}

// The polynomial named by --family with --params (family parameters) or
// --coeffs (shape tuple).
DOPoly family_poly(const RunConfig& cfg, const std::shared_ptr<const Tower>& t) {
  const Family fam = parse_family(cfg.family);
  if (!cfg.coeffs.empty()) return shape_poly(fam, t, parse_fe_list(t->field(), cfg.coeffs));
  FamilyParams p{fam, parse_fe_list(t->field(), cfg.params), t};
  if (p.params.size() != family_arity(fam)) {
    throw usage_error(family_name(fam) + " takes " + std::to_string(family_arity(fam)) + " parameter(s) via --params");
  }
  return family_coeffs(p);
}

unsigned default_k(const RunConfig& cfg) { return cfg.family.empty() ? 0 : family_k(parse_family(cfg.family)); }

int cmd_check(const RunConfig& cfg) {
  auto t = tower_for(cfg, 0);
  const DOPoly f = parse_do_spec(t, cfg.poly);
  json criteria = json::object();
  std::vector<bool> verdicts;
  if (t->n() <= kMaxBruteforceDegree) {
    verdicts.push_back(is_planar_bruteforce(f));
    criteria["bruteforce"] = verdicts.back();
  } else {
    criteria["bruteforce"] = "skipped: n > 20";
  }
  verdicts.push_back(is_planar_linearized(f));
  criteria["linearized_rank"] = verdicts.back();
  try {
    verdicts.push_back(g_criterion(f));
    criteria["g_criterion"] = verdicts.back();
  } catch (const usage_error& e) {
    criteria["g_criterion"] = std::string("skipped: ") + e.what();
  }
  const bool agree = std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts.front(); });
  json j = meta(cfg);
  j["field"] = field_json(*t);
  j["poly"] = dopoly_json(f);
  j["criteria"] = criteria;
  j["agree"] = agree;
  j["planar"] = verdicts.front();
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << csv_meta(cfg, j["field"]) << "criterion,planar\n";
    for (const auto& [name, v] : criteria.items()) os << name << ',' << (v.is_boolean() ? (v.get<bool>() ? "1" : "0") : "skipped") << '\n';
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2) + "\n");
  }
  if (!agree) {
    std::cerr << "criteria disagree\n";
    return kDisagree;
  }
  return kOk;
}

int cmd_audit(const RunConfig& cfg) {
  if (cfg.family.empty()) throw usage_error("audit needs --family");
  const Family fam = parse_family(cfg.family);
  auto t = tower_for(cfg, family_k(fam));
  const AuditReport r = exhaustive_family_audit(fam, t, parse_mode(cfg.mode), SweepOptions{cfg.threads, cfg.budget});
  const json field = field_json(*t);
  if (cfg.format == "csv") {
    emit(cfg, csv_meta(cfg, field) + audit_csv(r));
  } else {
    json j = meta(cfg);
    j["field"] = field;
    j["report"] = audit_json(r);
    j["summary"] = {{"tested", r.tested}, {"planar", r.planar.size()}, {"extras", r.extras.size()},
                    {"failures", r.failures.size()}};
    emit(cfg, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_surface(const RunConfig& cfg) {
  if (cfg.family.empty() && cfg.poly.empty()) throw usage_error("surface needs --family with --params/--coeffs, or --poly");
  auto t = tower_for(cfg, default_k(cfg));
  const DOPoly f = cfg.poly.empty() ? family_poly(cfg, t) : parse_do_spec(t, cfg.poly);
  const MvPoly g = build_G(f);
  json j = meta(cfg);
  j["field"] = field_json(*t);
  j["poly"] = dopoly_json(f);
  j["G"] = mvpoly_json(g);
  const bool planar = is_planar_linearized(f);
  const bool zero = orbit_has_zero(g, *t);
  j["planar"] = planar;
  j["orbit_has_zero"] = zero;
  const Factorization fz = linear_factor_search(g, cfg.budget);
  j["factorization"] = factorization_json(fz);
  j["reconstructs"] = reconstruct(fz) == g;
  const MvPoly psi = specialize_normal(g, *t);
  j["psi"] = mvpoly_json(psi);
  json lw = nullptr;
  if (psi.is_homogeneous() && !psi.is_zero() && psi.nvars() >= 2) {
    lw = langweil_json(langweil_check(psi, false, cfg.threads));
  }
  j["point_count"] = lw;
  const bool consistent = planar != zero && (reconstruct(fz) == g);
  j["consistent"] = consistent;
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << csv_meta(cfg, j["field"]) << "factor,multiplicity\n";
    for (const auto& [l, mult] : fz.factors) os << '"' << l.to_string() << "\"," << mult << '\n';
    os << "\"remainder " << fz.remainder.to_string() << "\",1\n";
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2) + "\n");
  }
  if (!consistent) {
    std::cerr << "orbit criterion and planarity disagree, or reconstruction failed\n";
    return kDisagree;
  }
  return kOk;
}

int cmd_semifield(const RunConfig& cfg) {
  if (cfg.family.empty() && cfg.poly.empty()) throw usage_error("semifield needs --family or --poly");
  auto t = tower_for(cfg, default_k(cfg));
  const bool knuth = !cfg.family.empty() && parse_family(cfg.family) == Family::Knuth && cfg.poly.empty();
  const DOPoly f = cfg.poly.empty() ? family_poly(cfg, t) : parse_do_spec(t, cfg.poly);
  if (t->n() > kMaxNucleiDegree) throw budget_error("semifield analysis needs n <= 10");
  const Presemifield p = knuth ? knuth_presemifield(t->field_ptr()) : presemifield_from_planar(f);
  const Fe e = parse_fe(t->field(), cfg.e);
  const Presemifield iso = to_semifield(p, e);
  const Presemifield linv = to_semifield_l_inverse(p);

  bool coincide = true;
  for (std::uint32_t x = 0; x < p.size() && coincide; ++x) {
    for (std::uint32_t y = 0; y < p.size() && coincide; ++y) coincide = iso.mul(Fe{x}, Fe{y}) == linv.mul(Fe{x}, Fe{y});
  }
  std::mt19937_64 rng(cfg.seed);
  std::uint64_t sampled_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const Fe a{static_cast<std::uint32_t>(rng() % p.size())}, x{static_cast<std::uint32_t>(rng() % p.size())},
        y{static_cast<std::uint32_t>(rng() % p.size())};
    if (linv.mul(a, linv.mul(x, y)) != linv.mul(linv.mul(a, x), y)) ++sampled_failures;
  }

  const NucleiReport ni = nuclei(iso, cfg.threads);
  const NucleiReport nl = nuclei(linv, cfg.threads);
  json j = meta(cfg);
  j["field"] = field_json(*t);
  j["poly"] = dopoly_json(f);
  j["presemifield"] = {{"kind", p.kind()},
                       {"biadditive", is_biadditive(p)},
                       {"no_zero_divisors", has_no_zero_divisors(p)},
                       {"commutative", is_commutative(p)}};
  j["isotope"] = {{"e", fe_hex(e)}, {"identity", fe_hex(*iso.identity())}, {"nuclei", nuclei_json(ni)}};
  j["l_inverse"] = {{"identity", fe_hex(*linv.identity())},
                    {"nuclei", nuclei_json(nl)},
                    {"sampled_left_assoc_failures", sampled_failures}};
  j["constructions_coincide"] = coincide;
  if (!cfg.table.empty()) {
    std::ofstream os(cfg.table, std::ios::binary);
    if (!os) throw usage_error("cannot open table file '" + cfg.table + "'");
    dump_table(linv, os);
    j["table"] = cfg.table;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << csv_meta(cfg, j["field"]) << "construction,order,left,middle,right,is_field\n";
    for (const auto& [name, r] : {std::pair{"isotope", ni}, std::pair{"l_inverse", nl}}) {
      os << name << ',' << r.order << ',' << r.left.size() << ',' << r.middle.size() << ',' << r.right.size() << ','
         << (r.is_field ? 1 : 0) << '\n';
    }
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2) + "\n");
  }
  if (ni.is_field != nl.is_field) {
    std::cerr << "isotopes disagree on field equivalence\n";
    return kDisagree;
  }
  return kOk;
}

int cmd_problem27(const RunConfig& cfg) {
  auto t = tower_for(cfg, 2);
  const Problem27Report r = problem27_search(t, cfg.support, SweepOptions{cfg.threads, cfg.budget});
  const json field = field_json(*t);
  if (cfg.format == "csv") {
    emit(cfg, csv_meta(cfg, field) + problem27_csv(r));
  } else {
    json j = meta(cfg);
    j["field"] = field;
    j["report"] = problem27_json(r);
    emit(cfg, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_fields(const RunConfig& cfg) {
  if (cfg.max_n < 1 || cfg.max_n > kMaxDegree) throw usage_error("--max-n must be in [1, 32]");
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,modulus\n";
  for (unsigned n = 1; n <= cfg.max_n; ++n) {
    const FieldSpec s(n);
    rows.push_back({{"n", n}, {"modulus", "0x" + GF2n::hex(s.modulus())}});
    csv << n << ",0x" << GF2n::hex(s.modulus()) << '\n';
  }
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    json j = meta(cfg);
    j["fields"] = rows;
    emit(cfg, j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pf2: planar functions over GF(2^n), their surfaces and semifields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* check = app.add_subcommand("check", "test a DO polynomial for planarity with every criterion");
  add_common(check, cfg);
  check->add_option("--poly", cfg.poly, "terms \"(coeff_hex,u,v);...\" meaning coeff*x^(2^u+2^v)");

  auto* audit = app.add_subcommand("audit", "exhaustive sufficiency or converse audit of a family");
  add_common(audit, cfg);

  auto* surface = app.add_subcommand("surface", "build G, search linear factors, specialize and count points");
  add_common(surface, cfg);
  surface->add_option("--params", cfg.params, "family parameters, comma separated hex");
  surface->add_option("--coeffs", cfg.coeffs, "shape coefficients, comma separated hex");
  surface->add_option("--poly", cfg.poly, "explicit DO polynomial instead of a family");

  auto* semifield = app.add_subcommand("semifield", "presemifield axioms, isotopes and nuclei");
  add_common(semifield, cfg);
  semifield->add_option("--params", cfg.params, "family parameters, comma separated hex");
  semifield->add_option("--coeffs", cfg.coeffs, "shape coefficients, comma separated hex");
  semifield->add_option("--poly", cfg.poly, "explicit DO polynomial instead of a family");
  semifield->add_option("--e", cfg.e, "isotope element (hex, nonzero)");
  semifield->add_option("--table", cfg.table, "write the L^-1 semifield product table (binary)");

  auto* p27 = app.add_subcommand("problem27", "sparse coefficient sweep over GF(q^2)");
  add_common(p27, cfg);
  p27->add_option("--support", cfg.support, "maximum number of nonzero coefficients")->check(CLI::Range(0U, 3U));

  auto* fields = app.add_subcommand("fields", "print the modulus table");
  add_common(fields, cfg);
  fields->add_option("--max-n", cfg.max_n, "largest degree listed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cfg.command = "check", cmd_check(cfg);
    if (*audit) return cfg.command = "audit", cmd_audit(cfg);
    if (*surface) return cfg.command = "surface", cmd_surface(cfg);
    if (*semifield) return cfg.command = "semifield", cmd_semifield(cfg);
    if (*p27) return cfg.command = "problem27", cmd_problem27(cfg);
    if (*fields) return cfg.command = "fields", cmd_fields(cfg);
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kDisagree;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
