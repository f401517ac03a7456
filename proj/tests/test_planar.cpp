#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pf2/planar.hpp"

using namespace pf2;

namespace {

Fe rand_fe(const GF2n& f, std::mt19937_64& rng) { return Fe{static_cast<std::uint32_t>(rng() % f.size())}; }

std::vector<Fe> rand_vec(const GF2n& f, std::size_t n, std::mt19937_64& rng) {
  std::vector<Fe> v(n);
  for (auto& x : v) x = rand_fe(f, rng);
  return v;
}

// Planarity straight from the definition, evaluating f term by term with
// square-and-multiply and a sorted image.
bool naive_planar(const DOPoly& f) {
  const GF2n& fld = f.field();
  auto eval = [&](Fe x) {
    Fe acc{};
    for (const auto& [e, c] : f.terms()) acc += fld.mul(c, fld.pow(x, e));
    return acc;
  };
  for (std::uint32_t a = 1; a < fld.size(); ++a) {
    std::set<std::uint32_t> seen;
    for (std::uint32_t x = 0; x < fld.size(); ++x) {
      seen.insert((eval(Fe{x ^ a}) + eval(Fe{x}) + fld.mul(Fe{a}, Fe{x})).bits);
    }
    if (seen.size() != fld.size()) return false;
  }
  return true;
}

}  // namespace

TEST(DOPoly, RejectsNonQuadraticExponents) {
  auto t = Tower::get(2, 2);
  DOPoly f(t);
  EXPECT_THROW(f.add_exponent(GF2n::one(), 7), usage_error);
  EXPECT_THROW(f.add_exponent(GF2n::one(), 0), usage_error);
  EXPECT_THROW(f.add_term(GF2n::one(), 0, 4), usage_error);
  EXPECT_THROW(f.add_exponent(Fe{16}, 3), usage_error);
}

TEST(DOPoly, NormalizesAndMerges) {
  auto t = Tower::get(2, 2);
  DOPoly f(t);
  // x^(2^4 + 1) = x^2 on GF(16).
  f.add_exponent(Fe{3}, 17);
  f.add_term(Fe{3}, 0, 0);
  EXPECT_TRUE(f.is_zero());
  f.add_term(Fe{5}, 1, 3).add_term(Fe{6}, 3, 1);
  EXPECT_EQ(f.terms().size(), 1U);
  EXPECT_EQ(f.coeff(10), Fe{3});
}

TEST(DOPoly, EvaluationMatchesTable) {
  auto t = Tower::get(3, 2);
  std::mt19937_64 rng(3);
  DOPoly f(t);
  for (int i = 0; i < 5; ++i) f.add_term(rand_fe(t->field(), rng), rng() % 6, rng() % 6);
  auto tab = f.table();
  for (std::uint32_t x = 0; x < t->field().size(); ++x) EXPECT_EQ(f(Fe{x}).bits, tab[x]);
}

TEST(Planarity, TrivialCases) {
  auto t = Tower::get(1, 2);
  DOPoly zero(t);
  EXPECT_TRUE(is_planar_bruteforce(zero));
  EXPECT_TRUE(is_planar_linearized(zero));
  DOPoly sq(t);
  sq.add_exponent(GF2n::one(), 2);
  EXPECT_TRUE(is_planar_bruteforce(sq));
  EXPECT_TRUE(is_planar_linearized(sq));
  DOPoly cube(t);
  cube.add_exponent(GF2n::one(), 3);
  EXPECT_FALSE(is_planar_bruteforce(cube));
  EXPECT_FALSE(is_planar_linearized(cube));
  EXPECT_FALSE(naive_planar(cube));
}

TEST(Planarity, BudgetGuard) {
  DOPoly f(Tower::get(7, 3));
  EXPECT_THROW(is_planar_bruteforce(f), budget_error);
}

TEST(Planarity, OraclesAgreeOnRandomPolys) {
  std::mt19937_64 rng(11);
  int planar = 0;
  for (auto [m, k] : {std::pair{3U, 2U}, std::pair{2U, 3U}}) {
    auto t = Tower::get(m, k);
    for (int trial = 0; trial < 100; ++trial) {
      DOPoly f(t);
      const int terms = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < terms; ++i) f.add_term(rand_fe(t->field(), rng), rng() % 6, rng() % 6);
      const bool b = is_planar_bruteforce(f);
      ASSERT_EQ(b, is_planar_linearized(f)) << f.to_string();
      if (trial < 25) {
        ASSERT_EQ(b, naive_planar(f)) << f.to_string();
      }
      planar += b;
    }
  }
  EXPECT_GT(planar, 0);
}

TEST(Criteria, WrongShapeIsUsageError) {
  auto t2 = Tower::get(2, 2);
  auto t3 = Tower::get(2, 3);
  EXPECT_THROW(g_criterion_k2(*t3, SlotsK2{std::vector<Fe>(2)}), usage_error);
  EXPECT_THROW(g_criterion_k2(*t2, SlotsK2{std::vector<Fe>(3)}), usage_error);
  EXPECT_THROW(g_criterion_k3(*t3, SlotsK3{std::vector<Fe>(4), std::vector<Fe>(1)}), usage_error);
  DOPoly odd(t3);
  odd.add_term(GF2n::one(), 0, 1);
  EXPECT_THROW(g_criterion(odd), usage_error);
}

TEST(Criteria, ZeroCoefficientsArePlanar) {
  EXPECT_TRUE(g_criterion_k2(*Tower::get(2, 2), SlotsK2{std::vector<Fe>(2)}));
  EXPECT_TRUE(g_criterion_k3(*Tower::get(2, 3), SlotsK3{std::vector<Fe>(4), std::vector<Fe>(2)}));
  EXPECT_TRUE(g_criterion_k4(*Tower::get(2, 4), SlotsK4{std::vector<Fe>(6), std::vector<Fe>(4), std::vector<Fe>(2)}));
}

TEST(Criteria, SlotsRoundTrip) {
  std::mt19937_64 rng(5);
  auto t = Tower::get(2, 4);
  SlotsK4 s{rand_vec(t->field(), 6, rng), rand_vec(t->field(), 4, rng), rand_vec(t->field(), 2, rng)};
  auto back = slots_k4(from_slots(t, s));
  EXPECT_EQ(back.c1, s.c1);
  EXPECT_EQ(back.c2, s.c2);
  EXPECT_EQ(back.c3, s.c3);
}

TEST(Criteria, K2ExhaustiveAtM2) {
  auto t = Tower::get(2, 2);
  int planar = 0;
  for (std::uint32_t c0 = 0; c0 < 16; ++c0) {
    for (std::uint32_t c1 = 0; c1 < 16; ++c1) {
      SlotsK2 s{{Fe{c0}, Fe{c1}}};
      const DOPoly f = from_slots(t, s);
      const bool b = is_planar_bruteforce(f);
      ASSERT_EQ(b, g_criterion_k2(*t, s)) << f.to_string();
      ASSERT_EQ(b, is_planar_linearized(f));
      planar += b;
    }
  }
  EXPECT_GT(planar, 1);
}

TEST(Criteria, K2RandomFullSlotsAtM3) {
  std::mt19937_64 rng(21);
  auto t = Tower::get(3, 2);
  for (int i = 0; i < 200; ++i) {
    SlotsK2 s{rand_vec(t->field(), 3, rng)};
    const DOPoly f = from_slots(t, s);
    ASSERT_EQ(is_planar_bruteforce(f), g_criterion_k2(*t, s)) << f.to_string();
  }
}

TEST(Criteria, K3MatchesBruteForce) {
  std::mt19937_64 rng(31);
  auto t = Tower::get(2, 3);
  const auto& fld = t->field();
  int planar = 0;
  for (int i = 0; i < 200; ++i) {
    const DOPoly f = p2_poly(t, rand_fe(fld, rng), rand_fe(fld, rng), rand_fe(fld, rng));
    const bool b = is_planar_bruteforce(f);
    ASSERT_EQ(b, g_criterion(f)) << f.to_string();
    ASSERT_EQ(b, is_planar_linearized(f));
  }
  for (int i = 0; i < 100; ++i) {
    FamilyParams p{Family::P2, {rand_fe(fld, rng), rand_fe(fld, rng)}, t};
    if (!is_admissible(p)) continue;
    const DOPoly f = family_coeffs(p);
    ASSERT_TRUE(g_criterion(f));
    ++planar;
  }
  for (int i = 0; i < 100; ++i) {
    SlotsK3 s{rand_vec(fld, 4, rng), rand_vec(fld, 2, rng)};
    const DOPoly f = from_slots(t, s);
    ASSERT_EQ(is_planar_bruteforce(f), g_criterion_k3(*t, s)) << f.to_string();
  }
  EXPECT_GT(planar, 0);
}

TEST(Criteria, K3P3Shape) {
  std::mt19937_64 rng(41);
  auto t = Tower::get(2, 3);
  for (int i = 0; i < 100; ++i) {
    const Fe a = rand_fe(t->field(), rng);
    const DOPoly fam = p3_poly(t, a, Fe{}, t->frobq(a));
    EXPECT_TRUE(g_criterion(fam));
    const DOPoly f = p3_poly(t, a, rand_fe(t->field(), rng), rand_fe(t->field(), rng));
    ASSERT_EQ(is_planar_bruteforce(f), g_criterion(f)) << f.to_string();
  }
}

TEST(Criteria, K4MatchesBruteForce) {
  std::mt19937_64 rng(51);
  auto t = Tower::get(2, 4);
  const auto& fld = t->field();
  for (int i = 0; i < 100; ++i) {
    const DOPoly f = p4_poly(t, rand_fe(fld, rng), rand_fe(fld, rng), rand_fe(fld, rng));
    const bool b = is_planar_bruteforce(f);
    ASSERT_EQ(b, g_criterion(f)) << f.to_string();
    ASSERT_EQ(b, is_planar_linearized(f));
  }
  for (int i = 0; i < 50; ++i) {
    SlotsK4 s{rand_vec(fld, 6, rng), rand_vec(fld, 4, rng), rand_vec(fld, 2, rng)};
    const DOPoly f = from_slots(t, s);
    ASSERT_EQ(is_planar_bruteforce(f), g_criterion_k4(*t, s)) << f.to_string();
  }
  for (int i = 0; i < 30; ++i) {
    FamilyParams p{i % 2 ? Family::P4a : Family::P4b, {rand_fe(fld, rng)}, t};
    if (!is_admissible(p)) continue;
    const DOPoly f = family_coeffs(p);
    ASSERT_TRUE(g_criterion(f)) << f.to_string();
    ASSERT_TRUE(is_planar_bruteforce(f));
  }
}

TEST(Families, ParameterEdgeCases) {
  auto t2 = Tower::get(2, 2);
  EXPECT_TRUE(family_coeffs({Family::P1, {Fe{}}, t2}).is_zero());
  // s = 1 has s^(1+q) = 1.
  EXPECT_THROW(family_coeffs({Family::P1, {GF2n::one()}, t2}), domain_error);
  auto t3 = Tower::get(2, 3);
  EXPECT_TRUE(family_coeffs({Family::P2, {Fe{}, Fe{}}, t3}).is_zero());
  EXPECT_THROW(family_coeffs({Family::P2, {Fe{}}, t3}), usage_error);
  EXPECT_THROW(family_coeffs({Family::P1, {Fe{}}, t3}), usage_error);
  EXPECT_THROW(family_coeffs({Family::Hu2, {}, Tower::get(2, 3)}), domain_error);
  EXPECT_THROW(family_coeffs({Family::ScherrZieve, {GF2n::one()}, Tower::get(3, 3)}), domain_error);
  EXPECT_EQ(parse_family("SZ-generalized"), Family::SZGeneralized);
  EXPECT_THROW(parse_family("P5"), usage_error);
}

TEST(Families, P1IsAMonomial) {
  auto t = Tower::get(3, 2);
  for (std::uint32_t s = 0; s < t->field().size(); ++s) {
    FamilyParams p{Family::P1, {Fe{s}}, t};
    if (!is_admissible(p)) continue;
    const DOPoly f = family_coeffs(p);
    EXPECT_LE(f.terms().size(), 1U);
    EXPECT_TRUE(f.coeff(2 * (t->q() + 1)).is_zero());
  }
}

TEST(Families, KnownFamiliesArePlanar) {
  auto check = [](Family fam, const std::shared_ptr<const Tower>& t) {
    int found = 0;
    const std::uint64_t limit = family_arity(fam) == 0 ? 1 : t->field().size();
    for (std::uint64_t c = 0; c < limit; ++c) {
      FamilyParams p{fam, family_arity(fam) == 0 ? std::vector<Fe>{} : std::vector<Fe>{Fe{static_cast<std::uint32_t>(c)}}, t};
      if (!is_admissible(p)) continue;
      ASSERT_TRUE(is_planar_bruteforce(family_coeffs(p))) << family_name(fam);
      if (++found >= 40) break;
    }
    EXPECT_GT(found, 0) << family_name(fam);
  };
  check(Family::SZMonomial, Tower::get(2, 2));
  check(Family::SZMonomial, Tower::get(3, 2));
  check(Family::SZGeneralized, Tower::get(2, 2));
  check(Family::SZGeneralized, Tower::get(3, 2));
  check(Family::Hu2, Tower::get(1, 3));
  check(Family::Hu2, Tower::get(3, 3));
  check(Family::Hu3, Tower::get(2, 3));
  check(Family::Hu3, Tower::get(3, 3));
  check(Family::Knuth, Tower::get(1, 3));
  check(Family::Knuth, Tower::get(1, 5));
}

TEST(Families, ScherrZieveAtM2) {
  auto t = Tower::get(2, 3);
  int found = 0;
  for (std::uint32_t c = 1; c < t->field().size(); ++c) {
    FamilyParams p{Family::ScherrZieve, {Fe{c}}, t};
    if (!is_admissible(p)) continue;
    ++found;
    ASSERT_TRUE(is_planar_linearized(family_coeffs(p)));
  }
  // Elements of order 3 or 21 in GF(2^6)*: 2 + 12.
  EXPECT_EQ(found, 14);
}

TEST(Sets, MEqualsN) {
  for (unsigned m : {2U, 3U, 4U}) {
    auto t = Tower::get(m, 2);
    const auto ms = m_set(*t);
    EXPECT_EQ(ms, n_set(*t));
    const std::uint64_t q = t->q();
    EXPECT_EQ(ms.size(), (q * q - q) / 2);
    EXPECT_EQ(ms.front(), Fe{});
  }
}

TEST(Sets, TwoToOne) {
  EXPECT_TRUE(two_to_one_check(*Tower::get(2, 2)));
  EXPECT_TRUE(two_to_one_check(*Tower::get(3, 2)));
  EXPECT_THROW(two_to_one_check(*Tower::get(2, 3)), usage_error);
}

TEST(Audit, P1Sufficiency) {
  for (unsigned m : {2U, 3U}) {
    auto t = Tower::get(m, 2);
    auto r = exhaustive_family_audit(Family::P1, t, AuditMode::Sufficiency, {2, 1U << 20});
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(r.tested, t->field().size() - (t->q() + 1));
    ASSERT_FALSE(r.planar.empty());
    EXPECT_EQ(r.planar.front(), (Tuple{Fe{}, Fe{}}));
    // Planar a-values are exactly M.
    std::vector<Fe> as;
    for (const auto& tup : r.planar) as.push_back(tup[0]);
    EXPECT_EQ(as, m_set(*t));
  }
}

TEST(Audit, P3Sufficiency) {
  auto r = exhaustive_family_audit(Family::P3, Tower::get(2, 3), AuditMode::Sufficiency);
  EXPECT_EQ(r.tested, 64U);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Audit, P1ConverseAtQ4) {
  auto t = Tower::get(2, 2);
  auto r = exhaustive_family_audit(Family::P1, t, AuditMode::Converse, {2, 1U << 20});
  EXPECT_EQ(r.tested, 256U);
  ASSERT_FALSE(r.planar.empty());
  EXPECT_EQ(r.planar.front(), (Tuple{Fe{}, Fe{}}));
  EXPECT_TRUE(std::is_sorted(r.planar.begin(), r.planar.end()));
  for (const auto& tup : r.planar) EXPECT_TRUE(is_planar_bruteforce(p1_poly(t, tup[0], tup[1])));
}

TEST(Audit, BudgetAndFamilyChecks) {
  auto t = Tower::get(2, 3);
  EXPECT_THROW(exhaustive_family_audit(Family::P2, t, AuditMode::Converse, {1, 1000}), budget_error);
  EXPECT_THROW(exhaustive_family_audit(Family::Hu2, t, AuditMode::Sufficiency), usage_error);
  EXPECT_THROW(exhaustive_family_audit(Family::P1, t, AuditMode::Sufficiency), usage_error);
}

TEST(Audit, ThreadCountDoesNotChangeReport) {
  auto t = Tower::get(2, 2);
  auto a = exhaustive_family_audit(Family::P1, t, AuditMode::Converse, {1, 1U << 20});
  auto b = exhaustive_family_audit(Family::P1, t, AuditMode::Converse, {3, 1U << 20});
  EXPECT_EQ(a.planar, b.planar);
  EXPECT_EQ(a.extras, b.extras);
}

TEST(Problem27, SupportOneRecoversM) {
  for (unsigned m : {2U, 3U}) {
    auto t = Tower::get(m, 2);
    auto r = problem27_search(t, 1);
    std::vector<Fe> slot0;
    for (const auto& v : r.planar) {
      if (std::all_of(v.begin() + 1, v.end(), [](Fe c) { return c.is_zero(); })) slot0.push_back(v[0]);
    }
    EXPECT_EQ(slot0, m_set(*t));
    EXPECT_EQ(r.planar.front(), Tuple(m));
  }
}

TEST(Problem27, BinomialSweepAtM2) {
  auto t = Tower::get(2, 2);
  auto r = problem27_search(t, 2);
  EXPECT_EQ(r.tested, 256U);
  for (const auto& v : r.candidates) EXPECT_FALSE(v[1].is_zero());
  EXPECT_THROW(problem27_search(t, 4), usage_error);
}
