#include <random>

#include "doctest.h"
#include "fc/certificate.hpp"
#include "fc/fcsolve.hpp"
#include "fc/verify.hpp"
#include "oracles.hpp"

using namespace fc;

namespace {

Family fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<MemberSet> members;
  for (auto s : sets) members.push_back(MemberSet::of(s));
  return Family(n, members);
}

// Brute-force check of an FC certificate's weights over small domains.
bool weights_certify(const Certificate& cert) {
  auto p = build_separation(union_closure(cert.family), cert.weights, cert.domain);
  return brute_separation(p).optimum <= 0;
}

}  // namespace

TEST_CASE("is_fc small examples") {
  auto two = is_fc(fam(2, {{1, 2}}));
  REQUIRE(two.is_fc());
  CHECK(two.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(weights_certify(two));

  auto three = is_fc(fam(3, {{1, 2, 3}}));
  CHECK_FALSE(three.is_fc());
  LinearProgram lp = cut_system(3, three.cuts);
  CHECK(check_farkas(lp, three.farkas));

  // a 1-set
  CHECK(is_fc(fam(3, {{2}})).is_fc());
  // universe is compacted before solving
  auto moved = is_fc(fam(6, {{4, 6}}));
  CHECK(moved.n == 2);
  CHECK(moved.is_fc());
}

TEST_CASE("V-FC decisions") {
  SUBCASE("<{123}> with V = P([3]) minus {1}") {
    auto v = power_set(3).without(MemberSet::of({1}));
    IsFcOptions opts;
    opts.domain = v;
    auto cert = is_fc(union_closure(fam(3, {{1, 2, 3}})).family(), opts);
    CHECK(cert.is_fc());
    CHECK(weights_certify(cert));
    CHECK(verify_certificate(cert).passed);
  }
  SUBCASE("<{1234}> with V = no singletons") {
    IsFcOptions opts;
    opts.domain = no_singletons_domain(4);
    auto cert = is_fc(fam(4, {{1, 2, 3, 4}}), opts);
    CHECK(cert.is_fc());
    CHECK(verify_certificate(cert).passed);
  }
  SUBCASE("three 5-sets in [6] are V-FC, two are not") {
    IsFcOptions opts;
    opts.domain = no_singletons_domain(6);
    auto three = is_fc(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}}), opts);
    CHECK(three.is_fc());
    CHECK(verify_certificate(three).passed);
    auto two = is_fc(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}), opts);
    CHECK_FALSE(two.is_fc());
    CHECK(verify_certificate(two).passed);
    opts.symmetry = true;
    CHECK(is_fc(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}}), opts).is_fc());
    CHECK_FALSE(is_fc(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}), opts).is_fc());
  }
}

TEST_CASE("is_fc errors") {
  CHECK_THROWS_AS(is_fc(fam(3, {{}})), SolveError);
  CHECK_THROWS_AS(is_fc(Family(9, k_subsets(9, 8))), SolveError);
  IsFcOptions opts;
  opts.domain = fam(3, {{}, {1}, {1, 2, 3}});
  CHECK_THROWS_AS(is_fc(fam(3, {{1, 2}, {3}}), opts), SolveError);  // closure leaves V
  opts.domain = fam(3, {{}, {1}, {2}, {1, 2, 3}});
  CHECK_THROWS_AS(is_fc(fam(3, {{1, 2, 3}}), opts), SolveError);  // V not union-closed
  opts.domain = power_set(3);
  CHECK_THROWS_AS(is_fc(fam(3, {{1, 2}}), opts), SolveError);  // U(A) != [3]
}

TEST_CASE("fc3_value and upper_bound") {
  CHECK(fc3_value(4) == 3);
  CHECK(fc3_value(7) == 4);
  CHECK(fc3_value(10) == 6);
  CHECK_THROWS_AS(fc3_value(3), SolveError);

  CHECK(upper_bound(4, 9, 8, 12) == 21);
  CHECK(upper_bound(5, 8, 7, 14) == 36);
  CHECK(upper_bound(6, 9, 8, 26) == 76);
  CHECK_THROWS_AS(upper_bound(2, 9, 8, 12), SolveError);
  CHECK_THROWS_AS(upper_bound(4, 8, 8, 12), SolveError);
  CHECK_THROWS_AS(upper_bound(4, 9, 8, 71), SolveError);

  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 5);
    const int n0 = k + static_cast<int>(rng() % 6);
    const int n = n0 + 1 + static_cast<int>(rng() % 6);
    const auto total0 = binomial(n0, k);
    const int m0 = 1 + static_cast<int>(rng() % total0);
    const auto bound = upper_bound(k, n, n0, m0);
    CHECK(bound <= binomial(n, k));
    CHECK(bound >= 1);
  }
}

TEST_CASE("symmetry_reduce") {
  LinearProgram lp(3);
  lp.equalities.push_back({{1, 1, 1}, 1});
  lp.inequalities.push_back({{2, 1, 0}, 1});
  auto one = symmetry_reduce(lp, OrbitPartition{{0, 0, 0}});
  CHECK(one.num_vars == 1);
  CHECK(one.equalities[0].coefficients == std::vector<Rational>{3});
  CHECK(one.inequalities[0].coefficients == std::vector<Rational>{3});
  auto x = std::get<LpFeasible>(lp_solve(one)).point;
  CHECK(lift_point(x, OrbitPartition{{0, 0, 0}}) == std::vector<Rational>(3, Rational(1, 3)));

  auto same = symmetry_reduce(lp, OrbitPartition::discrete(3));
  CHECK(same.num_vars == 3);
  CHECK(same.inequalities[0].coefficients == lp.inequalities[0].coefficients);

  OrbitPartition halves{{0, 0, 0, 1, 1, 1}};
  LinearProgram six(6);
  six.equalities.push_back({std::vector<Rational>(6, 1), 1});
  six.inequalities.push_back({{1, 0, 0, 0, 0, 0}, Rational(1, 10)});
  auto two = symmetry_reduce(six, halves);
  CHECK(two.num_vars == 2);
  auto y = std::get<LpFeasible>(lp_solve(two)).point;
  auto c = lift_point(y, halves);
  CHECK(c[0] == c[1]);
  CHECK(c[1] == c[2]);
  CHECK(c[3] == c[5]);
  CHECK(is_feasible_point(six, c));
}

TEST_CASE("transitive families reduce to the uniform point") {
  auto pairs = Family(4, k_subsets(4, 2));
  IsFcOptions opts;
  opts.symmetry = true;
  auto cert = is_fc(pairs, opts);
  REQUIRE(cert.orbits);
  CHECK(cert.orbits->orbit_count() == 1);
  CHECK(cert.is_fc());
  CHECK(cert.weights == std::vector<Rational>(4, Rational(1, 4)));
}

TEST_CASE("options never change the verdict, and verdicts match the definition") {
  const auto uc3 = oracle::all_union_closed(3);
  for (const auto& base : oracle::union_closed_bases(3, uc3)) {
    const bool truth = oracle::poonen_fc(base, uc3);
    for (int mask = 0; mask < 4; ++mask) {
      IsFcOptions opts;
      opts.symmetry = mask & 1;
      opts.warm_start = mask & 2;
      auto cert = is_fc(base, opts);
      CHECK(cert.is_fc() == truth);
      CHECK(verify_certificate(cert).passed);
    }
  }

  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 3;
    auto f = oracle::random_k_family(n, 2 + trial % 3, 1 + trial % 4, rng);
    IsFcOptions plain, sym, warm;
    sym.symmetry = true;
    warm.warm_start = true;
    const bool v = is_fc(f).is_fc();
    CHECK(is_fc(f, sym).is_fc() == v);
    CHECK(is_fc(f, warm).is_fc() == v);
  }
}

TEST_CASE("FC is inherited by superfamilies") {
  std::mt19937 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 15; ++trial) {
    auto f = oracle::random_k_family(5, 3, 3, rng);
    if (!is_fc(f).is_fc()) continue;
    ++checked;
    auto extra = oracle::random_family(5, 2, rng);
    auto bigger = f;
    for (MemberSet s : extra) bigger = bigger.with(s);
    CHECK(is_fc(bigger).is_fc());
  }
  CHECK(checked > 0);
}

TEST_CASE("certificate JSON round trip") {
  IsFcOptions opts;
  opts.symmetry = true;
  for (const auto& f : {fam(2, {{1, 2}}), fam(3, {{1, 2, 3}}), fam(5, {{1, 2, 3}, {3, 4, 5}})}) {
    auto cert = is_fc(f, opts);
    const auto text = certificate_to_json(cert);
    auto back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(verify_certificate(back).passed);
    CHECK(text.find("\"kind\"") != std::string::npos);
  }
  IsFcOptions vopts;
  vopts.domain = no_singletons_domain(4);
  auto vcert = is_fc(fam(4, {{1, 2, 3, 4}}), vopts);
  auto vtext = certificate_to_json(vcert);
  CHECK(certificate_to_json(certificate_from_json(vtext)) == vtext);

  CHECK_THROWS_AS(certificate_from_json("{"), CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json("{\"kind\":\"maybe\"}"), CertificateFormatError);
}

TEST_CASE("cancellation") {
  std::atomic<bool> stop{true};
  IsFcOptions opts;
  opts.stop = &stop;
  CHECK_THROWS_AS(is_fc(fam(3, {{1, 2, 3}}), opts), SeparationCancelled);
}
