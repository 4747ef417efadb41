#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fc/certificate.hpp"
#include "fc/enumfam.hpp"
#include "fc/verify.hpp"
#include "oracles.hpp"

using namespace fc;

namespace {

Family fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<MemberSet> members;
  for (auto s : sets) members.push_back(MemberSet::of(s));
  return Family(n, members);
}

// Every family of m distinct k-subsets of [n] with universe [n].
std::vector<Family> all_families(int n, int k, int m) {
  const auto sets = k_subsets(n, k);
  std::vector<Family> out;
  std::vector<int> pick(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      std::vector<MemberSet> members;
      for (int i : pick) members.push_back(sets[i]);
      Family f(n, members);
      if (universe(f) == MemberSet::full(n)) out.push_back(f);
      return;
    }
    for (int i = start; i < static_cast<int>(sets.size()); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::size_t brute_class_count(const std::vector<Family>& families) {
  std::set<std::vector<unsigned>> classes;
  for (const auto& f : families) classes.insert(oracle::brute_canonical(f));
  return classes.size();
}

// Definitional contract of getNFC: Non-FC families of m k-sets with universe
// [n], no proper FC subfamily, one per class (brute canonical form).
std::set<std::vector<unsigned>> brute_nfc(int n, int k, int m) {
  std::set<std::vector<unsigned>> out;
  for (const auto& f : all_families(n, k, m)) {
    if (is_fc(f).is_fc()) continue;
    bool proper_fc = false;
    for (MemberSet t : f) {
      const auto sub = f.without(t);
      if (!sub.empty() && is_fc(sub).is_fc()) proper_fc = true;
    }
    if (!proper_fc) out.insert(oracle::brute_canonical(f));
  }
  return out;
}

}  // namespace

TEST_CASE("gen_noniso_families examples") {
  auto one = gen_noniso_families(3, 3, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == fam(3, {{1, 2, 3}}));
  CHECK(gen_noniso_families(4, 3, 1).empty());
  // Two distinct 3-subsets of [4] always meet in exactly two elements.
  CHECK(gen_noniso_families(4, 3, 2).size() == brute_class_count(all_families(4, 3, 2)));
  CHECK(gen_noniso_families(4, 3, 2).size() == 1);
  CHECK(gen_noniso_families(4, 3, 5).empty());
}

TEST_CASE("gen_noniso_families matches brute-force classification") {
  for (int n = 3; n <= 6; ++n) {
    for (int k = 2; k <= std::min(n, 4); ++k) {
      for (int m = 1; m <= std::min<int>(static_cast<int>(binomial(n, k)), n == 6 ? 3 : 6); ++m) {
        auto reps = gen_noniso_families(n, k, m);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(m);
        CHECK(reps.size() == brute_class_count(all_families(n, k, m)));
        for (std::size_t i = 0; i < reps.size(); ++i) {
          CHECK(universe(reps[i]) == MemberSet::full(n));
          CHECK(reps[i].size() == static_cast<std::size_t>(m));
          for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(are_isomorphic(reps[i], reps[j]));
        }
      }
    }
  }
  EnumOptions par;
  par.jobs = 3;
  CHECK(gen_noniso_families(6, 3, 4, par) == gen_noniso_families(6, 3, 4));
}

TEST_CASE("get_nfc examples") {
  auto three = get_nfc(3, 3, 1);
  REQUIRE(three.size() == 1);
  CHECK(three[0] == fam(3, {{1, 2, 3}}));
  CHECK(get_nfc(6, 3, 4).empty());
  CHECK(get_nfc(5, 4, 5).empty());
  CHECK_THROWS_AS(get_nfc(9, 4, 3), SolveError);
  CHECK_THROWS_AS(NfcSearch(2), SolveError);
}

TEST_CASE("get_nfc matches the definitional enumeration for n <= 5") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {5, 3}, {4, 4}, {5, 4}}) {
    NfcSearch search(k);
    for (int m = 1; m <= static_cast<int>(binomial(n, k)); ++m) {
      CAPTURE(n);
      CAPTURE(k);
      CAPTURE(m);
      const auto& lvl = search.level(n, m);
      std::set<std::vector<unsigned>> got;
      for (std::size_t i = 0; i < lvl.families.size(); ++i) {
        got.insert(oracle::brute_canonical(lvl.families[i]));
        CHECK(verify_nonfc(lvl.certificates[i]).passed);
        CHECK(lvl.certificates[i].family == lvl.families[i]);
      }
      CHECK(got.size() == lvl.families.size());  // pairwise non-isomorphic
      CHECK(got == brute_nfc(n, k, m));
    }
  }
}

TEST_CASE("fc_value") {
  for (int n = 4; n <= 6; ++n) CHECK(*fc_value(3, n, 20).value == fc3_value(n));
  auto r45 = fc_value(4, 5, 10);
  CHECK(*r45.value == 5);
  REQUIRE(r45.witness);
  CHECK(r45.witness->size() == 4);
  CHECK(verify_certificate(*r45.witness_certificate).passed);
  CHECK_FALSE(r45.witness_certificate->is_fc());

  CHECK_THROWS_AS(fc_value(4, 5, 3), SolveError);

  // Every 5-subset family of [6] can be Non-FC.
  auto undefined = fc_value(5, 6, 10);
  CHECK_FALSE(undefined.value.has_value());
  CHECK(undefined.witness->size() == 6);
  CHECK_FALSE(undefined.witness_certificate->is_fc());

  SUBCASE("worker count does not change the result") {
    EnumOptions par;
    par.jobs = 4;
    NfcSearch a(3), b(3, par);
    fc_value(3, 6, 20, {}, &a);
    fc_value(3, 6, 20, par, &b);
    auto la = a.levels(), lb = b.levels();
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) CHECK(la[i]->families == lb[i]->families);
  }
}

TEST_CASE("lex_scan") {
  auto r = lex_scan(4, 5);
  CHECK(r.m == 5);
  CHECK(r.prefix_fc.is_fc());
  REQUIRE(r.prev_nonfc);
  CHECK(verify_certificate(r.prefix_fc).passed);
  CHECK(verify_certificate(*r.prev_nonfc).passed);
  CHECK(lex_scan(3, 6).m == 4);
}

TEST_CASE("fcv_value") {
  auto r = fcv_value(5, 6, no_singletons_domain(6));
  CHECK(*r.value == 3);
  REQUIRE(r.witness);
  CHECK(r.witness->size() == 2);
  CHECK(verify_certificate(*r.witness_certificate).passed);
  CHECK(*fcv_value(6, 7, no_singletons_domain(7)).value == 7);
  CHECK_THROWS_AS(fcv_value(5, 6, power_set(6).without(MemberSet::of({1}))), SolveError);
}

TEST_CASE("family lists and result directories") {
  std::vector<Family> fams{fam(4, {{1, 2, 3}, {2, 3, 4}}), fam(3, {{}, {1}}), fam(5, {{1, 2, 3, 4, 5}})};
  CHECK(parse_family_list(format_family_list(fams)) == fams);

  NfcSearch search(3);
  fc_value(3, 5, 10, {}, &search);
  const auto dir = std::filesystem::temp_directory_path() / "fc_results_test";
  std::filesystem::remove_all(dir);
  write_results(dir, search);
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  for (const auto* lvl : search.levels()) {
    const auto file = dir / ("nfc_k3_n" + std::to_string(lvl->n) + "_m" + std::to_string(lvl->m) + ".fam");
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(parse_family_list(text) == lvl->families);
    for (std::size_t i = 0; i < lvl->families.size(); ++i) {
      std::ifstream cin(dir / "certs" /
                        ("nfc_k3_n" + std::to_string(lvl->n) + "_m" + std::to_string(lvl->m) + "_" +
                         std::to_string(i) + ".json"));
      std::string cert((std::istreambuf_iterator<char>(cin)), {});
      CHECK(verify_certificate(certificate_from_json(cert)).passed);
    }
  }
  std::filesystem::remove_all(dir);
}
