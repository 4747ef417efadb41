// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fc/canon.hpp"
#include "fc/certificate.hpp"
#include "fc/enumfam.hpp"
#include "fc/verify.hpp"
#include "oracles.hpp"
#include "tamper.hpp"

using namespace fc;

namespace {

Family fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<MemberSet> members;
  for (auto s : sets) members.push_back(MemberSet::of(s));
  return Family(n, members);
}

// Collects failed expectations; the criterion passes when none were recorded.
struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool verified(const Certificate& cert) {
  return verify_certificate(certificate_from_json(certificate_to_json(cert))).passed;
}

Outcome small_decisions() {
  Outcome o;
  auto two = is_fc(fam(2, {{1, 2}}));
  auto three = is_fc(fam(3, {{1, 2, 3}}));
  o.expect(two.is_fc(), "{12} should be FC");
  o.expect(!three.is_fc(), "{123} should be Non-FC");
  o.expect(verified(two), "{12} certificate rejected");
  o.expect(verified(three), "{123} certificate rejected");
  o.summary = "{12} FC, {123} Non-FC, both certificates verified";
  return o;
}

Outcome fc_values_k3() {
  Outcome o;
  NfcSearch search(3);
  std::ostringstream s;
  const int expected[] = {3, 3, 4, 4};
  for (int n = 4; n <= 7; ++n) {
    auto r = fc_value(3, n, 40, {}, &search);
    const int got = r.value.value_or(-1);
    s << "FC(3," << n << ")=" << got << " ";
    o.expect(got == expected[n - 4], "FC(3," + std::to_string(n) + ") = " + std::to_string(got));
    o.expect(got == fc3_value(n), "formula disagrees at n = " + std::to_string(n));
    if (r.witness_certificate) o.expect(verified(*r.witness_certificate), "witness certificate rejected");
  }
  o.summary = s.str();
  return o;
}

Outcome fc_values_k4() {
  Outcome o;
  NfcSearch search(4);
  auto five = fc_value(4, 5, 10, {}, &search);
  auto six = fc_value(4, 6, 20, {}, &search);
  o.expect(five.value == 5, "FC(4,5) wrong");
  o.expect(six.value == 7, "FC(4,6) wrong");
  for (const auto* lvl : search.levels())
    for (const auto& c : lvl->certificates) o.expect(verified(c), "Non-FC certificate rejected");
  o.summary = "FC(4,5)=" + std::to_string(five.value.value_or(-1)) + " FC(4,6)=" +
              std::to_string(six.value.value_or(-1)) + ", every Non-FC certificate verified";
  return o;
}

Outcome vfc_decisions() {
  Outcome o;
  auto decide = [&](const Family& a, const Family& v, bool expect_fc, const std::string& label) {
    IsFcOptions opts;
    opts.domain = v;
    auto cert = is_fc(a, opts);
    o.expect(cert.is_fc() == expect_fc, label + " verdict");
    o.expect(verified(cert), label + " certificate");
  };
  decide(union_closure(fam(3, {{1, 2, 3}})).family(), power_set(3).without(MemberSet::of({1})), true, "<123>");
  decide(fam(4, {{1, 2, 3, 4}}), no_singletons_domain(4), true, "<1234>");
  decide(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}}), no_singletons_domain(6), true, "three 5-sets");
  decide(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}), no_singletons_domain(6), false, "two 5-sets");
  std::ostringstream s;
  for (auto [k, n, want] : {std::tuple{5, 6, 3}, std::tuple{5, 7, 5}, std::tuple{6, 7, 7}}) {
    auto r = fcv_value(k, n, no_singletons_domain(n));
    s << "FC_V(" << k << "," << n << ")=" << r.value.value_or(-1) << " ";
    o.expect(r.value == want, "FC_V(" + std::to_string(k) + "," + std::to_string(n) + ")");
    if (r.witness_certificate) o.expect(verified(*r.witness_certificate), "V witness certificate");
  }
  o.summary = "four single-family verdicts, " + s.str();
  return o;
}

Outcome upper_bounds() {
  Outcome o;
  o.expect(upper_bound(4, 9, 8, 12) == 21, "(4,9) from FC(4,8)");
  o.expect(upper_bound(5, 8, 7, 14) == 36, "(5,8) from FC(5,7)");
  o.expect(upper_bound(6, 9, 8, 26) == 76, "(6,9) from FC(6,8)");
  std::mt19937 rng(310);
  int tuples = 0;
  while (tuples < 100) {
    const int k = 3 + static_cast<int>(rng() % 6);
    const int n0 = k + static_cast<int>(rng() % 7);
    const int n = n0 + 1 + static_cast<int>(rng() % 7);
    if (n > 16) continue;
    const int m0 = 1 + static_cast<int>(rng() % binomial(n0, k));
    ++tuples;
    try {
      o.expect(upper_bound(k, n, n0, m0) <= binomial(n, k), "bound exceeds C(n,k)");
    } catch (const std::exception& e) {
      o.expect(false, std::string("valid tuple rejected: ") + e.what());
    }
  }
  o.summary = "21, 36, 76 reproduced; 100 random tuples within C(n,k)";
  return o;
}

Outcome symmetry_equivalence() {
  Outcome o;
  std::set<Family> corpus;
  for (int k = 1; k <= 4; ++k)
    for (int n = k; n <= 6; ++n) {
      const auto sets = k_subsets(n, k);
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i; j < sets.size(); ++j) {
          Family f(n, {sets[i], sets[j]});
          corpus.insert(canonical_form(compact_universe(union_closure(f).family())).relabeled);
        }
    }
  std::mt19937 rng(66);
  for (int i = 0; i < 50; ++i) {
    Family f = oracle::random_family(3 + i % 4, 4, rng);
    if (universe(f).empty()) continue;
    corpus.insert(compact_universe(union_closure(f).family()));
  }
  int transitive = 0;
  for (const auto& a : corpus) {
    IsFcOptions sym;
    sym.symmetry = true;
    const auto plain = is_fc(a);
    const auto reduced = is_fc(a, sym);
    o.expect(plain.is_fc() == reduced.is_fc(), "symmetry changed the verdict of\n" + format_family(a));
    if (orbits(a).orbit_count() != 1) continue;
    ++transitive;
    const int n = a.ground_size();
    auto p = build_separation(union_closure(a), std::vector<Rational>(n, Rational(1, n)));
    const bool uniform_ok = solve_separation(p).optimum <= 0;
    o.expect(uniform_ok == plain.is_fc(), "uniform check disagrees on\n" + format_family(a));
  }
  o.summary = std::to_string(corpus.size()) + " families agree; " + std::to_string(transitive) +
              " transitive families match the uniform check";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  int total = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto uc = oracle::all_union_closed(n);
    for (const auto& base : oracle::union_closed_bases(n, uc)) {
      ++total;
      std::vector<Rational> point;
      const bool truth = oracle::poonen_fc(base, uc, &point);
      if (truth) {
        auto p = build_separation(UCFamily(base), point);
        o.expect(brute_separation(p).optimum <= 0, "oracle point is separated");
      }
      o.expect(is_fc(base).is_fc() == truth, "verdict differs on\n" + format_family(base));
    }
  }
  o.summary = std::to_string(total) + " union-closed classes over n <= 4 agree with the definitional check";
  return o;
}

Outcome canonical_suite() {
  Outcome o;
  std::mt19937 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 7;
    auto f = oracle::random_family(n, 9, rng);
    auto p = oracle::random_permutation(n, rng);
    o.expect(canonical_form(f).relabeled == canonical_form(p.apply(f)).relabeled, "canonical form not invariant");
  }
  for (int t = 0; t < 300; ++t) {
    auto f = oracle::random_family(1 + t % 5, 6, rng);
    o.expect(automorphism_group(f).size() == oracle::brute_group_order(f), "group order mismatch");
  }
  o.summary = "1000 relabeled pairs identical, 300 group orders match brute force";
  return o;
}

Outcome translates() {
  Outcome o;
  int cases = 0;
  for (int n = 4; n <= 8; ++n)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          ++cases;
          o.expect(regular_3set_fc(translates_family(n, {a, b, c})), "translates fail the regular 3-set test");
        }
  auto four = translates_family(4, {0, 1, 2});
  o.expect(four.members.size() == 32, "n = 4 size");
  o.expect(regularity(four) == 6, "n = 4 degree");
  o.summary = std::to_string(cases) + " (n, R) pairs pass; n = 4 gives 32 sets of degree 6";
  return o;
}

Outcome lex_evidence() {
  Outcome o;
  auto r = lex_scan(4, 5);
  o.expect(r.m == 5, "lex_scan(4,5) m");
  o.expect(r.prefix_fc.is_fc() && verified(r.prefix_fc), "[S_5] FC certificate");
  o.expect(r.prev_nonfc && !r.prev_nonfc->is_fc() && verified(*r.prev_nonfc), "[S_4] Non-FC certificate");
  NfcSearch k4(4);
  o.expect(fc_value(4, 5, 10, {}, &k4).value == r.m, "lex_scan(4,5) differs from FC(4,5)");
  NfcSearch k3(3);
  std::ostringstream s;
  for (int n = 4; n <= 6; ++n) {
    auto l = lex_scan(3, n);
    s << n << ":" << l.m << " ";
    o.expect(l.m == n / 2 + 1, "lex_scan(3," + std::to_string(n) + ")");
    o.expect(fc_value(3, n, 30, {}, &k3).value == l.m, "lex_scan(3," + std::to_string(n) + ") differs from fc_value");
  }
  o.summary = "lex_scan(4,5)=" + std::to_string(r.m) + ", lex_scan(3,n) " + s.str() + "match fc_value";
  return o;
}

Outcome tamper_suite() {
  Outcome o;
  std::vector<std::string> corpus;
  auto add = [&](const Family& f, IsFcOptions opts = {}) { corpus.push_back(certificate_to_json(is_fc(f, opts))); };
  add(fam(2, {{1, 2}}));
  add(fam(3, {{1, 2, 3}}));
  add(lex_prefix(5, 4, 4));
  add(lex_prefix(5, 4, 5));
  add(lex_prefix(6, 3, 3));
  add(lex_prefix(6, 3, 4));
  IsFcOptions sym;
  sym.symmetry = true;
  add(lex_prefix(6, 4, 7), sym);
  IsFcOptions v;
  v.domain = no_singletons_domain(6);
  add(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}}), v);
  add(fam(6, {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}}), v);
  for (const auto& c : corpus) o.expect(verify_certificate(certificate_from_json(c)).passed, "base certificate");

  std::mt19937 rng(500);
  int rejected = 0;
  for (int t = 0; t < 500; ++t) {
    auto [edited, what] = tamper::single_field(corpus[t % corpus.size()], rng);
    bool caught;
    try {
      caught = !verify_certificate(certificate_from_json(edited)).passed;
    } catch (const CertificateFormatError&) {
      caught = true;
    }
    rejected += caught;
    o.expect(caught, "tamper of " + what + " accepted");
  }
  o.summary = std::to_string(rejected) + "/500 tampered certificates rejected";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"small FC decisions", small_decisions},
      {"FC(3,n), n = 4..7", fc_values_k3},
      {"FC(4,5) and FC(4,6)", fc_values_k4},
      {"V-FC decisions", vfc_decisions},
      {"upper-bound formula", upper_bounds},
      {"symmetry equivalence", symmetry_equivalence},
      {"oracle equivalence", oracle_equivalence},
      {"canonical forms", canonical_suite},
      {"translates", translates},
      {"lex-scan evidence", lex_evidence},
      {"certificate tampers", tamper_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << (ok ? o.summary : o.failures.front()) << " (" << secs << " s)" << std::endl;
    if (!ok && o.failures.size() > 1) std::cout << "     " << o.failures.size() - 1 << " further failures\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
