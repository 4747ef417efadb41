#include <algorithm>
#include <random>

#include "doctest.h"
#include "fc/certificate.hpp"
#include "fc/enumfam.hpp"
#include "fc/verify.hpp"
#include "tamper.hpp"

using namespace fc;

namespace {

Family fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<MemberSet> members;
  for (auto s : sets) members.push_back(MemberSet::of(s));
  return Family(n, members);
}

bool check_passed(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.passed;
  return false;
}

bool rejects(const std::string& text) {
  try {
    return !verify_certificate(certificate_from_json(text)).passed;
  } catch (const CertificateFormatError&) {
    return true;
  }
}

}  // namespace

TEST_CASE("verify_fc") {
  auto cert = is_fc(fam(2, {{1, 2}}));
  auto ok = verify_fc(cert);
  CHECK(ok.passed);
  CHECK(ok.failure.empty());
  CHECK(check_passed(ok, "separation"));

  auto bad = cert;
  bad.weights = {1, 0};
  auto r = verify_fc(bad);
  CHECK_FALSE(r.passed);
  CHECK((r.failure.rfind("separation", 0) == 0 || r.failure.rfind("weights.cuts", 0) == 0));

  bad.weights = {Rational(1, 2), Rational(1, 3)};
  r = verify_fc(bad);
  CHECK_FALSE(r.passed);
  CHECK(r.failure.rfind("weights.simplex", 0) == 0);

  CHECK_FALSE(verify_fc(is_fc(fam(3, {{1, 2, 3}}))).passed);  // wrong verdict
}

TEST_CASE("verify_fc uses the search for larger domains") {
  auto cert = is_fc(lex_prefix(6, 4, 7));
  REQUIRE(cert.is_fc());
  CHECK(verify_fc(cert).passed);
  auto shifted = cert;
  shifted.weights.assign(6, Rational(0));
  shifted.weights[5] = 1;
  CHECK_FALSE(verify_fc(shifted).passed);
}

TEST_CASE("verify_nonfc") {
  auto cert = is_fc(fam(3, {{1, 2, 3}}));
  REQUIRE_FALSE(cert.is_fc());
  CHECK(verify_nonfc(cert).passed);

  REQUIRE_FALSE(cert.cuts.empty());
  auto not_closed = cert;
  not_closed.cuts[0] = Cut::of(fam(3, {{1}, {2}, {1, 2, 3}}));
  std::sort(not_closed.cuts.begin(), not_closed.cuts.end(),
            [](const Cut& x, const Cut& y) { return x.family < y.family; });
  auto r = verify_nonfc(not_closed);
  CHECK_FALSE(r.passed);
  CAPTURE(r.failure);
  CHECK(r.failure.rfind("cuts.closed", 0) == 0);

  auto negative = cert;
  negative.farkas.multipliers[0] = -1;
  r = verify_nonfc(negative);
  CHECK_FALSE(r.passed);
  CHECK(r.failure.rfind("farkas.sign", 0) == 0);

  auto lost = cert;
  lost.cuts.pop_back();
  CHECK_FALSE(verify_nonfc(lost).passed);
}

TEST_CASE("every emitted certificate verifies") {
  for (int k : {3, 4}) {
    for (int n = k; n <= 6; ++n) {
      for (int m = 1; m <= 3; ++m) {
        for (const auto& f : gen_noniso_families(n, k, m)) {
          for (bool sym : {false, true}) {
            IsFcOptions opts;
            opts.symmetry = sym;
            auto cert = is_fc(f, opts);
            auto back = certificate_from_json(certificate_to_json(cert));
            auto report = verify_certificate(back);
            CAPTURE(format_family(f));
            CAPTURE(sym);
            CAPTURE(report.failure);
            CHECK(report.passed);
          }
        }
      }
    }
  }
}

TEST_CASE("single-field tampers are rejected") {
  std::vector<std::string> corpus;
  for (const auto& f : {fam(2, {{1, 2}}), fam(3, {{1, 2, 3}}), lex_prefix(5, 4, 4), lex_prefix(5, 4, 5),
                        lex_prefix(6, 3, 4), lex_prefix(5, 3, 2)}) {
    corpus.push_back(certificate_to_json(is_fc(f)));
  }
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& text = corpus[trial % corpus.size()];
    auto [edited, what] = tamper::single_field(text, rng);
    CAPTURE(what);
    CHECK(rejects(edited));
  }
}
