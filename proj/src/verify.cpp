#include "fc/verify.hpp"

#include <algorithm>

namespace fc {

void VerificationReport::record(std::string name, bool ok, std::string detail) {
  if (!ok && passed) {
    passed = false;
    failure = name + (detail.empty() ? "" : ": " + detail);
  }
  checks.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

// Checks shared by both verdicts. Returns the closure when the base family
// is usable, otherwise records a failure.
std::optional<UCFamily> check_base(const Certificate& cert, VerificationReport& report) {
  const Family& a = cert.family;
  const bool shape = a.ground_size() == cert.n && cert.n >= 1 && cert.n <= kMaxSolveGround;
  report.record("base.universe", shape && universe(a) == MemberSet::full(cert.n),
                "family universe must be [n]");
  if (!report.passed) return std::nullopt;

  UCFamily closure = union_closure(a);
  report.record("base.closure",
                closure.size() == cert.closure_size &&
                    frequencies(closure.family()).counts == cert.closure_frequencies,
                "cached closure size or frequencies do not match");

  if (cert.domain) {
    const Family& v = *cert.domain;
    bool ok = v.ground_size() == cert.n && v.contains(MemberSet{}) && is_union_closed(v);
    for (MemberSet s : closure.family()) ok = ok && v.contains(s);
    report.record("base.domain", ok, "domain must be union-closed and contain the closure");
  }

  if (cert.symmetry) {
    bool ok = cert.orbits.has_value();
    if (ok) ok = domain_orbits(closure.family(), cert.domain).orbits() == cert.orbits->orbits();
    report.record("base.orbits", ok, "orbit partition does not match the automorphism group");
  } else {
    report.record("base.orbits", !cert.orbits.has_value(), "orbits present without symmetry");
  }

  bool sorted = true;
  for (std::size_t i = 1; i < cert.cuts.size(); ++i) sorted = sorted && cert.cuts[i - 1].family < cert.cuts[i].family;
  report.record("cuts.order", sorted, "cuts must be distinct and sorted");
  if (!report.passed) return std::nullopt;
  return closure;
}

// Cached counts, union-closure, absorption of the base, and domain membership.
void check_cuts(const Certificate& cert, const UCFamily& closure, VerificationReport& report) {
  for (std::size_t i = 0; i < cert.cuts.size(); ++i) {
    const Cut& c = cert.cuts[i];
    const std::string tag = "cut " + std::to_string(i);
    const bool counts = c.family.ground_size() == cert.n && c.size == c.family.size() &&
                        c.frequencies == frequencies(c.family).counts;
    if (!counts) return report.record("cuts.counts", false, tag + " cached counts differ");
    if (!is_union_closed(c.family)) return report.record("cuts.closed", false, tag + " is not union-closed");
    if (!c.family.empty() && uplus(closure.family(), c.family) != c.family) {
      return report.record("cuts.absorb", false, tag + " is not closed under union with the base");
    }
    if (cert.domain) {
      for (MemberSet s : c.family) {
        if (!cert.domain->contains(s)) return report.record("cuts.domain", false, tag + " leaves the domain");
      }
    }
  }
  report.record("cuts.valid", true);
}

}  // namespace

VerificationReport verify_fc(const Certificate& cert) {
  VerificationReport report;
  report.record("verdict", cert.is_fc(), "not an FC certificate");
  if (!report.passed) return report;
  auto closure = check_base(cert, report);
  if (!closure) return report;

  // (a) a point of the simplex
  bool simplex = static_cast<int>(cert.weights.size()) == cert.n;
  Rational total;
  for (const auto& c : cert.weights) {
    simplex = simplex && c >= 0;
    total += c;
  }
  report.record("weights.simplex", simplex && total == 1, "weights must be nonnegative and sum to 1");
  if (!report.passed) return report;

  // (b) stored cuts hold
  check_cuts(cert, *closure, report);
  if (!report.passed) return report;
  for (std::size_t i = 0; i < cert.cuts.size(); ++i) {
    if (violation(cert.weights, cert.cuts[i].family) > 0) {
      report.record("weights.cuts", false, "cut " + std::to_string(i) + " is violated");
      return report;
    }
  }
  report.record("weights.cuts", true);

  // (c) no separating family at all
  const auto problem = build_separation(*closure, cert.weights, cert.domain);
  Rational optimum;
  if (problem.domain.size() <= static_cast<std::size_t>(kMaxBruteDomain)) {
    optimum = brute_separation(problem).optimum;
  } else {
    SeparationOptions opts;
    opts.mode = SeparationMode::first_positive;
    opts.order = BranchOrder::reverse;
    optimum = solve_separation(problem, opts).optimum;
  }
  report.record("separation", optimum <= 0, "a union-closed family violates the weights");
  return report;
}

VerificationReport verify_nonfc(const Certificate& cert) {
  VerificationReport report;
  report.record("verdict", !cert.is_fc(), "not a Non-FC certificate");
  report.record("weights.absent", cert.weights.empty(), "Non-FC certificate carries weights");
  if (!report.passed) return report;
  auto closure = check_base(cert, report);
  if (!closure) return report;

  // (a) genuine cuts
  check_cuts(cert, *closure, report);
  if (!report.passed) return report;

  // (b) Farkas replay
  const auto& y = cert.farkas.multipliers;
  bool shape = y.size() == cert.cuts.size() && cert.farkas.lambda.size() == 1 &&
               static_cast<int>(cert.farkas_combination.size()) == cert.n;
  report.record("farkas.shape", shape, "multiplier or combination lengths do not match");
  if (!report.passed) return report;
  report.record("farkas.sign", std::all_of(y.begin(), y.end(), [](const Rational& v) { return v >= 0; }),
                "negative multiplier");
  if (!report.passed) return report;

  const Rational& lambda = cert.farkas.lambda[0];
  std::vector<Rational> combination(cert.n, lambda);
  Rational bound = lambda;
  for (std::size_t b = 0; b < cert.cuts.size(); ++b) {
    const auto counts = frequencies(cert.cuts[b].family).counts;
    for (int i = 0; i < cert.n; ++i) combination[i] += y[b] * counts[i];
    bound += y[b] * half(static_cast<long>(cert.cuts[b].family.size()));
  }
  report.record("farkas.replay", combination == cert.farkas_combination && bound == cert.farkas_bound,
                "stored combination or bound differs from the recomputed one");
  if (!report.passed) return report;
  report.record("farkas.combination",
                std::all_of(combination.begin(), combination.end(), [](const Rational& v) { return v <= 0; }),
                "some coordinate of the combination is positive");
  report.record("farkas.bound", bound > 0, "aggregated right-hand side is not positive");

  // Same statement through the LP layer.
  FarkasCertificate plain{y, {lambda}};
  std::vector<Cut> fresh;
  for (const auto& c : cert.cuts) fresh.push_back(Cut::of(c.family));
  report.record("farkas.lp", check_farkas(cut_system(cert.n, fresh), plain), "LP replay rejected");
  return report;
}

VerificationReport verify_certificate(const Certificate& cert) {
  return cert.is_fc() ? verify_fc(cert) : verify_nonfc(cert);
}

}  // namespace fc
