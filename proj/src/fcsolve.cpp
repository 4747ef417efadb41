#include "fc/fcsolve.hpp"

#include <numeric>
#include <set>
#include <string>

namespace fc {

Cut Cut::of(Family b) {
  Cut cut;
  cut.size = b.size();
  cut.frequencies = fc::frequencies(b).counts;
  cut.family = std::move(b);
  return cut;
}

LinearRow Cut::row() const {
  LinearRow r;
  for (int f : frequencies) r.coefficients.emplace_back(f);
  r.rhs = half(static_cast<long>(size));
  r.rhs.canonicalize();
  return r;
}

LinearProgram cut_system(int n, const std::vector<Cut>& cuts) {
  LinearProgram lp(n);
  lp.equalities.push_back(LinearRow{std::vector<Rational>(n, Rational(1)), Rational(1)});
  for (const auto& cut : cuts) lp.inequalities.push_back(cut.row());
  return lp;
}

LinearProgram symmetry_reduce(const LinearProgram& lp, const OrbitPartition& orbits) {
  const int k = orbits.orbit_count();
  auto merge = [&](const std::vector<Rational>& a) {
    std::vector<Rational> out(k);
    for (int j = 0; j < lp.num_vars; ++j) out[orbits.orbit_id[j]] += a[j];
    return out;
  };
  LinearProgram reduced(k);
  for (const auto& r : lp.equalities) reduced.equalities.push_back({merge(r.coefficients), r.rhs});
  for (const auto& r : lp.inequalities) reduced.inequalities.push_back({merge(r.coefficients), r.rhs});
  if (!lp.nonnegative.empty()) {
    reduced.nonnegative.assign(k, true);
    for (int j = 0; j < lp.num_vars; ++j) {
      if (!lp.nonnegative[j]) reduced.nonnegative[orbits.orbit_id[j]] = false;
    }
  }
  reduced.sense = lp.sense;
  if (lp.sense != Sense::none) reduced.objective = merge(lp.objective);
  return reduced;
}

std::vector<Rational> lift_point(const std::vector<Rational>& reduced, const OrbitPartition& orbits) {
  std::vector<Rational> point;
  for (int id : orbits.orbit_id) point.push_back(reduced[id]);
  return point;
}

OrbitPartition domain_orbits(const Family& family, const std::optional<Family>& domain,
                             std::vector<Permutation>* group) {
  const int n = family.ground_size();
  auto all = automorphism_group(family);
  std::vector<Permutation> kept;
  for (auto& p : all) {
    if (!domain || p.apply(*domain) == *domain) kept.push_back(std::move(p));
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : kept) {
    for (int i = 1; i <= n; ++i) {
      const int a = find(i - 1), b = find(p(i) - 1);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  OrbitPartition out;
  std::vector<int> dense(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (dense[r] < 0) dense[r] = next++;
    out.orbit_id.push_back(dense[r]);
  }
  if (group) *group = std::move(kept);
  return out;
}

namespace {

void check_stop(const IsFcOptions& opts) {
  if (opts.stop && opts.stop->load(std::memory_order_relaxed)) throw SeparationCancelled();
  if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) throw SeparationCancelled();
}

void fill_farkas_summary(Certificate& cert) {
  cert.farkas_combination.assign(cert.n, cert.farkas.lambda.empty() ? Rational(0) : cert.farkas.lambda[0]);
  cert.farkas_bound = cert.farkas.lambda.empty() ? Rational(0) : cert.farkas.lambda[0];
  for (std::size_t b = 0; b < cert.cuts.size(); ++b) {
    const Rational& y = cert.farkas.multipliers[b];
    for (int i = 0; i < cert.n; ++i) cert.farkas_combination[i] += y * cert.cuts[b].frequencies[i];
    cert.farkas_bound += y * half(static_cast<long>(cert.cuts[b].size));
  }
}

}  // namespace

Family no_singletons_domain(int n) {
  std::vector<MemberSet> members;
  for (MemberSet s : power_set(n)) {
    if (s.size() != 1) members.push_back(s);
  }
  return Family(n, members);
}

Certificate is_fc(const Family& input, const IsFcOptions& opts, SolveStats* stats) {
  Family a;
  if (opts.domain) {
    const int n = opts.domain->ground_size();
    if (input.ground_size() != n) {
      try {
        a = input.with_ground(n);
      } catch (const FamilyError&) {
        throw SolveError("family does not fit the domain's ground set");
      }
    } else {
      a = input;
    }
    if (universe(a) != MemberSet::full(n)) {
      throw SolveError("with a domain the family's universe must be [" + std::to_string(n) + "]");
    }
  } else {
    if (universe(input).empty()) throw SolveError("family has an empty universe");
    a = compact_universe(input);
  }
  const int n = a.ground_size();
  if (n > kMaxSolveGround) {
    throw SolveError("universe of " + std::to_string(n) + " elements exceeds the limit of " +
                     std::to_string(kMaxSolveGround));
  }

  const UCFamily closure = union_closure(a);
  if (opts.domain) {
    const Family& v = *opts.domain;
    if (!is_union_closed(v)) throw SolveError("domain is not union-closed");
    if (!v.contains(MemberSet{})) throw SolveError("domain must contain the empty set");
    for (MemberSet s : closure.family()) {
      if (!v.contains(s)) throw SolveError("domain does not contain the closure member " + format_set(s));
    }
  }

  std::vector<Permutation> group;
  OrbitPartition orbit = OrbitPartition::discrete(n);
  if (opts.symmetry) orbit = domain_orbits(closure.family(), opts.domain, &group);

  std::set<Family> cut_set;
  auto add_cut = [&](const Family& b) {
    if (!opts.symmetry) {
      cut_set.insert(b);
      return;
    }
    for (const auto& p : group) cut_set.insert(p.apply(b));
  };
  if (opts.warm_start) {
    for (int i = 1; i <= n; ++i) {
      std::vector<MemberSet> avoid;
      for (MemberSet s : power_set(n)) {
        if (!s.contains(i)) avoid.push_back(s);
      }
      Family b = uplus(closure.family(), Family(n, avoid));
      const bool fits = !opts.domain || std::all_of(b.begin(), b.end(), [&](MemberSet s) {
        return opts.domain->contains(s);
      });
      if (fits) add_cut(b);
    }
  }

  Certificate cert;
  cert.n = n;
  cert.family = a;
  cert.closure_size = closure.size();
  cert.closure_frequencies = frequencies(closure.family()).counts;
  cert.domain = opts.domain;
  cert.symmetry = opts.symmetry;
  if (opts.symmetry) cert.orbits = orbit;

  SolveStats local;
  while (true) {
    check_stop(opts);
    ++local.rounds;
    std::vector<Cut> cuts;
    for (const auto& b : cut_set) cuts.push_back(Cut::of(b));
    const LinearProgram lp = cut_system(n, cuts);
    LpResult result = lp_solve(opts.symmetry ? symmetry_reduce(lp, orbit) : lp);

    if (auto* bad = std::get_if<LpInfeasible>(&result)) {
      FarkasCertificate farkas = bad->farkas;
      if (opts.symmetry) {
        // The cut set is invariant under the group, so the full system is
        // infeasible too; solve it to get multipliers in the original variables.
        auto full = lp_solve(lp);
        auto* proof = std::get_if<LpInfeasible>(&full);
        if (!proof) throw std::logic_error("symmetric system infeasible but full system feasible");
        farkas = proof->farkas;
      }
      cert.verdict = Verdict::non_fc;
      cert.cuts = std::move(cuts);
      cert.farkas = std::move(farkas);
      fill_farkas_summary(cert);
      break;
    }

    const auto& reduced = std::get<LpFeasible>(result).point;
    std::vector<Rational> point = opts.symmetry ? lift_point(reduced, orbit) : reduced;
    const auto problem = build_separation(closure, point, opts.domain);
    SeparationOptions sep;
    sep.mode = SeparationMode::first_positive;
    sep.stop = opts.stop;
    sep.deadline = opts.deadline;
    const auto found = solve_separation(problem, sep);
    local.separation_nodes += found.nodes;
    if (found.optimum <= 0) {
      cert.verdict = Verdict::fc;
      cert.weights = std::move(point);
      cert.cuts = std::move(cuts);
      break;
    }
    const auto before = cut_set.size();
    add_cut(found.witness);
    if (cut_set.size() == before) throw std::logic_error("separation returned a cut already present");
  }
  if (stats) *stats = local;
  return cert;
}

int fc3_value(int n) {
  if (n < 4) throw SolveError("FC(3, n) formula requires n >= 4");
  return n / 2 + 1;
}

std::uint64_t upper_bound(int k, int n, int n0, int m0) {
  if (k < 3 || n0 < k || n <= n0) throw SolveError("upper bound requires n > n0 >= k >= 3");
  Integer base_total;
  mpz_bin_uiui(base_total.get_mpz_t(), n0, k);
  if (m0 < 1 || Integer(m0) > base_total) throw SolveError("m0 must lie in 1..C(n0, k)");
  Integer top = 1, bottom = 1;
  for (int j = 0; j < k; ++j) {
    top *= n - j;
    bottom *= n0 - j;
  }
  Integer num = Integer(m0 - 1) * top;
  Integer ceil_part;
  mpz_cdiv_q(ceil_part.get_mpz_t(), num.get_mpz_t(), bottom.get_mpz_t());
  Integer result = ceil_part + 1;
  Integer total;
  mpz_bin_uiui(total.get_mpz_t(), n, k);
  if (result > total) throw std::logic_error("upper bound exceeds C(n, k)");
  if (!result.fits_ulong_p()) throw SolveError("upper bound does not fit in 64 bits");
  return result.get_ui();
}

}  // namespace fc
