#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fc/canon.hpp"
#include "fc/ratlp.hpp"
#include "fc/sepip.hpp"
#include "fc/setfam.hpp"

namespace fc {

/// Largest universe accepted by the decision procedure.
inline constexpr int kMaxSolveGround = 8;

class SolveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One inequality sum_i c_i |B_i| >= |B| / 2 with cached counts.
struct Cut {
  Family family;
  std::size_t size = 0;
  std::vector<int> frequencies;

  static Cut of(Family b);
  LinearRow row() const;
};

enum class Verdict { fc, non_fc };

/// Proof object for either verdict. FC: `weights` satisfy every cut and no
/// separating family exists. Non-FC: `farkas` proves the cut system
/// {c >= 0, sum c = 1, cuts} infeasible; multipliers follow `cuts` order.
struct Certificate {
  Verdict verdict = Verdict::fc;
  int n = 0;
  Family family;                 // the family the proof is about, U = [n]
  std::size_t closure_size = 0;  // |<family>|
  std::vector<int> closure_frequencies;
  std::optional<Family> domain;  // nullopt: all of P([n])
  std::vector<Rational> weights;
  std::vector<Cut> cuts;  // sorted by family normal form
  FarkasCertificate farkas;
  // Non-FC only: per-variable sum of y_B |B_i| + lambda, and sum y_B |B|/2 + lambda.
  std::vector<Rational> farkas_combination;
  Rational farkas_bound;
  bool symmetry = false;
  std::optional<OrbitPartition> orbits;

  bool is_fc() const { return verdict == Verdict::fc; }
};

struct IsFcOptions {
  bool symmetry = false;
  bool warm_start = false;
  std::optional<Family> domain;
  const std::atomic<bool>* stop = nullptr;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveStats {
  int rounds = 0;
  std::uint64_t separation_nodes = 0;
};

/// Cutting-plane decision. Without a domain the universe is compacted to
/// [|U|]; with one, U(A) must already be [n] for the domain's n.
Certificate is_fc(const Family& family, const IsFcOptions& opts = {}, SolveStats* stats = nullptr);

/// The LP {c >= 0, sum c = 1, cut rows} over the given cuts.
LinearProgram cut_system(int n, const std::vector<Cut>& cuts);

/// Merge variables by orbit: one variable per orbit, coefficients summed over
/// its members. Feasible points lift by copying each orbit value.
LinearProgram symmetry_reduce(const LinearProgram& lp, const OrbitPartition& orbits);
std::vector<Rational> lift_point(const std::vector<Rational>& reduced, const OrbitPartition& orbits);

/// Orbits of the automorphisms of `family` that also fix `domain`.
OrbitPartition domain_orbits(const Family& family, const std::optional<Family>& domain,
                             std::vector<Permutation>* group = nullptr);

/// FC(3, n) = floor(n/2) + 1 for n >= 4.
int fc3_value(int n);

/// 1 + ceil((m0 - 1) * n(n-1)...(n-k+1) / (n0(n0-1)...(n0-k+1))), checked
/// against C(n, k).
std::uint64_t upper_bound(int k, int n, int n0, int m0);

/// V = {S subset of [n] : |S| != 1}
Family no_singletons_domain(int n);

}  // namespace fc
