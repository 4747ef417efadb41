#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fc/rational.hpp"
#include "fc/setfam.hpp"

namespace fc {

class SeparationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a solve is stopped by its stop flag or deadline.
class SeparationCancelled : public std::runtime_error {
 public:
  SeparationCancelled() : std::runtime_error("separation cancelled") {}
};

/// Find B subset of D, union-closed, closed under union with every member of
/// the base family, maximizing |B| - 2 sum_i c_i |B_i|.
struct SeparationProblem {
  UCFamily base;
  std::vector<Rational> weights;
  Family domain;

  int ground_size() const { return base.ground_size(); }
};

/// x_first + x_second <= 1 + x_target, or x_first <= x_target when absorption.
struct SeparationConstraint {
  MemberSet first;
  MemberSet second;
  MemberSet target;
  bool absorption = false;
};

/// Validates everything; `domain` defaults to the full power set.
SeparationProblem build_separation(const UCFamily& base, std::vector<Rational> weights,
                                   std::optional<Family> domain = std::nullopt);

std::vector<SeparationConstraint> separation_constraints(const SeparationProblem& p);

/// 1 - 2 * sum_{i in S} c_i
Rational objective_coefficient(const std::vector<Rational>& weights, MemberSet s);
/// |B| - 2 * sum_i c_i |B_i|
Rational violation(const std::vector<Rational>& weights, const Family& b);
/// B subset of D, union-closed, and closed under union with the base.
bool is_separation_feasible(const SeparationProblem& p, const Family& b);

enum class SeparationMode { optimum, first_positive };
enum class BranchOrder { forward, reverse };

struct SeparationOptions {
  SeparationMode mode = SeparationMode::optimum;
  BranchOrder order = BranchOrder::forward;
  const std::atomic<bool>* stop = nullptr;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Called with every improving feasible family found during the search.
  std::function<void(const Family&)> on_incumbent;
};

struct SeparationResult {
  Rational optimum;
  Family witness;  // empty family when nothing beats 0
  std::uint64_t nodes = 0;
};

/// Exact branch and bound. In first_positive mode the search stops at the
/// first family with positive value; otherwise the optimum is global.
SeparationResult solve_separation(const SeparationProblem& p, const SeparationOptions& opts = {});

inline constexpr int kMaxBruteDomain = 16;
/// Exhaustive enumeration of every subfamily of the domain.
SeparationResult brute_separation(const SeparationProblem& p);

}  // namespace fc
