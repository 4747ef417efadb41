#pragma once

#include <cstdint>
#include <vector>

#include "fc/setfam.hpp"

namespace fc {

/// Bijection of [n]; image(i) is the image of element i (1-based).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // images[i-1] = image of i
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int element) const { return images_[element - 1]; }
  const std::vector<int>& images() const { return images_; }

  MemberSet apply(MemberSet s) const;
  Family apply(const Family& f) const;
  Permutation inverse() const;
  /// (this * other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

struct CanonicalForm {
  /// Normal-form family over [|U(F)|].
  Family relabeled;
  /// Permutation of the input's ground set; sends U(F) onto [|U(F)|] and
  /// witness.apply(F) has the same members as `relabeled`.
  Permutation witness;
};

/// Element orbits of the automorphism group. Elements outside U(F) form one
/// shared orbit (they are interchangeable).
struct OrbitPartition {
  std::vector<int> orbit_id;  // orbit_id[i-1], dense from 0 in order of first element

  int orbit_count() const;
  std::vector<std::vector<int>> orbits() const;  // 1-based element lists
  bool same_orbit(int a, int b) const { return orbit_id[a - 1] == orbit_id[b - 1]; }
  static OrbitPartition discrete(int n);
};

/// Universe bound for listing the full automorphism group.
inline constexpr int kMaxGroupUniverse = 10;

CanonicalForm canonical_form(const Family& family);
bool are_isomorphic(const Family& a, const Family& b);
/// Every bijection of U(F) fixing F setwise, extended by the identity
/// outside U(F). Throws FamilyError if |U(F)| > kMaxGroupUniverse.
std::vector<Permutation> automorphism_group(const Family& family);
OrbitPartition orbits(const Family& family);

}  // namespace fc
