#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fc {

/// Largest ground set handled by the bit-vector representation.
inline constexpr int kMaxGround = 16;

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subset of [n], n <= 16. Bit i-1 is set iff element i is present.
class MemberSet {
 public:
  using Bits = std::uint32_t;

  constexpr MemberSet() = default;
  constexpr explicit MemberSet(Bits bits) : bits_(bits) {}

  static MemberSet of(std::initializer_list<int> elements);
  static MemberSet from_elements(const std::vector<int>& elements);
  /// {1, ..., n}
  static constexpr MemberSet full(int n) { return MemberSet((Bits{1} << n) - 1); }

  constexpr Bits bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int element) const { return (bits_ >> (element - 1)) & 1u; }
  constexpr bool subset_of(MemberSet other) const { return (bits_ & ~other.bits_) == 0; }
  /// Largest element, 0 for the empty set.
  constexpr int max_element() const { return 32 - std::countl_zero(bits_); }

  std::vector<int> elements() const;

  constexpr MemberSet operator|(MemberSet o) const { return MemberSet(bits_ | o.bits_); }
  constexpr MemberSet operator&(MemberSet o) const { return MemberSet(bits_ & o.bits_); }
  constexpr MemberSet operator^(MemberSet o) const { return MemberSet(bits_ ^ o.bits_); }
  constexpr MemberSet minus(MemberSet o) const { return MemberSet(bits_ & ~o.bits_); }

  constexpr auto operator<=>(const MemberSet&) const = default;

 private:
  Bits bits_ = 0;
};

/// Finite family of distinct subsets of [ground_size], kept sorted by the
/// integer value of each member's bit vector.
class Family {
 public:
  Family() = default;
  /// Normalizes (sorts, deduplicates) and validates the members.
  Family(int ground_size, std::vector<MemberSet> members);

  int ground_size() const { return ground_size_; }
  const std::vector<MemberSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(MemberSet s) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Copy of this family with `s` added (no-op if already present).
  Family with(MemberSet s) const;
  /// Copy of this family without `s`.
  Family without(MemberSet s) const;
  /// Same members over a different ground size; members must fit.
  Family with_ground(int ground_size) const;

  bool operator==(const Family&) const = default;
  /// Canonical total order: member lists compared lexicographically.
  std::strong_ordering operator<=>(const Family& other) const;

 private:
  int ground_size_ = 1;
  std::vector<MemberSet> members_;
};

/// A family certified closed under pairwise union.
class UCFamily {
 public:
  /// Throws FamilyError if `family` is not union-closed.
  explicit UCFamily(Family family);

  const Family& family() const { return family_; }
  int ground_size() const { return family_.ground_size(); }
  std::size_t size() const { return family_.size(); }

 private:
  Family family_;
};

struct FrequencyTable {
  std::vector<int> counts;  // counts[i-1] = number of members containing i
  std::size_t family_size = 0;

  int operator[](int element) const { return counts[element - 1]; }
  /// Some element lies in at least half of the members.
  bool frankl_element() const;
};

// Family text format: one member per line, comma separated, "{}" or a blank
// line for the empty set, '#' starts a comment, optional "n=<size>" header.
Family parse_family(std::string_view text, std::optional<int> ground_size = std::nullopt);
std::string format_family(const Family& family, bool with_header = true);
std::string format_set(MemberSet s);

bool is_union_closed(const Family& family);
/// Smallest union-closed family containing `family` and the empty set.
UCFamily union_closure(const Family& family);
/// All pairwise unions {A | B}.
Family uplus(const Family& a, const Family& b);
FrequencyTable frequencies(const Family& family);
MemberSet universe(const Family& family);

/// {S & [n] : S in F, S \ [n] == T}
Family restrict_fiber(const Family& family, MemberSet t, int n);

/// Order-preserving relabeling of U(F) onto [|U(F)|].
Family compact_universe(const Family& family);

/// A < B iff min(A xor B) lies in A.
bool lex_less(MemberSet a, MemberSet b);
/// All k-subsets of [n] in lexicographic order S_1 < S_2 < ...
std::vector<MemberSet> lex_sequence(int n, int k);
/// [S_m] = first m k-subsets of [n] in lexicographic order.
Family lex_prefix(int n, int k, int m);

/// All subsets of [n] of size k, ascending bit value.
std::vector<MemberSet> k_subsets(int n, int k);
/// Power set P([n]).
Family power_set(int n);
std::uint64_t binomial(int n, int k);

// Families over Z_n x Z_n have up to 256 ground elements, so they use a
// separate list-of-elements representation that only supports counting.
struct WideFamily {
  int ground_size = 0;
  std::vector<std::vector<int>> members;  // sorted element lists, sorted, unique
};

/// All translates of R x {0} and {0} x R in Z_n^2; cell (row, col) is
/// element row*n + col + 1.
WideFamily translates_family(int n, const std::vector<int>& residues);
/// Narrow view of a wide family; requires ground_size <= 16.
Family to_family(const WideFamily& wide);

/// Common degree of all universe elements, if the family is regular.
std::optional<int> regularity(const Family& family);
std::optional<int> regularity(const WideFamily& family);
/// 3-sets, regular of degree >= 2, universe of at least 4 elements.
bool regular_3set_fc(const Family& family);
bool regular_3set_fc(const WideFamily& family);

}  // namespace fc
