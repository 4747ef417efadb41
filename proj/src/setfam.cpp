#include "fc/setfam.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace fc {

namespace {

void check_ground(int n) {
  if (n < 1 || n > kMaxGround) {
    throw FamilyError("ground size " + std::to_string(n) + " outside 1.." +
                      std::to_string(kMaxGround));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view token) {
  token = trim(token);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw FamilyError("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

MemberSet MemberSet::of(std::initializer_list<int> elements) {
  return from_elements(std::vector<int>(elements));
}

MemberSet MemberSet::from_elements(const std::vector<int>& elements) {
  Bits bits = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGround) {
      throw FamilyError("element " + std::to_string(e) + " outside 1.." +
                        std::to_string(kMaxGround));
    }
    bits |= Bits{1} << (e - 1);
  }
  return MemberSet(bits);
}

std::vector<int> MemberSet::elements() const {
  std::vector<int> out;
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

Family::Family(int ground_size, std::vector<MemberSet> members)
    : ground_size_(ground_size), members_(std::move(members)) {
  check_ground(ground_size_);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back().max_element() > ground_size_) {
    for (MemberSet s : members_) {
      if (!s.subset_of(MemberSet::full(ground_size_))) {
        throw FamilyError("member " + format_set(s) + " not contained in [" +
                          std::to_string(ground_size_) + "]");
      }
    }
  }
}

bool Family::contains(MemberSet s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

Family Family::with(MemberSet s) const {
  auto members = members_;
  members.push_back(s);
  return Family(ground_size_, std::move(members));
}

Family Family::without(MemberSet s) const {
  auto members = members_;
  std::erase(members, s);
  return Family(ground_size_, std::move(members));
}

Family Family::with_ground(int ground_size) const { return Family(ground_size, members_); }

std::strong_ordering Family::operator<=>(const Family& other) const {
  if (auto c = ground_size_ <=> other.ground_size_; c != 0) return c;
  return std::lexicographical_compare_three_way(members_.begin(), members_.end(),
                                                other.members_.begin(), other.members_.end());
}

UCFamily::UCFamily(Family family) : family_(std::move(family)) {
  if (!is_union_closed(family_)) throw FamilyError("family is not union-closed");
}

bool FrequencyTable::frankl_element() const {
  return std::any_of(counts.begin(), counts.end(),
                     [&](int c) { return 2 * static_cast<std::size_t>(c) >= family_size; });
}

Family parse_family(std::string_view text, std::optional<int> ground_size) {
  std::vector<std::vector<int>> rows;
  std::optional<int> header;
  int max_element = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    bool had_comment = false;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
      had_comment = true;
    }
    line = trim(line);
    if (line.empty()) {
      if (!had_comment) rows.emplace_back();
      continue;
    }
    if (line.starts_with("n=") || line.starts_with("n =")) {
      header = parse_int(line.substr(line.find('=') + 1));
      continue;
    }
    if (line == "{}") {
      rows.emplace_back();
      continue;
    }
    std::vector<int> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      int e = parse_int(line.substr(start, comma - start));
      if (e < 1) throw FamilyError("element " + std::to_string(e) + " is not positive");
      max_element = std::max(max_element, e);
      row.push_back(e);
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }

  int n = ground_size.value_or(header.value_or(std::max(max_element, 1)));
  check_ground(n);
  if (max_element > n) {
    throw FamilyError("element " + std::to_string(max_element) + " out of range 1.." +
                      std::to_string(n));
  }
  std::vector<MemberSet> members;
  members.reserve(rows.size());
  for (const auto& row : rows) members.push_back(MemberSet::from_elements(row));
  return Family(n, std::move(members));
}

std::string format_set(MemberSet s) {
  if (s.empty()) return "{}";
  std::string out;
  for (int e : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

std::string format_family(const Family& family, bool with_header) {
  std::string out;
  if (with_header) out += "n=" + std::to_string(family.ground_size()) + "\n";
  for (MemberSet s : family) out += format_set(s) + "\n";
  return out;
}

bool is_union_closed(const Family& family) {
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!family.contains(m[i] | m[j])) return false;
    }
  }
  return true;
}

UCFamily union_closure(const Family& family) {
  const int n = family.ground_size();
  std::vector<char> seen(std::size_t{1} << n, 0);
  std::vector<MemberSet> closed{MemberSet{}};
  seen[0] = 1;
  for (MemberSet a : family) {
    const std::size_t current = closed.size();
    for (std::size_t i = 0; i < current; ++i) {
      MemberSet u = closed[i] | a;
      if (!seen[u.bits()]) {
        seen[u.bits()] = 1;
        closed.push_back(u);
      }
    }
  }
  return UCFamily(Family(n, std::move(closed)));
}

Family uplus(const Family& a, const Family& b) {
  if (a.ground_size() != b.ground_size()) {
    throw FamilyError("uplus: ground sizes " + std::to_string(a.ground_size()) + " and " +
                      std::to_string(b.ground_size()) + " differ");
  }
  std::vector<MemberSet> out;
  out.reserve(a.size() * b.size());
  for (MemberSet s : a)
    for (MemberSet t : b) out.push_back(s | t);
  return Family(a.ground_size(), std::move(out));
}

FrequencyTable frequencies(const Family& family) {
  FrequencyTable table;
  table.counts.assign(family.ground_size(), 0);
  table.family_size = family.size();
  for (MemberSet s : family)
    for (int e : s.elements()) ++table.counts[e - 1];
  return table;
}

MemberSet universe(const Family& family) {
  MemberSet u;
  for (MemberSet s : family) u = u | s;
  return u;
}

Family restrict_fiber(const Family& family, MemberSet t, int n) {
  check_ground(n);
  if (n > family.ground_size()) {
    throw FamilyError("fiber over [" + std::to_string(n) + "] exceeds ground size " +
                      std::to_string(family.ground_size()));
  }
  const MemberSet low = MemberSet::full(n);
  if (!(t & low).empty()) throw FamilyError("fiber index " + format_set(t) + " intersects [n]");
  std::vector<MemberSet> out;
  for (MemberSet s : family) {
    if (s.minus(low) == t) out.push_back(s & low);
  }
  return Family(n, std::move(out));
}

Family compact_universe(const Family& family) {
  const auto elems = universe(family).elements();
  std::vector<int> label(kMaxGround + 1, 0);
  for (std::size_t i = 0; i < elems.size(); ++i) label[elems[i]] = static_cast<int>(i) + 1;
  std::vector<MemberSet> out;
  out.reserve(family.size());
  for (MemberSet s : family) {
    MemberSet::Bits bits = 0;
    for (int e : s.elements()) bits |= MemberSet::Bits{1} << (label[e] - 1);
    out.emplace_back(bits);
  }
  return Family(std::max<int>(1, static_cast<int>(elems.size())), std::move(out));
}

bool lex_less(MemberSet a, MemberSet b) {
  const MemberSet diff = a ^ b;
  if (diff.empty()) return false;
  return (a.bits() & (diff.bits() & -diff.bits())) != 0;
}

std::vector<MemberSet> lex_sequence(int n, int k) {
  check_ground(n);
  if (k < 0 || k > n) throw FamilyError("k out of range");
  std::vector<MemberSet> out;
  std::vector<int> combo(k);
  std::iota(combo.begin(), combo.end(), 1);
  while (true) {
    out.push_back(MemberSet::from_elements(combo));
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

Family lex_prefix(int n, int k, int m) {
  if (k < 1 || k > n) throw FamilyError("lex_prefix requires 1 <= k <= n");
  auto seq = lex_sequence(n, k);
  if (m < 1 || static_cast<std::size_t>(m) > seq.size()) {
    throw FamilyError("prefix length " + std::to_string(m) + " outside 1.." +
                      std::to_string(seq.size()));
  }
  seq.resize(m);
  return Family(n, std::move(seq));
}

std::vector<MemberSet> k_subsets(int n, int k) {
  std::vector<MemberSet> out;
  for (MemberSet::Bits b = 0; b < (MemberSet::Bits{1} << n); ++b) {
    if (std::popcount(b) == k) out.emplace_back(b);
  }
  return out;
}

Family power_set(int n) {
  check_ground(n);
  std::vector<MemberSet> out;
  out.reserve(std::size_t{1} << n);
  for (MemberSet::Bits b = 0; b < (MemberSet::Bits{1} << n); ++b) out.emplace_back(b);
  return Family(n, std::move(out));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

WideFamily translates_family(int n, const std::vector<int>& residues) {
  if (n < 4) throw FamilyError("translates need n >= 4");
  std::vector<int> r;
  for (int x : residues) r.push_back(((x % n) + n) % n);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  if (r.size() != 3 || residues.size() != 3) {
    throw FamilyError("translates need exactly 3 distinct residues");
  }
  WideFamily out;
  out.ground_size = n * n;
  auto cell = [n](int row, int col) { return ((row % n) * n + (col % n)) + 1; };
  for (int gr = 0; gr < n; ++gr) {
    for (int gc = 0; gc < n; ++gc) {
      std::vector<int> horizontal, vertical;
      for (int x : r) {
        horizontal.push_back(cell(gr + x, gc));
        vertical.push_back(cell(gr, gc + x));
      }
      std::sort(horizontal.begin(), horizontal.end());
      std::sort(vertical.begin(), vertical.end());
      out.members.push_back(std::move(horizontal));
      out.members.push_back(std::move(vertical));
    }
  }
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  return out;
}

Family to_family(const WideFamily& wide) {
  check_ground(wide.ground_size);
  std::vector<MemberSet> members;
  for (const auto& m : wide.members) members.push_back(MemberSet::from_elements(m));
  return Family(wide.ground_size, std::move(members));
}

namespace {

std::optional<int> common_degree(const std::vector<int>& degree) {
  std::optional<int> common;
  for (int d : degree) {
    if (d == 0) continue;
    if (common && *common != d) return std::nullopt;
    common = d;
  }
  return common;
}

bool regular_3set_bound(bool all_three, std::optional<int> degree, const std::vector<int>& counts) {
  const auto support = std::count_if(counts.begin(), counts.end(), [](int d) { return d > 0; });
  return all_three && degree && *degree >= 2 && support >= 4;
}

}  // namespace

std::optional<int> regularity(const Family& family) {
  return common_degree(frequencies(family).counts);
}

std::optional<int> regularity(const WideFamily& family) {
  std::vector<int> degree(family.ground_size, 0);
  for (const auto& m : family.members)
    for (int e : m) ++degree[e - 1];
  return common_degree(degree);
}

bool regular_3set_fc(const Family& family) {
  const bool threes = std::all_of(family.begin(), family.end(),
                                  [](MemberSet s) { return s.size() == 3; });
  return regular_3set_bound(threes && !family.empty(), regularity(family),
                     frequencies(family).counts);
}

bool regular_3set_fc(const WideFamily& family) {
  std::vector<int> degree(family.ground_size, 0);
  bool threes = !family.members.empty();
  for (const auto& m : family.members) {
    threes = threes && m.size() == 3;
    for (int e : m) ++degree[e - 1];
  }
  return regular_3set_bound(threes, common_degree(degree), degree);
}

}  // namespace fc
