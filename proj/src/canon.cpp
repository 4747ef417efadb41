#include "fc/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fc {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > size() || hit[v]) throw FamilyError("not a permutation");
    hit[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

MemberSet Permutation::apply(MemberSet s) const {
  MemberSet::Bits bits = 0;
  for (int e : s.elements()) bits |= MemberSet::Bits{1} << (images_[e - 1] - 1);
  return MemberSet(bits);
}

Family Permutation::apply(const Family& f) const {
  if (f.ground_size() != size()) throw FamilyError("permutation size does not match ground size");
  std::vector<MemberSet> out;
  out.reserve(f.size());
  for (MemberSet s : f) out.push_back(apply(s));
  return Family(f.ground_size(), std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[i] = images_[other.images_[i] - 1];
  return Permutation(std::move(out));
}

int OrbitPartition::orbit_count() const {
  return orbit_id.empty() ? 0 : *std::max_element(orbit_id.begin(), orbit_id.end()) + 1;
}

std::vector<std::vector<int>> OrbitPartition::orbits() const {
  std::vector<std::vector<int>> out(orbit_count());
  for (std::size_t i = 0; i < orbit_id.size(); ++i) {
    out[orbit_id[i]].push_back(static_cast<int>(i) + 1);
  }
  return out;
}

OrbitPartition OrbitPartition::discrete(int n) {
  OrbitPartition p;
  p.orbit_id.resize(n);
  std::iota(p.orbit_id.begin(), p.orbit_id.end(), 0);
  return p;
}

namespace {

using Mask = std::uint32_t;
using Labeling = std::vector<int>;  // element (0-based) -> label (0-based)

/// Rank keys densely, preserving their order.
template <typename Key>
int rank_keys(const std::vector<Key>& keys, std::vector<int>& out) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  out.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
                              sorted.begin());
  }
  return static_cast<int>(sorted.size());
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Individualization-refinement search over the element/member incidence
// structure of a family with universe {0, ..., u-1}.
class Search {
 public:
  explicit Search(const Family& compacted)
      : u_(static_cast<int>(universe(compacted).size())),
        members_(compacted.size()) {
    for (std::size_t j = 0; j < compacted.size(); ++j) members_[j] = compacted.members()[j].bits();
    incident_.resize(u_);
    for (std::size_t j = 0; j < members_.size(); ++j) {
      for (int x = 0; x < u_; ++x) {
        if ((members_[j] >> x) & 1u) incident_[x].push_back(static_cast<int>(j));
      }
    }
  }

  int universe_size() const { return u_; }

  /// Equitable refinement of an element coloring.
  std::vector<int> refine(std::vector<int> colors) const {
    const std::size_t m = members_.size();
    std::vector<int> member_colors;
    {
      std::vector<int> sizes(m);
      for (std::size_t j = 0; j < m; ++j) sizes[j] = std::popcount(members_[j]);
      rank_keys(sizes, member_colors);
    }
    int element_classes = rank_keys(colors, colors);
    int member_classes = -1;
    while (true) {
      std::vector<std::vector<int>> ekeys(u_);
      for (int x = 0; x < u_; ++x) {
        auto& key = ekeys[x];
        key.push_back(colors[x]);
        std::vector<int> tail;
        for (int j : incident_[x]) tail.push_back(member_colors[j]);
        std::sort(tail.begin(), tail.end());
        key.insert(key.end(), tail.begin(), tail.end());
      }
      const int new_elements = rank_keys(ekeys, colors);
      std::vector<std::vector<int>> mkeys(m);
      for (std::size_t j = 0; j < m; ++j) {
        auto& key = mkeys[j];
        key.push_back(member_colors[j]);
        std::vector<int> tail;
        for (Mask b = members_[j]; b != 0; b &= b - 1) tail.push_back(colors[std::countr_zero(b)]);
        std::sort(tail.begin(), tail.end());
        key.insert(key.end(), tail.begin(), tail.end());
      }
      const int new_members = rank_keys(mkeys, member_colors);
      if (new_elements == element_classes && new_members == member_classes) break;
      element_classes = new_elements;
      member_classes = new_members;
    }
    return colors;
  }

  static std::vector<int> individualize(const std::vector<int>& colors, int x) {
    std::vector<int> keys(colors.size());
    for (std::size_t y = 0; y < colors.size(); ++y) {
      keys[y] = 2 * colors[y] + (static_cast<int>(y) == x ? 0 : 1);
    }
    std::vector<int> out;
    rank_keys(keys, out);
    return out;
  }

  std::vector<Mask> relabel(const Labeling& label) const {
    std::vector<Mask> out(members_.size());
    for (std::size_t j = 0; j < members_.size(); ++j) {
      Mask bits = 0;
      for (Mask b = members_[j]; b != 0; b &= b - 1) bits |= Mask{1} << label[std::countr_zero(b)];
      out[j] = bits;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Minimum leaf reachable from `initial`, pruned by discovered automorphisms.
  void canonical(const std::vector<int>& initial) {
    best_.reset();
    automorphisms_.clear();
    std::vector<int> prefix;
    descend(refine(initial), prefix);
  }

  /// Every leaf labeling whose relabeled family equals `target` (no pruning).
  void collect(const std::vector<int>& initial, const std::vector<Mask>& target,
               std::vector<Labeling>& out) const {
    collect_rec(refine(initial), target, out);
  }

  const std::vector<Mask>& best_family() const { return best_->first; }
  const Labeling& best_labeling() const { return best_->second; }

 private:
  static int target_cell(const std::vector<int>& colors) {
    std::vector<int> count(colors.size(), 0);
    for (int c : colors) ++count[c];
    for (std::size_t c = 0; c < count.size(); ++c) {
      if (count[c] > 1) return static_cast<int>(c);
    }
    return -1;
  }

  void descend(const std::vector<int>& colors, std::vector<int>& prefix) {
    const int cell = target_cell(colors);
    if (cell < 0) {
      leaf(colors);
      return;
    }
    std::vector<int> explored;
    for (int y = 0; y < u_; ++y) {
      if (colors[y] != cell) continue;
      if (!explored.empty() && equivalent_to_explored(prefix, explored, y)) continue;
      explored.push_back(y);
      prefix.push_back(y);
      descend(refine(individualize(colors, y)), prefix);
      prefix.pop_back();
    }
  }

  bool equivalent_to_explored(const std::vector<int>& prefix, const std::vector<int>& explored,
                              int y) const {
    UnionFind uf(u_);
    bool any = false;
    for (const auto& g : automorphisms_) {
      const bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      any = true;
      for (int x = 0; x < u_; ++x) uf.unite(x, g[x]);
    }
    if (!any) return false;
    return std::any_of(explored.begin(), explored.end(),
                       [&](int x) { return uf.find(x) == uf.find(y); });
  }

  void leaf(const std::vector<int>& colors) {
    auto family = relabel(colors);
    if (!best_ || family < best_->first) {
      best_.emplace(std::move(family), colors);
      return;
    }
    if (family == best_->first) {
      // best^-1 o leaf maps the family onto itself
      const Labeling& best = best_->second;
      std::vector<int> inverse_best(u_);
      for (int x = 0; x < u_; ++x) inverse_best[best[x]] = x;
      std::vector<int> g(u_);
      for (int x = 0; x < u_; ++x) g[x] = inverse_best[colors[x]];
      automorphisms_.push_back(std::move(g));
    }
  }

  void collect_rec(const std::vector<int>& colors, const std::vector<Mask>& target,
                   std::vector<Labeling>& out) const {
    const int cell = target_cell(colors);
    if (cell < 0) {
      if (relabel(colors) == target) out.push_back(colors);
      return;
    }
    for (int y = 0; y < u_; ++y) {
      if (colors[y] == cell) collect_rec(refine(individualize(colors, y)), target, out);
    }
  }

  int u_;
  std::vector<Mask> members_;
  std::vector<std::vector<int>> incident_;
  std::optional<std::pair<std::vector<Mask>, Labeling>> best_;
  std::vector<std::vector<int>> automorphisms_;
};

Family to_family(const std::vector<Mask>& masks, int u) {
  std::vector<MemberSet> members;
  members.reserve(masks.size());
  for (Mask b : masks) members.emplace_back(b);
  return Family(std::max(u, 1), std::move(members));
}

// Universe elements of `family` in increasing order (1-based).
std::vector<int> universe_elements(const Family& family) { return universe(family).elements(); }

}  // namespace

CanonicalForm canonical_form(const Family& family) {
  const auto elems = universe_elements(family);
  const int u = static_cast<int>(elems.size());
  Search search(compact_universe(family));
  search.canonical(std::vector<int>(u, 0));

  const Labeling& label = search.best_labeling();
  std::vector<int> images(family.ground_size());
  std::vector<char> in_universe(family.ground_size() + 1, 0);
  for (int i = 0; i < u; ++i) {
    images[elems[i] - 1] = label[i] + 1;
    in_universe[elems[i]] = 1;
  }
  int next = u + 1;
  for (int e = 1; e <= family.ground_size(); ++e) {
    if (!in_universe[e]) images[e - 1] = next++;
  }
  return CanonicalForm{to_family(search.best_family(), u), Permutation(std::move(images))};
}

bool are_isomorphic(const Family& a, const Family& b) {
  if (a.size() != b.size()) return false;
  if (universe(a).size() != universe(b).size()) return false;
  return canonical_form(a).relabeled == canonical_form(b).relabeled;
}

std::vector<Permutation> automorphism_group(const Family& family) {
  const auto elems = universe_elements(family);
  const int u = static_cast<int>(elems.size());
  if (u > kMaxGroupUniverse) {
    throw FamilyError("automorphism group listing needs |U| <= " +
                      std::to_string(kMaxGroupUniverse));
  }
  Search search(compact_universe(family));
  const std::vector<int> initial(u, 0);
  search.canonical(initial);
  std::vector<Labeling> leaves;
  search.collect(initial, search.best_family(), leaves);

  const Labeling& best = search.best_labeling();
  std::vector<int> inverse_best(u);
  for (int x = 0; x < u; ++x) inverse_best[best[x]] = x;

  std::vector<Permutation> group;
  group.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    auto images = Permutation::identity(family.ground_size()).images();
    for (int x = 0; x < u; ++x) images[elems[x] - 1] = elems[inverse_best[leaf[x]]];
    group.emplace_back(std::move(images));
  }
  std::sort(group.begin(), group.end());
  return group;
}

OrbitPartition orbits(const Family& family) {
  const auto elems = universe_elements(family);
  const int u = static_cast<int>(elems.size());
  Search search(compact_universe(family));
  const auto cells = search.refine(std::vector<int>(u, 0));

  // x ~ y iff the structures with x resp. y individualized are isomorphic.
  std::vector<int> klass(u, -1);
  std::map<std::pair<int, std::vector<Mask>>, int> seen;
  for (int x = 0; x < u; ++x) {
    search.canonical(Search::individualize(cells, x));
    auto key = std::make_pair(cells[x], search.best_family());
    auto [it, inserted] = seen.emplace(std::move(key), x);
    klass[x] = it->second;
  }

  OrbitPartition out;
  out.orbit_id.assign(family.ground_size(), -1);
  std::vector<int> id_of_class(u, -1);
  int next = 0;
  int outside = -1;
  for (int e = 1; e <= family.ground_size(); ++e) {
    auto pos = std::lower_bound(elems.begin(), elems.end(), e);
    if (pos != elems.end() && *pos == e) {
      const int c = klass[pos - elems.begin()];
      if (id_of_class[c] < 0) id_of_class[c] = next++;
      out.orbit_id[e - 1] = id_of_class[c];
    } else {
      if (outside < 0) outside = next++;
      out.orbit_id[e - 1] = outside;
    }
  }
  return out;
}

}  // namespace fc
