#include "fc/sepip.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace fc {

SeparationProblem build_separation(const UCFamily& base, std::vector<Rational> weights,
                                   std::optional<Family> domain) {
  const int n = base.ground_size();
  const Family& a = base.family();
  if (!a.contains(MemberSet{})) throw SeparationError("base family must contain the empty set");
  if (universe(a) != MemberSet::full(n)) throw SeparationError("base family universe must be [n]");
  if (static_cast<int>(weights.size()) != n) throw SeparationError("weight vector length must equal n");
  Rational total;
  for (const auto& c : weights) {
    if (c < 0) throw SeparationError("weights must be nonnegative");
    total += c;
  }
  if (total != 1) throw SeparationError("weights must sum to 1");

  Family d = domain ? *domain : power_set(n);
  if (d.ground_size() != n) throw SeparationError("domain ground size differs from base");
  if (!d.contains(MemberSet{})) throw SeparationError("domain must contain the empty set");
  if (!is_union_closed(d)) throw SeparationError("domain is not union-closed");
  for (MemberSet s : d) {
    for (MemberSet m : a) {
      if (!d.contains(s | m)) {
        throw SeparationError("domain is not closed under union with base member " + format_set(m));
      }
    }
  }
  return SeparationProblem{base, std::move(weights), std::move(d)};
}

std::vector<SeparationConstraint> separation_constraints(const SeparationProblem& p) {
  std::vector<SeparationConstraint> out;
  const auto& d = p.domain.members();
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) out.push_back({d[i], d[j], d[i] | d[j], false});
  }
  for (MemberSet m : p.base.family()) {
    for (MemberSet s : d) out.push_back({s, m, s | m, true});
  }
  return out;
}

Rational objective_coefficient(const std::vector<Rational>& weights, MemberSet s) {
  Rational mass;
  for (int e : s.elements()) mass += weights[e - 1];
  return 1 - 2 * mass;
}

Rational violation(const std::vector<Rational>& weights, const Family& b) {
  Rational v;
  for (MemberSet s : b) v += objective_coefficient(weights, s);
  return v;
}

bool is_separation_feasible(const SeparationProblem& p, const Family& b) {
  if (b.ground_size() != p.ground_size()) return false;
  for (MemberSet s : b) {
    if (!p.domain.contains(s)) return false;
  }
  return is_union_closed(b) && uplus(p.base.family(), b) == b;
}

namespace {

using Weight = __int128;
constexpr Weight kInfinite = Weight{1} << 120;

Weight to_weight(const Integer& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 100) throw SeparationError("weight denominators too large");
  Integer mag = abs(z);
  Weight w = 0;
  // 32-bit limbs, most significant first
  for (int shift = 96; shift >= 0; shift -= 32) {
    Integer part = (mag >> shift) & Integer(0xffffffffUL);
    w = (w << 32) | static_cast<Weight>(part.get_ui());
  }
  return z < 0 ? -w : w;
}

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  void add_edge(int u, int v, Weight cap) {
    adj_[u].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({u, 0});
  }

  Weight max_flow(int s, int t) {
    Weight flow = 0;
    while (levels(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (Weight pushed = augment(s, t, kInfinite)) flow += pushed;
    }
    return flow;
  }

  /// Nodes reachable from s in the residual graph.
  std::vector<char> reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    Weight cap;
  };

  bool levels(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Weight augment(int u, int t, Weight limit) {
    if (u == t) return limit;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      auto& e = edges_[adj_[u][i]];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      if (Weight got = augment(e.to, t, std::min(limit, e.cap))) {
        e.cap -= got;
        edges_[adj_[u][i] ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

struct Found {};

// Node relaxation: given the sets forced in (closed under union and under
// union with the base) and the sets forced out, every implication
// x_T <= x_{T | g} with g in the forced sets or the base is valid, so the
// maximum-weight closure of that implication graph bounds the node.
class BranchAndBound {
 public:
  BranchAndBound(const SeparationProblem& p, const SeparationOptions& opts) : opts_(opts) {
    n_ = p.ground_size();
    sets_ = p.domain.members();
    index_.assign(std::size_t{1} << n_, -1);
    for (int i = 0; i < static_cast<int>(sets_.size()); ++i) index_[sets_[i].bits()] = i;
    for (MemberSet m : p.base.family()) {
      if (!m.empty()) base_.push_back(m);
    }

    Integer scale = 1;
    for (const auto& c : p.weights) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> scaled(n_);
    for (int i = 0; i < n_; ++i) scaled[i] = p.weights[i].get_num() * (scale / p.weights[i].get_den());
    weight_.resize(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      Integer mass = 0;
      for (int e : sets_[i].elements()) mass += scaled[e - 1];
      weight_[i] = to_weight(scale - 2 * mass);
    }
  }

  std::vector<int> run(std::uint64_t& nodes) {
    // The whole domain and the base itself are feasible starting points.
    std::vector<int> all(sets_.size());
    for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
    offer(all);
    std::vector<int> base_idx;
    for (MemberSet m : base_) base_idx.push_back(index_[m.bits()]);
    base_idx.push_back(index_[0]);
    offer(base_idx);
    try {
      if (!done()) {
        std::vector<int> in, out;
        search(in, out);
      }
    } catch (const Found&) {
    }
    nodes = nodes_;
    return best_set_;
  }

 private:
  bool done() const { return opts_.mode == SeparationMode::first_positive && best_ > 0; }

  void check_stop() const {
    if (opts_.stop && opts_.stop->load(std::memory_order_relaxed)) throw SeparationCancelled();
    if (opts_.deadline && std::chrono::steady_clock::now() > *opts_.deadline) throw SeparationCancelled();
  }

  int at(MemberSet s) const { return index_[s.bits()]; }

  /// Union closure of a feasible-by-absorption set list; records it if better.
  void offer(const std::vector<int>& members) {
    std::vector<char> mark(sets_.size(), 0);
    std::vector<int> list;
    for (int i : members) {
      if (!mark[i]) {
        mark[i] = 1;
        list.push_back(i);
      }
    }
    for (std::size_t x = 0; x < list.size(); ++x) {
      for (std::size_t y = 0; y < x; ++y) {
        const int u = at(sets_[list[x]] | sets_[list[y]]);
        if (!mark[u]) {
          mark[u] = 1;
          list.push_back(u);
        }
      }
    }
    Weight value = 0;
    for (int i : list) value += weight_[i];
    if (value > best_) {
      best_ = value;
      best_set_ = list;
      if (opts_.on_incumbent) opts_.on_incumbent(family_of(list));
    }
  }

  Family family_of(const std::vector<int>& idx) const {
    std::vector<MemberSet> m;
    for (int i : idx) m.push_back(sets_[i]);
    return Family(n_, m);
  }

  void search(std::vector<int>& in, std::vector<int>& out) {
    ++nodes_;
    check_stop();
    const int m = static_cast<int>(sets_.size());

    // Forced sets: union closure of the chosen sets, then absorb the base.
    std::vector<char> forced(m, 0);
    std::vector<int> forced_list;
    auto force = [&](int i) {
      if (!forced[i]) {
        forced[i] = 1;
        forced_list.push_back(i);
      }
    };
    for (int i : in) force(i);
    for (std::size_t x = 0; x < forced_list.size(); ++x) {
      for (std::size_t y = 0; y < x; ++y) force(at(sets_[forced_list[x]] | sets_[forced_list[y]]));
      for (MemberSet b : base_) force(at(sets_[forced_list[x]] | b));
    }

    // Implication generators: minimal generators of the forced sets and base.
    std::vector<MemberSet> pool = base_;
    for (int i : forced_list) pool.push_back(sets_[i]);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<MemberSet> gens;
    for (MemberSet x : pool) {
      if (x.empty()) continue;
      MemberSet below;
      for (MemberSet y : pool) {
        if (y != x && y.subset_of(x)) below = below | y;
      }
      if (below != x) gens.push_back(x);
    }

    // Sets that imply a forbidden set are forbidden too.
    std::vector<char> blocked(m, 0);
    for (int i : out) blocked[i] = 1;
    for (int i = m - 1; i >= 0; --i) {
      if (blocked[i]) continue;
      for (MemberSet g : gens) {
        const int j = at(sets_[i] | g);
        if (j != i && blocked[j]) {
          blocked[i] = 1;
          break;
        }
      }
      if (blocked[i] && forced[i]) return;
    }
    for (int i : forced_list) {
      if (blocked[i]) return;
    }

    Weight bound = 0;
    for (int i : forced_list) bound += weight_[i];
    std::vector<int> node_of(m, -1);
    std::vector<int> free_list;
    for (int i = 0; i < m; ++i) {
      if (!forced[i] && !blocked[i]) {
        node_of[i] = static_cast<int>(free_list.size());
        free_list.push_back(i);
      }
    }
    const int source = static_cast<int>(free_list.size());
    const int sink = source + 1;
    FlowNetwork net(sink + 1);
    Weight positive = 0;
    for (int v = 0; v < source; ++v) {
      const int i = free_list[v];
      if (weight_[i] > 0) {
        net.add_edge(source, v, weight_[i]);
        positive += weight_[i];
      } else if (weight_[i] < 0) {
        net.add_edge(v, sink, -weight_[i]);
      }
      for (MemberSet g : gens) {
        const int j = at(sets_[i] | g);
        if (j != i && node_of[j] >= 0) net.add_edge(v, node_of[j], kInfinite);
      }
    }
    bound += positive - net.max_flow(source, sink);
    if (bound <= best_) return;

    const auto side = net.reachable(source);
    std::vector<char> chosen(forced.begin(), forced.end());
    std::vector<int> closure = forced_list;
    for (int v = 0; v < source; ++v) {
      if (side[v]) {
        chosen[free_list[v]] = 1;
        closure.push_back(free_list[v]);
      }
    }
    offer(closure);
    if (done()) throw Found{};

    // Branch on a free chosen set that takes part in a missing union.
    std::sort(closure.begin(), closure.end());
    if (opts_.order == BranchOrder::reverse) std::reverse(closure.begin(), closure.end());
    int branch = -1;
    for (int x : closure) {
      if (forced[x]) continue;
      for (int y : closure) {
        if (!chosen[at(sets_[x] | sets_[y])]) {
          branch = x;
          break;
        }
      }
      if (branch >= 0) break;
    }
    if (branch < 0) return;  // closure is union-closed: the bound is attained

    in.push_back(branch);
    search(in, out);
    in.pop_back();
    out.push_back(branch);
    search(in, out);
    out.pop_back();
  }

  const SeparationOptions& opts_;
  int n_ = 0;
  std::vector<MemberSet> sets_;
  std::vector<int> index_;
  std::vector<MemberSet> base_;
  std::vector<Weight> weight_;
  Weight best_ = 0;
  std::vector<int> best_set_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SeparationResult solve_separation(const SeparationProblem& p, const SeparationOptions& opts) {
  BranchAndBound bb(p, opts);
  SeparationResult result;
  const auto best = bb.run(result.nodes);
  std::vector<MemberSet> members;
  for (int i : best) members.push_back(p.domain.members()[i]);
  result.witness = Family(p.ground_size(), members);
  result.optimum = violation(p.weights, result.witness);
  return result;
}

SeparationResult brute_separation(const SeparationProblem& p) {
  const auto& d = p.domain.members();
  const int m = static_cast<int>(d.size());
  if (m > kMaxBruteDomain) throw SeparationError("domain too large for exhaustive separation");
  std::vector<int> index(std::size_t{1} << p.ground_size(), -1);
  for (int i = 0; i < m; ++i) index[d[i].bits()] = i;
  std::vector<Rational> coef(m);
  for (int i = 0; i < m; ++i) coef[i] = objective_coefficient(p.weights, d[i]);

  SeparationResult result;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    ++result.nodes;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (int j = 0; j < m && ok; ++j) {
        if (((mask >> j) & 1u) && !((mask >> index[(d[i] | d[j]).bits()]) & 1u)) ok = false;
      }
      for (MemberSet b : p.base.family()) {
        if (!ok) break;
        if (!((mask >> index[(d[i] | b).bits()]) & 1u)) ok = false;
      }
    }
    if (!ok) continue;
    Rational value;
    std::vector<MemberSet> members;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) {
        value += coef[i];
        members.push_back(d[i]);
      }
    }
    if (value > result.optimum) {
      result.optimum = value;
      result.witness = Family(p.ground_size(), members);
    }
  }
  if (result.witness.empty()) result.witness = Family(p.ground_size(), {});
  return result;
}

}  // namespace fc
