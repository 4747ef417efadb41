#include "fc/enumfam.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "fc/certificate.hpp"
#include "fc/verify.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace fc {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void say(const EnumOptions& opts, const std::string& line) {
  if (opts.progress) opts.progress(line);
}

void check_params(int n, int k) {
  if (k < 1 || n < k) throw SolveError("need 1 <= k <= n");
  if (n > kMaxEnumGround) {
    throw SolveError("n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                     std::to_string(kMaxEnumGround));
  }
}

Certificate decide(const Family& f, const EnumOptions& opts, const std::optional<Family>& domain) {
  IsFcOptions o;
  o.symmetry = opts.symmetry;
  o.warm_start = opts.warm_start;
  o.domain = domain;
  o.stop = opts.stop;
  if (opts.time_limit) o.deadline = Clock::now() + *opts.time_limit;
  Certificate cert = is_fc(f, o);
  if (!cert.is_fc()) {
    auto report = verify_nonfc(cert);
    if (!report.passed) throw std::logic_error("Non-FC certificate failed re-verification: " + report.failure);
  }
  return cert;
}

// Extensions F + {S} of a family with universe [u] inside [n]: new elements
// of S are taken as u+1, u+2, ... since the others are interchangeable.
template <class Emit>
void extensions(const Family& f, int n, int k, Emit&& emit) {
  const Family wide = f.with_ground(n);
  const int u = universe(f).max_element();
  for (MemberSet s : k_subsets(n, k)) {
    if (wide.contains(s)) continue;
    const MemberSet fresh = s.minus(MemberSet::full(u));
    if (fresh != MemberSet::full(u + fresh.size()).minus(MemberSet::full(u))) continue;
    emit(wide.with(s));
  }
}

}  // namespace

std::vector<Family> gen_noniso_families(int n, int k, int m, const EnumOptions& opts) {
  if (k < 1 || n < k || n > kMaxGround) throw SolveError("need 1 <= k <= n <= 16");
  if (m < 1 || static_cast<std::uint64_t>(m) > binomial(n, k) || k * m < n) return {};

  std::vector<Family> level{canonical_form(Family(n, {MemberSet::full(k)})).relabeled};
  for (int j = 2; j <= m; ++j) {
    std::vector<std::vector<Family>> found(level.size());
    detail::parallel_for(opts.jobs, level.size(), [&](std::size_t idx) {
      extensions(level[idx], n, k, [&](const Family& g) {
        const int u = universe(g).size();
        if (u + k * (m - j) < n) return;
        found[idx].push_back(canonical_form(g).relabeled);
      });
    });
    std::set<Family> next;
    for (auto& list : found) next.insert(list.begin(), list.end());
    level.assign(next.begin(), next.end());
  }
  std::vector<Family> out;
  for (auto& f : level) {
    if (f.ground_size() == n) out.push_back(std::move(f));
  }
  return out;
}

bool NfcLevel::contains(const Family& canonical) const {
  return std::binary_search(families.begin(), families.end(), canonical);
}

NfcSearch::NfcSearch(int k, EnumOptions opts) : k_(k), opts_(std::move(opts)) {
  if (k_ < 3) throw SolveError("getNFC requires k >= 3");
}

const NfcLevel& NfcSearch::level(int n, int m) {
  const auto key = std::make_pair(n, m);
  if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
  auto lvl = std::make_unique<NfcLevel>(compute(n, m));
  return *memo_.emplace(key, std::move(lvl)).first->second;
}

std::vector<const NfcLevel*> NfcSearch::levels() const {
  std::vector<const NfcLevel*> out;
  for (const auto& [key, lvl] : memo_) out.push_back(lvl.get());
  return out;
}

Certificate NfcSearch::solve(const Family& f) const { return decide(f, opts_, std::nullopt); }

NfcLevel NfcSearch::compute(int n, int m) {
  check_params(n, k_);
  NfcLevel lvl;
  lvl.n = n;
  lvl.m = m;
  if (m < 1 || k_ * m < n || static_cast<std::uint64_t>(m) > binomial(n, k_)) return lvl;

  std::vector<Family> candidates;
  std::vector<const NfcLevel*> previous(n + 1, nullptr);
  const bool base = k_ * (m - 1) < n;
  if (base) {
    candidates = gen_noniso_families(n, k_, m, opts_);
  } else {
    // Bottom-up: every smaller level is finished before this one starts.
    for (int i = std::max(k_, n - k_); i <= n; ++i) previous[i] = &level(i, m - 1);
    const auto t0 = Clock::now();
    std::vector<const Family*> bases;
    for (int i = std::max(k_, n - k_); i <= n; ++i) {
      for (const auto& f : previous[i]->families) bases.push_back(&f);
    }
    std::vector<std::vector<Family>> found(bases.size());
    detail::parallel_for(opts_.jobs, bases.size(), [&](std::size_t idx) {
      extensions(*bases[idx], n, k_, [&](const Family& g) { found[idx].push_back(canonical_form(g).relabeled); });
    });
    std::set<Family> unique;
    for (auto& list : found) unique.insert(list.begin(), list.end());
    candidates.assign(unique.begin(), unique.end());
    lvl.seconds += since(t0);
  }
  lvl.candidates = candidates.size();

  const auto t0 = Clock::now();
  std::vector<std::optional<Certificate>> verdicts(candidates.size());
  std::vector<char> skip(candidates.size(), 0);
  detail::Ticker ticker("getNFC(" + std::to_string(n) + "," + std::to_string(k_) + "," + std::to_string(m) + ")",
                        candidates.size(), opts_.progress);
  detail::parallel_for(opts_.jobs, candidates.size(), [&](std::size_t idx) {
    const Family& g = candidates[idx];
    if (!base) {
      // A proper FC-subfamily exists iff some subfamily with one fewer set
      // is FC, i.e. missing from the complete Non-FC list of its level.
      for (MemberSet t : g) {
        const Family sub = canonical_form(g.without(t)).relabeled;
        const NfcLevel* known = previous[sub.ground_size()];
        if (known == nullptr || !known->contains(sub)) {
          skip[idx] = 1;
          break;
        }
      }
    }
    if (!skip[idx]) verdicts[idx] = solve(g);
    ticker.tick();
  });

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (skip[i]) {
      ++lvl.skipped;
      continue;
    }
    ++lvl.solver_calls;
    if (!verdicts[i]->is_fc()) {
      lvl.families.push_back(candidates[i]);
      lvl.certificates.push_back(std::move(*verdicts[i]));
    }
  }
  lvl.seconds += since(t0);
  say(opts_, "getNFC(" + std::to_string(n) + "," + std::to_string(k_) + "," + std::to_string(m) +
                 "): " + std::to_string(lvl.families.size()) + " Non-FC of " + std::to_string(lvl.candidates) +
                 " candidates, " + std::to_string(lvl.skipped) + " skipped, " + std::to_string(lvl.seconds) + "s");
  return lvl;
}

std::vector<Family> get_nfc(int n, int k, int m, const EnumOptions& opts) {
  check_params(n, k);
  NfcSearch search(k, opts);
  return search.level(n, m).families;
}

FcValueReport fc_value(int k, int n, int m_max, const EnumOptions& opts, NfcSearch* search) {
  check_params(n, k);
  const auto t0 = Clock::now();
  std::optional<NfcSearch> local;
  if (search == nullptr) {
    local.emplace(k, opts);
    search = &*local;
  }
  if (search->k() != k) throw SolveError("search was built for a different k");

  FcValueReport report;
  report.k = k;
  report.n = n;
  const auto total = static_cast<int>(binomial(n, k));
  for (int m = 1;; ++m) {
    if (m > total) {
      // Even the complete family is Non-FC.
      report.witness = Family(n, k_subsets(n, k));
      report.witness_certificate = decide(*report.witness, opts, std::nullopt);
      break;
    }
    if (m > m_max) {
      throw SolveError("no value found up to m = " + std::to_string(m_max) + " for FC(" + std::to_string(k) +
                       "," + std::to_string(n) + ")");
    }
    bool nonfc = false;
    for (int i = k; i <= n; ++i) {
      const auto& lvl = search->level(i, m);
      report.counts[{i, m}] = lvl.families.size();
      nonfc = nonfc || !lvl.families.empty();
    }
    if (nonfc) continue;
    report.value = m;
    for (int i = n; i >= k && m > 1; --i) {
      const auto& prev = search->level(i, m - 1);
      if (!prev.families.empty()) {
        report.witness = prev.families.front();
        report.witness_certificate = prev.certificates.front();
        break;
      }
    }
    break;
  }
  report.seconds = since(t0);
  return report;
}

LexScanResult lex_scan(int k, int n, const EnumOptions& opts) {
  check_params(n, k);
  const auto total = static_cast<int>(binomial(n, k));
  int start = 1;
  while (start <= total && universe(lex_prefix(n, k, start)) != MemberSet::full(n)) ++start;
  if (start > total) throw SolveError("no lexicographic prefix has universe [n]");
  for (int m = start; m <= total; ++m) {
    Certificate cert = decide(lex_prefix(n, k, m), opts, std::nullopt);
    say(opts, "[S_" + std::to_string(m) + "] is " + (cert.is_fc() ? "FC" : "Non-FC"));
    if (!cert.is_fc()) continue;
    LexScanResult out;
    out.m = m;
    out.prefix_fc = std::move(cert);
    if (m > 1) {
      Certificate prev = decide(lex_prefix(n, k, m - 1), opts, std::nullopt);
      if (!prev.is_fc()) out.prev_nonfc = std::move(prev);
    }
    return out;
  }
  throw SolveError("no FC prefix [S_m] up to m = C(n, k)");
}

FcValueReport fcv_value(int k, int n, const Family& domain, const EnumOptions& opts) {
  check_params(n, k);
  if (domain.ground_size() != n) throw SolveError("domain ground size must equal n");
  // S_n is generated by (1 2) and (1 2 ... n).
  std::vector<int> swap(n), cycle(n);
  for (int i = 0; i < n; ++i) {
    swap[i] = i + 1;
    cycle[i] = (i + 1) % n + 1;
  }
  if (n > 1) std::swap(swap[0], swap[1]);
  if (Permutation(swap).apply(domain) != domain || Permutation(cycle).apply(domain) != domain) {
    throw SolveError("isomorphism pruning needs a domain invariant under all permutations of [n]");
  }

  const auto t0 = Clock::now();
  FcValueReport report;
  report.k = k;
  report.n = n;
  const auto total = static_cast<int>(binomial(n, k));
  int last_bad = 0;
  for (int m = 1; m <= total; ++m) {
    const auto families = gen_noniso_families(n, k, m, opts);
    std::vector<std::optional<Certificate>> certs(families.size());
    detail::parallel_for(opts.jobs, families.size(),
                         [&](std::size_t i) { certs[i] = decide(families[i], opts, domain); });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < families.size(); ++i) {
      if (certs[i]->is_fc()) continue;
      if (bad++ == 0) {  // the largest failing m wins
        report.witness = families[i];
        report.witness_certificate = *certs[i];
      }
    }
    report.counts[{n, m}] = bad;
    if (bad > 0) last_bad = m;
    say(opts, "m = " + std::to_string(m) + ": " + std::to_string(bad) + " of " + std::to_string(families.size()) +
                  " classes not V-FC");
    // With m >= n, each family of m+1 sets keeps universe [n] after dropping
    // some set, so it contains one of the V-FC families just checked.
    if (bad == 0 && !families.empty() && m >= n) break;
  }
  if (last_bad < total) report.value = last_bad + 1;
  report.seconds = since(t0);
  return report;
}

std::string format_family_list(const std::vector<Family>& families) {
  std::string out;
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (i) out += "%%\n";
    out += format_family(families[i]);
  }
  return out;
}

std::vector<Family> parse_family_list(std::string_view text) {
  std::vector<Family> out;
  std::string block;
  std::istringstream in{std::string(text)};
  std::string line;
  bool any = false;
  auto flush = [&] {
    if (any) out.push_back(parse_family(block));
    block.clear();
    any = false;
  };
  while (std::getline(in, line)) {
    if (line == "%%") {
      flush();
      continue;
    }
    block += line + "\n";
    any = true;
  }
  flush();
  return out;
}

void write_results(const std::filesystem::path& dir, const NfcSearch& search) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "certs");
  nlohmann::json manifest;
  manifest["k"] = search.k();
  manifest["levels"] = nlohmann::json::array();
  for (const NfcLevel* lvl : search.levels()) {
    const std::string stem = "nfc_k" + std::to_string(search.k()) + "_n" + std::to_string(lvl->n) + "_m" +
                             std::to_string(lvl->m);
    std::ofstream(dir / (stem + ".fam")) << format_family_list(lvl->families);
    nlohmann::json certs = nlohmann::json::array();
    for (std::size_t i = 0; i < lvl->certificates.size(); ++i) {
      const std::string name = "certs/" + stem + "_" + std::to_string(i) + ".json";
      std::ofstream(dir / name) << certificate_to_json(lvl->certificates[i]);
      certs.push_back(name);
    }
    manifest["levels"].push_back({{"n", lvl->n},
                                  {"m", lvl->m},
                                  {"count", lvl->families.size()},
                                  {"candidates", lvl->candidates},
                                  {"skipped", lvl->skipped},
                                  {"solver_calls", lvl->solver_calls},
                                  {"seconds", lvl->seconds},
                                  {"file", stem + ".fam"},
                                  {"certificates", certs}});
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(1) << "\n";
}

}  // namespace fc
