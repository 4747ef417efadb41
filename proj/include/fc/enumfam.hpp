#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fc/fcsolve.hpp"

namespace fc {

/// Largest n accepted by the enumeration drivers.
inline constexpr int kMaxEnumGround = 8;

struct EnumOptions {
  int jobs = 1;
  bool symmetry = false;
  bool warm_start = false;
  std::optional<std::chrono::milliseconds> time_limit;  // per is_fc call
  const std::atomic<bool>* stop = nullptr;
  std::function<void(const std::string&)> progress;
};

/// One representative (canonical form) per isomorphism class of families of
/// m distinct k-subsets of [n] with universe exactly [n], sorted.
std::vector<Family> gen_noniso_families(int n, int k, int m, const EnumOptions& opts = {});

/// Output of getNFC(n, k, m) together with the certificates of its members.
struct NfcLevel {
  int n = 0;
  int m = 0;
  std::vector<Family> families;  // sorted canonical forms
  std::vector<Certificate> certificates;
  std::size_t candidates = 0;  // distinct extensions considered
  std::size_t skipped = 0;     // extensions containing a proper FC-family
  std::size_t solver_calls = 0;
  double seconds = 0;

  bool contains(const Family& canonical) const;
};

/// Memoized Algorithm 1 for a fixed k; levels are computed bottom-up.
class NfcSearch {
 public:
  NfcSearch(int k, EnumOptions opts = {});

  int k() const { return k_; }
  const NfcLevel& level(int n, int m);
  /// Every level computed so far, ordered by (n, m).
  std::vector<const NfcLevel*> levels() const;

 private:
  NfcLevel compute(int n, int m);
  Certificate solve(const Family& f) const;

  int k_;
  EnumOptions opts_;
  std::map<std::pair<int, int>, std::unique_ptr<NfcLevel>> memo_;
};

std::vector<Family> get_nfc(int n, int k, int m, const EnumOptions& opts = {});

struct FcValueReport {
  int k = 0;
  int n = 0;
  std::optional<int> value;  // nullopt: undefined (every k-set family can be Non-FC)
  std::optional<Family> witness;
  std::optional<Certificate> witness_certificate;
  std::map<std::pair<int, int>, std::size_t> counts;  // (universe size, m) -> Non-FC classes
  double seconds = 0;
};

/// Least m such that getNFC(i, k, m) is empty for every k <= i <= n.
/// Throws SolveError if m_max is reached without resolution.
FcValueReport fc_value(int k, int n, int m_max, const EnumOptions& opts = {}, NfcSearch* search = nullptr);

struct LexScanResult {
  int m = 0;
  Certificate prefix_fc;                  // [S_m]
  std::optional<Certificate> prev_nonfc;  // [S_{m-1}], when m > 1
};

/// First m with U([S_m]) = [n] and [S_m] FC.
LexScanResult lex_scan(int k, int n, const EnumOptions& opts = {});

/// Least m such that every family of at least m distinct k-sets with
/// universe [n] is V-FC, by exhaustive check of one family per class.
/// `domain` must be invariant under every permutation of [n].
FcValueReport fcv_value(int k, int n, const Family& domain, const EnumOptions& opts = {});

/// Families separated by "%%" lines, each in the family text format.
std::string format_family_list(const std::vector<Family>& families);
std::vector<Family> parse_family_list(std::string_view text);

/// One family-list file per computed level plus manifest.json and the
/// certificates of every listed family under certs/.
void write_results(const std::filesystem::path& dir, const NfcSearch& search);

}  // namespace fc
