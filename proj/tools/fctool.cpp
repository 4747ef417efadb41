// Command-line front end: decisions, enumeration runs, bounds, verification.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fc/canon.hpp"
#include "fc/certificate.hpp"
#include "fc/enumfam.hpp"
#include "fc/verify.hpp"

namespace fs = std::filesystem;
using namespace fc;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int jobs = 1;
  double time_limit = 0;  // seconds per is_fc call, 0 = none
  std::string out_dir;
  bool symmetry = false;
  bool warm_start = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

EnumOptions enum_options(const RunConfig& cfg) {
  EnumOptions opts;
  opts.jobs = cfg.jobs;
  opts.symmetry = cfg.symmetry;
  opts.warm_start = cfg.warm_start;
  if (cfg.time_limit > 0)
    opts.time_limit = std::chrono::milliseconds(static_cast<long>(cfg.time_limit * 1000));
  opts.progress = [](const std::string& line) { std::cerr << line << std::endl; };
  return opts;
}

Family domain_for(const std::string& selector, int n) {
  if (selector == "no-singletons") return no_singletons_domain(n);
  Family d = parse_family(read_file(selector));
  if (d.ground_size() != n) d = d.with_ground(n);
  return d;
}

void write_certificate(const fs::path& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << certificate_to_json(cert) << "\n";
  std::cout << "certificate: " << path.string() << "\n";
}

const char* verdict_name(const Certificate& cert) { return cert.is_fc() ? "FC" : "Non-FC"; }

int run_isfc(const RunConfig& cfg, const std::string& file, const std::string& v, const std::string& output) {
  Family f = parse_family(read_file(file));
  IsFcOptions opts;
  opts.symmetry = cfg.symmetry;
  opts.warm_start = cfg.warm_start;
  if (cfg.time_limit > 0)
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(static_cast<long>(cfg.time_limit * 1000));
  if (!v.empty()) {
    const int n = universe(f).max_element();
    f = f.with_ground(n);
    opts.domain = domain_for(v, n);
  }
  SolveStats stats;
  const auto cert = is_fc(f, opts, &stats);
  std::cout << verdict_name(cert) << "\n";
  std::cerr << "rounds " << stats.rounds << ", separation nodes " << stats.separation_nodes << "\n";
  fs::path path = output.empty() ? out_dir(cfg) / (fs::path(file).stem().string() + ".cert.json") : fs::path(output);
  write_certificate(path, cert);
  return 0;
}

int run_getnfc(const RunConfig& cfg, int n, int k, int m) {
  NfcSearch search(k, enum_options(cfg));
  const auto& lvl = search.level(n, m);
  std::cout << "getNFC(" << n << "," << k << "," << m << "): " << lvl.families.size() << " Non-FC classes\n";
  std::cout << format_family_list(lvl.families);
  write_results(out_dir(cfg), search);
  return 0;
}

int run_fcvalue(const RunConfig& cfg, int k, int n, int max_m) {
  NfcSearch search(k, enum_options(cfg));
  if (max_m <= 0) max_m = static_cast<int>(binomial(n, k)) + 1;
  const auto report = fc_value(k, n, max_m, enum_options(cfg), &search);
  const fs::path dir = out_dir(cfg);
  write_results(dir, search);
  if (report.value) {
    std::cout << "FC(" << k << "," << n << ") = " << *report.value << "\n";
  } else {
    std::cout << "FC(" << k << "," << n << ") undefined: the family of all " << k << "-subsets of [" << n
              << "] is Non-FC\n";
  }
  if (report.witness) {
    std::cout << "largest Non-FC witness:\n" << format_family(*report.witness);
    write_certificate(dir / ("fc_k" + std::to_string(k) + "_n" + std::to_string(n) + "_witness.json"),
                      *report.witness_certificate);
  }
  std::cerr << "elapsed " << report.seconds << " s\n";
  return 0;
}

int run_lexscan(const RunConfig& cfg, int k, int n) {
  const auto r = lex_scan(k, n, enum_options(cfg));
  const fs::path dir = out_dir(cfg);
  std::cout << "first FC prefix: m = " << r.m << "\n";
  const std::string stem = "lex_k" + std::to_string(k) + "_n" + std::to_string(n);
  write_certificate(dir / (stem + "_m" + std::to_string(r.m) + ".json"), r.prefix_fc);
  if (r.prev_nonfc) {
    std::cout << "prefix m = " << r.m - 1 << " is " << verdict_name(*r.prev_nonfc) << "\n";
    write_certificate(dir / (stem + "_m" + std::to_string(r.m - 1) + ".json"), *r.prev_nonfc);
  }
  return 0;
}

int run_vfcvalue(const RunConfig& cfg, int k, int n, const std::string& v) {
  if (v != "no-singletons") throw UsageError("vfcvalue supports --v no-singletons only");
  const auto report = fcv_value(k, n, no_singletons_domain(n), enum_options(cfg));
  std::cout << "FC_V(" << k << "," << n << ") = " << *report.value << "\n";
  if (report.witness) {
    std::cout << "largest non-V-FC witness:\n" << format_family(*report.witness);
    write_certificate(out_dir(cfg) / ("vfc_k" + std::to_string(k) + "_n" + std::to_string(n) + "_witness.json"),
                      *report.witness_certificate);
  }
  std::cerr << "elapsed " << report.seconds << " s\n";
  return 0;
}

std::vector<int> parse_residues(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad residue list '" + text + "'");
    }
  }
  return out;
}

int run_translates(int n, const std::string& r) {
  const auto wide = translates_family(n, parse_residues(r));
  const int cells = n * n;
  const auto degree = regularity(wide);
  const auto m = wide.members.size();
  if (regular_3set_fc(wide)) {
    std::cout << "FC by Lemma (regular 3-sets, degree " << *degree << ", m=" << m << " ≥ FC(3," << cells
              << ")=" << fc3_value(cells) << ")\n";
  } else {
    std::cout << "not covered by the regular 3-set criterion (m=" << m << ", "
              << (degree ? "degree " + std::to_string(*degree) : std::string("irregular")) << ")\n";
  }
  return 0;
}

int run_orbits(const std::string& file) {
  const Family f = parse_family(read_file(file));
  const auto part = orbits(f);
  std::vector<MemberSet> cells;
  for (const auto& orbit : part.orbits()) cells.push_back(MemberSet::from_elements(orbit));
  std::cout << format_family(Family(f.ground_size(), cells));
  return 0;
}

int run_verify(const std::string& file) {
  const auto cert = certificate_from_json(read_file(file));
  const auto report = verify_certificate(cert);
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << (c.passed ? "" : ": " + c.detail) << "\n";
  std::cout << (report.passed ? "certificate verified" : "certificate rejected") << " (" << verdict_name(cert)
            << ")\n";
  return report.passed ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and enumerate FC-families of k-sets"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  if (const char* env = std::getenv("FC_OUTPUT_DIR")) cfg.out_dir = env;
  app.add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--time-limit", cfg.time_limit, "seconds per isFC call (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out,-O", cfg.out_dir, "output directory (default $FC_OUTPUT_DIR or .)");
  app.add_flag("--symmetry", cfg.symmetry, "reduce each LP by automorphism orbits");
  app.add_flag("--warm-start", cfg.warm_start, "seed cuts A (+) P([n]\\{i})");

  std::string file, v, output;
  int n = 0, k = 0, m = 0, max_m = 0, base_n = 0, base_m = 0;
  std::string residues;

  auto* isfc = app.add_subcommand("isfc", "decide one family and write its certificate");
  isfc->add_option("FILE", file)->required();
  isfc->add_option("--v", v, "restrict to a domain: no-singletons or a family file");
  isfc->add_option("-o,--output", output, "certificate path");

  auto* getnfc = app.add_subcommand("getnfc", "Non-FC classes of m k-sets with universe [n]");
  getnfc->add_option("-n", n)->required();
  getnfc->add_option("-k", k)->required();
  getnfc->add_option("-m", m)->required()->check(CLI::PositiveNumber);

  auto* fcvalue = app.add_subcommand("fcvalue", "FC(k, n) by enumeration");
  fcvalue->add_option("-k", k)->required();
  fcvalue->add_option("-n", n)->required();
  fcvalue->add_option("--max-m", max_m, "give up above this m");

  auto* lexscan = app.add_subcommand("lexscan", "first FC prefix of the lexicographic order");
  lexscan->add_option("-k", k)->required();
  lexscan->add_option("-n", n)->required();

  auto* vfcvalue = app.add_subcommand("vfcvalue", "FC_V(k, n) by exhaustive check");
  vfcvalue->add_option("-k", k)->required();
  vfcvalue->add_option("-n", n)->required();
  vfcvalue->add_option("--v", v)->required();

  auto* upper = app.add_subcommand("upperbound", "FC(k, n) upper bound from a known FC(k, n0)");
  upper->add_option("-k", k)->required();
  upper->add_option("-n", n)->required();
  upper->add_option("--base-n", base_n)->required();
  upper->add_option("--base-m", base_m)->required();

  auto* translates = app.add_subcommand("translates", "translates of R x {0} and {0} x R in Z_n^2");
  translates->add_option("-n", n)->required();
  translates->add_option("--r", residues)->required();

  auto* canon = app.add_subcommand("canon", "canonical form of a family");
  canon->add_option("FILE", file)->required();
  auto* orbit_cmd = app.add_subcommand("orbits", "orbits of the automorphism group");
  orbit_cmd->add_option("FILE", file)->required();
  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("CERT", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (cfg.jobs <= 0) cfg.jobs = 1;

  try {
    if (*isfc) return run_isfc(cfg, file, v, output);
    if (*getnfc) return run_getnfc(cfg, n, k, m);
    if (*fcvalue) return run_fcvalue(cfg, k, n, max_m);
    if (*lexscan) return run_lexscan(cfg, k, n);
    if (*vfcvalue) return run_vfcvalue(cfg, k, n, v);
    if (*upper) {
      std::cout << upper_bound(k, n, base_n, base_m) << "\n";
      return 0;
    }
    if (*translates) return run_translates(n, residues);
    if (*canon) {
      std::cout << format_family(canonical_form(parse_family(read_file(file))).relabeled);
      return 0;
    }
    if (*orbit_cmd) return run_orbits(file);
    if (*verify) return run_verify(file);
  } catch (const SeparationCancelled&) {
    std::cerr << "error: time limit reached\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
