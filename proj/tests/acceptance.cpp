// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "mastkit/cli.hpp"
#include "mastkit/construct.hpp"
#include "mastkit/exact_mast.hpp"
#include "mastkit/monotone.hpp"

using namespace mastkit;
using namespace mastkit::testing;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::size_t ceil_log2(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::pair<UnrootedTree, UnrootedTree> uniform_pair(std::size_t n, std::uint64_t seed) {
  return {random_tree(n, mix_seed(seed, 1)), random_tree(n, mix_seed(seed, 2))};
}

Verdict oracle_equivalence() {
  std::size_t mismatches = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 4 + seed % 5;
    const auto [t, s] = uniform_pair(n, mix_seed(101, seed));
    if (unrooted_mast(t, s).size != brute_force_mast(t, s).size) ++mismatches;
    const RootedTree rt = random_rooted(n, mix_seed(102, seed));
    const RootedTree rs = random_rooted(n, mix_seed(103, seed));
    if (rooted_mast(rt, rs).size != brute_force_mast(rt, rs).size) ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {mismatches == 0 && secs < 60.0,
          "200 pairs, rooted and unrooted, " + std::to_string(mismatches) + " mismatches, " +
              fmt(secs, 2) + " s"};
}

Verdict end_to_end_validity() {
  const std::size_t sizes[] = {8, 16, 32, 64, 128, 256};
  std::size_t failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::size_t n = sizes[i % 6];
    const auto [t, s] = (i / 6) % 2 == 0 ? uniform_pair(n, mix_seed(201, i)) : adversarial_pair(n, i);
    for (const ConstructionOutcome& out : {weak_construct(t, s), main_construct(t, s)}) {
      if (!verify_outcome(out) || !verify_agreement(t, s, out.agreement_set)) ++failures;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 300.0,
          "1000 pairs x {weak, main}, " + std::to_string(failures) + " unverified, " +
              fmt(secs, 2) + " s"};
}

Verdict weak_dichotomy() {
  std::size_t failures = 0, rooted_wins = 0, runs = 0;
  for (std::size_t n : {16, 64, 256, 1024, 4096}) {
    const double l = std::log2(static_cast<double>(n));
    const double rooted_bound = std::ceil(0.5 * l / std::log2(2.0 * l)) + 1.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto pairs = {uniform_pair(n, mix_seed(301, n, seed)), adversarial_pair(n, seed)};
      for (const auto& [t, s] : pairs) {
        const ConstructionOutcome out = weak_construct(t, s);
        ++runs;
        const bool ok = verify_outcome(out) &&
                        (is_rooted_kind(out.kind) ? double(out.size()) >= rooted_bound
                                                  : out.size() >= ceil_log2(n));
        if (!ok) ++failures;
        if (is_rooted_kind(out.kind)) ++rooted_wins;
      }
    }
  }
  return {failures == 0, std::to_string(runs) + " runs (uniform and adversarial), " +
                             std::to_string(rooted_wins) + " rooted, " +
                             std::to_string(failures) + " below bound"};
}

bool greedy_precondition(const IterationState& st, const PathDecomposition& d) {
  const double log_n = log2_of(st.n_param);
  auto small = [&](const PathSubtree& sub) {
    return !at_least_fraction(sub.size(), st.size(), log_n);
  };
  return std::all_of(d.q.begin(), d.q.end(), small) && std::all_of(d.r.begin(), d.r.end(), small);
}

Verdict greedy_guarantee() {
  std::size_t harvested = 0, synthetic = 0, failures = 0;
  auto check = [&](const IterationState& st, const PathDecomposition& d) {
    const TaxonSet a = make_taxon_set(greedy_caterpillar(st, d));
    const UnrootedTree ct = deroot(restrict(st.t, a));
    const UnrootedTree cs = deroot(restrict(st.s, a));
    const bool ok = a.size() >= ceil_log2(st.n_param) && is_caterpillar(ct) &&
                    is_caterpillar(cs) && isomorphic(ct, cs);
    if (!ok) ++failures;
  };

  // States met by real runs.
  auto observe = [&](const IterationState& st) {
    const PathDecomposition d = decompose(st);
    if (greedy_precondition(st, d)) {
      ++harvested;
      check(st, d);
    }
  };
  for (std::size_t n : {16, 32, 64, 128, 256}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pairs = {uniform_pair(n, mix_seed(401, n, seed)), adversarial_pair(n, seed)};
      for (const auto& [t, s] : pairs) {
        weak_construct(t, s, {}, kWeakC, observe);
        main_construct(t, s, {}, kMainC, observe);
      }
    }
  }

  // Seeded states with random block shapes and sizes fill the rest.
  for (std::uint64_t seed = 0; harvested + synthetic < 200; ++seed) {
    Rng rng(mix_seed(402, seed));
    const int blocks = 16 + static_cast<int>(rng.below(240));
    std::vector<int> sizes{1};
    for (int i = 1; i < blocks; ++i) sizes.push_back(1 + static_cast<int>(rng.below(3)));
    int m = 0;
    for (int b : sizes) m += b;
    Setup su = comb_setup(sizes, static_cast<std::size_t>(m), seed, true);
    const PathDecomposition d = path_decomposition(su.state);
    if (!greedy_precondition(su.state, d)) continue;
    ++synthetic;
    check(su.state, d);
  }
  return {failures == 0, std::to_string(harvested + synthetic) + " states (" +
                             std::to_string(harvested) + " from runs, " +
                             std::to_string(synthetic) + " seeded combs), " +
                             std::to_string(failures) + " failures"};
}

Verdict upper_bound_sandwich() {
  std::size_t failures = 0;
  std::string worst;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t n : {8, 16, 32, 64, 128, 256}) {
    std::size_t largest = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto [bal, cat] = adversarial_pair(n, seed);
      const std::size_t exact = unrooted_mast(bal, cat).size;
      const std::size_t built = main_construct(bal, cat).size();
      if (double(exact) > 2.0 * std::log2(double(n)) + 2.0 || built > exact) ++failures;
      largest = std::max(largest, exact);
    }
    worst += (worst.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(largest);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 120.0, "max exact per n {" + worst + "}, " +
                                             std::to_string(failures) + " failures, " +
                                             fmt(secs, 2) + " s"};
}

Verdict erdos_szekeres() {
  std::size_t failures = 0;
  for (std::size_t n : {10, 100, 1000}) {
    std::vector<Taxon> a;
    for (std::size_t i = 1; i <= n; ++i) a.push_back(std::to_string(i));
    const auto need = static_cast<std::size_t>(std::ceil(std::sqrt(double(n))));
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      std::vector<Taxon> b = a;
      Rng rng(mix_seed(601, n, seed));
      rng.shuffle(b);
      const MonotoneAlignment r = common_monotone_subsequence(a, b);
      // Independent subsequence check against a and the oriented b.
      std::vector<Taxon> target = b;
      if (r.direction == Direction::kDecreasing) std::reverse(target.begin(), target.end());
      auto is_subsequence = [&](const std::vector<Taxon>& of) {
        std::size_t k = 0;
        for (const auto& x : of) {
          if (k < r.sequence.size() && x == r.sequence[k]) ++k;
        }
        return k == r.sequence.size();
      };
      if (r.sequence.size() < need || !is_subsequence(a) || !is_subsequence(target)) ++failures;
    }
  }
  return {failures == 0,
          "3000 permutations at n in {10, 100, 1000}, " + std::to_string(failures) + " failures"};
}

Verdict caterpillar_bound() {
  std::size_t failures = 0;
  double tightest = 1e9;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t m = 8 + seed * 248 / 199;
    Rng rng(mix_seed(701, seed));
    std::vector<std::string> order;
    for (std::size_t i = 1; i <= m; ++i) order.push_back(std::to_string(i));
    rng.shuffle(order);
    std::string cat = order.front();
    for (std::size_t i = 1; i < m; ++i) cat = "(" + cat + "," + order[i] + ")";
    const RootedTree caterpillar = parse_rooted_newick(cat + ";");
    const RootedTree tree = random_rooted(m, mix_seed(702, seed));
    const std::size_t size = rooted_mast(tree, caterpillar).size;
    const double bound = std::ceil(std::log2(double(m)) / 3.0);
    if (double(size) < bound) ++failures;
    tightest = std::min(tightest, double(size) / bound);
  }
  return {failures == 0, "200 pairs, m in 8..256, min size/bound " + fmt(tightest, 2) + ", " +
                             std::to_string(failures) + " failures"};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("mastkit_accept_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str() + err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(line);
  for (std::string p; std::getline(in, p, sep);) parts.push_back(p);
  return parts;
}

Verdict experiment_grid(const TempDir& dir) {
  const std::string csv = dir.path("grid.csv");
  const CliRun r = cli({"experiment", "--n-min", "16", "--n-max", "4096", "--trials", "5",
                        "--model", "uniform,adversarial", "--seed", "8", "--out",
                        csv});
  if (r.code != kExitOk) return {false, "experiment exited with " + std::to_string(r.code)};

  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  std::map<std::size_t, double> min_ratio;
  std::size_t main_rows = 0, tagged = 0, bad = 0;
  while (std::getline(in, line)) {
    // n,seed,generator,algorithm,size,kind,branch,verified,millis
    const auto f = split(line, ',');
    if (f.size() != 9 || f[7] != "true") {
      ++bad;
      continue;
    }
    if (f[3] != "main") continue;
    ++main_rows;
    const std::size_t n = std::stoul(f[0]);
    const std::uint64_t seed = std::stoull(f[1]);
    const double ratio = std::stod(f[4]) / std::log2(double(n));
    auto [it, fresh] = min_ratio.emplace(n, ratio);
    if (!fresh) it->second = std::min(it->second, ratio);

    // Recompute the run and compare the fallback flag with the recorded tag.
    const auto [t, s] = f[2] == "adversarial" ? adversarial_pair(n, seed) : uniform_pair(n, seed);
    const ConstructionOutcome out = main_construct(t, s);
    const bool has_tag = f[6].find("desk_fallback") != std::string::npos;
    if (out.branch != f[6] || out.desk_fallback != has_tag || ratio <= 0.0) ++bad;
    tagged += has_tag ? 1 : 0;
  }
  std::string report;
  for (const auto& [n, ratio] : min_ratio) {
    report += (report.empty() ? "" : " ") + std::to_string(n) + ":" + fmt(ratio, 2);
  }
  return {bad == 0 && main_rows == 9 * 2 * 5,
          std::to_string(main_rows) + " main runs, " + std::to_string(tagged) +
              " tagged desk fallbacks, min size/log2 n {" + report + "}, " +
              std::to_string(bad) + " bad rows"};
}

Verdict determinism(const TempDir& dir) {
  {
    const CliRun gen = cli({"gen", "--model", "adversarial", "--n", "64", "--seed", "3"});
    const auto trees = split(gen.out, '\n');
    std::ofstream(dir.path("t1.nwk")) << trees.at(0) << '\n';
    std::ofstream(dir.path("t2.nwk")) << trees.at(1) << '\n';
  }
  const std::string t1 = dir.path("t1.nwk"), t2 = dir.path("t2.nwk");
  const std::vector<std::vector<std::string>> commands{
      {"gen", "--model", "uniform", "--n", "100", "--seed", "5"},
      {"construct", "--t1", t1, "--t2", t2, "--json"},
      {"construct", "--t1", t1, "--t2", t2, "--algorithm", "weak", "--seed", "11", "--json"},
      {"exact", "--t1", t1, "--t2", t2, "--json"},
      {"verify", "--t1", t1, "--t2", t2, "--taxa", "1,2,3,4", "--json"},
      {"experiment", "--n-min", "8", "--n-max", "128", "--trials", "3", "--model",
       "uniform,caterpillar,balanced,adversarial", "--seed", "2", "--out", dir.path("e.csv"),
       "--json"},
  };
  std::size_t differing = 0;
  for (const auto& cmd : commands) {
    const CliRun a = cli(cmd);
    const std::string file_a = slurp(dir.path("e.csv"));
    const CliRun b = cli(cmd);
    const std::string file_b = slurp(dir.path("e.csv"));
    if (a.code != b.code || a.out != b.out || file_a != file_b) ++differing;
  }
  return {differing == 0, std::to_string(commands.size()) + " commands run twice, " +
                              std::to_string(differing) + " differing"};
}

}  // namespace

int main() {
  TempDir dir;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"end-to-end validity", end_to_end_validity},
      {"weak construction dichotomy", weak_dichotomy},
      {"greedy caterpillar guarantee", greedy_guarantee},
      {"balanced vs caterpillar upper bound", upper_bound_sandwich},
      {"monotone alignment length", erdos_szekeres},
      {"rooted caterpillar lower bound", caterpillar_bound},
      {"experiment grid", [&] { return experiment_grid(dir); }},
      {"cli determinism", [&] { return determinism(dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
