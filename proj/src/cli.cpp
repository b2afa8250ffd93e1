#include "mastkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mastkit/construct.hpp"
#include "mastkit/exact_mast.hpp"
#include "mastkit/generators.hpp"
#include "mastkit/newick.hpp"
#include "mastkit/random.hpp"
#include "mastkit/tree_ops.hpp"

namespace mastkit {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kUnrootedDpCap = 512;
constexpr std::size_t kRootedDpCap = 2048;
constexpr const char* kCsvHeader = "n,seed,generator,algorithm,size,kind,branch,verified,millis";

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Options {
  std::string t1, t2;
  std::string algorithm = "main";
  std::string method = "dp";
  std::string model = "uniform";
  std::vector<std::string> models;
  std::string taxa;
  std::string out_path;
  std::size_t c = 0;
  std::size_t n = 0;
  std::size_t n_min = 8, n_max = 64, step_factor = 2, trials = 1;
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool rooted = false;
  bool timing = false;
};

struct Record {
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string generator;
  std::string algorithm;
  TaxonSet agreement;
  std::string kind;
  std::string branch;
  double claimed_bound = 0.0;
  bool verified = false;
  long long millis = 0;
  std::size_t pair_steps = 0, block_steps = 0;
};

std::optional<std::uint64_t> effective_seed(const Options& o) {
  if (o.seed) return o.seed;
  const char* env = std::getenv("MASTKIT_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used, 0);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw CliError(kExitParse, std::string("MASTKIT_SEED is not an integer: ") + env);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitParse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string join(const TaxonSet& set, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += sep;
    out += set[i];
  }
  return out;
}

TaxonSet parse_taxa_list(const std::string& text) {
  std::vector<Taxon> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return make_taxon_set(std::move(out));
}

template <typename F>
auto timed(bool timing, long long& millis, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  if (timing) {
    millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
  }
  return result;
}

Record construct_record(const UnrootedTree& t, const UnrootedTree& s, const std::string& algorithm,
                        std::size_t c, const Orientation& orient, bool timing) {
  require_same_taxa(t, s);
  Record r;
  r.n = t.leaf_count();
  r.algorithm = algorithm;
  if (r.n < 4) {
    // Trees on at most three taxa always agree.
    r.agreement = t.taxa();
    r.kind = to_string(OutcomeKind::kUnrootedCaterpillar);
    r.branch = "trivial_small_input";
    r.claimed_bound = static_cast<double>(r.n);
    r.verified = verify_agreement(t, s, r.agreement);
    return r;
  }
  const ConstructionOutcome out = timed(timing, r.millis, [&] {
    return algorithm == "weak" ? weak_construct(t, s, orient, c == 0 ? kWeakC : c)
                               : main_construct(t, s, orient, c == 0 ? kMainC : c);
  });
  r.agreement = out.agreement_set;
  r.kind = to_string(out.kind);
  r.branch = out.branch;
  r.claimed_bound = out.claimed_bound;
  r.pair_steps = out.pair_steps;
  r.block_steps = out.block_steps;
  r.verified = verify_outcome(out) && verify_agreement(t, s, out.agreement_set);
  return r;
}

template <typename Tree>
Record exact_record(const Tree& t, const Tree& s, const std::string& method, std::size_t cap,
                    bool timing) {
  require_same_taxa(t, s);
  Record r;
  r.n = t.leaf_count();
  if (r.n > cap) {
    throw CliError(kExitCap, "input has " + std::to_string(r.n) + " taxa, above the " + method +
                                 " cap of " + std::to_string(cap));
  }
  const auto result = timed(timing, r.millis, [&] {
    if (method == "brute") return brute_force_mast(t, s, cap);
    if constexpr (std::is_same_v<Tree, RootedTree>) {
      return rooted_mast(t, s);
    } else {
      return unrooted_mast(t, s);
    }
  });
  r.algorithm = method == "brute" ? "brute" : "exact_dp";
  r.agreement = result.agreement_set;
  r.kind = std::is_same_v<Tree, RootedTree> ? "rooted_mast" : "unrooted_mast";
  r.branch = method;
  r.claimed_bound = static_cast<double>(result.size);
  const Tree rt = restrict(t, result.agreement_set);
  r.verified = isomorphic(rt, restrict(s, result.agreement_set)) && isomorphic(result.witness, rt);
  return r;
}

Json record_json(const Record& r) {
  Json j;
  j["n"] = r.n;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["generator"] = r.generator;
  j["algorithm"] = r.algorithm;
  j["size"] = r.agreement.size();
  j["kind"] = r.kind;
  j["branch"] = r.branch;
  j["verified"] = r.verified;
  j["millis"] = r.millis;
  j["claimed_bound"] = r.claimed_bound;
  j["agreement_set"] = r.agreement;
  return j;
}

std::string csv_row(const Record& r) {
  std::ostringstream s;
  s << r.n << ',' << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.generator << ','
    << r.algorithm << ',' << r.agreement.size() << ',' << r.kind << ',' << r.branch << ','
    << (r.verified ? "true" : "false") << ',' << r.millis;
  return s.str();
}

std::pair<UnrootedTree, UnrootedTree> read_pair(const Options& o) {
  return {parse_unrooted_newick(read_file(o.t1)), parse_unrooted_newick(read_file(o.t2))};
}

Orientation orientation_for(const std::optional<std::uint64_t>& seed) {
  return seed ? Orientation::seeded(*seed) : Orientation{};
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  const auto [t, s] = read_pair(o);
  const auto seed = effective_seed(o);
  Record r = construct_record(t, s, o.algorithm, o.c, orientation_for(seed), o.timing);
  r.seed = seed;
  r.generator = "file";
  if (o.json) {
    Json j = record_json(r);
    j["pair_steps"] = r.pair_steps;
    j["block_steps"] = r.block_steps;
    out << j.dump(2) << '\n';
  } else {
    out << "algorithm: " << r.algorithm << '\n'
        << "n: " << r.n << '\n'
        << "size: " << r.agreement.size() << '\n'
        << "agreement: " << join(r.agreement, " ") << '\n'
        << "kind: " << r.kind << '\n'
        << "branch: " << r.branch << '\n'
        << "claimed_bound: " << fixed(r.claimed_bound) << '\n'
        << "verified: " << (r.verified ? "true" : "false") << '\n';
  }
  if (!r.verified) {
    err << "error: constructed set failed verification\n";
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_exact(const Options& o, std::ostream& out, std::ostream& err) {
  const std::size_t default_cap =
      o.method == "brute" ? kBruteForceCap : (o.rooted ? kRootedDpCap : kUnrootedDpCap);
  const std::size_t cap = o.cap.value_or(default_cap);
  Record r;
  if (o.rooted) {
    r = exact_record(parse_rooted_newick(read_file(o.t1)), parse_rooted_newick(read_file(o.t2)),
                     o.method, cap, o.timing);
  } else {
    const auto [t, s] = read_pair(o);
    r = exact_record(t, s, o.method, cap, o.timing);
  }
  r.generator = "file";
  if (o.json) {
    out << record_json(r).dump(2) << '\n';
  } else {
    out << "method: " << o.method << '\n'
        << "size: " << r.agreement.size() << '\n'
        << "witness: " << join(r.agreement, " ") << '\n'
        << "verified: " << (r.verified ? "true" : "false") << '\n';
  }
  if (!r.verified) {
    err << "error: witness failed verification\n";
    return kExitVerify;
  }
  return kExitOk;
}

void require_known(const TaxonSet& a, const TaxonSet& t, const TaxonSet& s) {
  for (const auto& x : a) {
    if (!contains(t, x) || !contains(s, x)) throw CliError(kExitTaxa, "unknown taxon " + x);
  }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const TaxonSet a = parse_taxa_list(o.taxa);
  bool agree = false;
  if (o.rooted) {
    const RootedTree t = parse_rooted_newick(read_file(o.t1));
    const RootedTree s = parse_rooted_newick(read_file(o.t2));
    require_known(a, t.taxa(), s.taxa());
    agree = verify_agreement(t, s, a, OutcomeKind::kBlockTree);
  } else {
    const auto [t, s] = read_pair(o);
    require_known(a, t.taxa(), s.taxa());
    agree = verify_agreement(t, s, a);
  }
  if (o.json) {
    Json j;
    j["size"] = a.size();
    j["rooted"] = o.rooted;
    j["agree"] = agree;
    out << j.dump(2) << '\n';
  } else {
    out << "size: " << a.size() << '\n' << "agree: " << (agree ? "true" : "false") << '\n';
  }
  return agree ? kExitOk : kExitDisagree;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream&) {
  const std::uint64_t seed = effective_seed(o).value_or(0);
  std::vector<UnrootedTree> trees;
  if (o.model == "adversarial") {
    auto [a, b] = adversarial_pair(o.n, seed);
    trees = {std::move(a), std::move(b)};
  } else {
    trees.push_back(generate({parse_tree_model(o.model), o.n, seed}));
  }
  std::string text;
  for (const auto& t : trees) text += write_newick(t) + '\n';
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!(f << text)) throw CliError(kExitParse, "cannot write " + o.out_path);
  }
  return kExitOk;
}

std::pair<UnrootedTree, UnrootedTree> experiment_pair(const std::string& model, std::size_t n,
                                                      std::uint64_t seed) {
  if (model == "adversarial") return adversarial_pair(n, seed);
  const TreeModel m = parse_tree_model(model);
  UnrootedTree first = generate({TreeModel::kUniform, n, mix_seed(seed, 1)});
  UnrootedTree second = m == TreeModel::kUniform ? generate({m, n, mix_seed(seed, 2)})
                                                 : generate({m, n, seed});
  return {std::move(first), std::move(second)};
}

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n_min < 4) throw CliError(kExitParse, "--n-min must be at least 4");
  if (o.n_max < o.n_min) throw CliError(kExitParse, "--n-max must be at least --n-min");
  if (o.step_factor < 2) throw CliError(kExitParse, "--step-factor must be at least 2");
  std::vector<std::string> models = o.models.empty() ? std::vector<std::string>{"uniform"} : o.models;
  std::vector<std::size_t> grid;
  for (std::size_t n = o.n_min; n <= o.n_max; n *= o.step_factor) grid.push_back(n);
  for (const auto& m : models) {
    if (m != "adversarial") parse_tree_model(m);
    const bool needs_power = m == "adversarial" || m == "balanced";
    for (std::size_t n : grid) {
      if (needs_power && !is_power_of_two(n)) {
        throw CliError(kExitParse, "model " + m + " needs powers of two, got n=" + std::to_string(n));
      }
    }
  }
  const std::uint64_t base = effective_seed(o).value_or(0);
  const std::size_t exact_cap = o.cap.value_or(kUnrootedDpCap);

  std::ofstream csv(o.out_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw CliError(kExitParse, "cannot write " + o.out_path);
  csv << kCsvHeader << '\n';

  // Smallest main-construction size / log2(n) per (model, n).
  std::map<std::pair<std::string, std::size_t>, double> min_ratio;
  std::size_t rows = 0;
  for (std::size_t n : grid) {
    for (const auto& model : models) {
      for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const std::uint64_t seed = mix_seed(base, n, trial);
        const auto [t, s] = experiment_pair(model, n, seed);
        std::vector<Record> batch;
        batch.push_back(construct_record(t, s, "weak", o.c, {}, o.timing));
        batch.push_back(construct_record(t, s, "main", o.c, {}, o.timing));
        if (n <= exact_cap) batch.push_back(exact_record(t, s, "dp", exact_cap, o.timing));
        for (Record& r : batch) {
          r.seed = seed;
          r.generator = model;
          csv << csv_row(r) << '\n';
          ++rows;
          if (!r.verified) {
            csv.flush();
            err << "error: unverified " << r.algorithm << " result at n=" << n << " seed=" << seed
                << '\n';
            return kExitVerify;
          }
        }
        const double ratio = static_cast<double>(batch[1].agreement.size()) / std::log2(double(n));
        auto [it, fresh] = min_ratio.emplace(std::pair{model, n}, ratio);
        if (!fresh) it->second = std::min(it->second, ratio);
      }
    }
  }
  csv.flush();
  if (!csv) throw CliError(kExitParse, "cannot write " + o.out_path);

  if (o.json) {
    Json j;
    j["rows"] = rows;
    j["out"] = o.out_path;
    Json summary = Json::array();
    for (const auto& [key, ratio] : min_ratio) {
      summary.push_back({{"generator", key.first}, {"n", key.second}, {"main_min_size_over_log2n", ratio}});
    }
    j["summary"] = summary;
    out << j.dump(2) << '\n';
  } else {
    out << "rows: " << rows << '\n';
    for (const auto& [key, ratio] : min_ratio) {
      out << "generator=" << key.first << " n=" << key.second
          << " main min size/log2(n)=" << fixed(ratio) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agreement subtrees of binary phylogenetic trees", "mastkit"};
  app.require_subcommand(1);
  Options o;

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--t1", o.t1, "Newick file with the first tree")->required();
    sub->add_option("--t2", o.t2, "Newick file with the second tree")->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed (default: MASTKIT_SEED)");
  };

  CLI::App* construct = app.add_subcommand("construct", "Build an agreement set");
  add_pair(construct);
  construct->add_option("--algorithm", o.algorithm, "weak or main")
      ->check(CLI::IsMember({"weak", "main"}));
  construct->add_option("--C", o.c, "Good-pair constant (default 4 for weak, 40 for main)")
      ->check(CLI::Range(std::size_t{4}, std::numeric_limits<std::size_t>::max()));
  add_seed(construct);
  construct->add_flag("--json", o.json, "JSON report");
  construct->add_flag("--timing", o.timing, "Record wall-clock milliseconds");

  CLI::App* exact = app.add_subcommand("exact", "Exact maximum agreement subtree");
  add_pair(exact);
  exact->add_option("--method", o.method, "dp or brute")->check(CLI::IsMember({"dp", "brute"}));
  exact->add_option("--cap", o.cap, "Largest accepted n");
  exact->add_flag("--rooted", o.rooted, "Read rooted trees");
  exact->add_flag("--json", o.json, "JSON report");
  exact->add_flag("--timing", o.timing, "Record wall-clock milliseconds");

  CLI::App* verify = app.add_subcommand("verify", "Check whether two trees agree on a taxon set");
  add_pair(verify);
  verify->add_option("--taxa", o.taxa, "Comma-separated taxa")->required();
  verify->add_flag("--rooted", o.rooted, "Read rooted trees");
  verify->add_flag("--json", o.json, "JSON report");

  CLI::App* gen = app.add_subcommand("gen", "Generate trees as Newick");
  gen->add_option("--model", o.model, "uniform, caterpillar, balanced or adversarial")
      ->check(CLI::IsMember({"uniform", "caterpillar", "balanced", "adversarial"}));
  gen->add_option("--n", o.n, "Number of taxa")->required();
  add_seed(gen);
  gen->add_option("--out", o.out_path, "Output file (default: stdout)");

  CLI::App* experiment = app.add_subcommand("experiment", "Run constructions over a grid of n");
  experiment->add_option("--n-min", o.n_min, "Smallest n");
  experiment->add_option("--n-max", o.n_max, "Largest n");
  experiment->add_option("--step-factor", o.step_factor, "Grid ratio");
  experiment->add_option("--trials", o.trials, "Trials per n and model");
  experiment->add_option("--model", o.models, "uniform, caterpillar, balanced or adversarial")
      ->delimiter(',')
      ->check(CLI::IsMember({"uniform", "caterpillar", "balanced", "adversarial"}));
  experiment->add_option("--C", o.c, "Good-pair constant")
      ->check(CLI::Range(std::size_t{4}, std::numeric_limits<std::size_t>::max()));
  experiment->add_option("--cap", o.cap, "Largest n for the exact solver");
  add_seed(experiment);
  experiment->add_option("--out", o.out_path, "CSV output file")->required();
  experiment->add_flag("--json", o.json, "JSON summary");
  experiment->add_flag("--timing", o.timing, "Record wall-clock milliseconds");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (construct->parsed()) return cmd_construct(o, out, err);
    if (exact->parsed()) return cmd_exact(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (gen->parsed()) return cmd_gen(o, out, err);
    return cmd_experiment(o, out, err);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const NewickError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const TaxonMismatchError& e) {
    err << "taxon mismatch: " << e.what() << '\n';
    return kExitTaxa;
  } catch (const TreeError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace mastkit
