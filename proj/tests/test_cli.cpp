#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "helpers.hpp"
#include "mastkit/cli.hpp"

using namespace mastkit;
using namespace mastkit::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("mastkit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
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

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("cli construct") {
  TempDir dir;
  const std::string same = write_newick(random_tree(30, 2));
  const auto a = dir.write("a.nwk", same);
  const auto b = dir.write("b.nwk", same);
  Run r = run({"construct", "--t1", a, "--t2", b});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("verified: true") != std::string::npos);

  // Adversarial pair, weak construction, size at least the printed bound.
  const auto gen = run({"gen", "--model", "adversarial", "--n", "64", "--seed", "4"});
  REQUIRE(gen.code == kExitOk);
  const auto trees = lines_of(gen.out);
  REQUIRE(trees.size() == 2);
  const auto t1 = dir.write("bal.nwk", trees[0]);
  const auto t2 = dir.write("cat.nwk", trees[1]);
  r = run({"construct", "--t1", t1, "--t2", t2, "--algorithm", "weak", "--json"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"verified\": true") != std::string::npos);
  const auto size_at = r.out.find("\"size\": ");
  const auto bound_at = r.out.find("\"claimed_bound\": ");
  REQUIRE(size_at != std::string::npos);
  REQUIRE(bound_at != std::string::npos);
  const double size = std::stod(r.out.substr(size_at + 8));
  const double bound = std::stod(r.out.substr(bound_at + 17));
  CHECK(size >= std::ceil(bound));

  const auto small1 = dir.write("s1.nwk", "(1,2,3);");
  const auto small2 = dir.write("s2.nwk", "(3,2,1);");
  r = run({"construct", "--t1", small1, "--t2", small2});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("size: 3") != std::string::npos);
  CHECK(r.out.find("trivial_small_input") != std::string::npos);
}

TEST_CASE("cli construct errors") {
  TempDir dir;
  const auto q = dir.write("q.nwk", "(1,2,(3,4));");
  const auto other = dir.write("o.nwk", "(1,2,(3,5));");
  const auto bad = dir.write("bad.nwk", "((1,2),3;");
  CHECK(run({"construct", "--t1", q, "--t2", other}).code == kExitTaxa);
  const Run parse = run({"construct", "--t1", bad, "--t2", q});
  CHECK(parse.code == kExitParse);
  CHECK(parse.err.find("offset 8") != std::string::npos);
  CHECK(run({"construct", "--t1", dir.path("missing.nwk"), "--t2", q}).code == kExitParse);
  CHECK(run({"construct", "--t1", q}).code == kExitParse);
  CHECK(run({"construct", "--t1", q, "--t2", q, "--algorithm", "fast"}).code == kExitParse);
  CHECK(run({"construct", "--t1", q, "--t2", q, "--C", "3"}).code == kExitParse);
  CHECK(run({}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli exact") {
  TempDir dir;
  const auto q1 = dir.write("q1.nwk", "(1,2,(3,4));");
  const auto q2 = dir.write("q2.nwk", "(1,3,(2,4));");
  Run r = run({"exact", "--t1", q1, "--t2", q2});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("size: 3") != std::string::npos);
  r = run({"exact", "--t1", q1, "--t2", q2, "--method", "brute"});
  CHECK(r.out.find("size: 3") != std::string::npos);

  const auto t = dir.write("t.nwk", write_newick(random_tree(12, 1)));
  r = run({"exact", "--t1", t, "--t2", t});
  CHECK(r.out.find("size: 12") != std::string::npos);
  CHECK(run({"exact", "--t1", t, "--t2", t, "--method", "brute"}).code == kExitCap);
  CHECK(run({"exact", "--t1", t, "--t2", t, "--cap", "11"}).code == kExitCap);

  const auto r1 = dir.write("r1.nwk", "((1,2),3);");
  const auto r2 = dir.write("r2.nwk", "((1,3),2);");
  r = run({"exact", "--t1", r1, "--t2", r2, "--rooted", "--json"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"size\": 2") != std::string::npos);
  CHECK(r.out.find("\"kind\": \"rooted_mast\"") != std::string::npos);
}

TEST_CASE("cli verify") {
  TempDir dir;
  const auto q1 = dir.write("q1.nwk", "(1,2,(3,4));");
  const auto q2 = dir.write("q2.nwk", "(1,3,(2,4));");
  CHECK(run({"verify", "--t1", q1, "--t2", q2, "--taxa", "1,2,3"}).code == kExitOk);
  CHECK(run({"verify", "--t1", q1, "--t2", q2, "--taxa", "1,2,3,4"}).code == kExitDisagree);
  CHECK(run({"verify", "--t1", q1, "--t2", q2, "--taxa", "1,9"}).code == kExitTaxa);
  const auto r1 = dir.write("r1.nwk", "((1,2),3);");
  const auto r2 = dir.write("r2.nwk", "((1,3),2);");
  CHECK(run({"verify", "--t1", r1, "--t2", r2, "--taxa", "1,2,3", "--rooted"}).code ==
        kExitDisagree);
}

TEST_CASE("cli gen") {
  TempDir dir;
  const Run a = run({"gen", "--model", "uniform", "--n", "20", "--seed", "9"});
  const Run b = run({"gen", "--model", "uniform", "--n", "20", "--seed", "9"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(parse_unrooted_newick(a.out).leaf_count() == 20);
  CHECK(run({"gen", "--model", "balanced", "--n", "12"}).code == kExitParse);
  CHECK(run({"gen", "--model", "yule", "--n", "12"}).code == kExitParse);

  const auto file = dir.path("cat.nwk");
  CHECK(run({"gen", "--model", "caterpillar", "--n", "6", "--out", file}).code == kExitOk);
  CHECK(is_caterpillar(parse_unrooted_newick(slurp(file))));

  ::setenv("MASTKIT_SEED", "9", 1);
  const Run env = run({"gen", "--model", "uniform", "--n", "20"});
  ::unsetenv("MASTKIT_SEED");
  CHECK(env.out == a.out);
}

TEST_CASE("cli experiment") {
  TempDir dir;
  const auto csv = dir.path("grid.csv");
  Run r = run({"experiment", "--n-min", "8", "--n-max", "8", "--trials", "1", "--model",
               "adversarial", "--out", csv});
  REQUIRE(r.code == kExitOk);
  auto rows = lines_of(slurp(csv));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "n,seed,generator,algorithm,size,kind,branch,verified,millis");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].find(",true,0") != std::string::npos);
    CHECK(rows[i].rfind("8,", 0) == 0);
  }

  // Repeated runs are byte-identical, and the file is rewritten, not appended.
  const std::vector<std::string> grid{"experiment", "--n-min", "8", "--n-max", "32",
                                      "--trials", "2", "--model", "uniform,adversarial",
                                      "--seed", "5", "--out", csv, "--json"};
  const Run first = run(grid);
  const std::string first_csv = slurp(csv);
  const Run second = run(grid);
  CHECK(first.code == kExitOk);
  CHECK(first.out == second.out);
  CHECK(first_csv == slurp(csv));
  CHECK(lines_of(first_csv).size() == 1 + 3 * 2 * 2 * 3);

  CHECK(run({"experiment", "--n-min", "2", "--out", csv}).code == kExitParse);
  CHECK(run({"experiment", "--n-min", "12", "--n-max", "12", "--model", "adversarial", "--out",
             csv})
            .code == kExitParse);
  CHECK(run({"experiment", "--out", dir.path("no/such/dir/x.csv")}).code == kExitParse);
}
