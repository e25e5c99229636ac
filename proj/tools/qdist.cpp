// qdist: determinants of tree distance matrices and their q-analogues.
//
//   qdist det        --path 4
//   qdist verify     --exhaustive 5
//   qdist verify     --random 200 --n-max 7 --seed 42
//   qdist perm-table --path 4 --output csv
//   qdist wiener     --star 4
//   qdist gen-tree   --random 6 --max-weight 3 --seed 7
//   qdist enumerate  --exhaustive 4

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdist/cli.hpp"

namespace {

using qdist::cli::RunConfig;
using qdist::cli::TreeSource;
using qdist::cli::UsageError;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::istringstream is(text);
  std::vector<T> out;
  long long v = 0;
  while (is >> v) {
    if (v < 0) throw UsageError(std::string(flag) + ": negative value " + std::to_string(v));
    out.push_back(static_cast<T>(v));
  }
  if (!is.eof()) throw UsageError(std::string(flag) + ": expected whitespace-separated integers, got \"" + text + "\"");
  return out;
}

struct RawOptions {
  std::string tree_file;
  std::string prufer;
  std::size_t random_n = 0;
  std::size_t path_n = 0;
  std::size_t star_n = 0;
  std::size_t exhaustive_n = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::string weights;
  qdist::Weight max_weight = 1;
  std::uint64_t seed = 0;
  std::size_t k_max = 0;
  std::size_t trials = 1;
  std::string output = "plain";
  bool allow_large = false;
};

void add_options(CLI::App* sub, RawOptions& o) {
  sub->add_option("--tree", o.tree_file, "Tree file (text \"n\" + \"u v w\" lines, or JSON)");
  sub->add_option("--prufer", o.prufer, "Pruefer sequence, e.g. \"1 1\"");
  sub->add_option("--random", o.random_n,
                  "Random tree on N vertices; for verify with --n-max, the number of random trees");
  sub->add_option("--path", o.path_n, "Path v1-...-vN");
  sub->add_option("--star", o.star_n, "Star with center vN");
  sub->add_option("--exhaustive", o.exhaustive_n, "Every labeled tree on N vertices (verify/enumerate)");
  sub->add_option("--n-min", o.n_min, "Smallest order in a random sweep (default 2)");
  sub->add_option("--n-max", o.n_max, "Largest order in a random sweep");
  sub->add_option("--weights", o.weights, "Edge weights \"w1 w2 ...\" (one uniform weight for --exhaustive)");
  sub->add_option("--max-weight", o.max_weight, "Largest random edge weight")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Seed for random trees");
  sub->add_option("--k-max", o.k_max, "Last k printed by perm-table");
  sub->add_option("--trials", o.trials, "Number of random trees in a sweep");
  sub->add_option("--output", o.output, "plain | json | csv")->check(CLI::IsMember({"plain", "json", "csv"}));
  sub->add_flag("--allow-large", o.allow_large, "Allow exhaustive n = 8");
}

RunConfig to_config(qdist::cli::Command cmd, const CLI::App& sub, const RawOptions& o) {
  RunConfig cfg;
  cfg.command = cmd;
  auto given = [&](const char* name) { return sub.count(name) > 0; };

  int sources = 0;
  for (const char* s : {"--tree", "--prufer", "--random", "--path", "--star", "--exhaustive"}) sources += given(s) ? 1 : 0;
  if (sources != 1) throw UsageError("exactly one of --tree, --prufer, --random, --path, --star, --exhaustive is required");

  TreeSource& src = cfg.source;
  using Kind = TreeSource::Kind;
  if (given("--tree")) {
    src.kind = Kind::kFile;
    src.file = o.tree_file;
  } else if (given("--prufer")) {
    src.kind = Kind::kPrufer;
    src.prufer = parse_list<qdist::Vertex>(o.prufer, "--prufer");
  } else if (given("--random")) {
    src.kind = Kind::kRandom;
    if (given("--n-max")) {
      // Sweep form: --random COUNT --n-max N.
      if (given("--trials")) throw UsageError("with --n-max, --random gives the tree count; drop --trials");
      cfg.trials = o.random_n;
      src.n_max = o.n_max;
      if (given("--n-min")) src.n_min = o.n_min;
    } else {
      if (given("--n-min")) throw UsageError("--n-min requires --n-max");
      src.n = o.random_n;
      cfg.trials = o.trials;
    }
  } else if (given("--path")) {
    src.kind = Kind::kPath;
    src.n = o.path_n;
  } else if (given("--star")) {
    src.kind = Kind::kStar;
    src.n = o.star_n;
  } else {
    src.kind = Kind::kExhaustive;
    src.n = o.exhaustive_n;
  }
  if (given("--trials") && src.kind != Kind::kRandom) throw UsageError("--trials applies only to --random");
  if (given("--n-max") && src.kind != Kind::kRandom) throw UsageError("--n-max applies only to --random");
  if (given("--weights")) src.weights = parse_list<qdist::Weight>(o.weights, "--weights");
  src.max_weight = o.max_weight;
  src.seed = o.seed;
  if (given("--k-max")) cfg.k_max = o.k_max;
  cfg.output = o.output == "json"  ? qdist::cli::OutputFormat::kJson
               : o.output == "csv" ? qdist::cli::OutputFormat::kCsv
                                   : qdist::cli::OutputFormat::kPlain;
  cfg.allow_large = o.allow_large;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using qdist::cli::Command;
  CLI::App app{"Exact determinants of tree distance matrices and their q-analogues"};
  app.require_subcommand(1);

  RawOptions opts;
  const std::vector<std::pair<const char*, Command>> commands{
      {"det", Command::kDet},           {"verify", Command::kVerify},     {"perm-table", Command::kPermTable},
      {"wiener", Command::kWiener},     {"gen-tree", Command::kGenTree},  {"enumerate", Command::kEnumerate},
  };
  const std::vector<const char*> help{
      "Determinants of D, D+xJ, D*_q, D_q against their closed forms",
      "Run the full identity suite over a sweep of trees",
      "Signed permutation tables N and M: oracle, determinant, closed form",
      "Wiener polynomial and Wiener index",
      "Write a tree in the tree file format",
      "List every labeled tree on N vertices",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    add_options(subs.back(), opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qdist::cli::kUsage;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return qdist::cli::run(to_config(commands[i].second, *subs[i], opts), std::cout, std::cerr);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return qdist::cli::kUsage;
    }
  }
  return qdist::cli::kUsage;
}
