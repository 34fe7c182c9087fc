#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pliable/cli.hpp"
#include "pliable/errors.hpp"

namespace {

struct Option {
  const char* flag;
  const char* key;
  const char* help;
};

// Every subcommand accepts the options it lists; values stay strings until
// ExperimentSpec::validate parses them.
const std::map<std::string, std::vector<Option>> kOptions{
    {"solve",
     {{"--instance", "instance", "instance JSON file"},
      {"--two-block", "two_block", "use the built-in n-client two-transmission instance"},
      {"--solver", "solver", "decide_l1 | brute | star_forest | rand_trans | two_step | chain_bound"},
      {"--Lmax", "Lmax", "largest code length tried by brute (default 3)"},
      {"--q", "q", "field size for brute (prime, default 2)"},
      {"--c", "c", "override the instance constraint c"}}},
    {"bounds",
     {{"--n", "n", "client counts, comma separated"},
      {"--m", "m", "message counts (default m = n)"},
      {"--p", "p", "edge probabilities (default 0.5)"},
      {"--c", "c", "constraints (default 1)"}}},
    {"patterns",
     {{"--instance", "instance", "search an instance for its largest k-pattern"},
      {"--two-block", "two_block", "use the built-in n-client instance"},
      {"--k", "k", "search only this k"},
      {"--budget", "budget", "node budget per search"},
      {"--n", "n", "tabulate expected pattern counts for these n"},
      {"--m", "m", "message counts (default m = n)"},
      {"--p", "p", "edge probabilities"},
      {"--c", "c", "constraints"}}},
    {"shuffle",
     {{"--config", "config", "shuffle config JSON"}, {"--T", "T", "override iteration count"}}},
    {"compare",
     {{"--config", "config", "shuffle config JSON (default m=500 n=20 s=50 m1=10 r=2 T=8)"},
      {"--T", "T", "override iteration count"},
      {"--outer", "outer", "outer layer: random | recursive | cyclic"}}},
    {"demo",
     {{"--config", "config", "shuffle config JSON (default m=120 n=6 s=20 m1=4 r=2 T=10)"},
      {"--T", "T", "training iterations (0 reports the initial model)"},
      {"--schemes", "schemes", "comma separated subset of none,pliable,random"},
      {"--dim", "dim", "feature dimension"},
      {"--points", "points", "points per message"},
      {"--lr", "lr", "SGD learning rate"}}},
    {"verify-outer",
     {{"--config", "config", "build the outer layer of this config"},
      {"--matrix", "matrix", "JSON file {\"rows\": [[0,1,...],...]}"}}},
};

const std::map<std::string, const char*> kDescriptions{
    {"solve", "run a pliable index coding solver on an instance and verify the scheme"},
    {"bounds", "k0 bracket and RandTrans mean code length on random instances (CSV)"},
    {"patterns", "find k-patterns in an instance or tabulate expected pattern counts"},
    {"shuffle", "run the two-layer shuffle and write per-iteration metrics (CSV)"},
    {"compare", "pliable vs uncoded vs index-coded random shuffling (CSV)"},
    {"demo", "synthetic distributed SGD with and without shuffling (CSV)"},
    {"verify-outer", "check an outer layer for biregularity and the C4-free property"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained pliable index coding and hierarchical data shuffling"};
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::string seeds_text, out;
  for (const auto& [kind, options] : kOptions) {
    auto* sub = app.add_subcommand(kind, kDescriptions.at(kind));
    for (const auto& o : options) sub->add_option(o.flag, values[std::string(kind) + "/" + o.key], o.help);
    sub->add_option("--seed,--seeds", seeds_text, "seed list, e.g. 7 or 1,2,3 or 1-20 (default 0)");
    sub->add_option("--out", out, "output file (default standard output)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pliable::cli::kOk : pliable::cli::kUsage;
  }

  pliable::cli::ExperimentSpec spec;
  spec.kind = app.get_subcommands().front()->get_name();
  spec.out = out;
  for (const auto& o : kOptions.at(spec.kind)) {
    const auto& v = values[spec.kind + "/" + o.key];
    if (app.get_subcommands().front()->count(o.flag) > 0) spec.params[o.key] = v;
  }
  try {
    if (!seeds_text.empty()) spec.seeds = pliable::cli::parse_seeds(seeds_text);
  } catch (const pliable::Error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return pliable::cli::kUsage;
  }
  return pliable::cli::run(spec, std::cout, std::cerr);
}
