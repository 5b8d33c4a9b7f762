#include <CLI11.hpp>

#include "pamlab/cli_lib.hpp"

using pamlab::RunConfig;

namespace {

void add_model_flags(CLI::App* cmd, RunConfig& c, std::string& variant,
                     std::string& construction) {
  cmd->add_option("--variant", variant, "model variant: a, b or d");
  cmd->add_option("--construction", construction, "seq or urn");
  cmd->add_option("--n", c.n, "vertex count");
  cmd->add_option("--m", c.m, "out-degree");
  cmd->add_option("--delta", c.delta, "fitness parameter");
}

void add_common_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--seed", c.seed, "rng seed");
  cmd->add_option("--stream", c.stream, "rng stream id");
  cmd->add_option("--out", c.output, "output file (default stdout; PAMLAB_OUT prefixes relative paths)");
  cmd->add_option("--format", c.format, "csv or json");
  cmd->add_option("--threads", c.threads, "worker cap for Monte Carlo loops");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preferential attachment graph laboratory"};
  app.require_subcommand(1);

  RunConfig c;
  std::string variant = "d";
  std::string construction = "seq";

  auto* gen = app.add_subcommand("generate", "write a graph file");
  add_model_flags(gen, c, variant, construction);
  add_common_flags(gen, c);

  auto* spectrum = app.add_subcommand("spectrum", "kernel spectral radius estimates");
  spectrum->add_option("--m", c.m);
  spectrum->add_option("--delta", c.delta);
  spectrum->add_option("--grid", c.grid, "cells per type");
  spectrum->add_option("--zeta", c.zeta);
  spectrum->add_option("--mode", c.mode, "plain | trunc | tilde | augmented | curve");
  add_common_flags(spectrum, c);

  auto* walk = app.add_subcommand("walk", "confined-walk Monte Carlo estimators");
  walk->add_option("--m", c.m);
  walk->add_option("--delta", c.delta);
  walk->add_option("--zeta", c.zeta);
  walk->add_option("--k", c.k, "step count");
  walk->add_option("--reps", c.reps);
  add_common_flags(walk, c);

  auto* dist = app.add_subcommand("distances", "typical distance statistics");
  add_model_flags(dist, c, variant, construction);
  dist->add_option("--pairs", c.pairs);
  add_common_flags(dist, c);

  auto* scaling = app.add_subcommand("scaling", "distance growth across sizes");
  add_model_flags(scaling, c, variant, construction);
  scaling->add_option("--pairs", c.pairs);
  scaling->add_option("--sizes", c.n_list, "list of graph sizes")->delimiter(',');
  add_common_flags(scaling, c);

  auto* ppt = app.add_subcommand("ppt", "sample the limiting random tree");
  ppt->add_option("--m", c.m);
  ppt->add_option("--delta", c.delta);
  ppt->add_option("--depth", c.depth);
  ppt->add_option("--cap", c.cap, "node cap");
  add_common_flags(ppt, c);

  auto* validate = app.add_subcommand("validate", "cross-oracle consistency suite");
  validate->add_flag("--quick", c.quick, "smaller replica counts");
  validate->add_option("--seed", c.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    c.variant = pamlab::variant_from_letter(variant.at(0));
  } catch (const std::exception&) {
    std::fprintf(stderr, "unknown variant '%s'\n", variant.c_str());
    return 2;
  }
  c.construction = construction == "urn" ? pamlab::Construction::urn
                                         : pamlab::Construction::sequential;
  for (auto* sub : {gen, spectrum, walk, dist, scaling, ppt, validate})
    if (sub->parsed()) c.command = sub->get_name();
  return pamlab::run(c);
}
