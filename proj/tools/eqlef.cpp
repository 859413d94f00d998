// eqlef: verify Lefschetz, averaging, Hochschild, gamma-trace and heat identities.
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

void add_common(CLI::App* app, eqlef::cli::Options& o) {
  app->add_option("--config", o.config, "JSON suite configuration");
  app->add_option("--space", o.space, "cp1 or cp1xcp1");
  app->add_option("--k", o.k, "bundle degree(s), e.g. 2 or 1,3");
  app->add_option("--w", o.w, "linearization weight(s)");
  app->add_option("--group", o.group, "group or element: Z4, Z4^3, F2^1, D4, 1xZ3");
  app->add_option("--op", o.ops, "operator expression, e.g. \"z^2 d^2\" (repeatable)");
  app->add_option("--bound", o.bound, "degree bound (classify: degree,order)");
  app->add_option("--out", o.out, "output file (.json or .csv); suite: path prefix");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eqlef::cli;
  CLI::App app{"Exact and numerical checks of equivariant Lefschetz formulas"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "verify one identity");
  verify->require_subcommand(1);
  auto* lef = verify->add_subcommand("lefschetz", "both sides of the Lefschetz formula");
  auto* avg = verify->add_subcommand("averaging", "invariant trace vs group averages");
  auto* hoch = verify->add_subcommand("hochschild", "generator cycle and boundary certificate");
  auto* gtr = verify->add_subcommand("gtrace", "gamma-twisted trace of an operator");
  auto* heat = verify->add_subcommand("heat", "heat-kernel supertrace over a t schedule");
  auto* cls = app.add_subcommand("classify", "algebraic order and geometricity on C/Z_m");
  auto* sui = app.add_subcommand("suite", "run the configured verification suites");
  for (auto* sub : {lef, avg, hoch, gtr, heat, cls, sui}) add_common(sub, o);
  for (auto* sub : {hoch, gtr, heat}) sub->add_option("--lambda", o.lambda, "N:k or N:k1,k2");
  heat->add_option("--t", o.t, "decreasing t values, e.g. 1e-2,1e-3,1e-4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : config_error;
  }

  try {
    if (*lef) return verify_lefschetz(o, std::cout);
    if (*avg) return verify_averaging(o, std::cout);
    if (*hoch) return verify_hochschild(o, std::cout);
    if (*gtr) return verify_gtrace(o, std::cout);
    if (*heat) return verify_heat(o, std::cout);
    if (*cls) return classify(o, std::cout);
    if (*sui) return suite(o, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config_error;
  }
  return config_error;
}
