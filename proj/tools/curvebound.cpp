#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "curvebound/error.hpp"
#include "curvebound/report.hpp"

using namespace curvebound;

int main(int argc, char** argv) {
  CLI::App app{"Curvature, isoperimetry and eigenvalue bounds on finite graphs"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  RunConfig config;
  std::string laziness = "1/2";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("source", config.source, "graph file or gen:<family>:<params>")->required();
    sub->add_option("--laziness", laziness, "lazy walk holding probability p/q in [0,1)");
    sub->add_option("--format", config.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--seed", config.seed, "seed for sampled checks");
    sub->add_option("--max-dense", config.max_dense, "largest graph for the dense eigensolver");
  };
  auto add_cut = [&](CLI::App* sub) {
    sub->add_option("--envelope", config.envelope, "curvature | empirical | constant | file:<csv>");
    sub->add_option("--sigma", config.sigma, "auto | middle-slice | sphere:<x>,<r> | <vertex file>");
  };

  auto* curvature = app.add_subcommand("curvature", "per-edge Ollivier curvature as exact fractions");
  add_common(curvature);
  curvature->add_flag("--interior-only", config.interior_only, "skip edges near boundary vertices");

  auto* cheeger = app.add_subcommand("cheeger", "isoperimetric constant with witness");
  add_common(cheeger);
  cheeger->add_option("--kind", config.kind, "edge | inner | outer")
      ->check(CLI::IsMember({"edge", "inner", "outer"}));
  cheeger->add_option("--n", config.order, "number of partition cells for h_out(n)")
      ->check(CLI::Range(1, 64));

  auto* shells = app.add_subcommand("shells", "shell sizes around a cut set and the growth envelope");
  add_common(shells);
  add_cut(shells);

  auto* bound = app.add_subcommand("bound", "eigenvalue upper bounds against the true spectrum");
  add_common(bound);
  add_cut(bound);

  auto* spectrum = app.add_subcommand("spectrum", "normalized Laplacian spectrum");
  add_common(spectrum);

  auto* verify = app.add_subcommand("verify", "full pipeline with one verdict per checked inequality");
  add_common(verify);
  add_cut(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    config.laziness = parse_rational(laziness);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  ReportDocument doc = run_command(config);
  try {
    std::cout << render(doc, config.format);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (doc.sections.contains("error"))
    std::cerr << doc.sections["error"]["message"].get<std::string>() << "\n";
  return doc.exit_code;
}
