// Command-line front end; all work happens in nervekit::cli::run.
#include "nervekit/cli.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  using nervekit::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Nerves of open covers: complexity, homology and growth under dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "Thread cap (computations currently run on one thread)");
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--budget", cfg.budget, "Largest cover searched exhaustively for S_k and Dim");

  auto* nerve = app.add_subcommand("nerve", "Nerve of a cover");
  nerve->add_option("--cover", cfg.cover_path, "Cover JSON")->required();
  nerve->add_option("--max-dim", cfg.max_dim, "Highest simplex dimension enumerated (default: all)");

  auto* homology = app.add_subcommand("homology", "Betti numbers of the nerve");
  homology->add_option("--cover", cfg.cover_path, "Cover JSON")->required();
  homology->add_option("--max-dim", cfg.max_dim, "Highest simplex dimension enumerated (default: all)");
  homology->add_option("--coefficients", cfg.coefficients, "rational, mod2 or both");

  auto* red = app.add_subcommand("reduce", "Irreducible subcover and S_k / Dim estimates");
  red->add_option("--cover", cfg.cover_path, "Cover JSON")->required();
  red->add_option("--k", cfg.k, "Largest k for S_k");

  auto* grow = app.add_subcommand("grow", "Growth table along Folner boxes");
  grow->add_option("--system", cfg.system, "doubling:k, times:k[:b], product:k1,k2, matrix:a,b;c,d, cat, shift:c0,c1")
      ->required();
  grow->add_option("--cover", cfg.cover_path, "Cover JSON");
  grow->add_option("--stages", cfg.stages, "Number of stages");
  grow->add_option("--k", cfg.k, "Largest k for G_k, S_k and ent_k");
  grow->add_option("--control", cfg.control, "standard, logarithmic or custom:c1,c2,...");
  grow->add_option("--resolution", cfg.resolution, "Grid resolution for matrix actions");
  grow->add_option("--member-cap", cfg.member_cap, "Abort stages beyond this many members");

  auto* bounds = app.add_subcommand("bounds", "Space-form volume bounds");
  bounds->add_option("--lambda", cfg.lambda, "Ricci lower bound constant")->required();
  bounds->add_option("--dim", cfg.dim, "Manifold dimension (at least 2)");
  bounds->add_option("--diameter", cfg.diameter, "Diameter bound")->required();
  bounds->add_option("--epsilon", cfg.epsilon, "Expansivity constant");
  bounds->add_option("--ent0", cfg.ent0, "Entropy ent_0");
  bounds->add_option("--generator-size", cfg.generator_size, "Generator cardinality for the sandwich check");
  bounds->add_option("--clamp", cfg.clamp, "standard or scaled diameter clamp");

  auto* realize = app.add_subcommand("realize", "Vertex metric, realization and Gromov-Hausdorff bound");
  realize->add_option("--cover", cfg.cover_path, "Cover JSON")->required();
  realize->add_option("--samples", cfg.sample_resolution, "Sample points per axis for the partition of unity");

  auto* example = app.add_subcommand("example", "Shipped scenarios");
  auto* run = example->add_subcommand("run", "Run a scenario");
  example->require_subcommand(1);
  example->fallthrough();
  run->add_option("name", cfg.example,
                  "doubling, doubling-skeleton, three-arcs, torus-boxes, product-doubling, cat-map, prismatic, pyramid, shift")
      ->required();
  run->add_option("--stages", cfg.stages, "Number of stages");
  run->add_option("--k", cfg.k, "Largest k");
  run->add_option("--max-dim", cfg.max_dim, "Highest simplex dimension enumerated (default: all)");
  run->add_option("--resolution", cfg.resolution, "Grid resolution");
  run->add_option("--g0", cfg.g0, "Members of the prismatic cover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return nervekit::cli::run(cfg);
}
