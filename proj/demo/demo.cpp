// Covers one random 180-regular graph on 600 vertices and prints the result.

#include <iostream>

#include "pcover/cover.hpp"
#include "pcover/generators.hpp"
#include "pcover/pipeline.hpp"

int main() {
  using namespace pcover;
  const Rational c(3, 10);
  const int n = 600;
  Graph g = random_regular({n, degree_for(c, n), Family::RandomRegular, 1});

  PipelineConfig cfg;
  cfg.c = c;
  cfg.seed = 1;
  CoverRun run = path_cover(g, cfg);

  std::cout << run.report.to_text() << '\n';
  for (const auto& p : run.cover.paths) std::cout << "path of " << p.size() << " vertices\n";
  std::cout << run.cover.uncovered.size() << " vertices uncovered\n\n";
  std::cout << verify_cover(g, run.cover, {run.report.limit, run.report.max_uncovered}).to_text();
}
