#pragma once

#include <random>
#include <vector>

#include "ordyn/simple_function.hpp"

namespace ordyn::testsupport {

// Random finitely supported function: up to max_pts support points in
// [-50, 50]^arity, real amplitudes in [-5, 5] bounded away from zero.
inline SimpleFunction random_function(const GroupSpace& G, std::mt19937& rng,
                                      int max_pts = 8) {
  std::uniform_int_distribution<int> n_pts(1, max_pts);
  std::uniform_int_distribution<std::int64_t> coord(-50, 50);
  std::uniform_real_distribution<double> amp(-5.0, 5.0);
  std::vector<SimpleFunction::Atom> atoms;
  const int n = n_pts(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> c(G.arity());
    for (auto& x : c) x = coord(rng);
    double a = amp(rng);
    if (std::fabs(a) < 0.05) a = a < 0 ? -0.05 : 0.05;
    atoms.emplace_back(G.make(c), a);
  }
  return SimpleFunction(G, std::move(atoms));
}

}  // namespace ordyn::testsupport
