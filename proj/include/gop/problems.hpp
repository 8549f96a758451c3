#ifndef GOP_PROBLEMS_HPP
#define GOP_PROBLEMS_HPP

#include "gop/core.hpp"

#include <vector>

namespace gop {

struct Problem {
  std::string name;
  ObjectiveSpec objective;
  std::optional<std::pair<Vector, double>> reference_minimum;
};

/// Sum-of-squares misfit for the two-exponential decay model
/// F(theta)(t) = theta1 exp(-theta2 t) + theta3 exp(-theta4 t) sampled at
/// t = 0, 0.1, ..., 2.0, with data generated from the true parameters plus
/// optional seeded uniform noise in [-eps, eps]. Domain [0, 5]^4. Swapping the
/// two exponential terms leaves the misfit unchanged, so the problem is
/// multimodal by construction.
Problem expfit_inverse(double a1, double b1, double a2, double b2,
                       double noise_eps = 0.0, std::uint64_t noise_seed = 0);

/// branin, sixhump_camel, sphere1/sphere2/sphere5, expfit_inverse.
/// noise_eps and noise_seed only affect expfit_inverse.
std::vector<Problem> builtin_problems(double noise_eps = 0.0,
                                      std::uint64_t noise_seed = 0);

Problem find_problem(const std::string& name, double noise_eps = 0.0,
                     std::uint64_t noise_seed = 0);

}  // namespace gop

#endif  // GOP_PROBLEMS_HPP
