#include "gop/problems.hpp"

#include <cmath>
#include <random>

namespace gop {

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Problem branin_problem() {
  auto f = [](const Vector& x) {
    const double a = 1.0, b = 5.1 / (4.0 * M_PI * M_PI), c = 5.0 / M_PI;
    const double r = 6.0, s = 10.0, t = 1.0 / (8.0 * M_PI);
    const double inner = x[1] - b * x[0] * x[0] + c * x[0] - r;
    return a * inner * inner + s * (1.0 - t) * std::cos(x[0]) + s;
  };
  BoxDomain domain(vec2(-5.0, 0.0), vec2(10.0, 15.0));
  Problem p{"branin", ObjectiveSpec{f, domain, 0.397887}, {}};
  p.reference_minimum = {{vec2(M_PI, 2.275), 0.397887}};
  return p;
}

Problem sixhump_problem() {
  auto f = [](const Vector& x) {
    const double x1 = x[0], x2 = x[1];
    return (4.0 - 2.1 * x1 * x1 + std::pow(x1, 4) / 3.0) * x1 * x1 +
           x1 * x2 + (-4.0 + 4.0 * x2 * x2) * x2 * x2;
  };
  BoxDomain domain(vec2(-3.0, -2.0), vec2(3.0, 2.0));
  Problem p{"sixhump_camel", ObjectiveSpec{f, domain, -1.0316}, {}};
  p.reference_minimum = {{vec2(0.0898, -0.7126), -1.0316}};
  return p;
}

Problem sphere_problem(int d) {
  auto f = [](const Vector& x) { return x.squaredNorm(); };
  BoxDomain domain(Vector::Constant(d, -5.12), Vector::Constant(d, 5.12));
  Problem p{"sphere" + std::to_string(d), ObjectiveSpec{f, domain, 0.0}, {}};
  p.reference_minimum = {{Vector::Zero(d), 0.0}};
  return p;
}

}  // namespace

Problem expfit_inverse(double a1, double b1, double a2, double b2,
                       double noise_eps, std::uint64_t noise_seed) {
  if (!(b1 > 0.0) || !(b2 > 0.0) || b1 == b2) {
    throw Error(ErrorCode::invalid_argument,
                "expfit_inverse: need b1 != b2, both positive");
  }
  const int m = 21;
  std::vector<double> times(m), data(m);
  std::mt19937_64 rng(noise_seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < m; ++i) {
    times[i] = 0.1 * i;
    data[i] = a1 * std::exp(-b1 * times[i]) + a2 * std::exp(-b2 * times[i]);
    if (noise_eps > 0.0) data[i] += noise_eps * unif(rng);
  }
  auto f = [times, data, m](const Vector& th) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double model = th[0] * std::exp(-th[1] * times[i]) +
                           th[2] * std::exp(-th[3] * times[i]);
      const double r = model - data[i];
      sum += r * r;
    }
    return sum;
  };
  BoxDomain domain(Vector::Zero(4), Vector::Constant(4, 5.0));
  Problem p{"expfit_inverse", ObjectiveSpec{f, domain, {}}, {}};
  if (noise_eps == 0.0) {
    Vector truth(4);
    truth << a1, b1, a2, b2;
    p.objective.known_minimum = 0.0;
    p.reference_minimum = {{truth, 0.0}};
  }
  return p;
}

std::vector<Problem> builtin_problems(double noise_eps,
                                      std::uint64_t noise_seed) {
  std::vector<Problem> out;
  out.push_back(branin_problem());
  out.push_back(sixhump_problem());
  out.push_back(sphere_problem(1));
  out.push_back(sphere_problem(2));
  out.push_back(sphere_problem(5));
  // Default truth: well separated decay rates inside [0, 5]^4.
  out.push_back(expfit_inverse(1.5, 3.0, 2.5, 0.5, noise_eps, noise_seed));
  return out;
}

Problem find_problem(const std::string& name, double noise_eps,
                     std::uint64_t noise_seed) {
  for (auto& p : builtin_problems(noise_eps, noise_seed)) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::invalid_argument, "unknown problem: " + name);
}

}  // namespace gop
