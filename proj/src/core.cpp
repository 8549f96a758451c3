#include "gop/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gop {

BoxDomain::BoxDomain(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() < 1 || lower_.size() != upper_.size()) {
    throw Error(ErrorCode::invalid_argument, "BoxDomain: bad dimensions");
  }
  for (int j = 0; j < dim(); ++j) {
    if (!(lower_[j] < upper_[j])) {
      throw Error(ErrorCode::invalid_argument,
                  "BoxDomain: lower[" + std::to_string(j) + "] >= upper");
    }
  }
}

BoxDomain BoxDomain::unit_cube(int dim) {
  return BoxDomain(Vector::Zero(dim), Vector::Ones(dim));
}

bool BoxDomain::contains(const Vector& x) const {
  if (x.size() != lower_.size()) return false;
  for (int j = 0; j < dim(); ++j) {
    if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
  }
  return true;
}

Vector BoxDomain::clamp(const Vector& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

Vector BoxDomain::to_unit(const Vector& x) const {
  return (x - lower_).cwiseQuotient(upper_ - lower_);
}

Vector BoxDomain::from_unit(const Vector& u) const {
  return lower_ + u.cwiseProduct(upper_ - lower_);
}

SampleSet::SampleSet(BoxDomain domain)
    : domain_(std::move(domain)),
      points_(0, domain_.dim()),
      values_(0) {}

SampleSet SampleSet::add(const Vector& x, double fx) const {
  if (x.size() != domain_.dim()) {
    throw Error(ErrorCode::invalid_argument, "add: dimension mismatch");
  }
  if (!domain_.contains(x)) {
    throw Error(ErrorCode::invalid_argument, "add: point outside domain");
  }
  if (min_distance_to(x) <= duplicate_tolerance()) {
    throw Error(ErrorCode::duplicate_point,
                "add: point coincides with an existing sample");
  }
  SampleSet out(*this);
  out.points_.conservativeResize(size() + 1, Eigen::NoChange);
  out.points_.row(size()) = x.transpose();
  out.values_.conservativeResize(size() + 1);
  out.values_[size()] = fx;
  return out;
}

double SampleSet::min_value() const {
  if (empty()) throw Error(ErrorCode::invalid_argument, "min_value: empty set");
  return values_.minCoeff();
}

double SampleSet::max_value() const {
  if (empty()) throw Error(ErrorCode::invalid_argument, "max_value: empty set");
  return values_.maxCoeff();
}

double SampleSet::min_distance_to(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    best = std::min(best, (points_.row(i).transpose() - x).norm());
  }
  return best;
}

Matrix latin_hypercube(int n, const BoxDomain& domain, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "latin_hypercube: n < 1");
  const int d = domain.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix out(n, d);
  std::vector<int> strata(n);
  for (int j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), 0);
    std::shuffle(strata.begin(), strata.end(), rng);
    const double lo = domain.lower()[j];
    const double width = (domain.upper()[j] - domain.lower()[j]) / n;
    for (int i = 0; i < n; ++i) {
      out(i, j) = lo + (strata[i] + unif(rng)) * width;
    }
  }
  return out;
}

double fill_distance(const SampleSet& set, const BoxDomain& domain,
                     int grid_resolution) {
  if (set.empty()) {
    throw Error(ErrorCode::invalid_argument, "fill_distance: empty set");
  }
  if (grid_resolution < 1) {
    throw Error(ErrorCode::invalid_argument, "fill_distance: resolution < 1");
  }
  const int d = domain.dim();
  const int res = grid_resolution;
  Vector probe(d);
  std::vector<int> idx(d, 0);
  double worst = 0.0;
  while (true) {
    for (int j = 0; j < d; ++j) {
      const double t = (res == 1) ? 0.5 : static_cast<double>(idx[j]) / (res - 1);
      probe[j] = domain.lower()[j] + t * (domain.upper()[j] - domain.lower()[j]);
    }
    worst = std::max(worst, set.min_distance_to(probe));
    int j = 0;
    while (j < d && ++idx[j] == res) {
      idx[j] = 0;
      ++j;
    }
    if (j == d) break;
  }
  return worst;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gop
