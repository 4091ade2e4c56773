#include "cdual/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cdual/error.hpp"

namespace cdual {
namespace {

// Additive recurrence x_k = frac(shift + k * alpha) in [0,1)^d, where alpha
// derives from the unique positive root of t^{d+1} = t + 1.
class RecurrenceSequence {
 public:
  RecurrenceSequence(std::size_t d, std::uint64_t seed) : alpha_(d), shift_(d) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(d + 1));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t i = 0; i < d; ++i) {
      alpha_[i] = std::fmod(1.0 / std::pow(phi, static_cast<double>(i + 1)), 1.0);
      shift_[i] = uni(rng);
    }
  }

  Vector at(std::size_t k) const {
    Vector u(alpha_.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double v = shift_[i] + static_cast<double>(k + 1) * alpha_[i];
      u[i] = v - std::floor(v);
    }
    return u;
  }

 private:
  Vector alpha_;
  Vector shift_;
};

// Maps uniforms to n standard normals, two per Box-Muller pair.
Vector gaussians(const Vector& u, std::size_t n) {
  Vector g(n);
  for (std::size_t i = 0; i < n; i += 2) {
    const double u1 = 1.0 - u[i];  // (0, 1]
    const double u2 = u[i + 1];
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    g[i] = r * std::cos(angle);
    if (i + 1 < n) g[i + 1] = r * std::sin(angle);
  }
  return g;
}

std::size_t gaussian_uniforms(std::size_t n) { return 2 * ((n + 1) / 2); }

bool normalize(Vector& v) {
  const double len = norm2(v);
  if (!(len > 1e-300)) return false;
  for (double& c : v) c /= len;
  return true;
}

}  // namespace

std::vector<Vector> sphere_points(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("sphere_points: dimension must be positive");
  if (n == 1) return {Vector{-1.0}, Vector{1.0}};

  const RecurrenceSequence seq(gaussian_uniforms(n), seed);
  std::vector<Vector> pts;
  pts.reserve(count);
  for (std::size_t k = 0; pts.size() < count; ++k) {
    Vector g = gaussians(seq.at(k), n);
    if (normalize(g)) pts.push_back(std::move(g));
  }
  return pts;
}

std::vector<Vector> ball_points(std::size_t n, std::size_t count, double radius,
                                std::uint64_t seed) {
  if (n == 0) throw InvalidInput("ball_points: dimension must be positive");
  if (!(radius > 0.0)) throw InvalidInput("ball_points: radius must be positive");

  std::vector<Vector> pts;
  pts.reserve(count);
  if (n == 1) {
    const RecurrenceSequence seq(1, seed);
    for (std::size_t k = 0; k < count; ++k) pts.push_back({radius * (2.0 * seq.at(k)[0] - 1.0)});
    return pts;
  }

  const std::size_t m = gaussian_uniforms(n);
  const RecurrenceSequence seq(m + 1, seed);
  for (std::size_t k = 0; pts.size() < count; ++k) {
    const Vector u = seq.at(k);
    Vector g = gaussians(u, n);
    if (!normalize(g)) continue;
    const double r = radius * std::pow(u[m], 1.0 / static_cast<double>(n));
    for (double& c : g) c *= r;
    pts.push_back(std::move(g));
  }
  return pts;
}

}  // namespace cdual
