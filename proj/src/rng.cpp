#include "pamlab/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pamlab {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), id_(stream_id) {
  state_ = mix64(seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1));
  // per-stream odd increment, so streams walk distinct orbits
  inc_ = mix64(state_ ^ 0xD1B54A32D192ED03ULL) | 1ULL;
  ctr_ = 0;
}

std::uint64_t RngStream::u64() {
  return mix64(state_ + inc_ * ++ctr_);
}

double RngStream::uniform() {
  return static_cast<double>(u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::int64_t RngStream::uniform_int(std::int64_t bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_int: bound must be positive");
  const auto n = static_cast<std::uint64_t>(bound);
  std::uint64_t x, r;
  do {
    x = u64();
    r = x % n;
  } while (x - r > std::numeric_limits<std::uint64_t>::max() - (n - 1));
  return static_cast<std::int64_t>(r);
}

double RngStream::exponential() { return -std::log(uniform_pos()); }

double RngStream::laplace() {
  const double e = exponential();
  return (u64() & 1ULL) ? e : -e;
}

double RngStream::normal() {
  // Marsaglia polar, second coordinate discarded
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("gamma: shape and rate must be positive");
  if (shape < 1.0) {
    // boost to shape+1, then scale by U^(1/shape)
    const double g = gamma(shape + 1.0, 1.0);
    return g * std::pow(uniform_pos(), 1.0 / shape) / rate;
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double RngStream::beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("beta: parameters must be positive");
  const double x = gamma(alpha, 1.0);
  const double y = gamma(beta, 1.0);
  return x / (x + y);
}

RngStream make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RngStream(seed, stream_id);
}

std::vector<double> sample_ppt_points(RngStream& s, double gamma_value,
                                      double parent_mark, double chi) {
  if (!(parent_mark > 0.0) || !(parent_mark < 1.0))
    throw std::invalid_argument("sample_ppt_points: parent_mark must lie in (0,1)");
  if (!(chi > 0.0) || !(chi < 1.0))
    throw std::invalid_argument("sample_ppt_points: chi must lie in (0,1)");
  if (gamma_value < 0.0)
    throw std::invalid_argument("sample_ppt_points: gamma_value must be nonnegative");

  std::vector<double> points;
  if (gamma_value == 0.0) return points;
  const double a = parent_mark;
  const double scale = gamma_value * std::pow(a, chi - 1.0);
  const double total = scale * (1.0 - std::pow(a, 1.0 - chi));
  // unit-rate arrivals in cumulative-intensity time, mapped back through
  // Lambda^{-1}(t) = (t/scale + a^(1-chi))^(1/(1-chi))
  double t = s.exponential();
  while (t < total) {
    points.push_back(std::pow(t / scale + std::pow(a, 1.0 - chi), 1.0 / (1.0 - chi)));
    t += s.exponential();
  }
  return points;
}

}  // namespace pamlab
