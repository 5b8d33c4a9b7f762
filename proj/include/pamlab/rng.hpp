#pragma once

#include <cstdint>
#include <vector>

namespace pamlab {

// Counter-based splittable random stream. Each (seed, stream_id) pair owns an
// independent sequence; advancing is a pure function of the counter, so a
// stream can be copied and replayed. Single-owner: do not sample one stream
// from two threads.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t u64();
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return id_; }

  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1]
  std::int64_t uniform_int(std::int64_t bound);  // unbiased on [0, bound)

  double exponential();  // rate 1
  double laplace();      // density exp(-|x|)/2
  double normal();
  double gamma(double shape, double rate);
  double beta(double alpha, double beta);

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
  std::uint64_t ctr_;
  std::uint64_t seed_;
  std::uint64_t id_;
};

RngStream make_stream(std::uint64_t seed, std::uint64_t stream_id);

// Points of an inhomogeneous Poisson process on [parent_mark, 1] with
// intensity rho(x) = gamma_value * (1-chi) * x^(-chi) * parent_mark^(chi-1),
// sampled by inverting the cumulative intensity
// Lambda(x) = gamma_value * (x^(1-chi) - parent_mark^(1-chi)) * parent_mark^(chi-1).
// Returned sorted ascending.
std::vector<double> sample_ppt_points(RngStream& s, double gamma_value,
                                      double parent_mark, double chi);

}  // namespace pamlab
