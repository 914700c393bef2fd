#ifndef SYMSPEC_RANDOM_HPP
#define SYMSPEC_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace symspec {

/// Seeded generator with a portable uniform mapping (the standard
/// distributions are implementation-defined, which would break
/// reproducible outputs).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return double(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::complex<double> complex_in_box(double re_max, double im_max) {
    return {uniform(-re_max, re_max), uniform(-im_max, im_max)};
  }
  std::uint64_t bits() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace symspec

#endif
