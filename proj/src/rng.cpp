#include "seedsel/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "seedsel/errors.hpp"

namespace seedsel {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t state = base_seed + index;
  return splitmix64_next(state);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open_low() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

Tensor Rng::normal_tensor(int height, int width) {
  Tensor out(height, width);
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); i += 2) {
    const double u1 = uniform_open_low();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    v[i] = r * std::cos(theta);
    if (i + 1 < v.size()) v[i + 1] = r * std::sin(theta);
  }
  return out;
}

std::string Rng::serialize() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

Rng Rng::deserialize(const std::string& text) {
  Rng rng;
  std::istringstream is(text);
  is >> rng.engine_;
  if (is.fail()) throw FormatError("malformed RNG state");
  return rng;
}

}  // namespace seedsel
