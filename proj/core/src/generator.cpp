#include <cmath>
#include <numbers>

#include "rhdt/error.hpp"
#include "rhdt/runtime.hpp"

namespace rhdt {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += kGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr int kRoundPlaces = 6;

struct ValueAt {
  std::int64_t tick;
  std::int64_t index;
  std::uint64_t stream;

  Decimal operator()(const ConstantGenerator& g) const { return g.value; }

  Decimal operator()(const RampGenerator& g) const {
    return g.start + g.slope * Decimal(tick);
  }

  Decimal operator()(const SineGenerator& g) const {
    // Reduce the phase in integers so the libm argument stays small.
    const double phase = static_cast<double>(tick % g.period) /
                         static_cast<double>(g.period);
    const double wave = std::sin(2.0 * std::numbers::pi * phase);
    return g.mean + Decimal::from_double(g.amplitude.to_double() * wave,
                                         kRoundPlaces);
  }

  Decimal operator()(const ListGenerator& g) const {
    const auto last = static_cast<std::int64_t>(g.values.size()) - 1;
    return g.values[static_cast<std::size_t>(std::min(index, last))];
  }

  Decimal operator()(const NoisyGenerator& g) const {
    const Decimal base = g.inner->value_at(tick, index, stream);
    // Two draws per sample: jump straight to draw 2*index.
    SplitMix64 rng((stream ^ g.seed) +
                   2 * static_cast<std::uint64_t>(index) * SplitMix64::kGamma);
    const double u1 = 1.0 - rng.next_unit();  // (0, 1]
    const double u2 = rng.next_unit();
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return base + Decimal::from_double(g.stddev.to_double() * z, kRoundPlaces);
  }
};

struct Validate {
  void operator()(const ConstantGenerator&) const {}
  void operator()(const RampGenerator&) const {}
  void operator()(const SineGenerator& g) const {
    if (g.period < 1) throw Error(Errc::ConfigError, "sine period must be >= 1");
  }
  void operator()(const ListGenerator& g) const {
    if (g.values.empty()) {
      throw Error(Errc::ConfigError, "list generator needs at least one value");
    }
  }
  void operator()(const NoisyGenerator& g) const {
    if (!g.inner) throw Error(Errc::ConfigError, "noisy generator needs an inner generator");
    if (g.stddev.is_negative()) {
      throw Error(Errc::ConfigError, "noisy stddev must be >= 0");
    }
    g.inner->validate();
  }
};

}  // namespace

Decimal Generator::value_at(std::int64_t tick, std::int64_t sample_index,
                            std::uint64_t stream) const {
  return std::visit(ValueAt{tick, sample_index, stream}, spec);
}

void Generator::validate() const { std::visit(Validate{}, spec); }

}  // namespace rhdt
