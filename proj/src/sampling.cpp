#include "weightkit/sampling.hpp"

namespace weightkit {

RingElement random_element(const RingSpec& spec, Rng& rng, long bound) {
  std::uniform_int_distribution<long> small(-bound, bound);
  switch (spec.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
      return spec.from_int(small(rng));
    case RingKind::Rationals: {
      std::uniform_int_distribution<long> den(1, bound);
      return spec.parse_element(std::to_string(small(rng)) + "/" + std::to_string(den(rng)));
    }
    case RingKind::PolyOverPrimeField:
    case RingKind::PolyOverRationals: {
      std::uniform_int_distribution<long> degree(-1, std::max(0L, bound - 1));
      std::uniform_int_distribution<long> coef(-2, 2);
      long d = degree(rng);
      RingElement x = spec.variable();
      RingElement out = spec.zero();
      RingElement power = spec.one();
      for (long k = 0; k <= d; ++k) {
        out += spec.from_int(coef(rng)) * power;
        power *= x;
      }
      return out;
    }
  }
  return spec.zero();
}

Matrix random_matrix(const RingSpec& spec, std::size_t rows, std::size_t cols,
                     Rng& rng, long bound) {
  Matrix m(spec, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(spec, rng, bound);
  return m;
}

}  // namespace weightkit
