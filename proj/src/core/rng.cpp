#include "core/rng.hpp"

namespace condlab {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::mt19937_64 eng(master + 0x9e3779b97f4a7c15ULL * (index + 1));
  eng.discard(3);
  return eng();
}

}  // namespace condlab
