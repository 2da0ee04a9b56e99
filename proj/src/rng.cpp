#include "fedzkp/rng.hpp"

#include <cstdlib>
#include <string>

#include "fedzkp/error.hpp"

namespace fedzkp {

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("FEDZKP_SEED"); s != nullptr && *s != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used, 0);
      if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError("FEDZKP_SEED is not an unsigned integer");
  }
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

}  // namespace fedzkp
