#include "fedzkp/costs.hpp"

#include "fedzkp/error.hpp"

namespace fedzkp {

double CostReport::memory_mib() const { return to_double(memory_bits) / 8.0 / 1024.0 / 1024.0; }

double CostReport::communication_kib() const { return to_double(communication_bits) / 8.0 / 1024.0; }

CostReport cost_report(std::size_t clients, std::size_t m, std::size_t l, std::size_t d,
                       std::size_t l_com) {
  if (clients == 0 || m == 0 || l == 0 || l_com == 0) {
    throw ParameterError("cost_report: K, m, l and l_com must be positive");
  }
  const BigInt k = clients;
  const BigInt bm = m;
  const BigInt bl = l;
  const BigInt bd = d;
  const BigInt lc = l_com;
  CostReport rep;
  rep.memory_bits = Rational((k * bm + 35 * bd + k + 1) * bl + bm);
  rep.communication_bits =
      Rational(k * bm * bl + k * bl + 3 * bd * lc) + Rational((32 + 3 * bl) * bd * 2, BigInt(3));
  return rep;
}

std::string format_bits(const Rational& bits) {
  if (denominator(bits) == 1) return numerator(bits).str();
  return numerator(bits).str() + "/" + denominator(bits).str();
}

}  // namespace fedzkp
