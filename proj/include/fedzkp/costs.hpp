#pragma once

// Closed-form storage and traffic of one ownership verification.
//
//   memory bits = (K m + 35 d + K + 1) l + m
//   comm bits   = K m l + K l + 3 d l_com + (32 + 3 l) d 2/3
//
// The permutation is counted as 32 l bits.

#include <cstddef>
#include <string>

#include "fedzkp/bounds.hpp"

namespace fedzkp {

struct CostReport {
  Rational memory_bits;
  Rational communication_bits;

  double memory_mib() const;
  double communication_kib() const;
};

/// Throws ParameterError unless K, m, l and l_com are positive.
CostReport cost_report(std::size_t clients, std::size_t m, std::size_t l, std::size_t d,
                       std::size_t l_com);

/// Integers print plainly, other values as "a/b".
std::string format_bits(const Rational& bits);

}  // namespace fedzkp
