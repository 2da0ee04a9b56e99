#pragma once

// Executable ownership-forgery game between a challenger and an adversary.
//
//   Setup               security parameters fixed
//   Instances Gen       challenger creates q aggregates and their watermarks
//   Phase               adversary observes one honest session per aggregate
//   Adversary Gen       adversary hashes up to k instance sets of its own
//   Challenge 1 (E1)    one of them lands within 2 err_n of a watermark
//   Challenge 2 (E2)    without a witness, adversary passes d rounds on some
//                       challenger public input
//
// The adversary wins if E1 or E2 occurs.

#include <cstddef>
#include <string>
#include <vector>

#include "fedzkp/attacks.hpp"
#include "fedzkp/rng.hpp"

namespace fedzkp {

struct GameConfig {
  std::size_t q = 2;
  std::size_t k = 100;
  std::size_t d = 3;
  ForgeryParams params;
  /// Control run: the adversary is handed the real credentials in Challenge 2.
  bool adversary_has_credential = false;
};

struct GameOutcome {
  bool won_challenge1 = false;
  bool won_challenge2 = false;
  std::size_t queries_used = 0;
  std::size_t instances = 0;
  std::vector<std::string> log;

  bool won() const { return won_challenge1 || won_challenge2; }
};

GameOutcome run_security_game(const GameConfig& config, Rng& rng);

}  // namespace fedzkp
