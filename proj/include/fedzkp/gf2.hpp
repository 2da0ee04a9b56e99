#pragma once

// Dense linear algebra over GF(2).
//
// Bits are word-packed, least significant bit first inside each 64-bit word;
// bits past the logical length are always zero. Matrices are row-major with a
// per-row word stride. Indices are 0-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedzkp/rng.hpp"

namespace fedzkp {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len);

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVec from_string(std::string_view bits);
  static BitVec random(std::size_t len, Rng& rng);
  static BitVec ones(std::size_t len);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  BitVec complement() const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec lhs, const BitVec& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value);

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {words_.data() + r * stride_, stride_};
  }
  BitVec row(std::size_t r) const;
  void set_row(std::size_t r, const BitVec& v);
  BitVec column(std::size_t c) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A bijection on {0..m-1}. Applying it to a maps a[i] to position map[i].
class Permutation {
 public:
  Permutation() = default;
  /// Throws ParameterError unless `map` is a bijection on {0..map.size()-1}.
  explicit Permutation(std::vector<std::uint32_t> map);

  static Permutation identity(std::size_t m);
  static Permutation random(std::size_t m, Rng& rng);

  std::size_t size() const { return map_.size(); }
  std::uint32_t operator[](std::size_t i) const { return map_[i]; }
  const std::vector<std::uint32_t>& map() const { return map_; }

  Permutation inverse() const;
  /// out[map[i]] = a[i]
  BitVec apply(const BitVec& a) const;
  /// out[i] = a[map[i]], i.e. the inverse permutation applied to a.
  BitVec apply_inverse(const BitVec& a) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> map_;
};

BitVec mat_vec_mul(const BitMatrix& a, const BitVec& x);

/// Some x with A x = b, or nullopt. Free variables are fixed to zero.
std::optional<BitVec> solve_linear(const BitMatrix& a, const BitVec& b);

/// b lies in the column space of A.
bool in_image(const BitMatrix& a, const BitVec& b);

std::size_t rank(const BitMatrix& a);

std::size_t hamming_distance(const BitVec& a, const BitVec& b);

/// Uniform over the length-m vectors of Hamming weight exactly w.
BitVec sample_fixed_weight(std::size_t m, std::size_t w, Rng& rng);

BitVec apply_permutation(const Permutation& pi, const BitVec& a);

}  // namespace fedzkp
