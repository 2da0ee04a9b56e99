#include "fedzkp/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

constexpr std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

constexpr std::uint64_t tail_mask(std::size_t bits) {
  return (bits % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bits % 64)) - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// BitVec

BitVec::BitVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw ParameterError("BitVec::from_string: invalid character");
    }
  }
  return v;
}

BitVec BitVec::random(std::size_t len, Rng& rng) {
  BitVec v(len);
  for (auto& w : v.words_) w = rng();
  if (!v.words_.empty()) v.words_.back() &= tail_mask(len);
  return v;
}

BitVec BitVec::ones(std::size_t len) {
  BitVec v(len);
  std::fill(v.words_.begin(), v.words_.end(), ~std::uint64_t{0});
  if (!v.words_.empty()) v.words_.back() &= tail_mask(len);
  return v;
}

std::size_t BitVec::weight() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitVec BitVec::complement() const {
  BitVec out(*this);
  for (auto& w : out.words_) w = ~w;
  if (!out.words_.empty()) out.words_.back() &= tail_mask(len_);
  return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.len_ != len_) throw DimensionError("BitVec xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(word_count(cols)), words_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  const std::uint64_t mask = tail_mask(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t* row = m.words_.data() + r * m.stride_;
    for (std::size_t w = 0; w < m.stride_; ++w) row[w] = rng();
    if (m.stride_ > 0) row[m.stride_ - 1] &= mask;
  }
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("BitMatrix::from_rows: ragged rows");
    const BitVec v = BitVec::from_string(rows[r]);
    std::copy(v.words().begin(), v.words().end(), m.words_.begin() + static_cast<std::ptrdiff_t>(r * m.stride_));
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t& w = words_[r * stride_ + (c >> 6)];
  const std::uint64_t mask = std::uint64_t{1} << (c & 63);
  w = value ? (w | mask) : (w & ~mask);
}

BitVec BitMatrix::row(std::size_t r) const {
  BitVec v(cols_);
  auto src = row_words(r);
  std::copy(src.begin(), src.end(), v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
  if (v.size() != cols_) throw DimensionError("BitMatrix::set_row: length mismatch");
  std::copy(v.words().begin(), v.words().end(), words_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

BitVec BitMatrix::column(std::size_t c) const {
  BitVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r, true);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (auto idx : map_) {
    if (idx >= map_.size() || seen[idx]) throw ParameterError("Permutation: map is not a bijection");
    seen[idx] = true;
  }
}

Permutation Permutation::identity(std::size_t m) {
  Permutation p;
  p.map_.resize(m);
  std::iota(p.map_.begin(), p.map_.end(), 0U);
  return p;
}

Permutation Permutation::random(std::size_t m, Rng& rng) {
  Permutation p = identity(m);
  std::shuffle(p.map_.begin(), p.map_.end(), rng);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv.map_[map_[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

BitVec Permutation::apply(const BitVec& a) const {
  if (a.size() != map_.size()) throw DimensionError("Permutation::apply: size mismatch");
  BitVec out(a.size());
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (a.get(i)) out.set(map_[i], true);
  }
  return out;
}

BitVec Permutation::apply_inverse(const BitVec& a) const {
  if (a.size() != map_.size()) throw DimensionError("Permutation::apply_inverse: size mismatch");
  BitVec out(a.size());
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (a.get(map_[i])) out.set(i, true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

BitVec mat_vec_mul(const BitMatrix& a, const BitVec& x) {
  if (x.size() != a.cols()) throw DimensionError("mat_vec_mul: x.len != A.cols");
  BitVec out(a.rows());
  const auto xw = x.words();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < row.size(); ++w) acc ^= row[w] & xw[w];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

namespace {

// Reduced row echelon form of [A | b] held in a flat word buffer. Rows are
// swapped, never reordered otherwise; pivots[k] is the pivot column of row k.
struct Echelon {
  std::size_t stride = 0;
  std::vector<std::uint64_t> words;
  std::vector<std::size_t> pivots;
};

Echelon eliminate(const BitMatrix& a, const BitVec* b) {
  const std::size_t m = a.rows();
  const std::size_t l = a.cols();
  const std::size_t aug_cols = l + (b ? 1 : 0);
  Echelon ech;
  ech.stride = word_count(aug_cols);
  ech.words.assign(m * ech.stride, 0);
  for (std::size_t r = 0; r < m; ++r) {
    auto src = a.row_words(r);
    std::copy(src.begin(), src.end(), ech.words.begin() + static_cast<std::ptrdiff_t>(r * ech.stride));
    if (b && b->get(r)) ech.words[r * ech.stride + (l >> 6)] |= std::uint64_t{1} << (l & 63);
  }

  const std::size_t stride = ech.stride;
  std::uint64_t* base = ech.words.data();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < l && rank < m; ++col) {
    const std::size_t wi = col >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    std::size_t pivot = rank;
    while (pivot < m && !(base[pivot * stride + wi] & bit)) ++pivot;
    if (pivot == m) continue;
    if (pivot != rank) {
      std::swap_ranges(base + pivot * stride, base + (pivot + 1) * stride, base + rank * stride);
    }
    const std::uint64_t* prow = base + rank * stride;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      std::uint64_t* row = base + r * stride;
      if (row[wi] & bit) {
        for (std::size_t w = wi; w < stride; ++w) row[w] ^= prow[w];
      }
    }
    ech.pivots.push_back(col);
    ++rank;
  }
  return ech;
}

}  // namespace

std::optional<BitVec> solve_linear(const BitMatrix& a, const BitVec& b) {
  if (b.size() != a.rows()) throw DimensionError("solve_linear: b.len != A.rows");
  const std::size_t l = a.cols();
  const Echelon ech = eliminate(a, &b);
  const std::size_t aug_word = l >> 6;
  const std::uint64_t aug_bit = std::uint64_t{1} << (l & 63);
  const std::size_t rank = ech.pivots.size();
  for (std::size_t r = rank; r < a.rows(); ++r) {
    if (ech.words[r * ech.stride + aug_word] & aug_bit) return std::nullopt;
  }
  BitVec x(l);
  for (std::size_t k = 0; k < rank; ++k) {
    if (ech.words[k * ech.stride + aug_word] & aug_bit) x.set(ech.pivots[k], true);
  }
  return x;
}

bool in_image(const BitMatrix& a, const BitVec& b) { return solve_linear(a, b).has_value(); }

std::size_t rank(const BitMatrix& a) { return eliminate(a, nullptr).pivots.size(); }

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw DimensionError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    d += static_cast<std::size_t>(std::popcount(a.words()[i] ^ b.words()[i]));
  }
  return d;
}

BitVec sample_fixed_weight(std::size_t m, std::size_t w, Rng& rng) {
  if (w > m) throw ParameterError("sample_fixed_weight: weight exceeds length");
  // Partial Fisher-Yates: the first w slots form a uniform w-subset.
  std::vector<std::uint32_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0U);
  BitVec v(m);
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t j = i + uniform_below(rng, m - i);
    std::swap(idx[i], idx[j]);
    v.set(idx[i], true);
  }
  return v;
}

BitVec apply_permutation(const Permutation& pi, const BitVec& a) { return pi.apply(a); }

}  // namespace fedzkp
