#include "fedzkp/serialize.hpp"

#include <array>

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

constexpr std::array<std::uint8_t, 256> make_reverse_table() {
  std::array<std::uint8_t, 256> t{};
  for (unsigned i = 0; i < 256; ++i) {
    unsigned r = 0;
    for (unsigned b = 0; b < 8; ++b) {
      if (i & (1U << b)) r |= 1U << (7 - b);
    }
    t[i] = static_cast<std::uint8_t>(r);
  }
  return t;
}

constexpr auto kReverse = make_reverse_table();

// Appends the first nbits bits of a word span, byte aligned on entry.
void append_words(Bytes& out, std::span<const std::uint64_t> words, std::size_t nbits) {
  const std::size_t nbytes = (nbits + 7) / 8;
  for (std::size_t k = 0; k < nbytes; ++k) {
    const std::uint64_t w = words[k / 8];
    out.push_back(kReverse[(w >> (8 * (k % 8))) & 0xFF]);
  }
}

// Bit-at-a-time writer for streams that are not byte aligned.
class BitWriter {
 public:
  explicit BitWriter(Bytes& out) : out_(out) {}
  void put(bool bit) {
    if (fill_ == 0) out_.push_back(0);
    if (bit) out_.back() |= static_cast<std::uint8_t>(0x80U >> fill_);
    fill_ = (fill_ + 1) % 8;
  }

 private:
  Bytes& out_;
  unsigned fill_ = 0;
};

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void append_bits(Bytes& out, const BitVec& v) { append_words(out, v.words(), v.size()); }

void append_bits(Bytes& out, const BitMatrix& a) {
  if (a.cols() % 8 == 0) {
    for (std::size_t r = 0; r < a.rows(); ++r) append_words(out, a.row_words(r), a.cols());
    return;
  }
  BitWriter writer(out);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) writer.put(a.get(r, c));
  }
}

Bytes pack_bits(const BitVec& v) {
  Bytes out;
  out.reserve((v.size() + 7) / 8);
  append_bits(out, v);
  return out;
}

Bytes pack_bits(const BitMatrix& a) {
  Bytes out;
  out.reserve((a.rows() * a.cols() + 7) / 8);
  append_bits(out, a);
  return out;
}

BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n) {
  if (bytes.size() < (n + 7) / 8) throw ProtocolError("unpack_bits: buffer too short");
  BitVec v(n);
  auto words = v.words();
  for (std::size_t k = 0; k < (n + 7) / 8; ++k) {
    words[k / 8] |= std::uint64_t{kReverse[bytes[k]]} << (8 * (k % 8));
  }
  if (n % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return v;
}

BitMatrix unpack_matrix(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t cols) {
  const std::size_t total = rows * cols;
  if (bytes.size() < (total + 7) / 8) throw ProtocolError("unpack_matrix: buffer too short");
  BitMatrix a(rows, cols);
  if (cols % 8 == 0) {
    const std::size_t row_bytes = cols / 8;
    for (std::size_t r = 0; r < rows; ++r) {
      a.set_row(r, unpack_bits(bytes.subspan(r * row_bytes, row_bytes), cols));
    }
    return a;
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (bytes[i / 8] & (0x80U >> (i % 8))) a.set(i / cols, i % cols, true);
  }
  return a;
}

void append_u32le(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_u64le(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ProtocolError("from_hex: odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ProtocolError("from_hex: invalid digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::uint32_t ByteReader::u32le() {
  auto b = take(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t ByteReader::u64le() {
  auto b = take(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
  if (n > data_.size() - pos_) throw ProtocolError("ByteReader: truncated input");
  auto s = data_.subspan(pos_, n);
  pos_ += n;
  return s;
}

BitVec ByteReader::bitvec() {
  const std::uint64_t n = u64le();
  if (n > (data_.size() - pos_) * 8) throw ProtocolError("ByteReader: vector length exceeds input");
  return unpack_bits(take((n + 7) / 8), n);
}

BitMatrix ByteReader::bitmatrix() {
  const std::uint64_t rows = u64le();
  const std::uint64_t cols = u64le();
  if (cols != 0 && rows > (data_.size() - pos_) * 8 / cols) {
    throw ProtocolError("ByteReader: matrix size exceeds input");
  }
  return unpack_matrix(take((rows * cols + 7) / 8), rows, cols);
}

void write_bitvec(Bytes& out, const BitVec& v) {
  append_u64le(out, v.size());
  append_bits(out, v);
}

void write_bitmatrix(Bytes& out, const BitMatrix& a) {
  append_u64le(out, a.rows());
  append_u64le(out, a.cols());
  append_bits(out, a);
}

}  // namespace fedzkp
