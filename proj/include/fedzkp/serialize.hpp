#pragma once

// Byte-level encodings shared by commitments, the watermark hash, files and
// the wire protocol.
//
// Bits are packed 8 per byte, most significant bit first. A matrix packs as
// one continuous row-major bit stream; any trailing partial byte is zero
// padded. File encodings prefix every dimension with an 8-byte little-endian
// length.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedzkp/gf2.hpp"

namespace fedzkp {

using Bytes = std::vector<std::uint8_t>;

void append_bits(Bytes& out, const BitVec& v);
void append_bits(Bytes& out, const BitMatrix& a);
Bytes pack_bits(const BitVec& v);
Bytes pack_bits(const BitMatrix& a);
BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n);
BitMatrix unpack_matrix(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t cols);

void append_u32le(Bytes& out, std::uint32_t v);
void append_u64le(Bytes& out, std::uint64_t v);

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Throws ProtocolError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

/// Sequential little-endian reader over a byte buffer; throws ProtocolError
/// on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t u32le();
  std::uint64_t u64le();
  std::span<const std::uint8_t> take(std::size_t n);
  bool at_end() const { return pos_ == data_.size(); }

  /// 8-byte length header, then packed bits.
  BitVec bitvec();
  /// 8-byte rows and cols headers, then packed bits.
  BitMatrix bitmatrix();

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

void write_bitvec(Bytes& out, const BitVec& v);
void write_bitmatrix(Bytes& out, const BitMatrix& a);

}  // namespace fedzkp
