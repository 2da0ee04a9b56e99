#pragma once

// On-disk formats. Binary files start with "FEDZKP1", a kind byte and the
// xLPN parameter block (u64le m, l, tau_num, tau_den, w); bit data uses the
// packed encoding from serialize.hpp with u64le length prefixes.
//
//   'C' credential     u64le client index, s, e
//   'P' public input   A, y
//   'A' aggregate      u64le K, then K x (A, y)
//   'M' checkpoint     u64le input_dim, hidden, classes, n, projection seed,
//                      then theta and W_gamma as f64le arrays (no xLPN block)
//
// Watermarks are JSON: {"n": 1024, "h": "<hex of packed bits>"}.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "fedzkp/model.hpp"
#include "fedzkp/serialize.hpp"
#include "fedzkp/watermark.hpp"
#include "fedzkp/xlpn.hpp"

namespace fedzkp {

struct CredentialFile {
  XlpnParams params;
  std::size_t index = 0;
  Credential cred;
};

struct PublicInputFile {
  XlpnParams params;
  PublicInput pub;
};

struct AggregateFile {
  XlpnParams params;
  AggregatedInput agg;
};

struct Checkpoint {
  ModelState state;
  std::size_t n = 0;
  std::uint64_t projection_seed = 0;
};

Bytes encode(const CredentialFile& f);
Bytes encode(const PublicInputFile& f);
Bytes encode(const AggregateFile& f);
Bytes encode(const Checkpoint& c);

/// Decoders throw ProtocolError on bad magic, kind, truncation or trailing bytes.
CredentialFile decode_credential(std::span<const std::uint8_t> bytes);
PublicInputFile decode_public_input(std::span<const std::uint8_t> bytes);
AggregateFile decode_aggregate(std::span<const std::uint8_t> bytes);
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

std::string encode_watermark_json(const HashWatermark& wm);
HashWatermark decode_watermark_json(const std::string& text);

/// Throws Error when the file cannot be read or written.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace fedzkp
