#include "fedzkp/files.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"

#include "fedzkp/error.hpp"

namespace fedzkp {

namespace {

constexpr std::string_view kMagic = "FEDZKP1";
constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 24;

void put_header(Bytes& out, char kind) {
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(static_cast<std::uint8_t>(kind));
}

void put_params(Bytes& out, const XlpnParams& p) {
  append_u64le(out, p.m);
  append_u64le(out, p.l);
  append_u64le(out, p.tau_num);
  append_u64le(out, p.tau_den);
  append_u64le(out, p.error_weight());
}

void expect_header(ByteReader& in, char kind) {
  const auto magic = in.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw ProtocolError("bad file magic");
  const auto k = in.take(1);
  if (k[0] != static_cast<std::uint8_t>(kind)) {
    throw ProtocolError(std::string("wrong file kind, expected '") + kind + "'");
  }
}

XlpnParams get_params(ByteReader& in) {
  XlpnParams p;
  const std::uint64_t m = in.u64le();
  const std::uint64_t l = in.u64le();
  const std::uint64_t num = in.u64le();
  const std::uint64_t den = in.u64le();
  const std::uint64_t w = in.u64le();
  if (m > kMaxDim || l > kMaxDim || num > 0xFFFFFFFFU || den > 0xFFFFFFFFU || den == 0) {
    throw ProtocolError("parameter block out of range");
  }
  p.m = m;
  p.l = l;
  p.tau_num = static_cast<std::uint32_t>(num);
  p.tau_den = static_cast<std::uint32_t>(den);
  try {
    p.validate();
  } catch (const ParameterError& e) {
    throw ProtocolError(std::string("invalid parameter block: ") + e.what());
  }
  if (w != p.error_weight()) throw ProtocolError("parameter block: w does not match m * tau");
  return p;
}

void expect_end(const ByteReader& in) {
  if (!in.at_end()) throw ProtocolError("trailing bytes after payload");
}

PublicInput get_public(ByteReader& in, const XlpnParams& p) {
  PublicInput pub{in.bitmatrix(), in.bitvec()};
  if (pub.a.rows() != p.m || pub.a.cols() != p.l || pub.y.size() != p.m) {
    throw ProtocolError("public input shape does not match parameters");
  }
  return pub;
}

void put_doubles(Bytes& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) append_u64le(out, std::bit_cast<std::uint64_t>(v(i)));
}

Eigen::VectorXd get_doubles(ByteReader& in, std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = std::bit_cast<double>(in.u64le());
  return v;
}

}  // namespace

Bytes encode(const CredentialFile& f) {
  Bytes out;
  put_header(out, 'C');
  put_params(out, f.params);
  append_u64le(out, f.index);
  write_bitvec(out, f.cred.s);
  write_bitvec(out, f.cred.e);
  return out;
}

Bytes encode(const PublicInputFile& f) {
  Bytes out;
  put_header(out, 'P');
  put_params(out, f.params);
  write_bitmatrix(out, f.pub.a);
  write_bitvec(out, f.pub.y);
  return out;
}

Bytes encode(const AggregateFile& f) {
  Bytes out;
  put_header(out, 'A');
  put_params(out, f.params);
  append_u64le(out, f.agg.clients());
  for (const auto& part : f.agg.parts()) {
    write_bitmatrix(out, part.a);
    write_bitvec(out, part.y);
  }
  return out;
}

Bytes encode(const Checkpoint& c) {
  Bytes out;
  put_header(out, 'M');
  append_u64le(out, c.state.shape.input_dim);
  append_u64le(out, c.state.shape.hidden);
  append_u64le(out, c.state.shape.classes);
  append_u64le(out, c.n);
  append_u64le(out, c.projection_seed);
  put_doubles(out, c.state.theta);
  put_doubles(out, c.state.gamma);
  return out;
}

CredentialFile decode_credential(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  expect_header(in, 'C');
  CredentialFile f;
  f.params = get_params(in);
  f.index = in.u64le();
  f.cred.s = in.bitvec();
  f.cred.e = in.bitvec();
  expect_end(in);
  if (f.cred.s.size() != f.params.l || f.cred.e.size() != f.params.m) {
    throw ProtocolError("credential shape does not match parameters");
  }
  return f;
}

PublicInputFile decode_public_input(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  expect_header(in, 'P');
  const XlpnParams p = get_params(in);
  PublicInputFile f{p, get_public(in, p)};
  expect_end(in);
  return f;
}

AggregateFile decode_aggregate(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  expect_header(in, 'A');
  const XlpnParams p = get_params(in);
  const std::uint64_t k = in.u64le();
  if (k == 0 || k > kMaxDim) throw ProtocolError("aggregate: client count out of range");
  std::vector<PublicInput> parts;
  for (std::uint64_t j = 0; j < k; ++j) parts.push_back(get_public(in, p));
  expect_end(in);
  return AggregateFile{p, AggregatedInput(std::move(parts))};
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  expect_header(in, 'M');
  Checkpoint c;
  c.state.shape.input_dim = in.u64le();
  c.state.shape.hidden = in.u64le();
  c.state.shape.classes = in.u64le();
  c.n = in.u64le();
  c.projection_seed = in.u64le();
  const auto& s = c.state.shape;
  if (s.input_dim == 0 || s.input_dim > kMaxDim || s.hidden == 0 || s.hidden > kMaxDim ||
      s.classes < 2 || s.classes > kMaxDim || c.n == 0 || c.n > kMaxDim) {
    throw ProtocolError("checkpoint: dimensions out of range");
  }
  const std::size_t need = (s.theta_size() + s.hidden) * 8;
  if (bytes.size() < need) throw ProtocolError("checkpoint: truncated parameter arrays");
  c.state.theta = get_doubles(in, s.theta_size());
  c.state.gamma = get_doubles(in, s.hidden);
  expect_end(in);
  return c;
}

std::string encode_watermark_json(const HashWatermark& wm) {
  nlohmann::json j;
  j["n"] = wm.n();
  j["h"] = to_hex(pack_bits(wm.h));
  return j.dump();
}

HashWatermark decode_watermark_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto n = j.at("n").get<std::size_t>();
    const Bytes raw = from_hex(j.at("h").get<std::string>());
    if (raw.size() != (n + 7) / 8) throw ProtocolError("watermark: hex length does not match n");
    HashWatermark wm{unpack_bits(raw, n)};
    if (pack_bits(wm.h) != raw) throw ProtocolError("watermark: nonzero padding bits");
    return wm;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("watermark json: ") + e.what());
  }
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace fedzkp
