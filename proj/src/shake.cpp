#include "fedzkp/shake.hpp"

#include <openssl/evp.h>

#include "fedzkp/error.hpp"
#include "fedzkp/serialize.hpp"

namespace fedzkp {

struct Shake256::Impl {
  EVP_MD_CTX* ctx = nullptr;
  bool finalized = false;
};

Shake256::Shake256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_shake256(), nullptr) != 1) {
    throw Error("SHAKE-256 initialisation failed");
  }
}

Shake256::~Shake256() {
  if (impl_ && impl_->ctx) EVP_MD_CTX_free(impl_->ctx);
}

Shake256::Shake256(Shake256&&) noexcept = default;
Shake256& Shake256::operator=(Shake256&&) noexcept = default;

Shake256& Shake256::update(std::span<const std::uint8_t> data) {
  if (impl_->finalized) throw Error("SHAKE-256 update after finalize");
  if (!data.empty() && EVP_DigestUpdate(impl_->ctx, data.data(), data.size()) != 1) {
    throw Error("SHAKE-256 update failed");
  }
  return *this;
}

Shake256& Shake256::update(std::string_view text) {
  return update(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> Shake256::finalize(std::size_t out_bytes) {
  if (impl_->finalized) throw Error("SHAKE-256 finalized twice");
  impl_->finalized = true;
  std::vector<std::uint8_t> out(out_bytes);
  if (out_bytes > 0 && EVP_DigestFinalXOF(impl_->ctx, out.data(), out_bytes) != 1) {
    throw Error("SHAKE-256 finalize failed");
  }
  return out;
}

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> data, std::size_t out_bytes) {
  Shake256 h;
  h.update(data);
  return h.finalize(out_bytes);
}

BitVec shake256_bits(std::span<const std::uint8_t> data, std::size_t n) {
  return unpack_bits(shake256(data, (n + 7) / 8), n);
}

}  // namespace fedzkp
