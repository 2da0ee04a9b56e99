#include "fedzkp/xlpn.hpp"

#include "fedzkp/error.hpp"

namespace fedzkp {

std::size_t XlpnParams::error_weight() const {
  // floor(m*num/den + 1/2) in integers.
  const std::uint64_t num = 2 * static_cast<std::uint64_t>(m) * tau_num + tau_den;
  return static_cast<std::size_t>(num / (2 * static_cast<std::uint64_t>(tau_den)));
}

void XlpnParams::validate() const {
  if (l == 0) throw ParameterError("xLPN: l must be positive");
  if (m <= l) throw ParameterError("xLPN: m must exceed l");
  if (tau_den == 0) throw ParameterError("xLPN: tau denominator is zero");
  if (2 * static_cast<std::uint64_t>(tau_num) >= tau_den) throw ParameterError("xLPN: tau must be below 1/2");
}

XlpnInstance gen_instance(const XlpnParams& params, Rng& rng) {
  params.validate();
  for (int attempt = 0; attempt < kMaxRankResamples; ++attempt) {
    BitMatrix a = BitMatrix::random(params.m, params.l, rng);
    if (rank(a) != params.l) continue;
    BitVec s = BitVec::random(params.l, rng);
    BitVec e = sample_fixed_weight(params.m, params.error_weight(), rng);
    BitVec y = mat_vec_mul(a, s) ^ e;
    return XlpnInstance{PublicInput{std::move(a), std::move(y)}, Credential{std::move(s), std::move(e)}};
  }
  throw Error("gen_instance: no full-rank matrix after resampling limit");
}

bool validate_instance(const PublicInput& pub, const Credential& cred, std::size_t w) {
  if (pub.y.size() != pub.a.rows()) throw DimensionError("validate_instance: y.len != A.rows");
  if (cred.s.size() != pub.a.cols()) throw DimensionError("validate_instance: s.len != A.cols");
  if (cred.e.size() != pub.a.rows()) throw DimensionError("validate_instance: e.len != A.rows");
  if (cred.e.weight() != w) return false;
  return (mat_vec_mul(pub.a, cred.s) ^ cred.e) == pub.y;
}

bool validate_instance(const PublicInput& pub, const Credential& cred, const XlpnParams& params) {
  return validate_instance(pub, cred, params.error_weight());
}

}  // namespace fedzkp
