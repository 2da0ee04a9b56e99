#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fedzkp/bounds.hpp"
#include "fedzkp/costs.hpp"
#include "fedzkp/error.hpp"
#include "fedzkp/files.hpp"
#include "fedzkp/game.hpp"
#include "fedzkp/sigma.hpp"
#include "fedzkp/watermark.hpp"

namespace py = pybind11;
using namespace fedzkp;

namespace {

// Rationals cross the boundary as (numerator, denominator) decimal strings.
std::pair<std::string, std::string> split(const Rational& r) {
  return {boost::multiprecision::numerator(r).str(), boost::multiprecision::denominator(r).str()};
}

std::vector<std::string> matrix_rows(const BitMatrix& a) {
  std::vector<std::string> rows(a.rows(), std::string(a.cols(), '0'));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) rows[r][c] = a.get(r, c) ? '1' : '0';
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of fedzkp";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_ValueError);

  py::class_<XlpnParams>(m, "XlpnParams")
      .def(py::init([](std::size_t mm, std::size_t l, std::uint32_t num, std::uint32_t den) {
             XlpnParams p{mm, l, num, den};
             p.validate();
             return p;
           }),
           py::arg("m") = 800, py::arg("l") = 700, py::arg("tau_num") = 1, py::arg("tau_den") = 4)
      .def_readonly("m", &XlpnParams::m)
      .def_readonly("l", &XlpnParams::l)
      .def_property_readonly("w", &XlpnParams::error_weight)
      .def("__repr__", [](const XlpnParams& p) {
        return "XlpnParams(m=" + std::to_string(p.m) + ", l=" + std::to_string(p.l) + ", tau=" +
               std::to_string(p.tau_num) + "/" + std::to_string(p.tau_den) + ")";
      });

  py::class_<PublicInput>(m, "PublicInput")
      .def(py::init([](const std::vector<std::string>& rows, const std::string& y) {
             return PublicInput{BitMatrix::from_rows(rows), BitVec::from_string(y)};
           }),
           py::arg("rows"), py::arg("y"))
      .def_property_readonly("rows", [](const PublicInput& p) { return matrix_rows(p.a); })
      .def_property_readonly("y", [](const PublicInput& p) { return p.y.to_string(); })
      .def("__eq__", [](const PublicInput& a, const PublicInput& b) { return a == b; });

  py::class_<Credential>(m, "Credential")
      .def_property_readonly("s", [](const Credential& c) { return c.s.to_string(); })
      .def_property_readonly("e", [](const Credential& c) { return c.e.to_string(); });

  py::class_<XlpnInstance>(m, "XlpnInstance")
      .def_readonly("public", &XlpnInstance::pub)
      .def_readonly("credential", &XlpnInstance::cred);

  m.def(
      "gen_instance",
      [](const XlpnParams& p, std::uint64_t seed) {
        Rng rng(seed);
        return gen_instance(p, rng);
      },
      py::arg("params"), py::arg("seed"));
  m.def("validate_instance", [](const PublicInput& pub, const Credential& cred, const XlpnParams& p) {
    return validate_instance(pub, cred, p);
  });

  m.def(
      "hash_watermark",
      [](const std::vector<PublicInput>& parts, std::size_t n) {
        return hash_watermark(AggregatedInput(parts), n).h.to_string();
      },
      py::arg("parts"), py::arg("n") = kDefaultWatermarkBits);
  m.def("canonical_bytes", [](const std::vector<PublicInput>& parts) {
    const Bytes b = canonical_bytes(AggregatedInput(parts));
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
  });

  m.def(
      "run_session",
      [](const PublicInput& pub, const Credential& cred, std::size_t w, std::size_t rounds, std::uint64_t seed) {
        Rng rng(seed);
        return run_session(pub, cred, w, rounds, rng).accepted;
      },
      py::arg("public"), py::arg("credential"), py::arg("w"), py::arg("rounds"), py::arg("seed"));
  m.def(
      "cheating_acceptance",
      [](const PublicInput& pub, std::size_t w, std::size_t rounds, std::uint64_t seed) {
        Rng rng(seed);
        CheatingProver cheat(pub, w, fork(rng));
        std::size_t accepted = 0;
        for (std::size_t r = 0; r < rounds; ++r) {
          const RoundMessage1 msg1 = cheat.commit();
          const Challenge c = verifier_challenge(rng);
          accepted += verifier_check_round(pub, msg1, c, cheat.respond(c), w) ? 1 : 0;
        }
        return accepted;
      },
      py::arg("public"), py::arg("w"), py::arg("rounds"), py::arg("seed"),
      "Rounds passed by a prover without the witness, each judged on its own.");

  m.def("_parse_probability", [](const std::string& text) { return split(parse_probability(text)); });
  m.def("_near_collision_prob", [](std::size_t n, std::size_t radius) {
    return split(near_collision_prob(n, radius));
  });
  m.def("_advantage_bound", [](std::size_t k, std::size_t q, std::size_t n, std::size_t err_n, std::size_t d) {
    return split(advantage_bound(k, q, n, err_n, d));
  });
  m.def("_compute_err_n", [](std::size_t n, const std::string& p_r) { return compute_err_n(n, parse_probability(p_r)); });
  m.def("_cost_report", [](std::size_t k, std::size_t mm, std::size_t l, std::size_t d, std::size_t l_com) {
    const CostReport r = cost_report(k, mm, l, d, l_com);
    return std::make_pair(split(r.memory_bits), split(r.communication_bits));
  });
  m.def("hamming_ball_size", [](std::size_t n, std::size_t radius) { return hamming_ball_size(n, radius).str(); });
  m.def("convergence_exponent", &convergence_exponent, py::arg("n"), py::arg("fraction"));

  m.def(
      "security_game_wins",
      [](std::size_t games, std::size_t q, std::size_t k, std::size_t d, std::size_t n, std::size_t err_n,
         bool with_credential, std::uint64_t seed) {
        GameConfig cfg;
        cfg.q = q;
        cfg.k = k;
        cfg.d = d;
        cfg.params.n = n;
        cfg.params.err_n = err_n;
        cfg.adversary_has_credential = with_credential;
        Rng rng(seed);
        std::size_t wins = 0;
        for (std::size_t g = 0; g < games; ++g) wins += run_security_game(cfg, rng).won() ? 1 : 0;
        return wins;
      },
      py::arg("games"), py::arg("q") = 2, py::arg("k") = 100, py::arg("d") = 3, py::arg("n") = 12,
      py::arg("err_n") = 0, py::arg("with_credential") = false, py::arg("seed") = 0);
}
