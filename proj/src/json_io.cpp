#include "bellstruct/json_io.hpp"

namespace bellstruct {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json poly_to_json(const SymmetricBellPolynomial& poly) {
  ordered_json j;
  j["n_parties"] = poly.n_parties;
  j["coeffs"] = json::array();
  for (const auto& [key, coeff] : poly.coeffs)
    j["coeffs"].push_back({key.first, key.second, format_rational(coeff)});
  return j;
}

ordered_json poly_to_json(const SymmetricBellPolynomial& poly, const Rational& bound) {
  ordered_json j = poly_to_json(poly);
  j["bound"] = format_rational(bound);
  return j;
}

SymmetricBellPolynomial poly_from_json(const json& j) {
  SymmetricBellPolynomial poly;
  poly.n_parties = j.at("n_parties").get<int>();
  for (const auto& entry : j.at("coeffs"))
    poly.set(entry.at(0).get<int>(), entry.at(1).get<int>(),
             parse_rational(entry.at(2).get<std::string>()));
  return poly;
}

ordered_json state_to_json(const PureState& state) {
  ordered_json j;
  j["d"] = state.local_dim;
  j["n"] = state.n_parties;
  j["amplitudes"] = json::array();
  for (long long i = 0; i < state.amplitudes.size(); ++i)
    j["amplitudes"].push_back({state.amplitudes[i].real(), state.amplitudes[i].imag()});
  return j;
}

PureState state_from_json(const json& j) {
  PureState state;
  state.local_dim = j.at("d").get<int>();
  state.n_parties = j.at("n").get<int>();
  const auto& amps = j.at("amplitudes");
  state.amplitudes.resize(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i)
    state.amplitudes[i] = Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
  return state;
}

ordered_json scenario_to_json(const MeasurementScenario& scenario) {
  ordered_json j;
  j["symmetric"] = scenario.symmetric;
  j["parties"] = json::array();
  for (const auto& pair : scenario.parties) {
    ordered_json p = ordered_json::array();
    for (int s = 0; s < 2; ++s) p.push_back({pair[s].x, pair[s].y, pair[s].z});
    j["parties"].push_back(p);
  }
  return j;
}

MeasurementScenario scenario_from_json(const json& j) {
  MeasurementScenario scenario;
  scenario.symmetric = j.at("symmetric").get<bool>();
  for (const auto& p : j.at("parties")) {
    std::array<Observable, 2> pair;
    for (int s = 0; s < 2; ++s)
      pair[s] = {p.at(s).at(0).get<double>(), p.at(s).at(1).get<double>(),
                 p.at(s).at(2).get<double>()};
    scenario.parties.push_back(pair);
  }
  return scenario;
}

}  // namespace bellstruct
