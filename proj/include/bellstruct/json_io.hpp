#pragma once

#include <json.hpp>

#include "bellstruct/bellpoly.hpp"
#include "bellstruct/qstate.hpp"

namespace bellstruct {

// Stable serialization: {n_parties, coeffs: [[k, m, "p/q"], ...], bound?}.
nlohmann::ordered_json poly_to_json(const SymmetricBellPolynomial& poly);
nlohmann::ordered_json poly_to_json(const SymmetricBellPolynomial& poly, const Rational& bound);
SymmetricBellPolynomial poly_from_json(const nlohmann::json& j);

// {d, n, amplitudes: [[re, im], ...]}.
nlohmann::ordered_json state_to_json(const PureState& state);
PureState state_from_json(const nlohmann::json& j);

// {symmetric, parties: [[bloch0, bloch1], ...]} with bloch = [x, y, z].
nlohmann::ordered_json scenario_to_json(const MeasurementScenario& scenario);
MeasurementScenario scenario_from_json(const nlohmann::json& j);

}  // namespace bellstruct
