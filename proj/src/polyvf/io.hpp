#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "polyvf/comb.hpp"
#include "polyvf/invariants.hpp"
#include "polyvf/poly.hpp"
#include "polyvf/realizer.hpp"

namespace polyvf::io {

using Json = nlohmann::ordered_json;

// Ordered emitter: floats as %.17g, short containers on one line.
std::string emit(const Json& j);
Json parse_json(const std::string& text);  // InvalidArgument on malformed text

// Complex literals: [-+]?float([+-]float)?i, no spaces; also a bare real or imaginary part.
cplx parse_complex(const std::string& s);
std::string format_complex(cplx z);
// comma-separated literals, ascending powers
std::vector<cplx> parse_coeffs(const std::string& s);

Json complex_json(cplx z);
cplx complex_from_json(const Json& j);

Json polynomial_json(const core::Polynomial& p);
// {"coeffs": [...]} or a bare array; raw, not normalized
std::vector<cplx> coeffs_from_json(const Json& j);

Json data_set_json(const comb::DataSet& ds);
// InvalidArgument for malformed JSON, InvalidDataSet when the classes do not partition the labels
comb::DataSet data_set_from_json(const Json& j);

Json validation_json(const comb::DataSet& ds, const comb::ValidationReport& rep);
Json classification_json(const inv::Classification& c);

// Reads "data_set", "alphas", "taus"; other fields are ignored, so a classification also parses.
real::Problem problem_from_json(const Json& j);
Json problem_json(const real::Problem& p);
Json realization_json(const core::Polynomial& p, const real::Report& rep);

}  // namespace polyvf::io
