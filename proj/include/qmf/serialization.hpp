// serialization.hpp: JSON forms of operators, structure maps, step functions and model configs
//
// Operator:        {"dim": d, "re": [[...]], "im": [[...]]}   (row-major)
// SuperOperator:   same layout with dim = d^2
// StructureMapSet: {"dim": d, "theta_minus": S, "theta_zero": S, "theta_plus": S,
//                   "ito": {"c_mp": [re, im], "c_pm": [re, im]}}
// StepFunction:    [[a, b, v_re, v_im], ...]
// GlauberConfig:   {"sites": n, "boundary": "periodic", "gg_plus": {"pp": [re, im], ...},
//                   "gg_minus": {...}}

#pragma once

#include <filesystem>

#include <json.hpp>

#include "qmf/flow_kernel.hpp"
#include "qmf/glauber.hpp"
#include "qmf/operator_algebra.hpp"
#include "qmf/structure_maps.hpp"

namespace qmf {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
// `field` prefixes error messages.
Matrix matrix_from_json(const Json& j, const std::string& field = "operator");

Json to_json(const Operator& x);
Operator operator_from_json(const Json& j, const std::string& field = "operator");

Json to_json(const SuperOperator& s);
SuperOperator superoperator_from_json(const Json& j, const std::string& field = "superoperator");

Json to_json(Complex c);
Complex complex_from_json(const Json& j, const std::string& field);

Json to_json(const StructureMapSet& sm);
StructureMapSet structure_maps_from_json(const Json& j);

Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j, const std::string& field = "step_function");

Json to_json(const GlauberConfig& cfg);
// Missing constants are left at zero; see parse of RunConfig for seeded defaults.
GlauberConfig glauber_config_from_json(const Json& j, const std::string& field = "glauber");

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace qmf
