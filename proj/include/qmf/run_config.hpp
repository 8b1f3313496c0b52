// run_config.hpp: Verification run configuration: model source, grid, tolerances, seed
//
// {"model": {"glauber": {...}} | {"qubit": {...}} | {"structure_maps": "file.json"},
//  "mode": "physical", "t_grid": [0.1, 0.25, 0.5, 1.0], "tolerances": {"choi": 1e-9, ...},
//  "seed": 42, "output": {"json": "report.json", "csv": "report.csv"}}

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmf/extended_semigroup.hpp"
#include "qmf/glauber.hpp"
#include "qmf/serialization.hpp"
#include "qmf/structure_maps.hpp"

namespace qmf {

struct GlauberModel {
    GlauberConfig config;
    // No constants in the file: they are drawn from the run seed when the model is built.
    bool seeded_constants = true;
};

// Two-level toy model: H = omega/2 diag(1, -1), F = |0><1|, Fock Ito table as prior.
struct QubitModel {
    double omega = 1.0;
    double w_minus = 1.0;
    double w_plus = 0.0;
};

struct StructureMapFile {
    std::string path;
};

using ModelSource = std::variant<GlauberModel, QubitModel, StructureMapFile>;

using Tolerances = std::map<std::string, double>;

// Centralized defaults, echoed into every report.
const Tolerances& default_tolerances();

struct RunConfig {
    ModelSource model = GlauberModel{};
    Mode mode = Mode::physical;
    std::vector<double> t_grid{0.1, 0.25, 0.5, 1.0};
    Tolerances tolerances = default_tolerances();
    std::uint64_t seed = 42;
    std::string output_json;
    std::string output_csv;

    double tolerance(const std::string& name) const;
    // Throws ConfigError naming the field that violates an invariant.
    void validate() const;
};

RunConfig parse_config_json(const Json& j);
// Relative structure-map paths are resolved against the config file's directory.
RunConfig parse_config(const std::filesystem::path& path);
Json to_json(const RunConfig& cfg);

// "name=value"; unknown names and non-positive values are rejected.
void apply_tolerance_override(RunConfig& cfg, const std::string& assignment);

struct ResolvedModel {
    StructureMapSet maps;
    Json description;
};

ResolvedModel resolve_model(const RunConfig& cfg);
StructureMapSet build_qubit_model(const QubitModel& model);

} // namespace qmf
