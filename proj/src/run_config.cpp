// run_config.cpp: Parsing, validation and model resolution for verification runs

#include "qmf/run_config.hpp"

#include <algorithm>
#include <cmath>

#include "qmf/errors.hpp"
#include "qmf/random.hpp"

namespace qmf {

const Tolerances& default_tolerances()
{
    static const Tolerances table{
        {"unital", 1e-10},        {"conjugation", 1e-10},    {"leibnitz", 1e-10},
        {"leibnitz_calibrated", 1e-9}, {"ito_admissible", 1e-9}, {"choi", 1e-9},
        {"conserv", 1e-10},       {"normalization", 1e-10},  {"kappa", 1e-12},
        {"semigroup", 1e-10},     {"symmetry", 1e-11},       {"dissip", 1e-8},
        {"delta", 1e-12},         {"commutation", 1e-12},    {"resolvent_slope", 0.2},
        {"composition", 1e-10},   {"refinement", 1e-10},     {"unitality", 1e-10},
        {"norm_bound", 1e-10},    {"kernel", 1e-9},          {"ode", 1e-8},
    };
    return table;
}

double RunConfig::tolerance(const std::string& name) const
{
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("tolerances." + name, "unknown tolerance");
    return it->second;
}

void RunConfig::validate() const
{
    if (t_grid.empty()) throw ConfigError("t_grid", "must not be empty");
    for (double t : t_grid) {
        if (!std::isfinite(t) || t < 0.0) {
            throw ConfigError("t_grid", "entries must be finite and >= 0");
        }
    }
    for (const auto& [name, value] : tolerances) {
        if (!default_tolerances().contains(name)) {
            throw ConfigError("tolerances." + name, "unknown tolerance");
        }
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigError("tolerances." + name, "must be a positive finite number");
        }
    }
    if (const auto* g = std::get_if<GlauberModel>(&model)) {
        g->config.validate();
    } else if (const auto* q = std::get_if<QubitModel>(&model)) {
        if (!(q->w_minus >= 0.0)) throw ConfigError("model.qubit.w_minus", "must be >= 0");
        if (!(q->w_plus >= 0.0)) throw ConfigError("model.qubit.w_plus", "must be >= 0");
        if (!std::isfinite(q->omega)) throw ConfigError("model.qubit.omega", "must be finite");
    } else if (std::get<StructureMapFile>(model).path.empty()) {
        throw ConfigError("model.structure_maps", "path must not be empty");
    }
}

namespace {

double number_field(const Json& j, const std::string& field)
{
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    return j.get<double>();
}

ModelSource parse_model(const Json& j)
{
    if (!j.is_object() || j.size() != 1) {
        throw ConfigError("model", "expected exactly one of 'glauber', 'qubit', 'structure_maps'");
    }
    if (j.contains("glauber")) {
        const Json& g = j.at("glauber");
        GlauberModel model;
        model.config = glauber_config_from_json(g, "model.glauber");
        model.seeded_constants = !(g.contains("gg_plus") || g.contains("gg_minus"));
        return model;
    }
    if (j.contains("qubit")) {
        const Json& q = j.at("qubit");
        if (!q.is_object()) throw ConfigError("model.qubit", "expected an object");
        QubitModel model;
        if (q.contains("omega")) model.omega = number_field(q.at("omega"), "model.qubit.omega");
        if (q.contains("w_minus")) model.w_minus = number_field(q.at("w_minus"), "model.qubit.w_minus");
        if (q.contains("w_plus")) model.w_plus = number_field(q.at("w_plus"), "model.qubit.w_plus");
        return model;
    }
    if (j.contains("structure_maps")) {
        if (!j.at("structure_maps").is_string()) {
            throw ConfigError("model.structure_maps", "expected a file path");
        }
        return StructureMapFile{j.at("structure_maps").get<std::string>()};
    }
    throw ConfigError("model", "expected one of 'glauber', 'qubit', 'structure_maps'");
}

} // namespace

RunConfig parse_config_json(const Json& j)
{
    if (!j.is_object()) throw ConfigError("", "run configuration must be a JSON object");
    static const std::vector<std::string> known{"model", "mode", "t_grid", "tolerances", "seed", "output"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ConfigError(it.key(), "unknown configuration key");
        }
    }

    RunConfig cfg;
    if (j.contains("model")) cfg.model = parse_model(j.at("model"));
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) throw ConfigError("mode", "expected a string");
        cfg.mode = parse_mode(j.at("mode").get<std::string>());
    }
    if (j.contains("t_grid")) {
        const Json& grid = j.at("t_grid");
        if (!grid.is_array()) throw ConfigError("t_grid", "expected an array of numbers");
        cfg.t_grid.clear();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            cfg.t_grid.push_back(number_field(grid[k], "t_grid"));
        }
    }
    if (j.contains("tolerances")) {
        const Json& tol = j.at("tolerances");
        if (!tol.is_object()) throw ConfigError("tolerances", "expected an object");
        for (auto it = tol.begin(); it != tol.end(); ++it) {
            cfg.tolerances[it.key()] = number_field(it.value(), "tolerances." + it.key());
        }
    }
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)) {
            throw ConfigError("seed", "expected a non-negative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (j.contains("output")) {
        const Json& out = j.at("output");
        if (!out.is_object()) throw ConfigError("output", "expected an object");
        if (out.contains("json")) {
            if (!out.at("json").is_string()) throw ConfigError("output.json", "expected a path");
            cfg.output_json = out.at("json").get<std::string>();
        }
        if (out.contains("csv")) {
            if (!out.at("csv").is_string()) throw ConfigError("output.csv", "expected a path");
            cfg.output_csv = out.at("csv").get<std::string>();
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path)
{
    RunConfig cfg = parse_config_json(read_json_file(path));
    if (auto* file = std::get_if<StructureMapFile>(&cfg.model)) {
        const std::filesystem::path p(file->path);
        if (p.is_relative()) file->path = (path.parent_path() / p).lexically_normal().string();
    }
    return cfg;
}

Json to_json(const RunConfig& cfg)
{
    Json model;
    if (const auto* g = std::get_if<GlauberModel>(&cfg.model)) {
        Json gj = to_json(g->config);
        if (g->seeded_constants) {
            gj.erase("gg_plus");
            gj.erase("gg_minus");
        }
        model = Json{{"glauber", std::move(gj)}};
    } else if (const auto* q = std::get_if<QubitModel>(&cfg.model)) {
        model = Json{{"qubit", {{"omega", q->omega}, {"w_minus", q->w_minus}, {"w_plus", q->w_plus}}}};
    } else {
        model = Json{{"structure_maps", std::get<StructureMapFile>(cfg.model).path}};
    }
    Json tolerances = Json::object();
    for (const auto& [name, value] : cfg.tolerances) tolerances[name] = value;
    Json out = Json::object();
    if (!cfg.output_json.empty()) out["json"] = cfg.output_json;
    if (!cfg.output_csv.empty()) out["csv"] = cfg.output_csv;
    return Json{{"model", std::move(model)},
                {"mode", std::string(to_string(cfg.mode))},
                {"t_grid", cfg.t_grid},
                {"tolerances", std::move(tolerances)},
                {"seed", cfg.seed},
                {"output", std::move(out)}};
}

void apply_tolerance_override(RunConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("tol", "expected name=value, got '" + assignment + "'");
    }
    const std::string name = assignment.substr(0, eq);
    if (!default_tolerances().contains(name)) throw ConfigError("tolerances." + name, "unknown tolerance");
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(assignment.substr(eq + 1), &used);
        if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw ConfigError("tolerances." + name, "value is not a number");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError("tolerances." + name, "must be a positive finite number");
    }
    cfg.tolerances[name] = value;
}

StructureMapSet build_qubit_model(const QubitModel& model)
{
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 0.5 * model.omega;
    h(1, 1) = -0.5 * model.omega;
    Matrix f = Matrix::Zero(2, 2);
    f(0, 1) = 1.0;
    return build_evans_hudson(Operator(h), Operator(f), model.w_minus, model.w_plus, ItoTable::fock());
}

ResolvedModel resolve_model(const RunConfig& cfg)
{
    if (const auto* g = std::get_if<GlauberModel>(&cfg.model)) {
        GlauberConfig gc = g->config;
        if (g->seeded_constants) {
            Rng rng = substream(cfg.seed, "model.glauber.constants");
            gc = random_glauber_config(rng, gc.sites, gc.boundary);
        }
        Json desc{{"kind", "glauber"}, {"glauber", to_json(gc)}, {"seeded_constants", g->seeded_constants}};
        return {build_glauber_structure_maps(gc), std::move(desc)};
    }
    if (const auto* q = std::get_if<QubitModel>(&cfg.model)) {
        Json desc{{"kind", "qubit"}, {"omega", q->omega}, {"w_minus", q->w_minus}, {"w_plus", q->w_plus}};
        return {build_qubit_model(*q), std::move(desc)};
    }
    const auto& file = std::get<StructureMapFile>(cfg.model);
    Json desc{{"kind", "structure_maps"}, {"path", file.path}};
    return {structure_maps_from_json(read_json_file(file.path)), std::move(desc)};
}

} // namespace qmf
