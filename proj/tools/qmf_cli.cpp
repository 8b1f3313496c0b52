// qmf_cli.cpp: Command-line front end: model building, single checks and the full suite

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "qmf/errors.hpp"
#include "qmf/flow_kernel.hpp"
#include "qmf/suite.hpp"

namespace {

using namespace qmf;

struct CommonOptions {
    std::string config;
    std::string structure;
    std::string t_list;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> tol;
    std::string out;
    std::string format = "json";
};

std::vector<double> parse_list(const std::string& text, const std::string& field)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(field, "expected comma-separated numbers, got '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError(field, "must not be empty");
    return out;
}

RunConfig load_config(const CommonOptions& o)
{
    RunConfig cfg = o.config.empty() ? RunConfig{} : parse_config(o.config);
    if (!o.structure.empty()) cfg.model = StructureMapFile{o.structure};
    if (!o.t_list.empty()) cfg.t_grid = parse_list(o.t_list, "t_grid");
    if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
    if (o.seed) cfg.seed = *o.seed;
    for (const auto& a : o.tol) apply_tolerance_override(cfg, a);
    cfg.validate();
    return cfg;
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

void add_common(CLI::App* cmd, CommonOptions& o, bool with_t)
{
    cmd->add_option("--config", o.config, "Run configuration (JSON)");
    cmd->add_option("--structure", o.structure, "Structure-map file, overrides the configured model");
    if (with_t) cmd->add_option("--t", o.t_list, "Comma-separated times");
    cmd->add_option("--mode", o.mode, "physical | conservative");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--tol", o.tol, "Tolerance override name=value (repeatable)");
    cmd->add_option("--out", o.out, "Output path (default stdout)");
}

int report_exit(const Report& r, const std::string& out, const std::string& format)
{
    const ReportFormat f = parse_report_format(format);
    write_output(out, f == ReportFormat::json ? emit_json(r) : emit_csv(r));
    std::cerr << r.passed() << "/" << r.checks.size() << " checks passed\n";
    return r.all_passed() ? 0 : 1;
}

Json block_to_json(const BlockOp2& b)
{
    Json out = Json::object();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out[std::to_string(i) + std::to_string(j)] = to_json(b.block(i, j));
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification toolkit for Markov flows built from structure maps"};
    app.require_subcommand(1);

    CommonOptions opts;

    std::string glauber_path;
    auto* build = app.add_subcommand("build-glauber", "Write the structure maps of a Glauber spin chain");
    build->add_option("--config", glauber_path, "Glauber configuration (JSON)")->required();
    build->add_option("--seed", opts.seed, "Seed for constants left unspecified");
    build->add_option("--out", opts.out, "Output path (default stdout)");

    auto* structure = app.add_subcommand("check-structure", "Check the structure-map axioms");
    add_common(structure, opts, false);
    structure->add_option("--format", opts.format, "json | csv");

    auto* cp = app.add_subcommand("check-cp", "Extended-semigroup Choi, conservativity and normalization table");
    add_common(cp, opts, true);

    std::string observable;
    auto* evolve = app.add_subcommand("evolve", "Apply the extended semigroup to an observable");
    add_common(evolve, opts, true);
    evolve->add_option("--observable", observable, "Operator file (JSON) or block operator of size 2d")->required();

    std::string f_path, g_path, window_text, x_path;
    auto* flow = app.add_subcommand("flow-element", "Flow matrix element between exponential vectors");
    add_common(flow, opts, false);
    flow->add_option("--f", f_path, "Step function f (JSON [[a, b, re, im], ...])")->required();
    flow->add_option("--g", g_path, "Step function g")->required();
    flow->add_option("--window", window_text, "s,t")->required();
    flow->add_option("--x", x_path, "Operator file (JSON); identity when omitted");

    auto* suite = app.add_subcommand("suite", "Run every check and emit a report");
    add_common(suite, opts, true);
    suite->add_option("--format", opts.format, "json | csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            GlauberModel model;
            const Json j = read_json_file(glauber_path);
            model.config = glauber_config_from_json(j, "glauber");
            model.seeded_constants = !(j.contains("gg_plus") || j.contains("gg_minus"));
            RunConfig cfg;
            cfg.model = model;
            if (opts.seed) cfg.seed = *opts.seed;
            const ResolvedModel resolved = resolve_model(cfg);
            write_output(opts.out, to_json(resolved.maps).dump(2) + "\n");
            return 0;
        }

        RunConfig cfg = load_config(opts);

        if (structure->parsed()) {
            return report_exit(run_suite(cfg, {true, false, false}), opts.out, opts.format);
        }
        if (suite->parsed()) {
            const Report r = run_suite(cfg);
            if (opts.out.empty()) {
                if (!cfg.output_json.empty()) emit(r, ReportFormat::json, cfg.output_json);
                if (!cfg.output_csv.empty()) emit(r, ReportFormat::csv, cfg.output_csv);
                if (!cfg.output_json.empty() || !cfg.output_csv.empty()) {
                    std::cerr << r.passed() << "/" << r.checks.size() << " checks passed\n";
                    return r.all_passed() ? 0 : 1;
                }
            }
            return report_exit(r, opts.out, opts.format);
        }

        const ResolvedModel model = resolve_model(cfg);
        if (cp->parsed()) {
            const auto g = build_extended_generator(model.maps, cfg.mode);
            const auto rows = check_cp(g, cfg.t_grid);
            write_output(opts.out, cp_csv(rows));
            const double tol = cfg.tolerance("choi");
            for (const auto& r : rows) {
                if (r.choi_min_eig < -tol) return 1;
            }
            return 0;
        }
        if (evolve->parsed()) {
            const Index d = model.maps.dim();
            const Matrix m = matrix_from_json(read_json_file(observable), "observable");
            BlockOp2 x = m.rows() == d ? BlockOp2::uniform(Operator(m)) : BlockOp2::from_full(m, d);
            const auto g = build_extended_generator(model.maps, cfg.mode);
            Json out = Json::array();
            for (double t : cfg.t_grid) out.push_back({{"t", t}, {"blocks", block_to_json(apply_extended(g, t, x))}});
            write_output(opts.out, Json{{"mode", std::string(to_string(cfg.mode))}, {"evolution", out}}.dump(2) + "\n");
            return 0;
        }
        if (flow->parsed()) {
            const auto f = step_function_from_json(read_json_file(f_path), "f");
            const auto g = step_function_from_json(read_json_file(g_path), "g");
            const auto window = parse_list(window_text, "window");
            if (window.size() != 2) throw ConfigError("window", "expected s,t");
            const Operator x = x_path.empty() ? Operator::identity(model.maps.dim())
                                              : operator_from_json(read_json_file(x_path), "x");
            const Operator element = flow_matrix_element(model.maps, f, g, window[0], window[1], x);
            write_output(opts.out, Json{{"window", window}, {"element", to_json(element)}}.dump(2) + "\n");
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
