#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "qmf/errors.hpp"
#include "qmf/glauber.hpp"
#include "qmf/random.hpp"
#include "qmf/suite.hpp"

using namespace qmf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "qmf_harness_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(QMF_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_field_error(const std::string& json_text)
{
    try {
        parse_config_json(Json::parse(json_text));
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

RunConfig small_config()
{
    RunConfig cfg;
    cfg.t_grid = {0.5};
    return cfg;
}

} // namespace

TEST_CASE("config defaults")
{
    const RunConfig cfg = parse_config_json(Json::parse(R"({"model": {"glauber": {"sites": 3, "boundary": "periodic"}},
                                                            "seed": 42})"));
    CHECK(cfg.t_grid == std::vector<double>{0.1, 0.25, 0.5, 1.0});
    CHECK(cfg.mode == Mode::physical);
    CHECK(cfg.tolerances == default_tolerances());
    CHECK(cfg.tolerance("choi") == 1e-9);
    CHECK(cfg.tolerance("leibnitz") == 1e-10);
    CHECK(cfg.tolerance("conserv") == 1e-10);
    CHECK(cfg.tolerance("dissip") == 1e-8);
    const auto& g = std::get<GlauberModel>(cfg.model);
    CHECK(g.seeded_constants);
    CHECK(g.config.sites == 3);
}

TEST_CASE("config errors name the offending field")
{
    CHECK(config_field_error(R"({"t_grid": [0.1, -0.5]})") == "t_grid");
    CHECK(config_field_error(R"({"t_grid": []})") == "t_grid");
    CHECK(config_field_error(R"({"tolerances": {"choi": 0}})") == "tolerances.choi");
    CHECK(config_field_error(R"({"tolerances": {"bogus": 1e-3}})") == "tolerances.bogus");
    CHECK(config_field_error(R"({"mode": "both"})") == "mode");
    CHECK(config_field_error(R"({"seed": -3})") == "seed");
    CHECK(config_field_error(R"({"extra": 1})") == "extra");
    CHECK(config_field_error(R"({"model": {"glauber": {"sites": 9}}})") == "model.glauber.sites");
    CHECK(config_field_error(R"({"model": {"glauber": {"gg_minus": {"pp": [-1, 0]}}}})") ==
          "model.glauber.gg_minus.pp");
    CHECK(config_field_error(R"({"model": {"glauber": {"gg_plus": {"xy": 1}}}})") == "model.glauber.gg_plus.xy");

    const fs::path bad = scratch("malformed.json");
    write(bad, "{\n  \"seed\": 4,\n  \"t_grid\": [0.1,\n}\n");
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(scratch("missing.json")), ConfigError);
}

TEST_CASE("config round trip")
{
    const char* texts[] = {
        R"({"model": {"glauber": {"sites": 4, "boundary": "open"}}, "t_grid": [0.2, 0.7], "seed": 9})",
        R"({"model": {"glauber": {"sites": 3, "gg_plus": {"pp": [0.5, 0.1]}, "gg_minus": {"mm": 0.25}}},
            "mode": "conservative", "tolerances": {"choi": 1e-7}, "output": {"json": "r.json"}})",
        R"({"model": {"qubit": {"omega": 2.0, "w_minus": 0.6}}})",
        R"({"model": {"structure_maps": "maps.json"}})",
    };
    for (const char* text : texts) {
        const RunConfig a = parse_config_json(Json::parse(text));
        const Json ja = to_json(a);
        const RunConfig b = parse_config_json(ja);
        CHECK(to_json(b) == ja);
    }
}

TEST_CASE("tolerance overrides")
{
    RunConfig cfg;
    apply_tolerance_override(cfg, "choi=1e-6");
    CHECK(cfg.tolerance("choi") == 1e-6);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "choi"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "choi=-1"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(cfg, "choi=1e-3x"), ConfigError);
}

TEST_CASE("report structure, schema checks and CSV layout")
{
    const Report r = run_suite(small_config());
    CHECK(r.all_passed());
    CHECK(r.version == kArtifactVersion);

    const Json j = to_json(r);
    std::string error;
    CHECK(validate_report(j, error));
    CHECK(error.empty());
    CHECK(Json::parse(emit_json(r)) == j);
    CHECK(j.at("tolerances") == to_json(small_config()).at("tolerances"));

    std::set<std::string> names;
    for (const auto& c : r.checks) names.insert(c.name);
    for (const char* expected : {"structure.unital", "structure.conjugation", "structure.leibnitz_zero",
                                 "extended.choi_min_eig", "extended.normalization", "extended.conservativity",
                                 "extended.kappa_condition", "extended.dissipativity", "extended.resolvent_slope",
                                 "extended.commutation", "flow.composition", "flow.unitality", "flow.norm_bound",
                                 "flow.kernel_cp", "flow.schur_product"}) {
        CHECK(names.count(expected) == 1);
    }

    const std::string csv = emit_csv(r);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "check,t,residual,tolerance,pass");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == r.checks.size());

    Json tampered = j;
    tampered["checks"][0]["pass"] = false;
    CHECK_FALSE(validate_report(tampered, error));
    Json miscounted = j;
    miscounted["summary"]["passed"] = 0;
    CHECK_FALSE(validate_report(miscounted, error));
    Json bad_tol = j;
    bad_tol["tolerances"]["choi"] = -1.0;
    CHECK_FALSE(validate_report(bad_tol, error));
    CHECK(error.find("tolerances.choi") != std::string::npos);

    const fs::path out = scratch("report.json");
    emit(r, ReportFormat::json, out);
    CHECK(slurp(out) == emit_json(r));
    CHECK_THROWS(emit(r, ReportFormat::csv, scratch("no_such_dir") / "x" / "r.csv"));
    CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
}

TEST_CASE("grid-dependent checks emit one row per time")
{
    RunConfig cfg = small_config();
    cfg.t_grid = {0.1, 0.3, 0.9};
    const Report r = run_suite(cfg, SuiteSelection{false, true, false});
    std::size_t choi_rows = 0;
    for (const auto& c : r.checks) {
        if (c.name == "extended.choi_min_eig") ++choi_rows;
    }
    CHECK(choi_rows == 3);
}

TEST_CASE("fixed seed gives byte-identical reports")
{
    const RunConfig cfg = small_config();
    CHECK(emit_json(run_suite(cfg)) == emit_json(run_suite(cfg)));
}

TEST_CASE("seed changes draws but not outcomes")
{
    RunConfig a = small_config();
    RunConfig b = small_config();
    b.seed = 20261015;
    const Report ra = run_suite(a);
    const Report rb = run_suite(b);
    REQUIRE(ra.checks.size() == rb.checks.size());
    CHECK(ra.all_passed());
    CHECK(rb.all_passed());
    bool any_value_differs = false;
    for (std::size_t k = 0; k < ra.checks.size(); ++k) {
        CHECK(ra.checks[k].name == rb.checks[k].name);
        CHECK(ra.checks[k].pass == rb.checks[k].pass);
        CHECK(ra.checks[k].inputs_digest != rb.checks[k].inputs_digest);
        if (ra.checks[k].value != rb.checks[k].value) any_value_differs = true;
    }
    CHECK(any_value_differs);
}

TEST_CASE("adversarial constants fail the CP checks")
{
    GlauberConfig cfg;
    cfg.gg_minus[0] = Complex(-0.4, 0.0);
    cfg.gg_plus[0] = Complex(0.3, 0.1);
    const ResolvedModel model{build_glauber_structure_maps_unchecked(cfg), Json{{"kind", "adversarial"}}};
    const Report r = run_suite(small_config(), model);
    CHECK_FALSE(r.all_passed());
    bool choi_failed = false;
    for (const auto& c : r.checks) {
        if (c.name == "extended.choi_min_eig" && !c.pass) choi_failed = true;
    }
    CHECK(choi_failed);

    const fs::path maps = scratch("adversarial_maps.json");
    write(maps, to_json(model.maps).dump());
    CHECK(run_cli("suite --structure " + maps.string() + " --t 0.5 --out " + scratch("adv.json").string()) == 1);
    std::string error;
    CHECK(validate_report(Json::parse(slurp(scratch("adv.json"))), error));
}

TEST_CASE("construction errors become failure records")
{
    RunConfig cfg = small_config();
    cfg.model = StructureMapFile{scratch("does_not_exist.json").string()};
    const Report r = run_suite(cfg);
    REQUIRE(r.checks.size() == 1);
    CHECK_FALSE(r.checks[0].pass);
    CHECK(r.checks[0].name == "model.build");
    std::string error;
    CHECK(validate_report(to_json(r), error));
}

TEST_CASE("command-line interface")
{
    const fs::path glauber = scratch("glauber.json");
    write(glauber, R"({"sites": 3, "boundary": "periodic", "gg_minus": {"pp": 1.0}, "gg_plus": {"pp": [0.2, 0.3]}})");
    const fs::path maps = scratch("maps.json");
    CHECK(run_cli("build-glauber --config " + glauber.string() + " --out " + maps.string()) == 0);
    const StructureMapSet sm = structure_maps_from_json(read_json_file(maps));
    CHECK(sm.dim() == 8);
    CHECK(std::abs(sm.ito().c_minus_plus - 2.0) < 1e-9);

    const fs::path cp = scratch("cp.csv");
    CHECK(run_cli("check-cp --structure " + maps.string() + " --t 0.1,0.5 --mode physical --out " + cp.string()) ==
          0);
    const std::string table = slurp(cp);
    CHECK(table.rfind("t,choi_min_eig,conservativity_residual,normalization_residual\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 3);

    const fs::path obs = scratch("obs.json");
    write(obs, to_json(Operator::identity(8)).dump());
    const fs::path evolved = scratch("evolve.json");
    CHECK(run_cli("evolve --structure " + maps.string() + " --t 0.5 --observable " + obs.string() + " --out " +
                  evolved.string()) == 0);
    const Json ev = read_json_file(evolved);
    const Matrix b11 = matrix_from_json(ev.at("evolution")[0].at("blocks").at("11"), "b11");
    CHECK(max_abs(b11 - std::exp(0.5) * Matrix::Identity(8, 8)) < 1e-10);

    const fs::path f = scratch("f.json");
    const fs::path g = scratch("g.json");
    write(f, "[[0, 1, 1, 0]]");
    write(g, "[[0.5, 1.5, 1, 0]]");
    const fs::path element = scratch("element.json");
    CHECK(run_cli("flow-element --structure " + maps.string() + " --f " + f.string() + " --g " + g.string() +
                  " --window 0,1.5 --out " + element.string()) == 0);
    const Matrix e = matrix_from_json(read_json_file(element).at("element"), "element");
    CHECK(max_abs(e - std::exp(0.5) * Matrix::Identity(8, 8)) < 1e-10);

    const fs::path structure = scratch("structure.csv");
    CHECK(run_cli("check-structure --structure " + maps.string() + " --format csv --out " + structure.string()) == 0);
    CHECK(slurp(structure).rfind("check,t,residual,tolerance,pass\n", 0) == 0);

    CHECK(run_cli("suite --t 0.5,-1") == 2);
    CHECK(run_cli("suite --tol choi=abc") == 2);
    CHECK(run_cli("bogus-command") != 0);
}
