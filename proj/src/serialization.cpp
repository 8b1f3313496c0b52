// serialization.cpp: JSON readers and writers for the qmf file formats

#include "qmf/serialization.hpp"

#include <fstream>
#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

const Json& require(const Json& j, const char* key, const std::string& field)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(field + "." + key, "missing");
    }
    return j.at(key);
}

double number(const Json& j, const std::string& field)
{
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    return j.get<double>();
}

} // namespace

Json matrix_to_json(const Matrix& m)
{
    Json re = Json::array();
    Json im = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row_re = Json::array();
        Json row_im = Json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j, const std::string& field)
{
    const Json& dim_j = require(j, "dim", field);
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
        throw ConfigError(field + ".dim", "expected a positive integer");
    }
    const auto dim = static_cast<Index>(dim_j.get<long long>());
    const Json& re = require(j, "re", field);
    const Json& im = require(j, "im", field);
    auto check_rows = [&](const Json& part, const std::string& name) {
        if (!part.is_array() || static_cast<Index>(part.size()) != dim) {
            throw ConfigError(field + "." + name, "expected " + std::to_string(dim) + " rows");
        }
        for (std::size_t r = 0; r < part.size(); ++r) {
            if (!part[r].is_array() || static_cast<Index>(part[r].size()) != dim) {
                throw ConfigError(field + "." + name + "[" + std::to_string(r) + "]",
                                  "expected " + std::to_string(dim) + " columns");
            }
        }
    };
    check_rows(re, "re");
    check_rows(im, "im");
    Matrix m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            const auto ru = static_cast<std::size_t>(r);
            const auto cu = static_cast<std::size_t>(c);
            const std::string at = "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            m(r, c) = Complex(number(re[ru][cu], field + ".re" + at), number(im[ru][cu], field + ".im" + at));
        }
    }
    return m;
}

Json to_json(const Operator& x) { return matrix_to_json(x.matrix()); }

Operator operator_from_json(const Json& j, const std::string& field)
{
    return Operator(matrix_from_json(j, field));
}

Json to_json(const SuperOperator& s) { return matrix_to_json(s.matrix()); }

SuperOperator superoperator_from_json(const Json& j, const std::string& field)
{
    try {
        return SuperOperator(matrix_from_json(j, field));
    } catch (const DimensionError& e) {
        throw ConfigError(field + ".dim", e.what());
    }
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field)
{
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(field, "expected [re, im]");
    }
    return Complex(number(j[0], field + "[0]"), number(j[1], field + "[1]"));
}

Json to_json(const StructureMapSet& sm)
{
    return Json{{"dim", sm.dim()},
                {"theta_minus", to_json(sm.theta_minus())},
                {"theta_zero", to_json(sm.theta_zero())},
                {"theta_plus", to_json(sm.theta_plus())},
                {"ito", {{"c_mp", to_json(sm.ito().c_minus_plus)}, {"c_pm", to_json(sm.ito().c_plus_minus)}}}};
}

StructureMapSet structure_maps_from_json(const Json& j)
{
    const std::string field = "structure_maps";
    auto theta_minus = superoperator_from_json(require(j, "theta_minus", field), field + ".theta_minus");
    auto theta_zero = superoperator_from_json(require(j, "theta_zero", field), field + ".theta_zero");
    auto theta_plus = superoperator_from_json(require(j, "theta_plus", field), field + ".theta_plus");
    const Json& ito_j = require(j, "ito", field);
    ItoTable ito{complex_from_json(require(ito_j, "c_mp", field + ".ito"), field + ".ito.c_mp"),
                 complex_from_json(require(ito_j, "c_pm", field + ".ito"), field + ".ito.c_pm")};
    if (j.contains("dim")) {
        const Json& d = j.at("dim");
        if (!d.is_number_integer() || d.get<long long>() != theta_zero.dim()) {
            throw ConfigError(field + ".dim", "does not match the superoperator blocks");
        }
    }
    return StructureMapSet(std::move(theta_minus), std::move(theta_zero), std::move(theta_plus), ito);
}

Json to_json(const StepFunction& f)
{
    Json out = Json::array();
    for (const auto& p : f.pieces()) {
        out.push_back(Json::array({p.a, p.b, p.value.real(), p.value.imag()}));
    }
    return out;
}

StepFunction step_function_from_json(const Json& j, const std::string& field)
{
    if (!j.is_array()) throw ConfigError(field, "expected an array of [a, b, v_re, v_im]");
    std::vector<StepPiece> pieces;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = field + "[" + std::to_string(k) + "]";
        const Json& p = j[k];
        if (!p.is_array() || (p.size() != 4 && p.size() != 3)) {
            throw ConfigError(at, "expected [a, b, v_re, v_im]");
        }
        const double im = p.size() == 4 ? number(p[3], at + "[3]") : 0.0;
        pieces.push_back({number(p[0], at + "[0]"), number(p[1], at + "[1]"),
                          Complex(number(p[2], at + "[2]"), im)});
    }
    try {
        return StepFunction(std::move(pieces));
    } catch (const ParameterError& e) {
        throw ConfigError(field, e.what());
    }
}

Json to_json(const GlauberConfig& cfg)
{
    Json plus = Json::object();
    Json minus = Json::object();
    for (const auto c : kConfigurations) {
        plus[std::string(label(c))] = to_json(cfg.plus(c));
        minus[std::string(label(c))] = to_json(cfg.minus(c));
    }
    return Json{{"sites", cfg.sites},
                {"boundary", std::string(to_string(cfg.boundary))},
                {"gg_plus", std::move(plus)},
                {"gg_minus", std::move(minus)}};
}

GlauberConfig glauber_config_from_json(const Json& j, const std::string& field)
{
    if (!j.is_object()) throw ConfigError(field, "expected an object");
    GlauberConfig cfg;
    if (j.contains("sites")) {
        if (!j.at("sites").is_number_integer()) throw ConfigError(field + ".sites", "expected an integer");
        cfg.sites = j.at("sites").get<int>();
    }
    if (j.contains("boundary")) {
        if (!j.at("boundary").is_string()) throw ConfigError(field + ".boundary", "expected a string");
        try {
            cfg.boundary = parse_boundary(j.at("boundary").get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(field + ".boundary", e.message());
        }
    }
    auto read_table = [&](const char* key, std::array<Complex, 4>& table) {
        if (!j.contains(key)) return;
        const Json& t = j.at(key);
        const std::string at = field + "." + key;
        if (!t.is_object()) throw ConfigError(at, "expected an object keyed by pp, pm, mp, mm");
        for (auto it = t.begin(); it != t.end(); ++it) {
            Configuration c{};
            try {
                c = parse_configuration(it.key());
            } catch (const ConfigError&) {
                throw ConfigError(at + "." + it.key(), "unknown configuration label");
            }
            table[static_cast<std::size_t>(c)] = complex_from_json(it.value(), at + "." + it.key());
        }
    };
    read_table("gg_plus", cfg.gg_plus);
    read_table("gg_minus", cfg.gg_minus);
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(field + "." + e.field(), e.message());
    }
    return cfg;
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace qmf
