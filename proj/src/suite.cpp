// suite.cpp: Runs every structure, extended-semigroup and flow-kernel check and emits reports

#include "qmf/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qmf/errors.hpp"
#include "qmf/flow_kernel.hpp"
#include "qmf/random.hpp"

namespace qmf {

namespace {

constexpr int kLeibnitzPairs = 100;
constexpr int kStepPairs = 50;
constexpr int kNormBoundSamples = 100;
constexpr int kDissipativitySamples = 100;
constexpr int kDissipativityLevel2Samples = 20;
constexpr int kSemigroupSamples = 10;
constexpr int kKernelSamples = 5;
constexpr double kResolventTime = 1.0;
constexpr std::array<double, 3> kResolventEps{1e-2, 5e-3, 2.5e-3};
constexpr double kOdeTime = 0.7;
constexpr double kOdeStep = 1e-4;
constexpr Index kOdeMaxSuperDim = 16;

std::string hex_digest(std::uint64_t h)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class Recorder {
public:
    Recorder(const RunConfig& cfg, std::string model_digest, Report& report)
        : cfg_(cfg), model_digest_(std::move(model_digest)), report_(report) {}

    void add(const std::string& name, std::optional<double> t, Bound bound, double value,
             const std::string& tolerance_name)
    {
        CheckRecord r;
        r.name = name;
        r.t = t;
        r.bound = bound;
        r.tolerance = cfg_.tolerance(tolerance_name);
        if (std::isfinite(value)) {
            r.value = value;
            r.pass = bound == Bound::upper ? value <= r.tolerance : value >= -r.tolerance;
        } else {
            r.message = "non-finite value";
        }
        r.inputs_digest = digest(name, t);
        report_.checks.push_back(std::move(r));
    }

    void fail(const std::string& name, std::optional<double> t, const std::string& tolerance_name,
              const std::string& message)
    {
        CheckRecord r;
        r.name = name;
        r.t = t;
        r.tolerance = cfg_.tolerance(tolerance_name);
        r.pass = false;
        r.message = message;
        r.inputs_digest = digest(name, t);
        report_.checks.push_back(std::move(r));
    }

    // Runs `body`; an exception becomes a failing record under `name`.
    void guard(const std::string& name, std::optional<double> t, const std::string& tolerance_name,
               const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            fail(name, t, tolerance_name, e.what());
        }
    }

    Rng rng(const std::string& name) const { return substream(cfg_.seed, name); }

private:
    std::string digest(const std::string& name, std::optional<double> t) const
    {
        std::string key = name + "|" + (t ? format_double(*t) : std::string("-")) + "|" +
                          std::to_string(cfg_.seed) + "|" + model_digest_;
        return hex_digest(fnv1a(key));
    }

    const RunConfig& cfg_;
    std::string model_digest_;
    Report& report_;
};

StepFunction random_step_function(Rng& rng)
{
    const int pieces = 1 + static_cast<int>(uniform(rng, 0.0, 3.0));
    std::vector<double> points;
    for (int k = 0; k < 2 * pieces; ++k) points.push_back(uniform(rng, -0.5, 2.5));
    std::sort(points.begin(), points.end());
    std::vector<StepPiece> out;
    for (int k = 0; k < pieces; ++k) {
        const double a = points[static_cast<std::size_t>(2 * k)];
        const double b = points[static_cast<std::size_t>(2 * k + 1)];
        if (!(b > a)) continue;
        const bool indicator = uniform(rng, 0.0, 1.0) < 0.5;
        out.push_back({a, b, indicator ? Complex(1.0) : random_disc_point(rng)});
    }
    return StepFunction(std::move(out));
}

BlockOp2 random_block(Rng& rng, Index d)
{
    return BlockOp2::from_full(random_matrix(rng, 2 * d, 2 * d), d);
}

double relative_distance(const Matrix& a, const Matrix& b)
{
    return max_abs(a - b) / std::max(1.0, max_abs(b));
}

// -------------------------------------------------------------- structure

void structure_checks(const StructureMapSet& sm, Recorder& rec)
{
    rec.guard("structure.unital", std::nullopt, "unital",
              [&] { rec.add("structure.unital", std::nullopt, Bound::upper, check_unital(sm), "unital"); });
    rec.guard("structure.conjugation", std::nullopt, "conjugation", [&] {
        rec.add("structure.conjugation", std::nullopt, Bound::upper, check_conjugation(sm), "conjugation");
    });
    rec.guard("structure.leibnitz", std::nullopt, "leibnitz", [&] {
        Rng rng = rec.rng("structure.leibnitz");
        LeibnitzResidual worst;
        for (int k = 0; k < kLeibnitzPairs; ++k) {
            const Operator x = random_operator(rng, sm.dim());
            const Operator y = random_operator(rng, sm.dim());
            const auto r = leibnitz_residual(sm, x, y);
            worst.minus = std::max(worst.minus, r.minus);
            worst.zero = std::max(worst.zero, r.zero);
            worst.plus = std::max(worst.plus, r.plus);
        }
        rec.add("structure.leibnitz_minus", std::nullopt, Bound::upper, worst.minus, "leibnitz");
        rec.add("structure.leibnitz_plus", std::nullopt, Bound::upper, worst.plus, "leibnitz");
        rec.add("structure.leibnitz_zero", std::nullopt, Bound::upper, worst.zero, "leibnitz_calibrated");
    });
    rec.guard("structure.ito_admissible", std::nullopt, "ito_admissible", [&] {
        // With non-zero noise couplings the extended semigroup is completely positive
        // only when Re c_mp >= 1 and Re c_pm >= 0.
        const bool coupled = max_abs(sm.theta_plus().matrix()) > 0.0;
        const auto& ito = sm.ito();
        const double value =
            coupled ? std::max({0.0, 1.0 - ito.c_minus_plus.real(), -ito.c_plus_minus.real()}) : 0.0;
        rec.add("structure.ito_admissible", std::nullopt, Bound::upper, value, "ito_admissible");
    });
}

// -------------------------------------------------------------- extended semigroup

Matrix rk4_propagator(const Matrix& generator, double t, double step)
{
    const Index n = generator.rows();
    Matrix p = Matrix::Identity(n, n);
    const auto steps = static_cast<long>(std::llround(t / step));
    const double h = t / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
        const Matrix k1 = p * generator;
        const Matrix k2 = (p + 0.5 * h * k1) * generator;
        const Matrix k3 = (p + 0.5 * h * k2) * generator;
        const Matrix k4 = (p + h * k3) * generator;
        p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return p;
}

void extended_checks(const RunConfig& cfg, const StructureMapSet& sm, Recorder& rec)
{
    std::optional<ExtendedGenerator> phys;
    std::optional<ExtendedGenerator> cons;
    rec.guard("extended.build", std::nullopt, "choi", [&] {
        phys = build_extended_generator(sm, Mode::physical);
        cons = phys->with_mode(Mode::conservative);
    });
    if (!phys) return;
    const Index d = sm.dim();

    for (double t : cfg.t_grid) {
        rec.guard("extended.choi_min_eig", t, "choi", [&] {
            rec.add("extended.choi_min_eig", t, Bound::lower, extended_choi_min_eig(*phys, t), "choi");
        });
        rec.guard("extended.normalization", t, "normalization", [&] {
            rec.add("extended.normalization", t, Bound::upper, normalization_residual(*phys, t),
                    "normalization");
        });
        rec.guard("extended.conservativity", t, "conserv", [&] {
            rec.add("extended.conservativity", t, Bound::upper, conservativity_residual(*phys, t), "conserv");
        });
        rec.guard("extended.symmetry", t, "symmetry", [&] {
            Rng rng = rec.rng("extended.symmetry." + format_double(t));
            double worst = 0.0;
            for (const auto* g : {&*phys, &*cons}) {
                const auto prop = propagate(*g, t);
                for (int k = 0; k < kSemigroupSamples; ++k) {
                    const BlockOp2 x = random_block(rng, d);
                    const Matrix lhs = prop.apply(x.adjoint()).as_full();
                    const Matrix rhs = prop.apply(x).adjoint().as_full();
                    worst = std::max(worst, max_abs(lhs - rhs));
                }
            }
            rec.add("extended.symmetry", t, Bound::upper, worst, "symmetry");
        });
    }

    rec.guard("extended.kappa_condition", std::nullopt, "kappa", [&] {
        rec.add("extended.kappa_condition", std::nullopt, Bound::upper, kappa_residual(*phys), "kappa");
    });

    rec.guard("extended.semigroup_law", std::nullopt, "semigroup", [&] {
        Rng rng = rec.rng("extended.semigroup_law");
        double worst = 0.0;
        for (const auto* g : {&*phys, &*cons}) {
            for (int k = 0; k < kSemigroupSamples; ++k) {
                const double s = uniform(rng, 0.0, 1.0);
                const double t = uniform(rng, 0.0, 1.0);
                const BlockOp2 x = random_block(rng, d);
                const Matrix joint = apply_extended(*g, s + t, x).as_full();
                const Matrix split = apply_extended(*g, s, apply_extended(*g, t, x)).as_full();
                worst = std::max(worst, max_abs(joint - split) / max_abs(x.as_full()));
            }
        }
        rec.add("extended.semigroup_law", std::nullopt, Bound::upper, worst, "semigroup");
    });

    rec.guard("extended.dissipativity", std::nullopt, "dissip", [&] {
        Rng rng = rec.rng("extended.dissipativity");
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kDissipativitySamples; ++k) {
            worst = std::min(worst, dissipativity_residual_min_eig(*cons, random_block(rng, d)));
        }
        rec.add("extended.dissipativity", std::nullopt, Bound::lower, worst, "dissip");
    });
    rec.guard("extended.dissipativity_level2", std::nullopt, "dissip", [&] {
        Rng rng = rec.rng("extended.dissipativity_level2");
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kDissipativityLevel2Samples; ++k) {
            worst = std::min(worst, dissipativity_residual_min_eig(*cons, random_matrix(rng, 4 * d, 4 * d), 2));
        }
        rec.add("extended.dissipativity_level2", std::nullopt, Bound::lower, worst, "dissip");
    });

    rec.guard("extended.delta_sq_semigroup", std::nullopt, "delta", [&] {
        // exp(t delta^2 / 2) from the closed form versus a dense exponential of delta^2 / 2.
        const Matrix e = BlockOp2::lower_projector(d).as_full();
        const Index n = 2 * d;
        const Operator one = Operator::identity(n);
        const Operator proj(e);
        const Matrix delta = (kI * (sandwich_map(one, proj) - sandwich_map(proj, one))).matrix();
        const Matrix half_delta_sq = 0.5 * delta * delta;
        Rng rng = rec.rng("extended.delta_sq_semigroup");
        double worst = 0.0;
        for (double t : cfg.t_grid) {
            const Matrix prop = matrix_exponential(half_delta_sq, t);
            const BlockOp2 x = random_block(rng, d);
            const Matrix dense = devectorize(prop * vectorize(Operator(x.as_full())), n).matrix();
            worst = std::max(worst, max_abs(delta_sq_semigroup(t, x).as_full() - dense));
        }
        rec.add("extended.delta_sq_semigroup", std::nullopt, Bound::upper, worst, "delta");
    });

    rec.guard("extended.commutation", std::nullopt, "commutation", [&] {
        rec.add("extended.commutation", std::nullopt, Bound::upper,
                std::max(commutation_residual(*phys), commutation_residual(*cons)), "commutation");
    });

    rec.guard("extended.resolvent_slope", std::nullopt, "resolvent_slope", [&] {
        std::vector<double> eps(kResolventEps.begin(), kResolventEps.end());
        std::vector<double> err;
        for (double e : eps) {
            err.push_back(propagator_distance(resolvent_generator(*phys, e), *phys, kResolventTime));
        }
        double value = 0.0;
        if (err.front() > 1e-13) {
            value = std::abs(log_log_slope(eps, err) - 1.0);
        }
        rec.add("extended.resolvent_slope", std::nullopt, Bound::upper, value, "resolvent_slope");
    });

    if (d * d <= kOdeMaxSuperDim) {
        rec.guard("extended.ode_oracle", kOdeTime, "ode", [&] {
            double worst = 0.0;
            for (const auto* g : {&*phys, &*cons}) {
                for (const auto& entry : g->entries()) {
                    const Matrix expm = matrix_exponential(entry.matrix(), kOdeTime);
                    worst = std::max(worst, max_abs(expm - rk4_propagator(entry.matrix(), kOdeTime, kOdeStep)));
                }
            }
            rec.add("extended.ode_oracle", kOdeTime, Bound::upper, worst, "ode");
        });
    }
}

// -------------------------------------------------------------- flow kernel

void flow_checks(const RunConfig& cfg, const StructureMapSet& sm, Recorder& rec)
{
    const Index d = sm.dim();
    const Operator one = Operator::identity(d);

    rec.guard("flow.factorization", std::nullopt, "composition", [&] {
        Rng rng = rec.rng("flow.factorization");
        double composition = 0.0;
        double refinement = 0.0;
        double unitality = 0.0;
        for (int k = 0; k < kStepPairs; ++k) {
            const StepFunction f = random_step_function(rng);
            const StepFunction g = random_step_function(rng);
            const double mid = uniform(rng, 0.2, 1.8);
            const auto whole = evolution_map(sm, f, g, 0.0, 2.0, Mode::physical);
            const auto left = evolution_map(sm, f, g, 0.0, mid, Mode::physical);
            const auto right = evolution_map(sm, f, g, mid, 2.0, Mode::physical);
            composition = std::max(composition,
                                   relative_distance((left.map * right.map).matrix(), whole.map.matrix()));

            std::vector<double> cuts;
            for (int c = 0; c < 3; ++c) cuts.push_back(uniform(rng, 0.0, 2.0));
            const auto refined = evolution_map(sm, f, g, 0.0, 2.0, Mode::physical, cuts);
            refinement = std::max(refinement, relative_distance(refined.map.matrix(), whole.map.matrix()));

            const Complex overlap = step_inner_product(f, g, Window{0.0, 2.0}, Region::inside);
            const Matrix expect = std::exp(overlap) * one.matrix();
            unitality = std::max(unitality, max_abs(whole.map(one).matrix() - expect) / std::abs(std::exp(overlap)));
        }
        rec.add("flow.composition", std::nullopt, Bound::upper, composition, "composition");
        rec.add("flow.refinement", std::nullopt, Bound::upper, refinement, "refinement");
        rec.add("flow.unitality", std::nullopt, Bound::upper, unitality, "unitality");
    });

    rec.guard("flow.norm_bound", std::nullopt, "norm_bound", [&] {
        Rng rng = rec.rng("flow.norm_bound");
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < kNormBoundSamples; ++k) {
            const Complex f0 = random_disc_point(rng);
            const Complex g0 = random_disc_point(rng);
            const double t = uniform(rng, 0.0, 1.0);
            const Operator x = random_operator(rng, d);
            const auto p = exponentiate(point_generator(sm, f0, g0, Mode::physical), t);
            const double bound = std::exp(0.5 * t * (std::norm(f0) + std::norm(g0))) * operator_norm(x.matrix());
            worst = std::max(worst, (operator_norm(p(x).matrix()) - bound) / bound);
        }
        rec.add("flow.norm_bound", std::nullopt, Bound::upper, std::max(worst, 0.0), "norm_bound");
    });

    for (double t : cfg.t_grid) {
        rec.guard("flow.kernel_cp", t, "kernel", [&] {
            Rng rng = rec.rng("flow.kernel_cp." + format_double(t));
            double kernel = std::numeric_limits<double>::infinity();
            double schur = std::numeric_limits<double>::infinity();
            double qbound = std::numeric_limits<double>::infinity();
            for (int k = 0; k < kKernelSamples; ++k) {
                std::vector<Complex> fs{0.0, 1.0};
                if (k % 2 == 1) fs.push_back(random_disc_point(rng));
                std::vector<Operator> xs;
                for (std::size_t j = 0; j < fs.size(); ++j) xs.push_back(random_operator(rng, d));
                kernel = std::min(kernel, kernel_cp_residual(sm, fs, xs, t));
                const double t2 = uniform(rng, 0.0, 0.5);
                schur = std::min(schur, schur_product_check(sm, fs, xs, t, t2));
                qbound = std::min(qbound, q_bound_check(sm, fs, t, random_psd(rng, d)));
            }
            rec.add("flow.kernel_cp", t, Bound::lower, kernel, "kernel");
            rec.add("flow.schur_product", t, Bound::lower, schur, "kernel");
            rec.add("flow.q_bound", t, Bound::lower, qbound, "kernel");
        });
    }
}

Json record_to_json(const CheckRecord& r)
{
    Json j{{"name", r.name},
           {"t", r.t ? Json(*r.t) : Json(nullptr)},
           {"bound", r.bound == Bound::upper ? "upper" : "lower"},
           {"value", r.value ? Json(*r.value) : Json(nullptr)},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"inputs_digest", r.inputs_digest}};
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

} // namespace

std::size_t Report::passed() const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.pass; }));
}

Report run_suite(const RunConfig& cfg, SuiteSelection selection)
{
    try {
        return run_suite(cfg, resolve_model(cfg), selection);
    } catch (const std::exception& e) {
        Report report;
        report.config = to_json(cfg);
        report.tolerances = cfg.tolerances;
        report.model = Json{{"error", e.what()}};
        Recorder rec(cfg, "unresolved", report);
        rec.fail("model.build", std::nullopt, "unital", e.what());
        return report;
    }
}

Report run_suite(const RunConfig& cfg, const ResolvedModel& model, SuiteSelection selection)
{
    cfg.validate();
    Report report;
    report.config = to_json(cfg);
    report.tolerances = cfg.tolerances;
    const auto& sm = model.maps;
    const auto& cal = sm.calibration();
    report.model = model.description;
    report.model["dim"] = sm.dim();
    report.model["ito"] = {{"c_mp", to_json(sm.ito().c_minus_plus)}, {"c_pm", to_json(sm.ito().c_plus_minus)}};
    report.model["ito_calibration"] = {{"calibrated", cal.calibrated},
                                       {"prior", {{"c_mp", to_json(cal.prior.c_minus_plus)},
                                                  {"c_pm", to_json(cal.prior.c_plus_minus)}}},
                                       {"fit_residual", cal.fit_residual}};
    report.model["notes"] = sm.notes();

    Recorder rec(cfg, hex_digest(fnv1a(model.description.dump())), report);
    if (selection.structure) structure_checks(sm, rec);
    if (selection.extended) extended_checks(cfg, sm, rec);
    if (selection.flow) flow_checks(cfg, sm, rec);
    return report;
}

Json to_json(const Report& report)
{
    Json checks = Json::array();
    for (const auto& r : report.checks) checks.push_back(record_to_json(r));
    Json tolerances = Json::object();
    for (const auto& [name, value] : report.tolerances) tolerances[name] = value;
    return Json{{"artifact", "qmf"},
                {"version", report.version},
                {"config", report.config},
                {"model", report.model},
                {"tolerances", std::move(tolerances)},
                {"checks", std::move(checks)},
                {"summary", {{"total", report.checks.size()}, {"passed", report.passed()}, {"failed", report.failed()}}}};
}

std::string emit_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string emit_csv(const Report& report)
{
    std::ostringstream os;
    os << "check,t,residual,tolerance,pass\n";
    for (const auto& r : report.checks) {
        os << r.name << ',' << (r.t ? format_double(*r.t) : std::string()) << ','
           << (r.value ? format_double(*r.value) : std::string("nan")) << ',' << format_double(r.tolerance)
           << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

ReportFormat parse_report_format(std::string_view text)
{
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    throw ConfigError("format", "expected 'json' or 'csv'");
}

void emit(const Report& report, ReportFormat format, const std::filesystem::path& path)
{
    write_text_file(path, format == ReportFormat::json ? emit_json(report) : emit_csv(report));
}

bool validate_report(const Json& j, std::string& error)
{
    auto fail = [&](const std::string& why) {
        error = why;
        return false;
    };
    if (!j.is_object()) return fail("report must be an object");
    for (const char* key : {"artifact", "version"}) {
        if (!j.contains(key) || !j.at(key).is_string()) return fail(std::string(key) + " must be a string");
    }
    for (const char* key : {"config", "model", "tolerances", "summary"}) {
        if (!j.contains(key) || !j.at(key).is_object()) return fail(std::string(key) + " must be an object");
    }
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
        if (!it.value().is_number() || it.value().get<double>() <= 0.0) {
            return fail("tolerances." + it.key() + " must be a positive number");
        }
    }
    if (!j.contains("checks") || !j.at("checks").is_array()) return fail("checks must be an array");
    std::size_t passed = 0;
    for (const auto& c : j.at("checks")) {
        if (!c.is_object()) return fail("check entries must be objects");
        if (!c.contains("name") || !c.at("name").is_string()) return fail("check.name must be a string");
        const std::string name = c.at("name").get<std::string>();
        if (!c.contains("t") || !(c.at("t").is_null() || c.at("t").is_number())) {
            return fail(name + ": t must be a number or null");
        }
        if (!c.contains("bound") || !c.at("bound").is_string() ||
            (c.at("bound") != "upper" && c.at("bound") != "lower")) {
            return fail(name + ": bound must be 'upper' or 'lower'");
        }
        if (!c.contains("value") || !(c.at("value").is_null() || c.at("value").is_number())) {
            return fail(name + ": value must be a number or null");
        }
        if (!c.contains("tolerance") || !c.at("tolerance").is_number()) return fail(name + ": tolerance");
        if (!c.contains("pass") || !c.at("pass").is_boolean()) return fail(name + ": pass must be boolean");
        if (!c.contains("inputs_digest") || !c.at("inputs_digest").is_string() ||
            c.at("inputs_digest").get<std::string>().size() != 16) {
            return fail(name + ": inputs_digest must be a 16-character string");
        }
        if (c.contains("message") && !c.at("message").is_string()) return fail(name + ": message");
        // pass flag must agree with value and tolerance
        bool expected = false;
        if (c.at("value").is_number()) {
            const double v = c.at("value").get<double>();
            const double tol = c.at("tolerance").get<double>();
            expected = c.at("bound") == "upper" ? v <= tol : v >= -tol;
        }
        if (expected != c.at("pass").get<bool>()) return fail(name + ": pass flag inconsistent with value");
        if (expected) ++passed;
    }
    const Json& s = j.at("summary");
    for (const char* key : {"total", "passed", "failed"}) {
        if (!s.contains(key) || !s.at(key).is_number_unsigned()) return fail(std::string("summary.") + key);
    }
    if (s.at("total").get<std::size_t>() != j.at("checks").size() || s.at("passed").get<std::size_t>() != passed ||
        s.at("failed").get<std::size_t>() != j.at("checks").size() - passed) {
        return fail("summary counts do not match the check list");
    }
    return true;
}

std::vector<CpRow> check_cp(const ExtendedGenerator& g, std::span<const double> t_grid)
{
    std::vector<CpRow> rows;
    for (double t : t_grid) {
        rows.push_back({t, extended_choi_min_eig(g, t), conservativity_residual(g, t), normalization_residual(g, t)});
    }
    return rows;
}

std::string cp_csv(const std::vector<CpRow>& rows)
{
    std::ostringstream os;
    os << "t,choi_min_eig,conservativity_residual,normalization_residual\n";
    for (const auto& r : rows) {
        os << format_double(r.t) << ',' << format_double(r.choi_min_eig) << ','
           << format_double(r.conservativity_residual) << ',' << format_double(r.normalization_residual) << '\n';
    }
    return os.str();
}

double log_log_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw DimensionError("log_log_slope: need >= 2 matching points");
    double mx = 0.0, my = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += std::log(x[k]);
        my += std::log(y[k]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = std::log(x[k]) - mx;
        sxy += dx * (std::log(y[k]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

} // namespace qmf
