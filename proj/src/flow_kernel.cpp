// flow_kernel.cpp: Step functions, evolution products and CP-kernel diagnostics

#include "qmf/flow_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

constexpr double kMergeDistance = 1e-12;

double overlap_length(double a, double b, double c, double d)
{
    return std::max(0.0, std::min(b, d) - std::max(a, c));
}

void require_window(double s, double t)
{
    if (!std::isfinite(s) || !std::isfinite(t) || !(s < t)) {
        std::ostringstream os;
        os << "evolution window requires s < t (got s = " << s << ", t = " << t << ")";
        throw ParameterError(os.str());
    }
}

// Propagators exp(t1 L_jk) [o exp(t2 L_jk)] for every pair of values in fs.
std::vector<SuperOperator> kernel_propagators(const StructureMapSet& sm, std::span<const Complex> fs,
                                              double t1, double t2)
{
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw ParameterError("kernel times must be >= 0");
    std::vector<SuperOperator> out;
    out.reserve(fs.size() * fs.size());
    for (const Complex fj : fs) {
        for (const Complex fk : fs) {
            const auto gen = point_generator(sm, fj, fk, Mode::physical);
            SuperOperator p = exponentiate(gen, t1);
            if (t2 > 0.0) p = p * exponentiate(gen, t2);
            out.push_back(std::move(p));
        }
    }
    return out;
}

double kernel_min_eig(const StructureMapSet& sm, std::span<const Complex> fs,
                      std::span<const Operator> xs, double t1, double t2)
{
    if (fs.size() != xs.size() || fs.empty()) {
        throw DimensionError("kernel check: fs and xs must be non-empty and of equal length");
    }
    const Index d = sm.dim();
    const auto props = kernel_propagators(sm, fs, t1, t2);
    const auto n = static_cast<Index>(fs.size());
    Matrix block(n * d, n * d);
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            const Operator arg = xs[static_cast<std::size_t>(j)].adjoint() * xs[static_cast<std::size_t>(k)];
            block.block(j * d, k * d, d, d) = props[static_cast<std::size_t>(j * n + k)](arg).matrix();
        }
    }
    return min_eig(block);
}

} // namespace

// ------------------------------------------------------- StepFunction

StepFunction::StepFunction(std::vector<StepPiece> pieces) : pieces_(std::move(pieces))
{
    for (const auto& p : pieces_) {
        if (!std::isfinite(p.a) || !std::isfinite(p.b) || !(p.a < p.b)) {
            throw ParameterError("step function piece requires finite a < b");
        }
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const StepPiece& l, const StepPiece& r) { return l.a < r.a; });
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
        if (pieces_[k].a < pieces_[k - 1].b) {
            throw ParameterError("step function pieces overlap");
        }
    }
}

StepFunction StepFunction::indicator(double a, double b, Complex value)
{
    return StepFunction({StepPiece{a, b, value}});
}

Complex StepFunction::operator()(double x) const
{
    for (const auto& p : pieces_) {
        if (x >= p.a && x < p.b) return p.value;
    }
    return 0.0;
}

std::vector<double> StepFunction::breakpoints() const
{
    std::vector<double> out;
    out.reserve(2 * pieces_.size());
    for (const auto& p : pieces_) {
        out.push_back(p.a);
        out.push_back(p.b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Complex step_inner_product(const StepFunction& f, const StepFunction& g)
{
    Complex sum = 0.0;
    for (const auto& pf : f.pieces()) {
        for (const auto& pg : g.pieces()) {
            const double len = overlap_length(pf.a, pf.b, pg.a, pg.b);
            if (len > 0.0) sum += std::conj(pf.value) * pg.value * len;
        }
    }
    return sum;
}

Complex step_inner_product(const StepFunction& f, const StepFunction& g, Window window, Region region)
{
    if (region == Region::whole_line) return step_inner_product(f, g);
    Complex sum = 0.0;
    for (const auto& pf : f.pieces()) {
        for (const auto& pg : g.pieces()) {
            const double lo = std::max(pf.a, pg.a);
            const double hi = std::min(pf.b, pg.b);
            if (hi <= lo) continue;
            const double inside = overlap_length(lo, hi, window.s, window.t);
            const double len = region == Region::inside ? inside : (hi - lo) - inside;
            if (len > 0.0) sum += std::conj(pf.value) * pg.value * len;
        }
    }
    return sum;
}

// ------------------------------------------------------- point semigroups

SuperOperator point_generator(const StructureMapSet& sm, Complex f0, Complex g0, Mode mode)
{
    SuperOperator gen = sm.theta_zero() + g0 * sm.theta_minus() + std::conj(f0) * sm.theta_plus();
    if (mode == Mode::physical) {
        gen += std::conj(f0) * g0 * SuperOperator::identity(sm.dim());
    }
    return gen;
}

EvolutionMap evolution_map(const StructureMapSet& sm, const StepFunction& f, const StepFunction& g,
                           double s, double t, Mode mode)
{
    return evolution_map(sm, f, g, s, t, mode, {});
}

EvolutionMap evolution_map(const StructureMapSet& sm, const StepFunction& f, const StepFunction& g,
                           double s, double t, Mode mode, std::span<const double> extra_cuts)
{
    require_window(s, t);
    std::vector<double> cuts;
    auto add_interior = [&](double x) {
        if (x > s && x < t) cuts.push_back(x);
    };
    for (double x : f.breakpoints()) add_interior(x);
    for (double x : g.breakpoints()) add_interior(x);
    for (double x : extra_cuts) add_interior(x);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> grid{s};
    for (double x : cuts) {
        if (x - grid.back() > kMergeDistance) grid.push_back(x);
    }
    if (t - grid.back() > kMergeDistance) {
        grid.push_back(t);
    } else {
        grid.back() = t;
    }

    SuperOperator product = SuperOperator::identity(sm.dim());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double lo = grid[k];
        const double hi = grid[k + 1];
        const double mid = 0.5 * (lo + hi);
        const auto gen = point_generator(sm, f(mid), g(mid), mode);
        product = product * exponentiate(gen, hi - lo);
    }
    return EvolutionMap{std::move(product), Window{s, t}, f, g, grid.size() - 1};
}

Operator flow_matrix_element(const StructureMapSet& sm, const StepFunction& f,
                             const StepFunction& g, double s, double t, const Operator& x)
{
    const auto evo = evolution_map(sm, f, g, s, t, Mode::physical);
    const Complex outside = step_inner_product(f, g, Window{s, t}, Region::complement);
    return std::exp(outside) * evo.map(x);
}

// ------------------------------------------------------- CP-kernel diagnostics

Matrix block_form(const StructureMapSet& sm, std::span<const Complex> fs, double t, const Operator& x)
{
    if (fs.empty()) throw DimensionError("block_form: need at least one value");
    const Index d = sm.dim();
    const auto props = kernel_propagators(sm, fs, t, 0.0);
    const auto n = static_cast<Index>(fs.size());
    Matrix out(n * d, n * d);
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            out.block(j * d, k * d, d, d) = props[static_cast<std::size_t>(j * n + k)](x).matrix();
        }
    }
    return out;
}

double q_bound_check(const StructureMapSet& sm, std::span<const Complex> fs, double t, const Operator& x)
{
    const double norm = operator_norm(x.matrix());
    const Matrix ones = block_form(sm, fs, t, Operator::identity(sm.dim()));
    return min_eig(norm * ones - block_form(sm, fs, t, x));
}

double kernel_cp_residual(const StructureMapSet& sm, std::span<const Complex> fs,
                          std::span<const Operator> xs, double t)
{
    return kernel_min_eig(sm, fs, xs, t, 0.0);
}

double schur_product_check(const StructureMapSet& sm, std::span<const Complex> fs,
                           std::span<const Operator> xs, double t1, double t2)
{
    return kernel_min_eig(sm, fs, xs, t1, t2);
}

} // namespace qmf
