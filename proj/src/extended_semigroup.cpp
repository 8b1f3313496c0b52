// extended_semigroup.cpp: Extended generator assembly, propagation and positivity diagnostics

#include "qmf/extended_semigroup.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

constexpr double kAxiomTolerance = 1e-10;
constexpr Index kMaxChoiDim = 64;

BlockOp2 blockwise(const std::array<SuperOperator, 4>& maps, const BlockOp2& x)
{
    if (maps[0].dim() != x.dim()) {
        throw DimensionError("block operator dimension does not match the generator");
    }
    return BlockOp2(maps[0](x.block(0, 0)), maps[1](x.block(0, 1)), maps[2](x.block(1, 0)),
                    maps[3](x.block(1, 1)));
}

double block_relative_residual(const BlockOp2& value, const BlockOp2& target)
{
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Matrix& want = target.block(i, j).matrix();
            const double scale = std::max(max_abs(want), 1e-300);
            worst = std::max(worst, max_abs(value.block(i, j).matrix() - want) / scale);
        }
    }
    return worst;
}

// Apply an entrywise generator to every 2d x 2d outer block of an (n*2d)-square matrix.
Matrix apply_outer(const ExtendedGenerator& g, const Matrix& x, int level)
{
    const Index d = g.dim();
    const Index b = 2 * d;
    Matrix out(x.rows(), x.cols());
    for (int u = 0; u < level; ++u) {
        for (int v = 0; v < level; ++v) {
            const BlockOp2 piece = BlockOp2::from_full(x.block(u * b, v * b, b, b), d);
            out.block(u * b, v * b, b, b) = g.apply(piece).as_full();
        }
    }
    return out;
}

} // namespace

std::string_view to_string(Mode mode)
{
    return mode == Mode::physical ? "physical" : "conservative";
}

Mode parse_mode(std::string_view text)
{
    if (text == "physical") return Mode::physical;
    if (text == "conservative") return Mode::conservative;
    throw ConfigError("mode", "expected 'physical' or 'conservative', got '" + std::string(text) + "'");
}

// ------------------------------------------------------- ExtendedGenerator

ExtendedGenerator::ExtendedGenerator(std::array<SuperOperator, 4> entries, Mode mode,
                                     std::shared_ptr<const StructureMapSet> source)
    : entries_(std::move(entries)), mode_(mode), source_(std::move(source))
{
    for (const auto& e : entries_) {
        if (e.dim() != entries_[0].dim()) {
            throw DimensionError("extended generator entries must share a dimension");
        }
    }
}

ExtendedGenerator ExtendedGenerator::with_mode(Mode mode) const
{
    if (mode == mode_) return *this;
    auto entries = entries_;
    const auto id = SuperOperator::identity(dim());
    if (mode == Mode::physical) {
        entries[3] += id;
    } else {
        entries[3] -= id;
    }
    return ExtendedGenerator(std::move(entries), mode, source_);
}

BlockOp2 ExtendedGenerator::apply(const BlockOp2& x) const { return blockwise(entries_, x); }

BlockOp2 ExtendedPropagator::apply(const BlockOp2& x) const { return blockwise(entries, x); }

ExtendedGenerator build_extended_generator(const StructureMapSet& sm, Mode mode)
{
    const double unital = check_unital(sm);
    const double conj = check_conjugation(sm);
    if (unital > kAxiomTolerance || conj > kAxiomTolerance) {
        std::ostringstream os;
        os << "structure maps rejected: unital residual " << unital << ", conjugation residual "
           << conj << " (tolerance " << kAxiomTolerance << ")";
        throw AxiomError(os.str());
    }
    const auto& t0 = sm.theta_zero();
    std::array<SuperOperator, 4> entries{t0, t0 + sm.theta_minus(), t0 + sm.theta_plus(),
                                         t0 + sm.theta_plus() + sm.theta_minus()};
    if (mode == Mode::physical) {
        entries[3] += SuperOperator::identity(sm.dim());
    }
    return ExtendedGenerator(std::move(entries), mode, std::make_shared<const StructureMapSet>(sm));
}

ExtendedPropagator propagate(const ExtendedGenerator& g, double t)
{
    if (!(t >= 0.0)) {
        throw ParameterError("extended semigroup is only defined for t >= 0");
    }
    ExtendedPropagator p{t, {exponentiate(g.entry(0, 0), t), exponentiate(g.entry(0, 1), t),
                             exponentiate(g.entry(1, 0), t), exponentiate(g.entry(1, 1), t)}};
    return p;
}

BlockOp2 apply_extended(const ExtendedGenerator& g, double t, const BlockOp2& x)
{
    if (!(t >= 0.0)) {
        throw ParameterError("extended semigroup is only defined for t >= 0");
    }
    if (t == 0.0) return x;
    return propagate(g, t).apply(x);
}

Matrix extended_choi(const ExtendedPropagator& p)
{
    const Index d = p.entries[0].dim();
    const Index n = 2 * d;
    Matrix c = Matrix::Zero(n * n, n * n);
    for (Index bi = 0; bi < 2; ++bi) {
        for (Index bj = 0; bj < 2; ++bj) {
            const Matrix& prop = p.entry(static_cast<int>(bi), static_cast<int>(bj)).matrix();
            for (Index r = 0; r < d; ++r) {
                for (Index s = 0; s < d; ++s) {
                    // image of the matrix unit at (bi*d + r, bj*d + s)
                    const Index big_i = bi * d + r;
                    const Index big_j = bj * d + s;
                    const auto col = prop.col(s * d + r);
                    for (Index q = 0; q < d; ++q) {
                        for (Index pp = 0; pp < d; ++pp) {
                            c(big_i * n + bi * d + pp, big_j * n + bj * d + q) = col(q * d + pp);
                        }
                    }
                }
            }
        }
    }
    return c;
}

double extended_choi_min_eig(const ExtendedGenerator& g, double t)
{
    if (2 * g.dim() > kMaxChoiDim) {
        throw ParameterError("extended Choi matrix limited to 2d <= " + std::to_string(kMaxChoiDim) +
                             " (got 2d = " + std::to_string(2 * g.dim()) + ")");
    }
    return min_eig(extended_choi(propagate(g, t)));
}

double conservativity_residual(const ExtendedGenerator& g, double t)
{
    const auto cons = g.with_mode(Mode::conservative);
    const auto ones = BlockOp2::ones(g.dim());
    return block_relative_residual(apply_extended(cons, t, ones), ones);
}

double normalization_residual(const ExtendedGenerator& g, double t)
{
    const auto phys = g.with_mode(Mode::physical);
    const Index d = g.dim();
    const auto one = Operator::identity(d);
    const BlockOp2 target(one, one, one, Complex(std::exp(t)) * one);
    return block_relative_residual(apply_extended(phys, t, BlockOp2::ones(d)), target);
}

double kappa_residual(const ExtendedGenerator& g)
{
    const auto phys = g.with_mode(Mode::physical);
    const Index d = g.dim();
    const Matrix diff = phys.apply(BlockOp2::ones(d)).as_full() -
                        BlockOp2::lower_projector(d).as_full();
    return max_abs(diff);
}

// ------------------------------------------------------- delta and dissipativity

BlockOp2 DeltaMap::operator()(const BlockOp2& x) const
{
    if (x.dim() != dim_) throw DimensionError("DeltaMap: dimension mismatch");
    const Matrix e = BlockOp2::lower_projector(dim_).as_full();
    const Matrix full = x.as_full();
    return BlockOp2::from_full(kI * (full * e - e * full), dim_);
}

BlockOp2 DeltaMap::squared(const BlockOp2& x) const
{
    if (x.dim() != dim_) throw DimensionError("DeltaMap: dimension mismatch");
    const auto zero = Operator::zero(dim_);
    return BlockOp2(zero, Complex(-1.0) * x.block(0, 1), Complex(-1.0) * x.block(1, 0), zero);
}

double dissipativity_residual_min_eig(const ExtendedGenerator& g, const BlockOp2& x)
{
    return dissipativity_residual_min_eig(g, x.as_full(), 1);
}

double dissipativity_residual_min_eig(const ExtendedGenerator& g, const Matrix& x, int level)
{
    const Index d = g.dim();
    if (level < 1 || x.rows() != level * 2 * d || x.cols() != x.rows()) {
        throw DimensionError("dissipativity: operand must be square of size level * 2d");
    }
    const auto cons = g.with_mode(Mode::conservative);
    const Matrix xd = x.adjoint();

    Matrix e = Matrix::Zero(x.rows(), x.cols());
    for (int u = 0; u < level; ++u) {
        e.block(u * 2 * d + d, u * 2 * d + d, d, d).setIdentity();
    }
    const Matrix delta = kI * (x * e - e * x);

    const Matrix r = apply_outer(cons, xd * x, level) - apply_outer(cons, xd, level) * x -
                     xd * apply_outer(cons, x, level) + delta.adjoint() * delta;
    return min_eig(r);
}

BlockOp2 delta_sq_semigroup(double t, const BlockOp2& x)
{
    if (!(t >= 0.0)) throw ParameterError("delta_sq_semigroup: t must be >= 0");
    const Complex damp(std::exp(-0.5 * t));
    return BlockOp2(x.block(0, 0), damp * x.block(0, 1), damp * x.block(1, 0), x.block(1, 1));
}

double commutation_residual(const ExtendedGenerator& g)
{
    const Index d = g.dim();
    const DeltaMap delta(d);
    const auto zero = Operator::zero(d);
    double worst = 0.0;
    for (int bi = 0; bi < 2; ++bi) {
        for (int bj = 0; bj < 2; ++bj) {
            for (Index p = 0; p < d; ++p) {
                for (Index q = 0; q < d; ++q) {
                    Matrix unit = Matrix::Zero(d, d);
                    unit(p, q) = 1.0;
                    std::array<Operator, 4> blocks{zero, zero, zero, zero};
                    blocks[static_cast<std::size_t>(2 * bi + bj)] = Operator(unit);
                    const BlockOp2 x(blocks[0], blocks[1], blocks[2], blocks[3]);
                    const Matrix lhs = g.apply(delta.squared(x)).as_full();
                    const Matrix rhs = delta.squared(g.apply(x)).as_full();
                    worst = std::max(worst, max_abs(lhs - rhs));
                }
            }
        }
    }
    return worst;
}

// ------------------------------------------------------- resolvent approximation

ExtendedGenerator resolvent_generator(const ExtendedGenerator& g, double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ParameterError("resolvent_generator: eps must be a positive finite real");
    }
    const Index n = g.dim() * g.dim();
    std::array<SuperOperator, 4> entries = g.entries();
    for (int k = 0; k < 4; ++k) {
        const Matrix& l = g.entries()[static_cast<std::size_t>(k)].matrix();
        const Matrix shifted = Matrix::Identity(n, n) - eps * l;
        Eigen::PartialPivLU<Matrix> lu(shifted);
        if (!(lu.rcond() > 1e-12)) {
            std::ostringstream os;
            os << "eps too large: 1 - eps L is singular at block (" << k / 2 << "," << k % 2 << ")";
            throw ParameterError(os.str());
        }
        // L and (1 - eps L)^-1 commute.
        entries[static_cast<std::size_t>(k)] = SuperOperator(lu.solve(l));
    }
    return ExtendedGenerator(std::move(entries), g.mode(), g.source());
}

double propagator_distance(const ExtendedGenerator& a, const ExtendedGenerator& b, double t)
{
    const auto pa = propagate(a, t);
    const auto pb = propagate(b, t);
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        worst = std::max(worst, (pa.entries[k].matrix() - pb.entries[k].matrix()).norm());
    }
    return worst;
}

} // namespace qmf
