#include <catch_amalgamated.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "qmf/errors.hpp"
#include "qmf/extended_semigroup.hpp"
#include "qmf/glauber.hpp"
#include "qmf/random.hpp"
#include "qmf/run_config.hpp"

using namespace qmf;

namespace {

StructureMapSet glauber3()
{
    Rng rng = substream(42, "test.glauber");
    return build_glauber_structure_maps(random_glauber_config(rng, 3, Boundary::periodic));
}

StructureMapSet qubit(double w_minus, double w_plus = 0.0)
{
    return build_qubit_model(QubitModel{1.0, w_minus, w_plus});
}

// Blockwise action of exp(t L_ij) on the (2d)-square matrix x, using Eigen's exponential.
Matrix extended_action(const ExtendedGenerator& g, double t, const Matrix& x)
{
    const Index d = g.dim();
    Matrix out(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Matrix p = (t * g.entry(i, j).matrix()).exp();
            const Matrix blk = x.block(i * d, j * d, d, d);
            const Vector v = p * Eigen::Map<const Vector>(blk.data(), d * d);
            out.block(i * d, j * d, d, d) = Eigen::Map<const Matrix>(v.data(), d, d);
        }
    }
    return out;
}

} // namespace

TEST_CASE("generator layout and modes")
{
    const StructureMapSet sm = qubit(1.0, 0.2);
    const auto phys = build_extended_generator(sm, Mode::physical);
    const auto cons = phys.with_mode(Mode::conservative);
    const Matrix t0 = sm.theta_zero().matrix();
    const Matrix tm = sm.theta_minus().matrix();
    const Matrix tp = sm.theta_plus().matrix();
    CHECK(cons.entry(0, 0).matrix() == t0);
    CHECK(cons.entry(0, 1).matrix() == t0 + tm);
    CHECK(cons.entry(1, 0).matrix() == t0 + tp);
    CHECK(max_abs(cons.entry(1, 1).matrix() - (t0 + tp + tm)) < 1e-15);
    CHECK(max_abs(phys.entry(1, 1).matrix() - cons.entry(1, 1).matrix() - Matrix::Identity(4, 4)) < 1e-15);
    CHECK(cons.with_mode(Mode::physical).entry(1, 1).matrix() == phys.entry(1, 1).matrix());

    const StructureMapSet zero(SuperOperator::zero(2), SuperOperator::zero(2), SuperOperator::zero(2),
                               ItoTable::fock());
    const auto z = build_extended_generator(zero, Mode::physical);
    CHECK(z.entry(1, 1).matrix() == Matrix::Identity(4, 4));
    CHECK(max_abs(z.entry(0, 1).matrix()) == 0.0);

    CHECK(parse_mode("conservative") == Mode::conservative);
    CHECK_THROWS_AS(parse_mode("other"), ConfigError);
}

TEST_CASE("generator normalization on J")
{
    const StructureMapSet sm = glauber3();
    const auto phys = build_extended_generator(sm, Mode::physical);
    const BlockOp2 j = BlockOp2::ones(sm.dim());
    CHECK(max_abs(phys.with_mode(Mode::conservative).apply(j).as_full()) < 1e-12);
    CHECK(max_abs(phys.apply(j).as_full() - BlockOp2::lower_projector(sm.dim()).as_full()) <= 1e-12);
    CHECK(kappa_residual(phys) <= 1e-12);

    for (double t : {0.1, 0.25, 0.5, 1.0}) {
        CHECK(normalization_residual(phys, t) <= 1e-10);
        CHECK(conservativity_residual(phys, t) <= 1e-10);
        const Matrix pj = apply_extended(phys, t, j).as_full();
        const Index d = sm.dim();
        CHECK(max_abs(pj.block(d, d, d, d) - std::exp(t) * Matrix::Identity(d, d)) <= 1e-10 * std::exp(t));
        CHECK(max_abs(pj.block(0, d, d, d) - Matrix::Identity(d, d)) <= 1e-10);
    }
}

TEST_CASE("extended Choi matrix agrees with a dense oracle")
{
    const StructureMapSet sm = qubit(0.9, 0.4);
    const auto g = build_extended_generator(sm, Mode::physical);
    const double t = 0.5;
    const Matrix dense = oracle::choi([&](const Matrix& x) { return extended_action(g, t, x); }, 4);
    CHECK(max_abs(extended_choi(propagate(g, t)) - dense) < 1e-12);
    CHECK(std::abs(extended_choi_min_eig(g, t) - oracle::min_eig_hermitian(dense)) < 1e-12);
    CHECK(std::abs(extended_choi_min_eig(g, 0.0)) < 1e-14);
}

TEST_CASE("complete positivity on the Glauber chain")
{
    const auto g = build_extended_generator(glauber3(), Mode::physical);
    for (double t : {0.1, 0.25, 0.5, 1.0}) CHECK(extended_choi_min_eig(g, t) >= -1e-9);
}

TEST_CASE("complete positivity threshold in the Ito coefficient")
{
    // Calibrated c_mp = 2 w_minus; the extended semigroup is CP iff c_mp >= 1.
    for (double t : {0.1, 0.5, 1.0}) {
        CHECK(extended_choi_min_eig(build_extended_generator(qubit(0.5), Mode::physical), t) >= -1e-9);
        CHECK(extended_choi_min_eig(build_extended_generator(qubit(2.0, 1.0), Mode::physical), t) >= -1e-9);
        CHECK(extended_choi_min_eig(build_extended_generator(qubit(0.45), Mode::physical), t) < -1e-4);
    }
}

TEST_CASE("wrong-sign dissipator is detected")
{
    const Operator f(oracle::unit(2, 0, 1));
    const StructureMapSet sm(SuperOperator::zero(2), Complex(-1.0) * dissipator_map(f, 1.0), SuperOperator::zero(2),
                             ItoTable::fock());
    CHECK(extended_choi_min_eig(build_extended_generator(sm, Mode::physical), 0.5) < -1e-3);
}

TEST_CASE("propagation guards and semigroup law")
{
    const auto g = build_extended_generator(qubit(1.0, 0.3), Mode::physical);
    Rng rng = substream(1, "semigroup");
    const BlockOp2 x = BlockOp2::from_full(random_matrix(rng, 4, 4), 2);
    CHECK(apply_extended(g, 0.0, x).as_full() == x.as_full());
    CHECK_THROWS_AS(apply_extended(g, -0.1, x), ParameterError);
    CHECK_THROWS_AS(propagate(g, -1.0), ParameterError);

    const Matrix joint = apply_extended(g, 0.7, x).as_full();
    const Matrix split = apply_extended(g, 0.3, apply_extended(g, 0.4, x)).as_full();
    CHECK(max_abs(joint - split) < 1e-12);
    CHECK(max_abs(joint - extended_action(g, 0.7, x.as_full())) < 1e-12);
}

TEST_CASE("delta map")
{
    Rng rng = substream(2, "delta");
    const Index d = 3;
    const DeltaMap delta(d);
    const Matrix e = BlockOp2::lower_projector(d).as_full();
    const BlockOp2 x = BlockOp2::from_full(random_matrix(rng, 2 * d, 2 * d), d);
    const Matrix xf = x.as_full();
    CHECK(max_abs(delta(x).as_full() - Complex(0, 1) * (xf * e - e * xf)) < 1e-14);

    const BlockOp2 sq = delta.squared(x);
    CHECK(max_abs(sq.as_full() - delta(delta(x)).as_full()) < 1e-14);
    CHECK(max_abs(sq.block(0, 0).matrix()) == 0.0);
    CHECK(sq.block(0, 1).matrix() == -x.block(0, 1).matrix());

    for (double t : {0.0, 0.3, 2.0}) {
        const BlockOp2 y = delta_sq_semigroup(t, x);
        CHECK(y.block(0, 0).matrix() == x.block(0, 0).matrix());
        CHECK(max_abs(y.block(1, 0).matrix() - std::exp(-t / 2) * x.block(1, 0).matrix()) < 1e-15);
    }
    CHECK_THROWS_AS(delta_sq_semigroup(-1.0, x), ParameterError);
}

TEST_CASE("dissipativity")
{
    const StructureMapSet sm = glauber3();
    const auto g = build_extended_generator(sm, Mode::physical);
    const Index d = sm.dim();
    // L(J) = L(J*J) = 0, but [J, E] = [[0, 1], [-1, 0]] (x) 1, so R = |delta(J)|^2 = 1.
    const Matrix jf = BlockOp2::ones(d).as_full();
    const Matrix ef = BlockOp2::lower_projector(d).as_full();
    const Matrix dj = Complex(0, 1) * (jf * ef - ef * jf);
    CHECK(max_abs(dj.adjoint() * dj - Matrix::Identity(2 * d, 2 * d)) < 1e-15);
    CHECK(std::abs(dissipativity_residual_min_eig(g, BlockOp2::ones(d)) - 1.0) < 1e-12);

    const StructureMapSet zero(SuperOperator::zero(2), SuperOperator::zero(2), SuperOperator::zero(2),
                               ItoTable::fock());
    const auto gz = build_extended_generator(zero, Mode::conservative);
    CHECK(std::abs(dissipativity_residual_min_eig(gz, BlockOp2::lower_projector(2))) < 1e-15);

    Rng rng = substream(3, "dissip");
    for (int k = 0; k < 20; ++k) {
        CHECK(dissipativity_residual_min_eig(g, BlockOp2::from_full(random_matrix(rng, 2 * d, 2 * d), d)) >= -1e-8);
    }
    const auto gq = build_extended_generator(qubit(0.8, 0.2), Mode::physical);
    for (int k = 0; k < 20; ++k) {
        CHECK(dissipativity_residual_min_eig(gq, random_matrix(rng, 8, 8), 2) >= -1e-8);
    }
    CHECK_THROWS_AS(dissipativity_residual_min_eig(gq, random_matrix(rng, 6, 6), 2), DimensionError);

    // Below the CP threshold the inequality fails as well.
    const auto bad = build_extended_generator(qubit(0.3), Mode::physical);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        worst = std::min(worst, dissipativity_residual_min_eig(bad, BlockOp2::from_full(random_matrix(rng, 4, 4), 2)));
    }
    CHECK(worst < -1e-3);
}

TEST_CASE("generator commutes with delta squared")
{
    const auto g = build_extended_generator(glauber3(), Mode::physical);
    CHECK(commutation_residual(g) <= 1e-12);
    CHECK(commutation_residual(g.with_mode(Mode::conservative)) <= 1e-12);
}

TEST_CASE("resolvent approximation")
{
    const double lambda = -0.7;
    std::array<SuperOperator, 4> entries{
        Complex(lambda) * SuperOperator::identity(2), Complex(lambda) * SuperOperator::identity(2),
        Complex(lambda) * SuperOperator::identity(2), Complex(lambda) * SuperOperator::identity(2)};
    const ExtendedGenerator scalar(entries, Mode::conservative, nullptr);
    const double eps = 0.1;
    const auto le = resolvent_generator(scalar, eps);
    CHECK(max_abs(le.entry(1, 0).matrix() - lambda / (1.0 - eps * lambda) * Matrix::Identity(4, 4)) < 1e-14);

    const auto g = build_extended_generator(qubit(1.0, 0.3), Mode::physical);
    for (double e : {1e-2, 1e-3}) {
        const auto ge = resolvent_generator(g, e);
        for (int k = 0; k < 4; ++k) {
            const Matrix& l = g.entries()[static_cast<std::size_t>(k)].matrix();
            const double n = l.operatorNorm();
            CHECK((ge.entries()[static_cast<std::size_t>(k)].matrix() - l).operatorNorm() <=
                  e * n * n / (1.0 - e * n) + 1e-12);
        }
    }

    std::vector<double> eps_grid{1e-2, 5e-3, 2.5e-3};
    std::vector<double> err;
    for (double e : eps_grid) err.push_back(propagator_distance(resolvent_generator(g, e), g, 1.0));
    CHECK(std::abs(std::log(err[0] / err[2]) / std::log(4.0) - 1.0) < 0.2);

    std::array<SuperOperator, 4> unit_entries{SuperOperator::identity(2), SuperOperator::identity(2),
                                              SuperOperator::identity(2), SuperOperator::identity(2)};
    const ExtendedGenerator one(unit_entries, Mode::conservative, nullptr);
    CHECK_THROWS_AS(resolvent_generator(one, 1.0), ParameterError);
    CHECK_THROWS_AS(resolvent_generator(one, -1.0), ParameterError);
}

TEST_CASE("Runge-Kutta integration of the four entries")
{
    const auto g = build_extended_generator(qubit(1.0, 0.4), Mode::physical);
    const double t = 0.7;
    const double h = 1e-4;
    for (const auto& entry : g.entries()) {
        const Matrix& l = entry.matrix();
        Matrix p = Matrix::Identity(4, 4);
        for (int k = 0; k < 7000; ++k) {
            const Matrix k1 = p * l;
            const Matrix k2 = (p + 0.5 * h * k1) * l;
            const Matrix k3 = (p + 0.5 * h * k2) * l;
            const Matrix k4 = (p + h * k3) * l;
            p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        CHECK(max_abs(exponentiate(entry, t).matrix() - p) <= 1e-8);
    }
}

TEST_CASE("malformed generators are rejected")
{
    const StructureMapSet sm = qubit(1.0);
    const Operator f(oracle::unit(2, 0, 1));
    const StructureMapSet bad(commutator_map(f), sm.theta_zero(), commutator_map(f), ItoTable::fock());
    CHECK_THROWS_AS(build_extended_generator(bad, Mode::physical), AxiomError);

    const auto g = build_extended_generator(glauber3(), Mode::physical);
    CHECK_THROWS_AS(g.apply(BlockOp2::ones(2)), DimensionError);
}
