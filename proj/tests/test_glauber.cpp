#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qmf/errors.hpp"
#include "qmf/extended_semigroup.hpp"
#include "qmf/glauber.hpp"
#include "qmf/random.hpp"

using namespace qmf;

namespace {

GlauberConfig chain(int n, Boundary b = Boundary::periodic)
{
    GlauberConfig cfg;
    cfg.sites = n;
    cfg.boundary = b;
    return cfg;
}

int nonzeros(const Matrix& m)
{
    return static_cast<int>((m.array() != Complex(0.0)).count());
}

} // namespace

TEST_CASE("site operator matches the tensor-product oracle")
{
    for (int n : {3, 4, 5}) {
        const GlauberConfig cfg = chain(n);
        for (int r = 1; r <= n; ++r) {
            for (int eps : {1, -1}) {
                for (int mu : {1, -1}) {
                    CHECK(build_site_operator(cfg, r, eps, mu).matrix() == oracle::glauber_site(n, r, eps, mu));
                }
            }
        }
    }
}

TEST_CASE("middle site of three, (++) configuration")
{
    const Matrix f = build_site_operator(chain(3), 2, 1, 1).matrix();
    CHECK(nonzeros(f) == 2);
    CHECK(f(0, 2) == Complex(1.0)); // |+-+> -> |+++>
    CHECK(f(7, 5) == Complex(1.0)); // |-+-> -> |--->

    Vector all_up = Vector::Zero(8);
    all_up(0) = 1.0;
    for (int r = 1; r <= 3; ++r) CHECK((build_site_operator(chain(3), r, 1, 1).matrix() * all_up).norm() == 0.0);
}

TEST_CASE("summed operator")
{
    const GlauberConfig cfg = chain(3);
    const Matrix f = build_F_lambda(cfg, 1, 1).matrix();
    CHECK(nonzeros(f) == 6);
    CHECK((f.array() == Complex(1.0) || f.array() == Complex(0.0)).all());
    Matrix sum = Matrix::Zero(8, 8);
    for (int r = 1; r <= 3; ++r) sum += oracle::glauber_site(3, r, 1, 1);
    CHECK(f == sum);

    const GlauberConfig open = chain(3, Boundary::open);
    CHECK(build_F_lambda(open, 1, 1).matrix() == build_site_operator(open, 2, 1, 1).matrix());
    CHECK_THROWS_AS(build_site_operator(open, 1, 1, 1), ParameterError);
}

TEST_CASE("adjoint identity")
{
    for (int n : {3, 4}) {
        const GlauberConfig cfg = chain(n);
        for (int eps : {1, -1}) {
            for (int mu : {1, -1}) {
                CHECK(build_F_lambda(cfg, eps, mu).matrix().adjoint() == build_F_lambda(cfg, -eps, -mu).matrix());
                for (int r = 1; r <= n; ++r) {
                    CHECK(build_site_operator(cfg, r, eps, mu).matrix().adjoint() ==
                          build_site_operator(cfg, r, -eps, -mu).matrix());
                }
            }
        }
    }
}

TEST_CASE("translation covariance")
{
    for (int n : {3, 4, 5}) {
        const GlauberConfig cfg = chain(n);
        const Matrix u = oracle::shift(n);
        for (int r = 1; r <= n; ++r) {
            const int next = r % n + 1;
            const Matrix moved = u * build_site_operator(cfg, r, 1, -1).matrix() * u.adjoint();
            CHECK(moved == build_site_operator(cfg, next, 1, -1).matrix());
        }
        const Matrix f = build_F_lambda(cfg, 1, 1).matrix();
        CHECK(u * f * u.adjoint() == f);
    }
}

TEST_CASE("invalid arguments")
{
    const GlauberConfig cfg = chain(3);
    CHECK_THROWS_AS(build_site_operator(cfg, 0, 1, 1), ParameterError);
    CHECK_THROWS_AS(build_site_operator(cfg, 4, 1, 1), ParameterError);
    CHECK_THROWS_AS(build_site_operator(cfg, 1, 0, 1), ParameterError);
    CHECK_THROWS_AS(build_site_operator(chain(7), 1, 1, 1), ParameterError);

    GlauberConfig bad = cfg;
    bad.gg_minus[static_cast<std::size_t>(Configuration::mp)] = Complex(-0.1, 0.0);
    try {
        bad.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "gg_minus.mp");
    }
    CHECK_THROWS_AS(chain(2).validate(), ConfigError);
    CHECK_THROWS_AS(build_glauber_structure_maps(bad), ConfigError);
    CHECK(parse_configuration("pm") == Configuration::pm);
    CHECK(configuration_of(-1, 1) == Configuration::mp);
    CHECK(left_sign(Configuration::mp) == -1);
    CHECK(right_sign(Configuration::mp) == 1);
}

TEST_CASE("structure maps of the chain")
{
    const GlauberConfig zero = chain(3);
    const StructureMapSet z = build_glauber_structure_maps(zero);
    CHECK(max_abs(z.theta_zero().matrix()) == 0.0);

    GlauberConfig pure = chain(3);
    pure.gg_minus[0] = 1.0;
    const StructureMapSet sm = build_glauber_structure_maps(pure);
    const Operator f = build_F_lambda(pure, 1, 1);
    CHECK(max_abs(sm.theta_zero().matrix() - dissipator_map(f, 1.0).matrix()) < 1e-13);
    CHECK(max_abs(sm.theta_zero()(Operator::identity(8)).matrix()) < 1e-13);

    Rng rng = substream(7, "glauber.structure");
    const GlauberConfig random = random_glauber_config(rng, 3, Boundary::periodic);
    const StructureMapSet full = build_glauber_structure_maps(random);
    CHECK(check_unital(full) <= 1e-10);
    CHECK(check_conjugation(full) <= 1e-10);
    for (int k = 0; k < 10; ++k) {
        const auto r = leibnitz_residual(full, random_operator(rng, 8), random_operator(rng, 8));
        CHECK(r.minus <= 1e-10);
        CHECK(r.plus <= 1e-10);
        CHECK(r.zero <= 1e-9);
    }
    CHECK(std::abs(full.ito().c_minus_plus - 2.0 * random.minus(Configuration::pp).real()) < 1e-9);
    CHECK(std::abs(full.ito().c_plus_minus - 2.0 * random.plus(Configuration::pp).real()) < 1e-9);
    CHECK(extended_choi_min_eig(build_extended_generator(full, Mode::physical), 0.5) >= -1e-9);

    // Hamiltonian part from the imaginary parts, against products built from the oracle operators.
    GlauberConfig ham = chain(3);
    ham.gg_minus[static_cast<std::size_t>(Configuration::pm)] = Complex(0.0, 0.7);
    ham.gg_plus[static_cast<std::size_t>(Configuration::mm)] = Complex(0.0, -0.4);
    Matrix fpm = Matrix::Zero(8, 8);
    Matrix fmm = Matrix::Zero(8, 8);
    for (int r = 1; r <= 3; ++r) {
        fpm += oracle::glauber_site(3, r, 1, -1);
        fmm += oracle::glauber_site(3, r, -1, -1);
    }
    const Matrix h = 0.7 * fpm.adjoint() * fpm + 0.4 * fmm * fmm.adjoint();
    const Matrix x = random_matrix(rng, 8, 8);
    CHECK(max_abs(build_glauber_structure_maps(ham).theta_zero()(Operator(x)).matrix() -
                  oracle::commutator_action(x, h)) < 1e-12);
}

TEST_CASE("unchecked construction with a negative rate loses complete positivity")
{
    GlauberConfig cfg = chain(3);
    cfg.gg_minus[0] = Complex(-0.5, 0.0);
    cfg.gg_plus[0] = Complex(0.2, 0.0);
    const StructureMapSet sm = build_glauber_structure_maps_unchecked(cfg);
    CHECK(extended_choi_min_eig(build_extended_generator(sm, Mode::physical), 0.5) < -1e-3);
}
