// structure_maps.cpp: Structure-map axioms, Ito calibration and the Evans-Hudson builder

#include "qmf/structure_maps.hpp"

#include <sstream>

#include <Eigen/QR>

#include "qmf/errors.hpp"
#include "qmf/random.hpp"

namespace qmf {

namespace {

constexpr double kUnitalTolerance = 1e-10;
constexpr double kConjugationTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr std::uint64_t kCalibrationSeed = 0x17017ab1eULL;
constexpr int kCalibrationPairs = 4;

std::string format_complex(Complex c)
{
    std::ostringstream os;
    os.precision(6);
    os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i)";
    return os.str();
}

double unital_residual(const SuperOperator& theta)
{
    return max_abs(theta.apply(Operator::identity(theta.dim())).matrix());
}

} // namespace

StructureMapSet::StructureMapSet(SuperOperator theta_minus, SuperOperator theta_zero,
                                 SuperOperator theta_plus, ItoTable ito)
    : theta_minus_(std::move(theta_minus)),
      theta_zero_(std::move(theta_zero)),
      theta_plus_(std::move(theta_plus)),
      ito_(ito),
      calibration_{false, ito, 0.0}
{
    if (theta_minus_.dim() != theta_zero_.dim() || theta_plus_.dim() != theta_zero_.dim()) {
        throw DimensionError("structure maps must share one operator dimension");
    }
    const double residual = check_unital(*this);
    if (residual > kUnitalTolerance) {
        std::ostringstream os;
        os << "structure maps do not kill the identity: max ||theta(1)|| = " << residual;
        throw AxiomError(os.str());
    }
}

const SuperOperator& StructureMapSet::theta(int alpha) const
{
    switch (alpha) {
    case -1: return theta_minus_;
    case 0: return theta_zero_;
    case 1: return theta_plus_;
    default: throw ParameterError("structure map index must be -1, 0 or 1");
    }
}

StructureMapSet StructureMapSet::calibrated() const
{
    const auto fit = calibrate_ito(theta_minus_, theta_zero_, theta_plus_, ito_);
    StructureMapSet out = *this;
    out.ito_ = fit.table;
    out.calibration_ = fit.info;
    std::ostringstream os;
    if (fit.info.calibrated) {
        os << "Ito table calibrated from c_mp = " << format_complex(fit.info.prior.c_minus_plus)
           << ", c_pm = " << format_complex(fit.info.prior.c_plus_minus)
           << " to c_mp = " << format_complex(fit.table.c_minus_plus)
           << ", c_pm = " << format_complex(fit.table.c_plus_minus);
    } else {
        os << "Ito table kept as supplied: correction terms are linearly dependent";
    }
    out.notes_.push_back(os.str());
    return out;
}

StructureMapSet StructureMapSet::with_note(std::string note) const
{
    StructureMapSet out = *this;
    out.notes_.push_back(std::move(note));
    return out;
}

double check_unital(const StructureMapSet& sm)
{
    return std::max({unital_residual(sm.theta_minus()), unital_residual(sm.theta_zero()),
                     unital_residual(sm.theta_plus())});
}

double check_conjugation(const StructureMapSet& sm)
{
    const Index d = sm.dim();
    double worst = 0.0;
    auto probe = [&](const Operator& h) {
        // h is Hermitian, so h* = h on the left-hand side.
        worst = std::max(worst, max_abs(sm.theta_minus()(h).matrix() -
                                        sm.theta_plus()(h).matrix().adjoint()));
        worst = std::max(worst, max_abs(sm.theta_plus()(h).matrix() -
                                        sm.theta_minus()(h).matrix().adjoint()));
        const Matrix t0 = sm.theta_zero()(h).matrix();
        worst = std::max(worst, max_abs(t0 - t0.adjoint()));
    };
    for (Index j = 0; j < d; ++j) {
        for (Index k = j; k < d; ++k) {
            Matrix sym = Matrix::Zero(d, d);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            probe(Operator(sym));
            if (j != k) {
                Matrix anti = Matrix::Zero(d, d);
                anti(j, k) = kI;
                anti(k, j) = -kI;
                probe(Operator(anti));
            }
        }
    }
    return worst;
}

LeibnitzResidual leibnitz_residual(const StructureMapSet& sm, const Operator& x, const Operator& y)
{
    if (x.dim() != sm.dim() || y.dim() != sm.dim()) {
        throw DimensionError("leibnitz_residual: operands must match the structure-map dimension");
    }
    const Operator xy = x * y;
    auto derivation_defect = [&](const SuperOperator& theta) {
        return theta(xy) - theta(x) * y - x * theta(y);
    };

    LeibnitzResidual r;
    r.minus = max_abs(derivation_defect(sm.theta_minus()).matrix());
    r.plus = max_abs(derivation_defect(sm.theta_plus()).matrix());

    const Matrix correction = sm.ito().c_minus_plus *
                                  (sm.theta_minus()(x) * sm.theta_plus()(y)).matrix() +
                              sm.ito().c_plus_minus *
                                  (sm.theta_plus()(x) * sm.theta_minus()(y)).matrix();
    r.zero = max_abs(derivation_defect(sm.theta_zero()).matrix() - correction);
    return r;
}

ItoFit calibrate_ito(const SuperOperator& theta_minus, const SuperOperator& theta_zero,
                     const SuperOperator& theta_plus, const ItoTable& prior)
{
    const Index d = theta_zero.dim();
    const Index block = d * d;
    Rng rng(kCalibrationSeed);

    Matrix design(kCalibrationPairs * block, 2);
    Vector rhs(kCalibrationPairs * block);
    for (int k = 0; k < kCalibrationPairs; ++k) {
        const Operator x = random_operator(rng, d);
        const Operator y = random_operator(rng, d);
        const Operator defect = theta_zero(x * y) - theta_zero(x) * y - x * theta_zero(y);
        design.block(k * block, 0, block, 1) = vectorize(theta_minus(x) * theta_plus(y));
        design.block(k * block, 1, block, 1) = vectorize(theta_plus(x) * theta_minus(y));
        rhs.segment(k * block, block) = vectorize(defect);
    }

    ItoFit fit{prior, {false, prior, 0.0}};
    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    qr.setThreshold(1e-10);
    if (design.norm() > 0.0 && qr.rank() == 2) {
        const Vector c = qr.solve(rhs);
        fit.table.c_minus_plus = c(0);
        fit.table.c_plus_minus = c(1);
        fit.info.calibrated = true;
        fit.info.fit_residual = max_abs(design * c - rhs);
    } else {
        const Vector c(Eigen::Vector2cd(prior.c_minus_plus, prior.c_plus_minus));
        fit.info.fit_residual = max_abs(design * c - rhs);
    }
    return fit;
}

StructureMapSet build_evans_hudson(const Operator& hamiltonian, const Operator& coupling,
                                   double w_minus, double w_plus, const ItoTable& ito)
{
    if (hamiltonian.dim() != coupling.dim()) {
        throw DimensionError("build_evans_hudson: H and F must share a dimension");
    }
    if (!(w_minus >= 0.0) || !(w_plus >= 0.0)) {
        throw ParameterError("build_evans_hudson: dissipator weights must be non-negative");
    }
    if (!ito.has_nonnegative_real_parts()) {
        throw ParameterError("build_evans_hudson: Ito constants must have non-negative real part");
    }

    const Matrix& h = hamiltonian.matrix();
    const double asym = max_abs(h - h.adjoint());
    const double scale = std::max(1.0, max_abs(h));
    if (asym > kHermitianTolerance * scale) {
        throw ParameterError("build_evans_hudson: H is not Hermitian");
    }
    const Operator h_sym(0.5 * (h + h.adjoint()));

    SuperOperator theta_plus = commutator_map(coupling);
    SuperOperator theta_minus = commutator_map(coupling.adjoint());
    SuperOperator theta_zero = commutator_map(h_sym) + dissipator_map(coupling, w_minus) +
                               mirrored_dissipator_map(coupling, w_plus);

    StructureMapSet sm(std::move(theta_minus), std::move(theta_zero), std::move(theta_plus), ito);
    if (asym > 0.0) {
        sm = sm.with_note("Hamiltonian symmetrized: ||H - H*||_max = " + std::to_string(asym));
    }
    const double conj = check_conjugation(sm);
    if (conj > kConjugationTolerance) {
        throw AxiomError("build_evans_hudson: conjugation residual " + std::to_string(conj));
    }
    return sm.calibrated();
}

} // namespace qmf
