// structure_maps.hpp: The triple (theta_-1, theta_0, theta_1) of a stochastic flow and its axioms
//
// The maps are the coefficients of dj(x) = j(theta_-1(x)) dA + j(theta_0(x)) dt + j(theta_1(x)) dA^+.
// They must kill the identity, satisfy theta_a(x*) = theta_{-a}(x)*, and obey the
// stochastic Leibnitz rule with the Ito structure constants:
//   theta_0(xy) = theta_0(x) y + x theta_0(y)
//               + c_mp theta_-1(x) theta_1(y) + c_pm theta_1(x) theta_-1(y),
// while theta_-1 and theta_1 are plain derivations.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qmf/operator_algebra.hpp"

namespace qmf {

struct ItoTable {
    Complex c_minus_plus{1.0, 0.0}; // dt coefficient of dM^-1 dM^1
    Complex c_plus_minus{0.0, 0.0}; // dt coefficient of dM^1 dM^-1

    // Vacuum (Fock) table: dA dA^+ = dt, dA^+ dA = 0.
    static ItoTable fock() { return {}; }

    bool has_nonnegative_real_parts() const
    {
        return c_minus_plus.real() >= 0.0 && c_plus_minus.real() >= 0.0;
    }
};

struct ItoCalibration {
    bool calibrated = false; // false: the supplied table was kept (fit underdetermined)
    ItoTable prior;          // table supplied by the caller before calibration
    double fit_residual = 0.0;
};

class StructureMapSet {
public:
    // Rejects mismatched dimensions and any theta with ||theta(1)|| > 1e-10.
    StructureMapSet(SuperOperator theta_minus, SuperOperator theta_zero, SuperOperator theta_plus,
                    ItoTable ito);

    Index dim() const noexcept { return theta_zero_.dim(); }
    const SuperOperator& theta_minus() const noexcept { return theta_minus_; }
    const SuperOperator& theta_zero() const noexcept { return theta_zero_; }
    const SuperOperator& theta_plus() const noexcept { return theta_plus_; }
    // alpha in {-1, 0, 1}
    const SuperOperator& theta(int alpha) const;

    const ItoTable& ito() const noexcept { return ito_; }
    const ItoCalibration& calibration() const noexcept { return calibration_; }
    const std::vector<std::string>& notes() const noexcept { return notes_; }

    // Copy with the Ito table fitted against the theta maps (see calibrate_ito).
    StructureMapSet calibrated() const;
    StructureMapSet with_note(std::string note) const;

private:
    SuperOperator theta_minus_;
    SuperOperator theta_zero_;
    SuperOperator theta_plus_;
    ItoTable ito_;
    ItoCalibration calibration_;
    std::vector<std::string> notes_;
};

struct LeibnitzResidual {
    double minus = 0.0;
    double zero = 0.0;
    double plus = 0.0;

    double max() const { return std::max(minus, std::max(zero, plus)); }
};

double check_unital(const StructureMapSet& sm);
// Max over a Hermitian basis X of ||theta_-1(X) - theta_1(X)*|| and ||theta_0(X) - theta_0(X)*||.
double check_conjugation(const StructureMapSet& sm);
LeibnitzResidual leibnitz_residual(const StructureMapSet& sm, const Operator& x, const Operator& y);

// Least-squares fit of (c_mp, c_pm) so that the theta_0 Leibnitz rule holds,
// using a fixed internal sample of random operator pairs. If the two correction
// terms are linearly dependent (e.g. theta_+-1 = 0), `prior` is kept.
struct ItoFit {
    ItoTable table;
    ItoCalibration info;
};
ItoFit calibrate_ito(const SuperOperator& theta_minus, const SuperOperator& theta_zero,
                     const SuperOperator& theta_plus, const ItoTable& prior);

// theta_1 = -i[., F], theta_-1 = -i[., F*],
// theta_0 = -i[., H] + w_minus (2F* X F - {X, F*F}) + w_plus (2F X F* - {X, FF*}).
// The Ito table is calibrated against the resulting maps; `ito` is the prior.
StructureMapSet build_evans_hudson(const Operator& hamiltonian, const Operator& coupling,
                                   double w_minus, double w_plus, const ItoTable& ito);

} // namespace qmf
