// flow_kernel.hpp: Step-function test functions, point semigroups and flow matrix elements
//
// For step functions f, g the flow matrix element between the unnormalized
// exponential vectors psi_f, psi_g is reconstructed from the point semigroups
//   P^t_{f0,g0} = exp(t (theta_0 + g0 theta_-1 + conj(f0) theta_1 [+ conj(f0) g0])),
// composed over the common refinement of the breakpoints of f and g.

#pragma once

#include <span>
#include <vector>

#include "qmf/extended_semigroup.hpp"
#include "qmf/operator_algebra.hpp"
#include "qmf/structure_maps.hpp"

namespace qmf {

struct StepPiece {
    double a = 0.0;
    double b = 0.0;
    Complex value{0.0, 0.0};
};

// Finitely many disjoint intervals [a, b) with constant complex values, zero elsewhere.
class StepFunction {
public:
    StepFunction() = default;
    // Validates a < b and disjointness; stores pieces sorted by a.
    explicit StepFunction(std::vector<StepPiece> pieces);

    // Characteristic function of [a, b) times `value`.
    static StepFunction indicator(double a, double b, Complex value = 1.0);

    const std::vector<StepPiece>& pieces() const noexcept { return pieces_; }
    Complex operator()(double x) const;
    // All interval endpoints, sorted.
    std::vector<double> breakpoints() const;
    bool empty() const noexcept { return pieces_.empty(); }

private:
    std::vector<StepPiece> pieces_;
};

struct Window {
    double s = 0.0;
    double t = 0.0;
};

enum class Region { whole_line, inside, complement };

// <f, g> = integral conj(f) g over the chosen region.
Complex step_inner_product(const StepFunction& f, const StepFunction& g);
Complex step_inner_product(const StepFunction& f, const StepFunction& g, Window window, Region region);

// theta_0 + g0 theta_-1 + conj(f0) theta_1, plus conj(f0) g0 times identity in physical mode.
SuperOperator point_generator(const StructureMapSet& sm, Complex f0, Complex g0, Mode mode);

struct EvolutionMap {
    SuperOperator map;
    Window interval;
    StepFunction f;
    StepFunction g;
    std::size_t factors = 0; // number of exponential factors in the refinement
};

// Ordered product exp((t1 - s) L_1) ... exp((t - tn) L_n); the factor of the
// earliest subinterval is the outermost map.
EvolutionMap evolution_map(const StructureMapSet& sm, const StepFunction& f, const StepFunction& g,
                           double s, double t, Mode mode);
// Same, with extra cut points inserted into the refinement.
EvolutionMap evolution_map(const StructureMapSet& sm, const StepFunction& f, const StepFunction& g,
                           double s, double t, Mode mode, std::span<const double> extra_cuts);

// exp(<chi^c f, chi^c g>) P^{s,t}_{f,g}(x), physical normalization.
Operator flow_matrix_element(const StructureMapSet& sm, const StepFunction& f,
                             const StepFunction& g, double s, double t, const Operator& x);

// [P^t_{f_j, f_k}(x)]_{jk} as an (n d)-square matrix.
Matrix block_form(const StructureMapSet& sm, std::span<const Complex> fs, double t, const Operator& x);
// Smallest eigenvalue of ||x|| [P^t_{f_j,f_k}(1)] - [P^t_{f_j,f_k}(x)].
double q_bound_check(const StructureMapSet& sm, std::span<const Complex> fs, double t, const Operator& x);
// Smallest eigenvalue of [P^t_{f_j,f_k}(x_j* x_k)]_{jk}.
double kernel_cp_residual(const StructureMapSet& sm, std::span<const Complex> fs,
                          std::span<const Operator> xs, double t);
// Smallest eigenvalue of [(P^{t1}_{f_j,f_k} o P^{t2}_{f_j,f_k})(x_j* x_k)]_{jk}.
double schur_product_check(const StructureMapSet& sm, std::span<const Complex> fs,
                           std::span<const Operator> xs, double t1, double t2);

} // namespace qmf
