// extended_semigroup.hpp: Generator on M(2, B_S) built from structure maps, and its diagnostics
//
// The generator acts entrywise on 2x2 block operators:
//   L = [[theta_0,             theta_0 + theta_-1           ],
//        [theta_0 + theta_1,   theta_0 + theta_1 + theta_-1 ]]
// Conservative mode uses L as written and fixes J = [[1,1],[1,1]] (x) 1.
// Physical mode adds the identity to the (1,1) entry, so that J is mapped to
// [[1, 1], [1, e^t]] (x) 1 and L(J) = [[0, 0], [0, 1]] (x) 1.

#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "qmf/operator_algebra.hpp"
#include "qmf/structure_maps.hpp"

namespace qmf {

enum class Mode { conservative, physical };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

class ExtendedGenerator {
public:
    ExtendedGenerator(std::array<SuperOperator, 4> entries, Mode mode,
                      std::shared_ptr<const StructureMapSet> source);

    Index dim() const noexcept { return entries_[0].dim(); }
    Mode mode() const noexcept { return mode_; }
    const SuperOperator& entry(int i, int j) const { return entries_[static_cast<std::size_t>(2 * i + j)]; }
    const std::array<SuperOperator, 4>& entries() const noexcept { return entries_; }
    // May be null for generators that were not assembled from structure maps.
    const std::shared_ptr<const StructureMapSet>& source() const noexcept { return source_; }

    // Same generator in the other normalization (toggles the identity in entry (1,1)).
    ExtendedGenerator with_mode(Mode mode) const;

    // L(X), entrywise in block indices.
    BlockOp2 apply(const BlockOp2& x) const;

private:
    std::array<SuperOperator, 4> entries_;
    Mode mode_;
    std::shared_ptr<const StructureMapSet> source_;
};

// exp(t L_ij) for the four entries.
struct ExtendedPropagator {
    double t = 0.0;
    std::array<SuperOperator, 4> entries;

    const SuperOperator& entry(int i, int j) const { return entries[static_cast<std::size_t>(2 * i + j)]; }
    BlockOp2 apply(const BlockOp2& x) const;
};

// Rejects structure maps whose unital or conjugation residual exceeds 1e-10.
ExtendedGenerator build_extended_generator(const StructureMapSet& sm, Mode mode);

ExtendedPropagator propagate(const ExtendedGenerator& g, double t);
BlockOp2 apply_extended(const ExtendedGenerator& g, double t, const BlockOp2& x);

// Choi matrix, of size (2d)^2, of the map e_ij (x) x -> e_ij (x) exp(t L_ij)(x).
Matrix extended_choi(const ExtendedPropagator& p);
// Smallest Choi eigenvalue; rejects 2d > 64.
double extended_choi_min_eig(const ExtendedGenerator& g, double t);

// Max over blocks of ||P(J)_ij - target_ij||_max / ||target_ij||_max, evaluated
// in conservative mode (target J) and physical mode (target [[1,1],[1,e^t]]).
double conservativity_residual(const ExtendedGenerator& g, double t);
double normalization_residual(const ExtendedGenerator& g, double t);
// ||L_phys(J) - [[0,0],[0,1]] (x) 1||_max
double kappa_residual(const ExtendedGenerator& g);

// delta(x) = i [x, E] with E = diag(0, 1) (x) 1.
class DeltaMap {
public:
    explicit DeltaMap(Index dim) : dim_(dim) {}

    Index dim() const noexcept { return dim_; }
    BlockOp2 operator()(const BlockOp2& x) const;
    // delta^2(x) = [[0, -x01], [-x10, 0]]
    BlockOp2 squared(const BlockOp2& x) const;

private:
    Index dim_;
};

// Smallest eigenvalue of R = L(x*x) - L(x*)x - x*L(x) + delta(x)*delta(x) with L
// the conservative generator; products are taken in M(2d).
double dissipativity_residual_min_eig(const ExtendedGenerator& g, const BlockOp2& x);
// Same inequality at matrix level n: x is an (n*2d)-square matrix whose n x n
// outer blocks are elements of M(2, B_S); L and delta act on each outer block.
double dissipativity_residual_min_eig(const ExtendedGenerator& g, const Matrix& x, int level);

// exp(t delta^2 / 2): off-diagonal blocks scale by exp(-t/2).
BlockOp2 delta_sq_semigroup(double t, const BlockOp2& x);
// max ||L(delta^2(X)) - delta^2(L(X))|| over the block matrix-unit basis.
double commutation_residual(const ExtendedGenerator& g);

// L_eps = L (1 - eps L)^-1 per entry; throws when 1 - eps L_ij is numerically singular.
ExtendedGenerator resolvent_generator(const ExtendedGenerator& g, double eps);
// max_ij ||exp(t A_ij) - exp(t B_ij)||_F
double propagator_distance(const ExtendedGenerator& a, const ExtendedGenerator& b, double t);

} // namespace qmf
