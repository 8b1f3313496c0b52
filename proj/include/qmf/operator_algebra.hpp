// operator_algebra.hpp: Dense operators, superoperators, 2x2 block operators and Choi matrices
//
// Superoperators act on column-stacked operators: vec(X) places column j of X
// at entries j*d .. j*d+d-1, so the map X -> A X B has matrix B^T (x) A.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qmf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Element of B(H_S): a square complex matrix of dimension >= 1.
class Operator {
public:
    explicit Operator(Matrix m);

    static Operator identity(Index dim);
    static Operator zero(Index dim);

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    Complex operator()(Index row, Index col) const { return m_(row, col); }

    Operator adjoint() const { return Operator(m_.adjoint()); }

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_); }

private:
    Matrix m_;
};

// Linear map on operators of dimension d, stored as a d^2 x d^2 matrix.
class SuperOperator {
public:
    explicit SuperOperator(Matrix m);

    static SuperOperator identity(Index dim);
    static SuperOperator zero(Index dim);

    // Operator-space dimension d (the matrix is d^2 x d^2).
    Index dim() const noexcept { return dim_; }
    const Matrix& matrix() const noexcept { return m_; }

    Operator apply(const Operator& x) const;
    Operator operator()(const Operator& x) const { return apply(x); }

    SuperOperator& operator+=(const SuperOperator& other);
    SuperOperator& operator-=(const SuperOperator& other);

    friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) { return a += b; }
    friend SuperOperator operator-(SuperOperator a, const SuperOperator& b) { return a -= b; }
    // Composition: (a * b)(x) = a(b(x)).
    friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);
    friend SuperOperator operator*(Complex s, const SuperOperator& a) { return SuperOperator(s * a.m_); }

private:
    Index dim_ = 0;
    Matrix m_;
};

// Element of M(2, B_S). Block (i, j) sits at rows i*d.., cols j*d.. of as_full().
class BlockOp2 {
public:
    BlockOp2(Operator x00, Operator x01, Operator x10, Operator x11);

    // [[x, x], [x, x]]
    static BlockOp2 uniform(const Operator& x);
    // J = [[1, 1], [1, 1]] (x) 1
    static BlockOp2 ones(Index dim);
    // E = diag(0, 1) (x) 1
    static BlockOp2 lower_projector(Index dim);
    static BlockOp2 from_full(const Matrix& full, Index dim);

    Index dim() const noexcept { return blocks_[0].dim(); }
    const Operator& block(int i, int j) const { return blocks_[static_cast<std::size_t>(2 * i + j)]; }

    Matrix as_full() const;
    BlockOp2 adjoint() const;

private:
    std::array<Operator, 4> blocks_;
};

struct ChoiMatrix {
    Index dim = 0; // operator dimension d; matrix is d^2 x d^2
    Matrix matrix;
};

// Column-stacking vectorization and its inverse.
Vector vectorize(const Operator& x);
Operator devectorize(const Vector& v, Index dim);

// X -> A X B
SuperOperator sandwich_map(const Operator& a, const Operator& b);
// X -> -i [X, A]
SuperOperator commutator_map(const Operator& a);
// X -> w (2 L* X L - {X, L* L})
SuperOperator dissipator_map(const Operator& l, double weight);
// X -> w (2 L X L* - {X, L L*})
SuperOperator mirrored_dissipator_map(const Operator& l, double weight);

// exp(t M) by scaling and squaring with a degree-13 Pade approximant.
Matrix matrix_exponential(const Matrix& m, double t);
SuperOperator exponentiate(const SuperOperator& generator, double t);

// Choi matrix sum_ij e_ij (x) phi(e_ij). Throws AxiomError when the result is
// not Hermitian to 1e-10 (relative), i.e. phi does not preserve hermiticity.
ChoiMatrix choi_of_map(const SuperOperator& phi);
// Smallest eigenvalue of the Hermitian part (H + H*) / 2.
double min_eig(const Matrix& h);
double min_eig(const ChoiMatrix& c);
// PSD reading used throughout: min_eig >= -rel_tol * max(1, ||H||_2).
bool is_psd(const Matrix& h, double rel_tol = 1e-9);

// Norm helpers.
double max_abs(const Matrix& m);
double operator_norm(const Matrix& m);

} // namespace qmf
