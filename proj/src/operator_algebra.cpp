// operator_algebra.cpp: Operators, superoperators, block operators, Choi diagnostics

#include "qmf/operator_algebra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

Index integer_sqrt(Index n)
{
    auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : -1;
}

void require_same_dim(Index a, Index b, const char* what)
{
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

} // namespace

// ---------------------------------------------------------------- Operator

Operator::Operator(Matrix m) : m_(std::move(m))
{
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
        throw DimensionError("Operator must be a non-empty square matrix, got " +
                             std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
}

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }
Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator& Operator::operator+=(const Operator& other)
{
    require_same_dim(dim(), other.dim(), "Operator +");
    m_ += other.m_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other)
{
    require_same_dim(dim(), other.dim(), "Operator -");
    m_ -= other.m_;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b)
{
    require_same_dim(a.dim(), b.dim(), "Operator *");
    return Operator(a.m_ * b.m_);
}

// ----------------------------------------------------------- SuperOperator

SuperOperator::SuperOperator(Matrix m) : m_(std::move(m))
{
    if (m_.rows() < 1 || m_.rows() != m_.cols()) {
        throw DimensionError("SuperOperator matrix must be non-empty and square");
    }
    dim_ = integer_sqrt(m_.rows());
    if (dim_ < 1) {
        throw DimensionError("SuperOperator matrix size " + std::to_string(m_.rows()) +
                             " is not a perfect square");
    }
}

SuperOperator SuperOperator::identity(Index dim)
{
    return SuperOperator(Matrix::Identity(dim * dim, dim * dim));
}

SuperOperator SuperOperator::zero(Index dim)
{
    return SuperOperator(Matrix::Zero(dim * dim, dim * dim));
}

Operator SuperOperator::apply(const Operator& x) const
{
    require_same_dim(dim_, x.dim(), "SuperOperator::apply");
    return devectorize(m_ * vectorize(x), dim_);
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other)
{
    require_same_dim(dim_, other.dim_, "SuperOperator +");
    m_ += other.m_;
    return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other)
{
    require_same_dim(dim_, other.dim_, "SuperOperator -");
    m_ -= other.m_;
    return *this;
}

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b)
{
    require_same_dim(a.dim_, b.dim_, "SuperOperator composition");
    return SuperOperator(a.m_ * b.m_);
}

// ---------------------------------------------------------------- BlockOp2

BlockOp2::BlockOp2(Operator x00, Operator x01, Operator x10, Operator x11)
    : blocks_{std::move(x00), std::move(x01), std::move(x10), std::move(x11)}
{
    for (const auto& b : blocks_) {
        require_same_dim(blocks_[0].dim(), b.dim(), "BlockOp2");
    }
}

BlockOp2 BlockOp2::uniform(const Operator& x) { return BlockOp2(x, x, x, x); }

BlockOp2 BlockOp2::ones(Index dim) { return uniform(Operator::identity(dim)); }

BlockOp2 BlockOp2::lower_projector(Index dim)
{
    return BlockOp2(Operator::zero(dim), Operator::zero(dim), Operator::zero(dim),
                    Operator::identity(dim));
}

BlockOp2 BlockOp2::from_full(const Matrix& full, Index dim)
{
    if (full.rows() != 2 * dim || full.cols() != 2 * dim) {
        throw DimensionError("BlockOp2::from_full expects a " + std::to_string(2 * dim) +
                             "-dimensional square matrix");
    }
    return BlockOp2(Operator(full.topLeftCorner(dim, dim)), Operator(full.topRightCorner(dim, dim)),
                    Operator(full.bottomLeftCorner(dim, dim)),
                    Operator(full.bottomRightCorner(dim, dim)));
}

Matrix BlockOp2::as_full() const
{
    const Index d = dim();
    Matrix full(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            full.block(i * d, j * d, d, d) = block(i, j).matrix();
        }
    }
    return full;
}

BlockOp2 BlockOp2::adjoint() const
{
    return BlockOp2(block(0, 0).adjoint(), block(1, 0).adjoint(), block(0, 1).adjoint(),
                    block(1, 1).adjoint());
}

// ------------------------------------------------------- vectorization

Vector vectorize(const Operator& x)
{
    const Matrix& m = x.matrix();
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Operator devectorize(const Vector& v, Index dim)
{
    if (dim < 1 || v.size() != dim * dim) {
        throw DimensionError("devectorize: vector length " + std::to_string(v.size()) +
                             " does not match dimension " + std::to_string(dim));
    }
    return Operator(Eigen::Map<const Matrix>(v.data(), dim, dim));
}

// ------------------------------------------------------- map builders

SuperOperator sandwich_map(const Operator& a, const Operator& b)
{
    require_same_dim(a.dim(), b.dim(), "sandwich_map");
    return SuperOperator(Eigen::kroneckerProduct(b.matrix().transpose(), a.matrix()).eval());
}

SuperOperator commutator_map(const Operator& a)
{
    const auto one = Operator::identity(a.dim());
    // -i (X A - A X)
    return Complex(0.0, -1.0) * (sandwich_map(one, a) - sandwich_map(a, one));
}

SuperOperator dissipator_map(const Operator& l, double weight)
{
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw ParameterError("dissipator weight must be a finite non-negative real");
    }
    const auto one = Operator::identity(l.dim());
    const auto ld = l.adjoint();
    const auto ldl = ld * l;
    return Complex(weight) *
           (Complex(2.0) * sandwich_map(ld, l) - sandwich_map(one, ldl) - sandwich_map(ldl, one));
}

SuperOperator mirrored_dissipator_map(const Operator& l, double weight)
{
    return dissipator_map(l.adjoint(), weight);
}

SuperOperator exponentiate(const SuperOperator& generator, double t)
{
    return SuperOperator(matrix_exponential(generator.matrix(), t));
}

// ------------------------------------------------------- Choi / positivity

ChoiMatrix choi_of_map(const SuperOperator& phi)
{
    const Index d = phi.dim();
    Matrix c = Matrix::Zero(d * d, d * d);
    // phi(e_ij) is column (j*d + i) of the superoperator matrix.
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            const Vector col = phi.matrix().col(j * d + i);
            c.block(i * d, j * d, d, d) = Eigen::Map<const Matrix>(col.data(), d, d);
        }
    }
    const double scale = std::max(1.0, max_abs(c));
    if (max_abs(c - c.adjoint()) > 1e-10 * scale) {
        throw AxiomError("map not hermiticity-preserving: Choi matrix is not Hermitian");
    }
    return {d, std::move(c)};
}

double min_eig(const Matrix& h)
{
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw DimensionError("min_eig expects a non-empty square matrix");
    }
    const Matrix herm = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double min_eig(const ChoiMatrix& c) { return min_eig(c.matrix); }

bool is_psd(const Matrix& h, double rel_tol)
{
    const Matrix herm = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    const double norm = ev.cwiseAbs().maxCoeff();
    return ev.minCoeff() >= -rel_tol * std::max(1.0, norm);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double operator_norm(const Matrix& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

} // namespace qmf
