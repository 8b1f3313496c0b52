// matrix_exponential.cpp: Scaling and squaring with the [13/13] Pade approximant
//
// Degree and scaling threshold follow Higham, "The scaling and squaring method
// for the matrix exponential revisited" (SIAM J. Matrix Anal. Appl. 26, 2005).
// Generators here are non-normal, so no eigendecomposition shortcut is taken.

#include <array>
#include <cmath>

#include <Eigen/LU>

#include "qmf/errors.hpp"
#include "qmf/operator_algebra.hpp"

namespace qmf {

namespace {

constexpr double kTheta13 = 5.371920351148152;

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

} // namespace

Matrix matrix_exponential(const Matrix& m, double t)
{
    if (m.rows() != m.cols()) {
        throw DimensionError("matrix_exponential: matrix must be square");
    }
    if (!std::isfinite(t)) {
        throw ParameterError("matrix_exponential: t must be finite");
    }
    if (!m.allFinite()) {
        throw ParameterError("matrix_exponential: matrix has NaN or Inf entries");
    }
    const Index n = m.rows();
    const Matrix ident = Matrix::Identity(n, n);
    if (n == 0) return ident;

    Matrix a = t * m;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 == 0.0) return ident;

    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
        a /= std::ldexp(1.0, squarings);
    }

    const auto& b = kPade13;
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;

    const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                           b[3] * a2 + b[1] * ident;
    const Matrix u = a * u_inner;
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * ident;

    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        r = (r * r).eval();
    }
    return r;
}

} // namespace qmf
