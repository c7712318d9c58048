#include "rspide/regime_chain.hpp"

#include <cmath>
#include <string>

#include "rspide/errors.hpp"

namespace rspide {

namespace {

constexpr double kRowSumTol = 1e-12;

// Pade-13 coefficients and the scaling threshold theta_13 (Higham 2005).
constexpr double kTheta13 = 5.371920351148152;
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

template <typename Matrix>
Matrix expm_impl(const Matrix& a) {
    const auto n = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    Matrix scaled = a / std::pow(2.0, squarings);

    const Matrix a2 = scaled * scaled;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix ident = Matrix::Identity(n, n);

    Matrix u = scaled * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                         kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
                         kPade13[1] * ident);
    Matrix v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
               kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * ident;

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return expm_impl(a); }
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) { return expm_impl(a); }

GeneratorMatrix validate_generator(const Eigen::MatrixXd& q) {
    if (q.rows() != q.cols() || q.rows() < 1)
        raise(ErrorKind::ValidationError, "generator matrix must be square with H >= 1");
    const int h = static_cast<int>(q.rows());
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) {
            if (i != j && q(i, j) < 0.0)
                raise(ErrorKind::NegativeOffDiagonal,
                      "q(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                          std::to_string(q(i, j)));
        }
        const double row_sum = q.row(i).sum();
        if (std::abs(row_sum) > kRowSumTol)
            raise(ErrorKind::RowSumNonZero,
                  "row " + std::to_string(i) + " sums to " + std::to_string(row_sum));
    }
    return GeneratorMatrix{q};
}

TransitionMatrix transition_matrix(const GeneratorMatrix& generator, double dt) {
    if (dt < 0.0) raise(ErrorKind::ValidationError, "transition horizon must be >= 0");
    Eigen::MatrixXd p = expm(Eigen::MatrixXd(generator.q * dt));
    if (!p.allFinite())
        raise(ErrorKind::NonFiniteResult, "exp(Q dt) overflowed; check generator magnitudes");
    return TransitionMatrix{std::move(p), dt};
}

}  // namespace rspide
