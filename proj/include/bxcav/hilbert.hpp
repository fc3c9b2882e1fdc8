#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "bxcav/errors.hpp"

namespace bxcav {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// The four dot levels. The ordinal fixes the basis ordering.
enum class QdLevel : int { G = 0, X = 1, Y = 2, B = 3 };

inline constexpr std::array<QdLevel, 4> kQdLevels{QdLevel::G, QdLevel::X, QdLevel::Y, QdLevel::B};

inline const char* to_string(QdLevel l) {
    switch (l) {
        case QdLevel::G: return "G";
        case QdLevel::X: return "X";
        case QdLevel::Y: return "Y";
        case QdLevel::B: return "B";
    }
    return "?";
}

// Composite space {G,X,Y,B} x {0..n_max} photons, dim = 4*(n_max+1).
struct HilbertDims {
    int n_max = 2;

    static HilbertDims with_max_photons(int n_max) {
        if (n_max < 1) throw Error("HilbertDims: n_max must be >= 1, got " + std::to_string(n_max));
        return HilbertDims{n_max};
    }

    int dim() const { return 4 * (n_max + 1); }

    friend bool operator==(const HilbertDims&, const HilbertDims&) = default;
};

// Level-major layout within photon blocks: index = 4*n + level ordinal.
inline int basis_index(QdLevel level, int n, const HilbertDims& dims) {
    if (n < 0 || n > dims.n_max)
        throw std::out_of_range("basis_index: photon number " + std::to_string(n) + " outside [0, " +
                                std::to_string(dims.n_max) + "]");
    return 4 * n + static_cast<int>(level);
}

// Dense operator on the composite space. Immutable by convention after
// construction; all algebra returns new values.
struct QuantumOperator {
    HilbertDims dims;
    Matrix m;

    static QuantumOperator zero(const HilbertDims& dims) {
        return {dims, Matrix::Zero(dims.dim(), dims.dim())};
    }

    static QuantumOperator identity(const HilbertDims& dims) {
        return {dims, Matrix::Identity(dims.dim(), dims.dim())};
    }

    QuantumOperator adjoint() const { return {dims, m.adjoint()}; }

    Complex trace() const { return m.trace(); }

    friend QuantumOperator operator*(const QuantumOperator& a, const QuantumOperator& b) {
        if (a.dims != b.dims) throw DimensionError("operator product: dimension mismatch");
        return {a.dims, a.m * b.m};
    }

    friend QuantumOperator operator+(const QuantumOperator& a, const QuantumOperator& b) {
        if (a.dims != b.dims) throw DimensionError("operator sum: dimension mismatch");
        return {a.dims, a.m + b.m};
    }

    friend QuantumOperator operator-(const QuantumOperator& a, const QuantumOperator& b) {
        if (a.dims != b.dims) throw DimensionError("operator difference: dimension mismatch");
        return {a.dims, a.m - b.m};
    }

    friend QuantumOperator operator*(Complex c, const QuantumOperator& a) { return {a.dims, c * a.m}; }
    friend QuantumOperator operator*(double c, const QuantumOperator& a) { return {a.dims, c * a.m}; }
};

// sigma_ij = |i><j| on the dot, identity on the photon register.
inline QuantumOperator transition_operator(QdLevel i, QdLevel j, const HilbertDims& dims) {
    QuantumOperator op = QuantumOperator::zero(dims);
    for (int n = 0; n <= dims.n_max; ++n)
        op.m(basis_index(i, n, dims), basis_index(j, n, dims)) = 1.0;
    return op;
}

// a |l,n> = sqrt(n) |l,n-1>, identity on the dot.
inline QuantumOperator annihilation_operator(const HilbertDims& dims) {
    QuantumOperator op = QuantumOperator::zero(dims);
    for (int n = 1; n <= dims.n_max; ++n)
        for (QdLevel l : kQdLevels)
            op.m(basis_index(l, n - 1, dims), basis_index(l, n, dims)) = std::sqrt(double(n));
    return op;
}

inline QuantumOperator creation_operator(const HilbertDims& dims) {
    return annihilation_operator(dims).adjoint();
}

inline QuantumOperator number_operator(const HilbertDims& dims) {
    QuantumOperator op = QuantumOperator::zero(dims);
    for (int n = 0; n <= dims.n_max; ++n)
        for (QdLevel l : kQdLevels) {
            int k = basis_index(l, n, dims);
            op.m(k, k) = double(n);
        }
    return op;
}

inline QuantumOperator basis_projector(QdLevel l, int n, const HilbertDims& dims) {
    QuantumOperator op = QuantumOperator::zero(dims);
    int k = basis_index(l, n, dims);
    op.m(k, k) = 1.0;
    return op;
}

// Kronecker product, block layout row-major in the first factor.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-major vectorization, vec(|i><j|) = e_j (x) e_i.
inline Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, int dim) {
    if (v.size() != Eigen::Index(dim) * dim) throw DimensionError("unvectorize: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace bxcav
