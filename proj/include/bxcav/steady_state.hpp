#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <sstream>

#include "bxcav/model.hpp"

namespace bxcav {

// Hermitian, unit-trace, positive-semidefinite state.
struct DensityMatrix {
    HilbertDims dims;
    Matrix m;
};

namespace detail {

inline Eigen::RowVectorXcd trace_row(int d) {
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i) row(Eigen::Index(i) * (d + 1)) = 1.0;
    return row;
}

}  // namespace detail

// Hermitize, clip eigenvalues in [-eig_floor, 0) to zero, renormalize.
// Eigenvalues below -eig_floor are solver or model bugs, not roundoff.
inline DensityMatrix repair_density_matrix(const HilbertDims& dims, Matrix rho, double eig_floor = 1e-10) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -eig_floor) {
        std::ostringstream os;
        os << "density matrix has eigenvalue " << ev.minCoeff() << " below -" << eig_floor;
        throw NumericalError(os.str());
    }
    Eigen::VectorXd clipped = ev.cwiseMax(0.0);
    Matrix out = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    out /= out.trace().real();
    return {dims, std::move(out)};
}

// Stationary state from the kernel of L: one row of L is replaced by the
// vectorized trace constraint and the bordered system solved directly.
inline DensityMatrix solve_steady_state(const Liouvillian& liou, double residual_tol = 1e-10) {
    const int d = liou.dims.dim();
    const Eigen::Index n = Eigen::Index(d) * d;

    Matrix bordered = liou.sup;
    bordered.row(0) = detail::trace_row(d);  // row 0 is the (G,0) population equation
    Vector rhs = Vector::Zero(n);
    rhs(0) = 1.0;

    Eigen::FullPivLU<Matrix> lu(bordered);
    if (!lu.isInvertible()) {
        Eigen::FullPivLU<Matrix> lu_raw(liou.sup);
        const Eigen::Index kdim = lu_raw.dimensionOfKernel();
        if (kdim != 1) {
            std::ostringstream os;
            os << "Liouvillian kernel dimension is " << kdim << ", steady state not unique";
            throw DegenerateSteadyStateError(os.str());
        }
        throw NumericalError("steady-state solve: bordered system singular despite 1-d kernel");
    }

    const Vector x = lu.solve(rhs);
    const double lnorm = liou.sup.norm();
    const double residual = (liou.sup * x).norm() / lnorm;
    if (!(residual <= residual_tol)) {
        std::ostringstream os;
        os << "steady-state residual " << residual << " exceeds " << residual_tol;
        throw NumericalError(os.str());
    }

    DensityMatrix rho = repair_density_matrix(liou.dims, unvectorize(x, d));
    const double post_residual = (liou.sup * vectorize(rho.m)).norm() / lnorm;
    if (!(post_residual <= residual_tol)) {
        std::ostringstream os;
        os << "steady-state residual after positivity repair " << post_residual << " exceeds " << residual_tol;
        throw NumericalError(os.str());
    }
    return rho;
}

// exp(L t) applied to rho0 via scaling-and-squaring. Verification oracle for
// the kernel solve; trace drift beyond 1e-10 is reported as an error.
inline DensityMatrix time_propagate(const Liouvillian& liou, const DensityMatrix& rho0, double t) {
    if (liou.dims != rho0.dims) throw DimensionError("time_propagate: dimension mismatch");
    if (!(t >= 0.0)) throw Error("time_propagate: t must be >= 0");
    const int d = liou.dims.dim();
    if (t == 0.0) return rho0;

    const Matrix propagator = (liou.sup * t).exp();
    Matrix rho = unvectorize(propagator * vectorize(rho0.m), d);
    const double trace_err = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (!(trace_err <= 1e-10)) {
        std::ostringstream os;
        os << "time_propagate: trace drifted by " << trace_err;
        throw NumericalError(os.str());
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return {liou.dims, std::move(rho)};
}

inline Complex expectation(const DensityMatrix& rho, const QuantumOperator& a) {
    if (rho.dims != a.dims) throw DimensionError("expectation: dimension mismatch");
    return (a.m * rho.m).trace();
}

// Sum of singular values.
inline double trace_norm(const Matrix& m) {
    return m.jacobiSvd().singularValues().sum();
}

// Oracle horizon: 50 / (smallest nonzero dissipative rate).
inline double default_propagation_horizon(const ModelParams& p) {
    double smallest = 0.0;
    for (double r : {p.kappa, p.gamma, p.pump, p.gamma_phase})
        if (r > 0.0 && (smallest == 0.0 || r < smallest)) smallest = r;
    if (smallest == 0.0) throw Error("default_propagation_horizon: all rates are zero");
    return 50.0 / smallest;
}

}  // namespace bxcav
