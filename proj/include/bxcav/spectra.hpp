#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "bxcav/parallel.hpp"
#include "bxcav/steady_state.hpp"

namespace bxcav {

// Uniform grid of omega - omega_X offsets, ueV.
struct FrequencyGrid {
    std::vector<double> offsets;
    double step = 0.0;

    static FrequencyGrid linspaced(double start, double stop, double step) {
        if (!(step > 0.0) || !(start < stop)) throw Error("FrequencyGrid: need start < stop and step > 0");
        const int n = int(std::floor((stop - start) / step + 1e-9)) + 1;
        FrequencyGrid g;
        g.step = step;
        g.offsets.resize(n);
        for (int i = 0; i < n; ++i) g.offsets[i] = start + i * step;
        return g;
    }

    static FrequencyGrid from_offsets(std::vector<double> offsets) {
        if (offsets.size() < 2) throw Error("FrequencyGrid: need at least two points");
        const double h = offsets[1] - offsets[0];
        if (!(h > 0.0)) throw Error("FrequencyGrid: offsets must be strictly increasing");
        const double scale = std::max(1.0, std::abs(offsets.back()));
        for (size_t i = 1; i < offsets.size(); ++i)
            if (std::abs(offsets[i] - offsets[i - 1] - h) > 1e-12 * scale)
                throw Error("FrequencyGrid: offsets not uniform");
        FrequencyGrid g;
        g.step = h;
        g.offsets = std::move(offsets);
        return g;
    }

    int size() const { return int(offsets.size()); }
    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

inline double trapezoid(const Eigen::VectorXd& y, double step) {
    if (y.size() < 2) return 0.0;
    return step * (y.sum() - 0.5 * (y(0) + y(y.size() - 1)));
}

// The five radiative leakage paths.
enum class EmissionChannel { cavity, x_to_g, y_to_g, b_to_x, b_to_y };

inline constexpr std::array<EmissionChannel, 5> kEmissionChannels{
    EmissionChannel::cavity, EmissionChannel::x_to_g, EmissionChannel::y_to_g,
    EmissionChannel::b_to_x, EmissionChannel::b_to_y};

inline const char* to_string(EmissionChannel c) {
    switch (c) {
        case EmissionChannel::cavity: return "cavity";
        case EmissionChannel::x_to_g: return "XG";
        case EmissionChannel::y_to_g: return "YG";
        case EmissionChannel::b_to_x: return "BX";
        case EmissionChannel::b_to_y: return "BY";
    }
    return "?";
}

inline QuantumOperator emission_operator(EmissionChannel c, const HilbertDims& dims) {
    using L = QdLevel;
    switch (c) {
        case EmissionChannel::cavity: return annihilation_operator(dims);
        case EmissionChannel::x_to_g: return transition_operator(L::G, L::X, dims);
        case EmissionChannel::y_to_g: return transition_operator(L::G, L::Y, dims);
        case EmissionChannel::b_to_x: return transition_operator(L::X, L::B, dims);
        case EmissionChannel::b_to_y: return transition_operator(L::Y, L::B, dims);
    }
    throw Error("emission_operator: bad channel");
}

inline double channel_rate(EmissionChannel c, const ModelParams& p) {
    return c == EmissionChannel::cavity ? p.kappa : p.gamma;
}

struct ChannelSpectrum {
    EmissionChannel channel;
    FrequencyGrid grid;
    Eigen::VectorXd intensity;  // rate density, ueV per ueV

    double integral() const { return trapezoid(intensity, grid.step); }
};

// Solves (L - i w) x = b for many w from one unitary Schur factorization of
// the deflated generator. The zero mode of L is shifted away along
// vec(rho_ss) * vec(1)^T, which leaves every emission functional unchanged
// (the shifted direction contributes <A>_ss ~ 0) and keeps the triangular
// solve well conditioned through w = 0.
class ShiftedLiouvillianSolver {
  public:
    ShiftedLiouvillianSolver(const Liouvillian& liou, const DensityMatrix& rho_ss) {
        if (liou.dims != rho_ss.dims) throw DimensionError("ShiftedLiouvillianSolver: dimension mismatch");
        const int d = liou.dims.dim();
        const Eigen::Index n = Eigen::Index(d) * d;
        const double sigma = liou.sup.cwiseAbs().rowwise().sum().maxCoeff();

        Matrix deflated = liou.sup;
        const Vector vrho = vectorize(rho_ss.m);
        const Eigen::RowVectorXcd tr = detail::trace_row(d);
        deflated += sigma * (vrho * tr);

        Eigen::ComplexSchur<Matrix> schur(deflated, true);
        if (schur.info() != Eigen::Success) throw NumericalError("ShiftedLiouvillianSolver: Schur factorization failed");
        q_ = schur.matrixU();
        t_ = schur.matrixT();
        diag_ = t_.diagonal();
    }

    // x = Q (T - i w)^{-1} Q^H b
    Vector solve(double omega, const Vector& b) const {
        const Eigen::Index n = t_.rows();
        if (b.size() != n) throw DimensionError("ShiftedLiouvillianSolver::solve: size mismatch");
        Vector y = q_.adjoint() * b;
        const Complex shift(0.0, omega);
        for (Eigen::Index j = n - 1; j >= 0; --j) {
            y(j) /= diag_(j) - shift;
            if (j > 0) y.head(j).noalias() -= y(j) * t_.col(j).head(j);
        }
        return q_ * y;
    }

  private:
    Matrix q_, t_;
    Vector diag_;
};

// One-sided Wiener-Khintchine transform of the regression correlator:
//   S(w) = -(rate/pi) Re Tr[A+ unvec((L - i w)^{-1} vec(A rho_ss))],
// so that the full-line integral equals rate * <A+A>_ss. Frequencies are
// offsets from omega_X in the rotating frame.
inline ChannelSpectrum emission_spectrum(const ShiftedLiouvillianSolver& solver, const DensityMatrix& rho_ss,
                                         const QuantumOperator& a, double rate, const FrequencyGrid& grid,
                                         EmissionChannel label) {
    if (rho_ss.dims != a.dims) throw DimensionError("emission_spectrum: dimension mismatch");
    const Vector b = vectorize((a.m * rho_ss.m).eval());
    const Vector l = vectorize(a.m);

    ChannelSpectrum out{label, grid, Eigen::VectorXd::Zero(grid.size())};
    constexpr double pi = std::numbers::pi;
    for (int k = 0; k < grid.size(); ++k) {
        const double w = grid.offsets[k];
        double s = -(rate / pi) * (l.dot(solver.solve(w, b))).real();
        if (!std::isfinite(s)) {
            // shift-by-epsilon retry near an exactly singular shift
            s = -(rate / pi) * (l.dot(solver.solve(w + 1e-9, b))).real();
            if (!std::isfinite(s)) throw NumericalError("emission_spectrum: singular resolvent at omega grid point");
        }
        out.intensity(k) = s;
    }
    return out;
}

inline ChannelSpectrum emission_spectrum(const Liouvillian& liou, const DensityMatrix& rho_ss,
                                         const QuantumOperator& a, double rate, const FrequencyGrid& grid,
                                         EmissionChannel label = EmissionChannel::cavity) {
    return emission_spectrum(ShiftedLiouvillianSolver(liou, rho_ss), rho_ss, a, rate, grid, label);
}

// Gaussian instrument convolution, sigma = fwhm / (2 sqrt(2 ln 2)). The
// discrete kernel is normalized to unit sum; edges are zero padded.
inline Eigen::VectorXd convolve_gaussian(const Eigen::VectorXd& y, double step, double fwhm) {
    if (fwhm < 0.0) throw Error("convolve_gaussian: fwhm must be >= 0");
    if (fwhm == 0.0) return y;
    if (!(step <= fwhm / 5.0))
        throw ResolutionError("convolve_gaussian: grid spacing must be <= fwhm/5");
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const int half = int(std::ceil(5.0 * sigma / step));
    Eigen::VectorXd kernel(2 * half + 1);
    for (int j = -half; j <= half; ++j) kernel(j + half) = std::exp(-0.5 * (j * step) * (j * step) / (sigma * sigma));
    kernel /= kernel.sum();

    const int n = int(y.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const int jlo = std::max(-half, i - (n - 1));
        const int jhi = std::min(half, i);
        for (int j = jlo; j <= jhi; ++j) acc += kernel(j + half) * y(i - j);
        out(i) = acc;
    }
    return out;
}

inline ChannelSpectrum convolve_instrument(const ChannelSpectrum& s, double fwhm) {
    return {s.channel, s.grid, convolve_gaussian(s.intensity, s.grid.step, fwhm)};
}

// All five channels plus their pointwise sum at one parameter point.
struct SpectrumSet {
    FrequencyGrid grid;
    std::vector<ChannelSpectrum> channels;
    Eigen::VectorXd total;
    DensityMatrix rho_ss;
    double n_cavity = 0.0, p_bb = 0.0, p_xx = 0.0;
};

inline SpectrumSet total_spectrum(const ModelParams& p, const FrequencyGrid& grid) {
    p.validate();
    const HilbertDims dims = p.dims();
    const Liouvillian liou = build_liouvillian(p);
    DensityMatrix rho = solve_steady_state(liou);
    const ShiftedLiouvillianSolver solver(liou, rho);

    SpectrumSet out{grid, {}, Eigen::VectorXd::Zero(grid.size()), rho};
    out.channels.reserve(kEmissionChannels.size());
    for (EmissionChannel c : kEmissionChannels) {
        out.channels.push_back(
            emission_spectrum(solver, rho, emission_operator(c, dims), channel_rate(c, p), grid, c));
        out.total += out.channels.back().intensity;
    }
    const QuantumOperator num = number_operator(dims);
    out.n_cavity = expectation(rho, num).real();
    out.p_bb = expectation(rho, transition_operator(QdLevel::B, QdLevel::B, dims)).real();
    out.p_xx = expectation(rho, transition_operator(QdLevel::X, QdLevel::X, dims)).real();
    return out;
}

enum class NormalizationMode { global_max, per_spectrum, none };

inline const char* to_string(NormalizationMode m) {
    switch (m) {
        case NormalizationMode::global_max: return "global-max";
        case NormalizationMode::per_spectrum: return "per-spectrum";
        case NormalizationMode::none: return "none";
    }
    return "?";
}

inline std::optional<NormalizationMode> normalization_from_string(const std::string& s) {
    if (s == "global-max") return NormalizationMode::global_max;
    if (s == "per-spectrum") return NormalizationMode::per_spectrum;
    if (s == "none") return NormalizationMode::none;
    return std::nullopt;
}

struct SweepPoint {
    double delta_c = 0.0;
    std::vector<ChannelSpectrum> channels;
    Eigen::VectorXd total;
    double n_cavity = 0.0, p_bb = 0.0, p_xx = 0.0;
};

// Grid of spectra over cavity detuning at one photon truncation. Intensities
// are stored raw; instrument_fwhm records the convolution already applied.
struct SweepResult {
    ModelParams base;
    int n_max = 2;
    FrequencyGrid grid;
    std::vector<double> detunings;
    std::vector<SweepPoint> points;
    double instrument_fwhm = 0.0;
    bool has_moments = true;

    double global_max() const {
        double m = 0.0;
        for (const SweepPoint& pt : points) m = std::max(m, pt.total.maxCoeff());
        return m;
    }
};

struct SweepOptions {
    double instrument_fwhm = 0.0;  // 0 disables convolution
    int threads = 0;               // 0 = hardware concurrency
};

inline SweepResult detuning_sweep_single(const ModelParams& tmpl, const std::vector<double>& detunings,
                                         const FrequencyGrid& grid, int n_max, const SweepOptions& opts = {}) {
    if (detunings.empty()) throw Error("detuning_sweep: detuning list is empty");
    SweepResult result;
    result.base = tmpl;
    result.base.n_max = n_max;
    result.n_max = n_max;
    result.grid = grid;
    result.detunings = detunings;
    result.points.resize(detunings.size());
    result.instrument_fwhm = opts.instrument_fwhm;

    parallel_for(int(detunings.size()), opts.threads, [&](int i) {
        ModelParams p = tmpl;
        p.n_max = n_max;
        p.delta_c = detunings[i];
        SpectrumSet set = total_spectrum(p, grid);
        SweepPoint& pt = result.points[i];
        pt.delta_c = detunings[i];
        pt.n_cavity = set.n_cavity;
        pt.p_bb = set.p_bb;
        pt.p_xx = set.p_xx;
        pt.channels = std::move(set.channels);
        if (opts.instrument_fwhm > 0.0) {
            pt.total = Eigen::VectorXd::Zero(grid.size());
            for (ChannelSpectrum& c : pt.channels) {
                c = convolve_instrument(c, opts.instrument_fwhm);
                pt.total += c.intensity;
            }
        } else {
            pt.total = std::move(set.total);
        }
    });
    return result;
}

// One sweep per requested truncation, identical grids, shared template.
inline std::vector<SweepResult> detuning_sweep(const ModelParams& tmpl, const std::vector<double>& detunings,
                                               const FrequencyGrid& grid, const std::vector<int>& n_max_list,
                                               const SweepOptions& opts = {}) {
    if (n_max_list.empty()) throw Error("detuning_sweep: n_max list is empty");
    std::vector<SweepResult> out;
    out.reserve(n_max_list.size());
    for (int n : n_max_list) out.push_back(detuning_sweep_single(tmpl, detunings, grid, n, opts));
    return out;
}

}  // namespace bxcav
