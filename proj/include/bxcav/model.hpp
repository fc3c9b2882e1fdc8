#pragma once

#include <string>
#include <vector>

#include "bxcav/hilbert.hpp"

namespace bxcav {

// All energies and rates in ueV with hbar = 1; time in hbar/ueV.
struct ModelParams {
    double g_x = 51.0;          // X <-> cavity coupling
    double g_b = 43.0;          // B <-> cavity coupling
    double kappa = 24.0;        // cavity loss
    double chi = 400.0;         // biexciton binding energy
    double delta = 10.0;        // fine-structure splitting
    double delta_c = 0.0;       // cavity detuning omega_c - omega_X
    double gamma = 0.13;        // radiative decay, shared by the four dipole channels
    double pump = 0.05;         // incoherent pump, shared by the four channels
    double gamma_phase = 5.0;   // pure dephasing
    int n_max = 2;              // photon truncation

    HilbertDims dims() const { return HilbertDims::with_max_photons(n_max); }

    void validate() const {
        auto nonneg = [](double v, const char* name) {
            if (!(v >= 0.0)) throw Error(std::string("ModelParams: ") + name + " must be >= 0");
        };
        nonneg(g_x, "g_x");
        nonneg(g_b, "g_b");
        nonneg(kappa, "kappa");
        nonneg(delta, "delta");
        nonneg(gamma, "gamma");
        nonneg(pump, "pump");
        nonneg(gamma_phase, "gamma_phase");
        if (!(chi > 0.0)) throw Error("ModelParams: chi must be > 0");
        if (n_max < 1) throw Error("ModelParams: n_max must be >= 1");
    }
};

enum class ChannelKind { decay, pump, dephase };

// One Markovian channel. For decay and pump, `op` is the jump operator and
// the dissipator is (rate/2)(2 op rho op+ - op+op rho - rho op+op). Pump
// channels carry the raising orientation (|X><G| etc). For dephase, `op` is
// the Hermitian projector difference and the prefactor is rate/4, which on
// the pair's support reproduces (rate/2)(z rho z - rho) while preserving the
// trace on the full space.
struct CollapseChannel {
    std::string label;
    double rate;
    QuantumOperator op;
    ChannelKind kind;
};

// H' = -chi sBB + delta sYY + delta_c a+a + g_x (sGX a+ + h.c.) + g_b (sXB a+ + h.c.)
inline QuantumOperator build_hamiltonian(const ModelParams& p) {
    p.validate();
    const HilbertDims dims = p.dims();
    using L = QdLevel;
    const QuantumOperator a = annihilation_operator(dims);
    const QuantumOperator ad = a.adjoint();

    QuantumOperator h = (-p.chi) * transition_operator(L::B, L::B, dims) +
                        p.delta * transition_operator(L::Y, L::Y, dims) + p.delta_c * (ad * a);
    const QuantumOperator gx_term = transition_operator(L::G, L::X, dims) * ad;
    const QuantumOperator gb_term = transition_operator(L::X, L::B, dims) * ad;
    h = h + p.g_x * (gx_term + gx_term.adjoint()) + p.g_b * (gb_term + gb_term.adjoint());
    return h;
}

// Exactly 13 channels: cavity decay, 4 radiative decays, 4 pumps, 4 dephasing pairs.
inline std::vector<CollapseChannel> build_channels(const ModelParams& p) {
    p.validate();
    const HilbertDims dims = p.dims();
    using L = QdLevel;
    std::vector<CollapseChannel> channels;
    channels.reserve(13);

    channels.push_back({"kappa_cavity", p.kappa, annihilation_operator(dims), ChannelKind::decay});

    const std::array<std::pair<L, L>, 4> dipoles{{{L::X, L::B}, {L::Y, L::B}, {L::G, L::X}, {L::G, L::Y}}};
    for (auto [lo, hi] : dipoles) {
        channels.push_back({std::string("gamma_") + to_string(hi) + to_string(lo), p.gamma,
                            transition_operator(lo, hi, dims), ChannelKind::decay});
    }
    for (auto [lo, hi] : dipoles) {
        channels.push_back({std::string("pump_") + to_string(lo) + to_string(hi), p.pump,
                            transition_operator(hi, lo, dims), ChannelKind::pump});
    }

    const std::array<std::pair<L, L>, 4> pairs{{{L::B, L::X}, {L::B, L::Y}, {L::X, L::G}, {L::Y, L::G}}};
    for (auto [u, v] : pairs) {
        QuantumOperator z = transition_operator(u, u, dims) - transition_operator(v, v, dims);
        channels.push_back({std::string("dephase_") + to_string(u) + to_string(v), p.gamma_phase,
                            std::move(z), ChannelKind::dephase});
    }
    return channels;
}

// D^2 x D^2 generator acting on column-vectorized density matrices.
struct Liouvillian {
    HilbertDims dims;
    Matrix sup;
};

inline Liouvillian build_liouvillian(const QuantumOperator& h, const std::vector<CollapseChannel>& channels) {
    const HilbertDims dims = h.dims;
    const int d = dims.dim();
    const double hscale = h.m.cwiseAbs().maxCoeff();
    if ((h.m - h.m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, hscale))
        throw Error("build_liouvillian: Hamiltonian is not Hermitian");

    const Matrix id = Matrix::Identity(d, d);
    Matrix sup = Complex(0, -1) * (kron(id, h.m) - kron(h.m.transpose(), id));

    for (const CollapseChannel& ch : channels) {
        if (ch.op.dims != dims) throw DimensionError("build_liouvillian: channel '" + ch.label + "' dimension mismatch");
        const double pref = (ch.kind == ChannelKind::dephase) ? ch.rate / 4.0 : ch.rate / 2.0;
        if (pref == 0.0) continue;
        const Matrix& c = ch.op.m;
        const Matrix cdc = c.adjoint() * c;
        sup += pref * (2.0 * kron(c.conjugate(), c) - kron(id, cdc) - kron(cdc.transpose(), id));
    }
    return {dims, std::move(sup)};
}

inline Liouvillian build_liouvillian(const ModelParams& p) {
    return build_liouvillian(build_hamiltonian(p), build_channels(p));
}

}  // namespace bxcav
