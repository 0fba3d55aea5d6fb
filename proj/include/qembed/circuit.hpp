#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "qembed/ansatz.hpp"
#include "qembed/complex_ops.hpp"
#include "qembed/statevector.hpp"

namespace qembed {

// |psi(params)> = layers(params) H^n |0...0>
inline StateVector prepare_state(const AnsatzSpec& ansatz, std::span<const double> params) {
    if (params.size() != ansatz.param_count())
        throw std::invalid_argument("parameter count mismatch");
    StateVector st(ansatz.n_qubits);
    for (int q = 0; q < ansatz.n_qubits; ++q) st.apply(GateKind::H, q);
    size_t p = 0;
    for (int l = 0; l < ansatz.n_layers; ++l)
        for (const auto& op : ansatz.layer_ops())
            st.apply(op.kind, op.target, op.control,
                     gate_has_param(op.kind) ? params[p++] : 0.0);
    return st;
}

inline ComplexVec state_to_vec(const StateVector& st) {
    ComplexVec v(st.size());
    for (size_t i = 0; i < st.size(); ++i) {
        v.re[i] = st[i].real();
        v.im[i] = st[i].imag();
    }
    return v;
}

inline StateVector vec_to_state(const ComplexVec& v, int n_qubits) {
    if (v.dim() != (size_t(1) << n_qubits))
        throw std::invalid_argument("vector dimension is not 2^n");
    StateVector st(n_qubits);
    for (size_t i = 0; i < st.size(); ++i) st[i] = cplx(v.re[i], v.im[i]);
    return st;
}

// Raw adjoint pass: given a cotangent state lambda, returns
// g_j = 2 Re <lambda | d psi / d theta_j> for every parameter. Exact
// reverse-mode differentiation through the statevector; one forward and
// one backward sweep regardless of parameter count.
inline std::vector<double> adjoint_gradient(const AnsatzSpec& ansatz,
                                            std::span<const double> params,
                                            const StateVector& lambda,
                                            const StateVector* prepared = nullptr) {
    if (params.size() != ansatz.param_count())
        throw std::invalid_argument("parameter count mismatch");
    StateVector ket = prepared ? *prepared : prepare_state(ansatz, params);
    StateVector mu = lambda;
    std::vector<double> grad(params.size(), 0.0);

    // Walk the gate list backwards. Invariants at step j: ket = psi_j
    // (state after gate j), mu = U_{j+1}^† ... U_L^† lambda.
    const auto& layer = ansatz.layer_ops();
    size_t p = params.size();
    for (int l = ansatz.n_layers - 1; l >= 0; --l) {
        for (auto it = layer.rbegin(); it != layer.rend(); ++it) {
            const auto& op = *it;
            const bool has_p = gate_has_param(op.kind);
            if (has_p) {
                --p;
                StateVector d = ket; // dU psi_{j-1} = (-i/2) G psi_j
                d.apply_generator(op.kind, op.target, op.control);
                grad[p] = 2.0 * state_inner(mu, d).real();
            }
            const double theta = has_p ? params[p] : 0.0;
            ket.apply_dagger(op.kind, op.target, op.control, theta);
            mu.apply_dagger(op.kind, op.target, op.control, theta);
        }
    }
    return grad;
}

// |<psi(a)|psi(b)>|^2 via direct statevector overlap.
inline double pqc_fidelity(const AnsatzSpec& ansatz, std::span<const double> params_a,
                           std::span<const double> params_b) {
    const StateVector a = prepare_state(ansatz, params_a);
    const StateVector b = prepare_state(ansatz, params_b);
    return std::norm(state_inner(a, b));
}

// Overlap via inverse-circuit composition: run circuit A, un-run circuit B,
// and read the all-zero amplitude. Agrees with pqc_fidelity to simulator
// precision; kept as an internal cross-check of the overlap-circuit picture.
inline double pqc_fidelity_inverse_circuit(const AnsatzSpec& ansatz,
                                           std::span<const double> params_a,
                                           std::span<const double> params_b) {
    if (params_a.size() != ansatz.param_count() ||
        params_b.size() != ansatz.param_count())
        throw std::invalid_argument("parameter count mismatch");
    StateVector st = prepare_state(ansatz, params_a);
    const auto& layer = ansatz.layer_ops();
    size_t p = params_b.size();
    for (int l = ansatz.n_layers - 1; l >= 0; --l)
        for (auto it = layer.rbegin(); it != layer.rend(); ++it) {
            const bool has_p = gate_has_param(it->kind);
            if (has_p) --p;
            st.apply_dagger(it->kind, it->target, it->control,
                            has_p ? params_b[p] : 0.0);
        }
    for (int q = 0; q < ansatz.n_qubits; ++q) st.apply_dagger(GateKind::H, q);
    return std::norm(st[0]);
}

// Gradient of F = |<target|psi(params)>|^2 w.r.t. the circuit angles.
// Returns the fidelity; fills grad.
inline double fidelity_gradient(const AnsatzSpec& ansatz, std::span<const double> params,
                                const StateVector& target, std::vector<double>& grad) {
    const StateVector psi = prepare_state(ansatz, params);
    const cplx z = state_inner(target, psi); // <t|psi>
    // dF/dtheta = 2 Re(conj(z) <t|dpsi>) = 2 Re <z t | dpsi>
    StateVector lambda = target;
    for (size_t i = 0; i < lambda.size(); ++i) lambda[i] *= z;
    grad = adjoint_gradient(ansatz, params, lambda, &psi);
    return std::norm(z);
}

} // namespace qembed
