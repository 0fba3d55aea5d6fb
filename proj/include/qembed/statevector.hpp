#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qembed {

using cplx = std::complex<double>;

enum class GateKind : uint8_t { H, RX, RY, RZ, CRX, CRZ, CX, CZ };

inline bool gate_has_param(GateKind k) {
    switch (k) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRZ:
            return true;
        default:
            return false;
    }
}

inline bool gate_has_control(GateKind k) {
    return k == GateKind::CRX || k == GateKind::CRZ || k == GateKind::CX ||
           k == GateKind::CZ;
}

// 2x2 target-block matrix of a gate. Rotation convention:
// R_A(theta) = exp(-i theta A / 2).
inline void gate_matrix(GateKind k, double theta, cplx m[2][2]) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    switch (k) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            m[0][0] = r; m[0][1] = r;
            m[1][0] = r; m[1][1] = -r;
            return;
        }
        case GateKind::RX:
        case GateKind::CRX:
            m[0][0] = c;            m[0][1] = cplx(0, -s);
            m[1][0] = cplx(0, -s);  m[1][1] = c;
            return;
        case GateKind::RY:
            m[0][0] = c;  m[0][1] = -s;
            m[1][0] = s;  m[1][1] = c;
            return;
        case GateKind::RZ:
        case GateKind::CRZ:
            m[0][0] = cplx(c, -s); m[0][1] = 0;
            m[1][0] = 0;           m[1][1] = cplx(c, s);
            return;
        case GateKind::CX:
            m[0][0] = 0; m[0][1] = 1;
            m[1][0] = 1; m[1][1] = 0;
            return;
        case GateKind::CZ:
            m[0][0] = 1; m[0][1] = 0;
            m[1][0] = 0; m[1][1] = -1;
            return;
    }
    throw std::logic_error("unreachable");
}

// Length-2^n amplitude vector, little-endian: qubit q is bit q of the
// amplitude index.
class StateVector {
  public:
    explicit StateVector(int n_qubits)
        : n_(n_qubits), amps_(size_t(1) << n_qubits, cplx(0.0, 0.0)) {
        if (n_qubits < 1 || n_qubits > 24)
            throw std::invalid_argument("qubit count out of range");
        amps_[0] = 1.0;
    }

    int qubits() const { return n_; }
    size_t size() const { return amps_.size(); }
    cplx& operator[](size_t i) { return amps_[i]; }
    const cplx& operator[](size_t i) const { return amps_[i]; }
    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    void reset_zero_state() {
        std::fill(amps_.begin(), amps_.end(), cplx(0.0, 0.0));
        amps_[0] = 1.0;
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    void apply(GateKind kind, int target, int control = -1, double theta = 0.0) {
        check_qubit(target);
        if (gate_has_control(kind)) {
            check_qubit(control);
            if (control == target)
                throw std::invalid_argument("control equals target");
        } else if (control >= 0) {
            throw std::invalid_argument("gate takes no control");
        }
        cplx m[2][2];
        gate_matrix(kind, theta, m);
        apply_matrix(m, target, control);
    }

    void apply_dagger(GateKind kind, int target, int control = -1, double theta = 0.0) {
        if (gate_has_param(kind)) {
            apply(kind, target, control, -theta);
        } else {
            apply(kind, target, control, 0.0); // H, CX, CZ are self-inverse
        }
    }

    // Applies (-i/2) G where G is the rotation generator (X, Y or Z on the
    // target, projected on control = |1> for controlled rotations). This is
    // d/dtheta R(theta) applied to a state already rotated by R(theta).
    void apply_generator(GateKind kind, int target, int control = -1) {
        check_qubit(target);
        const size_t tbit = size_t(1) << target;
        const size_t cbit = control >= 0 ? size_t(1) << control : 0;
        const cplx half_mi(0.0, -0.5);
        switch (kind) {
            case GateKind::RX:
            case GateKind::CRX:
                for_pairs(tbit, cbit, [&](cplx& a0, cplx& a1) {
                    const cplx n0 = half_mi * a1;
                    const cplx n1 = half_mi * a0;
                    a0 = n0;
                    a1 = n1;
                });
                break;
            case GateKind::RY:
                for_pairs(tbit, cbit, [&](cplx& a0, cplx& a1) {
                    const cplx n0 = half_mi * cplx(0.0, -1.0) * a1;
                    const cplx n1 = half_mi * cplx(0.0, 1.0) * a0;
                    a0 = n0;
                    a1 = n1;
                });
                break;
            case GateKind::RZ:
            case GateKind::CRZ:
                for_pairs(tbit, cbit, [&](cplx& a0, cplx& a1) {
                    a0 = half_mi * a0;
                    a1 = -half_mi * a1;
                });
                break;
            default:
                throw std::invalid_argument("gate has no generator");
        }
        // Amplitudes outside the control subspace do not contribute to the
        // derivative; zero them out.
        if (cbit) {
            for (size_t i = 0; i < amps_.size(); ++i)
                if (!(i & cbit)) amps_[i] = 0.0;
        }
    }

  private:
    void check_qubit(int q) const {
        if (q < 0 || q >= n_) throw std::invalid_argument("invalid qubit index");
    }

    template <typename F>
    void for_pairs(size_t tbit, size_t cbit, F&& f) {
        const size_t n = amps_.size();
        for (size_t i = 0; i < n; ++i) {
            if (i & tbit) continue;
            if (cbit && !(i & cbit)) continue;
            f(amps_[i], amps_[i | tbit]);
        }
    }

    void apply_matrix(const cplx m[2][2], int target, int control) {
        const size_t tbit = size_t(1) << target;
        const size_t cbit = control >= 0 ? size_t(1) << control : 0;
        for_pairs(tbit, cbit, [&](cplx& a0, cplx& a1) {
            const cplx n0 = m[0][0] * a0 + m[0][1] * a1;
            const cplx n1 = m[1][0] * a0 + m[1][1] * a1;
            a0 = n0;
            a1 = n1;
        });
    }

    int n_;
    std::vector<cplx> amps_;
};

inline cplx state_inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("state size mismatch");
    cplx s(0.0, 0.0);
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace qembed
