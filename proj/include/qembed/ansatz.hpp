#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qembed/statevector.hpp"

namespace qembed {

struct GateOp {
    GateKind kind;
    int target;
    int control; // -1 for single-qubit / uncontrolled gates
};

// Circuit template: ansatz id, qubit count, layer count. The gate content
// of a single layer comes from the catalog below; the full circuit is a
// Hadamard input layer followed by n_layers repetitions.
struct AnsatzSpec {
    std::string id;
    int n_qubits = 0;
    int n_layers = 0;

    AnsatzSpec() = default;
    AnsatzSpec(std::string ansatz_id, int qubits, int layers);

    const std::vector<GateOp>& layer_ops() const { return layer_; }
    size_t params_per_layer() const { return params_per_layer_; }
    size_t param_count() const { return params_per_layer_ * static_cast<size_t>(n_layers); }
    size_t dim() const { return size_t(1) << n_qubits; }

  private:
    std::vector<GateOp> layer_;
    size_t params_per_layer_ = 0;
};

namespace detail {

// Hardware-efficient circuit catalog (A5 / A14 families and relatives).
// Ring direction: first entangling block controls i -> (i+1) mod n for
// i = n-1 .. 0; the mirrored second block reverses the direction.
inline std::vector<GateOp> catalog_layer(const std::string& id, int n) {
    std::vector<GateOp> ops;
    auto rot_all = [&](GateKind k) {
        for (int q = 0; q < n; ++q) ops.push_back({k, q, -1});
    };
    auto chain = [&](GateKind k) { // control q+1 -> target q, top-down
        for (int q = n - 2; q >= 0; --q) ops.push_back({k, q, q + 1});
    };
    auto ring = [&](GateKind k) {
        for (int i = n - 1; i >= 0; --i) ops.push_back({k, (i + 1) % n, i});
    };
    auto ring_rev = [&](GateKind k) {
        for (int i = 0; i < n; ++i) ops.push_back({k, (i - 1 + n) % n, i});
    };
    auto all_to_all = [&](GateKind k) { // each qubit controls every other
        for (int i = n - 1; i >= 0; --i)
            for (int j = n - 1; j >= 0; --j)
                if (j != i) ops.push_back({k, j, i});
    };

    if (id == "A1") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
    } else if (id == "A2") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
        chain(GateKind::CX);
    } else if (id == "A3") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
        chain(GateKind::CRZ);
    } else if (id == "A4") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
        chain(GateKind::CRX);
    } else if (id == "A5") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
        all_to_all(GateKind::CRZ);
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
    } else if (id == "A6") {
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
        all_to_all(GateKind::CRX);
        rot_all(GateKind::RX);
        rot_all(GateKind::RZ);
    } else if (id == "A9") {
        rot_all(GateKind::H);
        chain(GateKind::CZ);
        rot_all(GateKind::RX);
    } else if (id == "A13") {
        rot_all(GateKind::RY);
        ring(GateKind::CRZ);
        rot_all(GateKind::RY);
        ring_rev(GateKind::CRZ);
    } else if (id == "A14") {
        rot_all(GateKind::RY);
        ring(GateKind::CRX);
        rot_all(GateKind::RY);
        ring_rev(GateKind::CRX);
    } else if (id == "A15") {
        rot_all(GateKind::RY);
        ring(GateKind::CX);
        rot_all(GateKind::RY);
        ring_rev(GateKind::CX);
    } else {
        throw std::invalid_argument("unknown ansatz id: " + id);
    }
    return ops;
}

} // namespace detail

inline const std::vector<std::string>& ansatz_catalog_ids() {
    static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4", "A5",
                                                 "A6", "A9", "A13", "A14", "A15"};
    return ids;
}

inline AnsatzSpec::AnsatzSpec(std::string ansatz_id, int qubits, int layers)
    : id(std::move(ansatz_id)), n_qubits(qubits), n_layers(layers) {
    if (qubits < 2) throw std::invalid_argument("ansatz needs >= 2 qubits");
    if (layers < 1) throw std::invalid_argument("ansatz needs >= 1 layer");
    layer_ = detail::catalog_layer(id, qubits);
    for (const auto& op : layer_)
        if (gate_has_param(op.kind)) ++params_per_layer_;
}

} // namespace qembed
