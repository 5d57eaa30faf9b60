#include "qsense/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsense {

namespace {

constexpr double kConstructTol = 1e-9;

void check_finite(const std::vector<cdouble>& values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + " contains a non-finite entry");
        }
    }
}

} // namespace

GateMatrix::GateMatrix(int dim, std::vector<cdouble> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ != 2 && dim_ != 4) {
        throw std::invalid_argument("gate dimension must be 2 or 4");
    }
    if (entries_.size() != static_cast<size_t>(dim_) * dim_) {
        throw std::invalid_argument("gate entry count does not match dimension");
    }
    check_finite(entries_, "gate matrix");
    // U+U = I elementwise within 1e-9.
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            cdouble acc = 0.0;
            for (int k = 0; k < dim_; ++k) {
                acc += std::conj(at(k, r)) * at(k, c);
            }
            const cdouble expect = (r == c) ? cdouble(1.0) : cdouble(0.0);
            if (std::abs(acc - expect) > kConstructTol) {
                throw std::invalid_argument("matrix is not unitary");
            }
        }
    }
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
    if (dim_ != rhs.dim_) {
        throw std::invalid_argument("gate dimension mismatch in product");
    }
    std::vector<cdouble> out(static_cast<size_t>(dim_) * dim_, 0.0);
    for (int r = 0; r < dim_; ++r) {
        for (int k = 0; k < dim_; ++k) {
            const cdouble a = at(r, k);
            for (int c = 0; c < dim_; ++c) {
                out[static_cast<size_t>(r) * dim_ + c] += a * rhs.at(k, c);
            }
        }
    }
    return GateMatrix(dim_, std::move(out));
}

GateMatrix gate(GateKind kind, std::optional<double> phi) {
    if ((kind == GateKind::RZ) != phi.has_value()) {
        throw std::invalid_argument(kind == GateKind::RZ
                                        ? "RZ requires a rotation angle"
                                        : "only RZ takes a rotation angle");
    }
    switch (kind) {
        case GateKind::H: {
            const double s = 1.0 / std::numbers::sqrt2;
            return GateMatrix(2, {s, s, s, -s});
        }
        case GateKind::X:
            return GateMatrix(2, {0.0, 1.0, 1.0, 0.0});
        case GateKind::RZ: {
            const cdouble lo = std::polar(1.0, -*phi / 2.0);
            const cdouble hi = std::polar(1.0, +*phi / 2.0);
            return GateMatrix(2, {lo, 0.0, 0.0, hi});
        }
        case GateKind::CNOT:
            return GateMatrix(4, {1, 0, 0, 0,
                                  0, 1, 0, 0,
                                  0, 0, 0, 1,
                                  0, 0, 1, 0});
    }
    throw std::invalid_argument("unknown gate kind");
}

GateMatrix identity_gate(int dim) {
    std::vector<cdouble> entries(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        entries[static_cast<size_t>(i) * dim + i] = 1.0;
    }
    return GateMatrix(dim, std::move(entries));
}

GateMatrix tensor(const GateMatrix& a, const GateMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor expects two 2x2 gates");
    }
    std::vector<cdouble> entries(16, 0.0);
    for (int ra = 0; ra < 2; ++ra) {
        for (int ca = 0; ca < 2; ++ca) {
            for (int rb = 0; rb < 2; ++rb) {
                for (int cb = 0; cb < 2; ++cb) {
                    entries[static_cast<size_t>(ra * 2 + rb) * 4 + (ca * 2 + cb)] =
                        a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    return GateMatrix(4, std::move(entries));
}

StateVector StateVector::basis_state(int n_qubits, int index) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be between 1 and 4");
    }
    const int dim = 1 << n_qubits;
    if (index < 0 || index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<cdouble> amps(static_cast<size_t>(dim), 0.0);
    amps[static_cast<size_t>(index)] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector::StateVector(int n_qubits, std::vector<cdouble> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxQubits) {
        throw std::invalid_argument("qubit count must be between 1 and 4");
    }
    if (amps_.size() != (1u << n_qubits_)) {
        throw std::invalid_argument("amplitude count does not match qubit count");
    }
    check_finite(amps_, "state vector");
    double norm2 = 0.0;
    for (const auto& a : amps_) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kConstructTol) {
        throw std::invalid_argument("state vector is not normalized");
    }
}

StateVector StateVector::apply(const GateMatrix& g, std::span<const int> targets) const {
    const int k = static_cast<int>(targets.size());
    if (k < 1 || (1 << k) != g.dim()) {
        throw std::invalid_argument("gate dimension does not match target count");
    }
    for (size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_qubits_) {
            throw std::invalid_argument("target qubit out of range");
        }
        for (size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate target qubit");
            }
        }
    }

    // Bit position of qubit q inside an amplitude index (qubit 0 = MSB).
    const auto bit_pos = [this](int q) { return n_qubits_ - 1 - q; };

    const int dim = 1 << n_qubits_;
    std::vector<cdouble> out(static_cast<size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) {
        int row = 0;
        for (int t = 0; t < k; ++t) {
            row |= ((i >> bit_pos(targets[t])) & 1) << (k - 1 - t);
        }
        int base = i;
        for (int t = 0; t < k; ++t) {
            base &= ~(1 << bit_pos(targets[t]));
        }
        cdouble acc = 0.0;
        for (int col = 0; col < g.dim(); ++col) {
            int src = base;
            for (int t = 0; t < k; ++t) {
                src |= ((col >> (k - 1 - t)) & 1) << bit_pos(targets[t]);
            }
            acc += g.at(row, col) * amps_[static_cast<size_t>(src)];
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return StateVector(n_qubits_, std::move(out));
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amps_.size());
    for (size_t i = 0; i < amps_.size(); ++i) {
        probs[i] = std::norm(amps_[i]);
    }
    return probs;
}

BlochVector bloch_vector(const StateVector& state) {
    if (state.n_qubits() != 1) {
        throw std::invalid_argument("Bloch vector requires a single-qubit state");
    }
    const cdouble c0 = state.amp(0);
    const cdouble c1 = state.amp(1);
    const cdouble cross = std::conj(c0) * c1;
    return BlochVector{2.0 * cross.real(), 2.0 * cross.imag(),
                       std::norm(c0) - std::norm(c1)};
}

} // namespace qsense
