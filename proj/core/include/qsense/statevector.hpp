#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qsense {

using cdouble = std::complex<double>;

constexpr int kMaxQubits = 4;

enum class GateKind { H, X, RZ, CNOT };

// Dense 2x2 or 4x4 unitary, row-major. Construction rejects matrices that
// are not unitary to within 1e-9 elementwise.
class GateMatrix {
public:
    GateMatrix(int dim, std::vector<cdouble> entries);

    int dim() const { return dim_; }
    cdouble at(int row, int col) const { return entries_[row * dim_ + col]; }

    GateMatrix operator*(const GateMatrix& rhs) const;

private:
    int dim_;
    std::vector<cdouble> entries_;
};

// Named gates. phi is required for RZ and rejected elsewhere.
// RZ uses the symmetric convention diag(e^{-i phi/2}, e^{+i phi/2});
// CNOT has qubit 0 as control.
GateMatrix gate(GateKind kind, std::optional<double> phi = std::nullopt);

GateMatrix identity_gate(int dim);

// Kronecker product with the qubit-0 factor first.
GateMatrix tensor(const GateMatrix& a, const GateMatrix& b);

// Exact amplitudes of an n-qubit register, n <= 4. Amplitude index i
// addresses the basis state whose bits list qubit 0 first (most
// significant), so |01> = |0>_0 (x) |1>_1 sits at index 1.
class StateVector {
public:
    static StateVector basis_state(int n_qubits, int index);

    // Validates the length and that the norm is 1 within 1e-9.
    StateVector(int n_qubits, std::vector<cdouble> amps);

    int n_qubits() const { return n_qubits_; }
    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<cdouble>& amps() const { return amps_; }
    cdouble amp(int i) const { return amps_[static_cast<size_t>(i)]; }

    // Applies g to the given qubits; targets[0] is the most significant bit
    // of the gate's own index space. g.dim() must equal 2^targets.size().
    StateVector apply(const GateMatrix& g, std::span<const int> targets) const;
    StateVector apply(const GateMatrix& g, std::initializer_list<int> targets) const {
        return apply(g, std::span<const int>(targets.begin(), targets.size()));
    }

    std::vector<double> probabilities() const;

private:
    int n_qubits_;
    std::vector<cdouble> amps_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Single-qubit states only: x = 2 Re(c0* c1), y = 2 Im(c0* c1), z = p0 - p1.
BlochVector bloch_vector(const StateVector& state);

} // namespace qsense
