#pragma once

#include "qsense/sampling.hpp"
#include "qsense/statevector.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsense {

// Single: one qubit standing in for independent photons, H RZ(phi) H.
// EntangledPair: two qubits prepared in the Fock state (|01> + |10>)/sqrt(2)
// before the same interferometer sequence applied collectively.
enum class CircuitKind { Single, EntangledPair };

int circuit_qubits(CircuitKind kind);

// Fringe frequency of the output estimator: -cos(k phi) with k = 1 or 2.
int fringe_frequency(CircuitKind kind);

struct GateOp {
    GateMatrix matrix;
    std::vector<int> targets;
    std::string label;
};

// Gate list that maps |0...0> to the interferometer output state.
std::vector<GateOp> build_circuit(CircuitKind kind, double phi);

// State after initialization and after each gate, in order.
std::vector<StateVector> intermediate_states(CircuitKind kind, double phi);

StateVector final_state(CircuitKind kind, double phi);

// Expectation of the output estimator: -cos(phi) for Single (polarization),
// -cos(2 phi) for EntangledPair (parity).
double analytic_observable(CircuitKind kind, double phi);

// Final-state outcome distribution, with the noise model applied when given
// (depolarizing charged for the pair circuit's CNOT, then readout flips).
std::vector<double> outcome_distribution(CircuitKind kind, double phi,
                                         const std::optional<ReadoutNoise>& noise);

// Delta L = phi * lambda / (2 pi).
double phase_to_path_length(double phi, double wavelength);

struct ExperimentSpec {
    CircuitKind kind = CircuitKind::Single;
    double phi = 0.0;
    uint64_t shots_per_trial = 1024;
    uint64_t trials = 5;
    std::optional<ReadoutNoise> noise;
    uint64_t seed = 0;
    uint64_t stream_offset = 0;  // trial t draws from stream_offset + t
};

struct TrialSeries {
    ExperimentSpec spec;
    std::vector<double> values;     // one estimator value per trial
    uint64_t qubits_per_trial = 0;  // N: shots for Single, 2*shots for EntangledPair
};

// Runs trials of shots each: statevector -> noise -> counts -> estimator.
// Trials execute on independent streams and may run on multiple threads;
// the result is identical either way.
TrialSeries run_experiment(const ExperimentSpec& spec);

struct SweepPoint {
    double phi = 0.0;
    double mean = 0.0;
    double stddev = 0.0;  // across trials
    uint64_t trials = 0;
    uint64_t shots = 0;
};

struct SweepConfig {
    CircuitKind kind = CircuitKind::Single;
    int angles = 13;  // equally spaced over [0, 2 pi] inclusive
    uint64_t shots_per_trial = 1024;
    uint64_t trials = 5;
    std::optional<ReadoutNoise> noise;
    uint64_t seed = 0;
    uint64_t stream_offset = 0;
};

// Fringe measurement over the angle grid; angle a, trial t uses stream
// stream_offset + a*trials + t.
std::vector<SweepPoint> run_fringe_sweep(const SweepConfig& config);

} // namespace qsense
