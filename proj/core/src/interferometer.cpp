#include "qsense/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qsense {

namespace {

// Index-addressed parallel loop; results are written by index so the
// outcome does not depend on scheduling.
void parallel_for(uint64_t count, const std::function<void(uint64_t)>& body) {
    unsigned n_threads = std::thread::hardware_concurrency();
    if (n_threads == 0) {
        n_threads = 1;
    }
    n_threads = static_cast<unsigned>(
        std::min<uint64_t>(n_threads, std::max<uint64_t>(count, 1)));
    if (n_threads <= 1 || count < 4) {
        for (uint64_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (uint64_t i = t; i < count; i += n_threads) {
                body(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

} // namespace

int circuit_qubits(CircuitKind kind) {
    return kind == CircuitKind::Single ? 1 : 2;
}

int fringe_frequency(CircuitKind kind) {
    return kind == CircuitKind::Single ? 1 : 2;
}

std::vector<GateOp> build_circuit(CircuitKind kind, double phi) {
    std::vector<GateOp> ops;
    if (kind == CircuitKind::Single) {
        ops.push_back({gate(GateKind::H), {0}, "H"});
        ops.push_back({gate(GateKind::RZ, phi), {0}, "RZ"});
        ops.push_back({gate(GateKind::H), {0}, "H"});
        return ops;
    }
    const GateMatrix h = gate(GateKind::H);
    const GateMatrix rz = gate(GateKind::RZ, phi);
    ops.push_back({tensor(h, gate(GateKind::X)), {0, 1}, "HxX"});
    ops.push_back({gate(GateKind::CNOT), {0, 1}, "CNOT"});
    ops.push_back({tensor(h, h), {0, 1}, "HxH"});
    ops.push_back({tensor(rz, rz), {0, 1}, "RZxRZ"});
    ops.push_back({tensor(h, h), {0, 1}, "HxH"});
    return ops;
}

std::vector<StateVector> intermediate_states(CircuitKind kind, double phi) {
    std::vector<StateVector> states;
    states.push_back(StateVector::basis_state(circuit_qubits(kind), 0));
    for (const auto& op : build_circuit(kind, phi)) {
        states.push_back(states.back().apply(
            op.matrix, std::span<const int>(op.targets.data(), op.targets.size())));
    }
    return states;
}

StateVector final_state(CircuitKind kind, double phi) {
    return intermediate_states(kind, phi).back();
}

double analytic_observable(CircuitKind kind, double phi) {
    return -std::cos(fringe_frequency(kind) * phi);
}

std::vector<double> outcome_distribution(CircuitKind kind, double phi,
                                         const std::optional<ReadoutNoise>& noise) {
    std::vector<double> probs = final_state(kind, phi).probabilities();
    if (noise) {
        if (kind == CircuitKind::EntangledPair && noise->depol_cnot > 0.0) {
            probs = apply_cnot_depolarizing(probs, noise->depol_cnot);
        }
        probs = apply_readout_noise(probs, *noise, circuit_qubits(kind));
    }
    return probs;
}

double phase_to_path_length(double phi, double wavelength) {
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
    return phi * wavelength / (2.0 * std::numbers::pi);
}

TrialSeries run_experiment(const ExperimentSpec& spec) {
    if (spec.shots_per_trial < 1 || spec.trials < 1) {
        throw std::invalid_argument("shots_per_trial and trials must be at least 1");
    }
    if (spec.noise) {
        spec.noise->validate();
    }
    const std::vector<double> probs =
        outcome_distribution(spec.kind, spec.phi, spec.noise);

    TrialSeries series;
    series.spec = spec;
    series.values.resize(spec.trials);
    series.qubits_per_trial =
        spec.shots_per_trial * static_cast<uint64_t>(circuit_qubits(spec.kind));

    parallel_for(spec.trials, [&](uint64_t t) {
        RandomStream rng(spec.seed, spec.stream_offset + t);
        const ShotCounts counts = sample_counts(probs, spec.shots_per_trial, rng);
        series.values[t] = spec.kind == CircuitKind::Single ? polarization(counts)
                                                            : parity(counts);
    });
    return series;
}

std::vector<SweepPoint> run_fringe_sweep(const SweepConfig& config) {
    if (config.angles < 2) {
        throw std::invalid_argument("sweep needs at least 2 angles");
    }
    std::vector<SweepPoint> points;
    points.reserve(static_cast<size_t>(config.angles));
    for (int a = 0; a < config.angles; ++a) {
        const double phi =
            2.0 * std::numbers::pi * a / static_cast<double>(config.angles - 1);
        ExperimentSpec spec;
        spec.kind = config.kind;
        spec.phi = phi;
        spec.shots_per_trial = config.shots_per_trial;
        spec.trials = config.trials;
        spec.noise = config.noise;
        spec.seed = config.seed;
        spec.stream_offset =
            config.stream_offset + static_cast<uint64_t>(a) * config.trials;
        const TrialSeries series = run_experiment(spec);

        double mean = 0.0;
        for (double v : series.values) {
            mean += v;
        }
        mean /= static_cast<double>(series.values.size());
        double var = 0.0;
        for (double v : series.values) {
            var += (v - mean) * (v - mean);
        }
        var = series.values.size() > 1
                  ? var / static_cast<double>(series.values.size() - 1)
                  : 0.0;
        points.push_back(SweepPoint{phi, mean, std::sqrt(var), config.trials,
                                    config.shots_per_trial});
    }
    return points;
}

} // namespace qsense
