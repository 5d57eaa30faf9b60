#pragma once

#include "qsense/rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qsense {

// Asymmetric per-qubit misread probabilities, taken identical across qubits,
// plus a depolarizing probability charged once per CNOT.
struct ReadoutNoise {
    double eps01 = 0.0;       // true 0 read as 1
    double eps10 = 0.0;       // true 1 read as 0
    double depol_cnot = 0.0;  // two-qubit depolarizing event per CNOT
    std::string name;

    // Each probability must lie in [0, 0.5).
    void validate() const;

    // Named calibrations. "ideal" is all-zero; "manila-2021" reproduces the
    // fringe amplitudes measured on the 2021 IBM Manila backend:
    // eps01 = 0.013, eps10 = 0.055 give a single-qubit fringe of amplitude
    // 1 - eps01 - eps10 = 0.932 and offset eps01 - eps10 = -0.042, and
    // depol_cnot = 0.0191 brings the two-qubit parity amplitude
    // (1 - depol) * 0.932^2 to 0.852.
    static ReadoutNoise preset(const std::string& name);
    static std::vector<std::string> preset_names();

    // JSON document {"eps01": r, "eps10": r, "depol_cnot": r, "name": s}.
    static ReadoutNoise from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// Tally of measurement outcomes from one trial. Keys are bitstrings with
// qubit 0 first, e.g. "01" for |01>.
struct ShotCounts {
    int n_qubits = 0;
    uint64_t shots = 0;
    std::map<std::string, uint64_t> counts;

    uint64_t at(const std::string& outcome) const;
};

std::string outcome_bitstring(int n_qubits, int index);

// Flips each qubit's read bit independently: 0->1 with eps01, 1->0 with
// eps10. Input must be a normalized distribution over 2^n_qubits outcomes.
std::vector<double> apply_readout_noise(std::span<const double> probs,
                                        const ReadoutNoise& noise,
                                        int n_qubits);

// (1 - depol) * probs + depol * uniform, over a two-qubit distribution.
std::vector<double> apply_cnot_depolarizing(std::span<const double> probs,
                                            double depol);

// Multinomial draw of `shots` outcomes, deterministic given the stream.
ShotCounts sample_counts(std::span<const double> probs, uint64_t shots,
                         RandomStream& rng);

// (count1 - count0) / shots for single-qubit counts.
double polarization(const ShotCounts& counts);

// (count00 + count11 - count01 - count10) / shots for two-qubit counts.
double parity(const ShotCounts& counts);

} // namespace qsense
