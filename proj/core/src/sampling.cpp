#include "qsense/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qsense {

namespace {

constexpr double kSumTol = 1e-9;
constexpr int kMaxProbQubits = 4;

int qubits_for_size(size_t size) {
    for (int n = 1; n <= kMaxProbQubits; ++n) {
        if (size == (1u << n)) {
            return n;
        }
    }
    throw std::invalid_argument("distribution length is not 2^n for n in 1..4");
}

void check_distribution(std::span<const double> probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < -kSumTol) {
            throw std::invalid_argument("probabilities must be finite and non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
        throw std::invalid_argument("probabilities must sum to 1");
    }
}

void check_rate(double p, const char* what) {
    if (!(p >= 0.0) || p >= 0.5) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 0.5)");
    }
}

} // namespace

void ReadoutNoise::validate() const {
    check_rate(eps01, "eps01");
    check_rate(eps10, "eps10");
    check_rate(depol_cnot, "depol_cnot");
}

ReadoutNoise ReadoutNoise::preset(const std::string& name) {
    if (name == "ideal") {
        return ReadoutNoise{0.0, 0.0, 0.0, "ideal"};
    }
    if (name == "manila-2021") {
        return ReadoutNoise{0.013, 0.055, 0.0191, "manila-2021"};
    }
    throw std::invalid_argument("unknown noise preset: " + name);
}

std::vector<std::string> ReadoutNoise::preset_names() {
    return {"ideal", "manila-2021"};
}

ReadoutNoise ReadoutNoise::from_json_text(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    ReadoutNoise noise;
    noise.eps01 = doc.at("eps01").get<double>();
    noise.eps10 = doc.at("eps10").get<double>();
    noise.depol_cnot = doc.value("depol_cnot", 0.0);
    noise.name = doc.value("name", std::string{});
    noise.validate();
    return noise;
}

std::string ReadoutNoise::to_json_text() const {
    nlohmann::json doc;
    doc["eps01"] = eps01;
    doc["eps10"] = eps10;
    doc["depol_cnot"] = depol_cnot;
    doc["name"] = name;
    return doc.dump();
}

uint64_t ShotCounts::at(const std::string& outcome) const {
    const auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
}

std::string outcome_bitstring(int n_qubits, int index) {
    std::string s(static_cast<size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1) {
            s[static_cast<size_t>(q)] = '1';
        }
    }
    return s;
}

std::vector<double> apply_readout_noise(std::span<const double> probs,
                                        const ReadoutNoise& noise,
                                        int n_qubits) {
    noise.validate();
    if (n_qubits < 1 || probs.size() != (1u << n_qubits)) {
        throw std::invalid_argument("distribution length does not match qubit count");
    }
    check_distribution(probs);

    // Per-qubit confusion matrix, read[row] given true[col].
    const double m[2][2] = {{1.0 - noise.eps01, noise.eps10},
                            {noise.eps01, 1.0 - noise.eps10}};
    const int dim = 1 << n_qubits;
    std::vector<double> out(static_cast<size_t>(dim), 0.0);
    for (int read = 0; read < dim; ++read) {
        double acc = 0.0;
        for (int truth = 0; truth < dim; ++truth) {
            double w = probs[static_cast<size_t>(truth)];
            for (int q = 0; q < n_qubits && w != 0.0; ++q) {
                const int rb = (read >> q) & 1;
                const int tb = (truth >> q) & 1;
                w *= m[rb][tb];
            }
            acc += w;
        }
        out[static_cast<size_t>(read)] = acc;
    }
    return out;
}

std::vector<double> apply_cnot_depolarizing(std::span<const double> probs,
                                            double depol) {
    check_rate(depol, "depol_cnot");
    if (probs.size() != 4) {
        throw std::invalid_argument("depolarizing expects a two-qubit distribution");
    }
    check_distribution(probs);
    std::vector<double> out(4);
    for (size_t i = 0; i < 4; ++i) {
        out[i] = (1.0 - depol) * probs[i] + depol * 0.25;
    }
    return out;
}

ShotCounts sample_counts(std::span<const double> probs, uint64_t shots,
                         RandomStream& rng) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const int n_qubits = qubits_for_size(probs.size());
    check_distribution(probs);

    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += std::max(probs[i], 0.0);
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    std::vector<uint64_t> tally(probs.size(), 0);
    for (uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const size_t idx = std::min(static_cast<size_t>(it - cumulative.begin()),
                                    probs.size() - 1);
        ++tally[idx];
    }

    ShotCounts counts;
    counts.n_qubits = n_qubits;
    counts.shots = shots;
    for (size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) {
            counts.counts[outcome_bitstring(n_qubits, static_cast<int>(i))] = tally[i];
        }
    }
    return counts;
}

double polarization(const ShotCounts& counts) {
    if (counts.n_qubits != 1) {
        throw std::invalid_argument("polarization requires single-qubit counts");
    }
    if (counts.shots < 1) {
        throw std::invalid_argument("polarization requires at least one shot");
    }
    const double diff = static_cast<double>(counts.at("1")) -
                        static_cast<double>(counts.at("0"));
    return diff / static_cast<double>(counts.shots);
}

double parity(const ShotCounts& counts) {
    if (counts.n_qubits != 2) {
        throw std::invalid_argument("parity requires two-qubit counts");
    }
    if (counts.shots < 1) {
        throw std::invalid_argument("parity requires at least one shot");
    }
    const double same = static_cast<double>(counts.at("00") + counts.at("11"));
    const double diff = static_cast<double>(counts.at("01") + counts.at("10"));
    return (same - diff) / static_cast<double>(counts.shots);
}

} // namespace qsense
