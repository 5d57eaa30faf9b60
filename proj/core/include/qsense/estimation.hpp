#pragma once

#include "qsense/interferometer.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qsense {

// Least-squares fit of y(phi) = -A cos(k phi) + B with the frequency k held
// fixed, so the problem is linear in (A, B) and solved in closed form.
struct CosineFit {
    double amplitude = 0.0;
    double offset = 0.0;
    int frequency = 1;  // k, 1 or 2
    double se_amplitude = 0.0;
    double se_offset = 0.0;

    double value_at(double phi) const;
};

CosineFit fit_cosine(std::span<const std::pair<double, double>> points, int frequency);
CosineFit fit_cosine(std::span<const SweepPoint> points, int frequency);

std::string cosine_fit_to_json_text(const CosineFit& fit);

// Derivative of the fitted model at phi0: m = A k sin(k phi0).
double local_slope(const CosineFit& fit, double phi0);

// Below this slope magnitude the operating point sits at a fringe extremum
// and phase inversion fails loudly instead of returning huge estimates.
constexpr double kSlopeFloor = 1e-3;

struct PhaseEstimate {
    double phi0 = 0.0;
    double phi_tilde = 0.0;
    double slope = 0.0;
};

// phi_tilde = phi0 + (measured - fit(phi0)) / m.
PhaseEstimate infer_phase(double measured, const CosineFit& fit, double phi0);

// Unbiased-variance standard deviation with its normal-theory standard
// error sigma / sqrt(2 (n - 1)).
std::pair<double, double> sample_std(std::span<const double> values);

// Standard quantum limit 1 / sqrt(N) for N independent qubits.
double sql(uint64_t n_qubits);

// 1 / sqrt(2N) for N/2 entangled pairs. N must be even.
double entangled_limit(uint64_t n_qubits);

struct SensitivityPoint {
    uint64_t n_qubits = 0;  // N measured per estimate
    double sigma_phi = 0.0;
    double se_sigma = 0.0;
};

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double se_exponent = 0.0;
    double se_prefactor = 0.0;
};

// Ordinary least squares of log(sigma) against log(N).
PowerLawFit fit_power_law(std::span<const SensitivityPoint> points);

std::string power_law_to_json_text(const PowerLawFit& fit);

// Operating point away from fringe extrema: pi/2 for Single, pi/4 for
// EntangledPair.
double default_phi0(CircuitKind kind);

// Stream-id blocks reserved by the composite experiments below.
constexpr uint64_t kSweepStreamBlock = 0;
constexpr uint64_t kCalibrationStreamBlock = 1;
constexpr uint64_t kMeasureStreamBlock = 2;
constexpr uint64_t kScalingStreamBlockBase = 3;

struct CalibrationConfig {
    int angles = 13;
    uint64_t shots_per_trial = 1024;
    uint64_t trials = 5;
};

// Fringe sweep plus cosine fit, the calibration step that precedes phase
// inference. Same backend and seed as the measurement it calibrates.
CosineFit calibration_fit(CircuitKind kind,
                          const std::optional<ReadoutNoise>& noise,
                          uint64_t seed,
                          const CalibrationConfig& config = {});

struct SenseConfig {
    CircuitKind kind = CircuitKind::Single;
    double phi0 = 0.0;  // 0 means default_phi0(kind)
    double dphi = 0.2;
    uint64_t shots_per_trial = 100;
    uint64_t trials = 75;
    std::optional<ReadoutNoise> noise;
    uint64_t seed = 0;
    CalibrationConfig calibration;
};

struct SenseResult {
    CosineFit calibration;
    std::vector<double> measured;    // estimator value per trial
    std::vector<double> phi_tilde;   // inferred phase per trial
    double mean_measured = 0.0;
    double sigma_measured = 0.0;
    double se_sigma_measured = 0.0;
    double mean_phi = 0.0;
    double sigma_phi = 0.0;
    double se_sigma_phi = 0.0;
};

// Repeated estimator measurements at phi = phi0 + dphi, each inverted to a
// phase estimate through the calibration fit.
SenseResult sense_experiment(const SenseConfig& config);

struct ScalingConfig {
    CircuitKind kind = CircuitKind::Single;
    std::vector<uint64_t> n_values;  // total qubits N per estimate
    double phi0 = 0.0;               // 0 means default_phi0(kind)
    double dphi = 0.0;
    uint64_t trials = 600;
    std::optional<ReadoutNoise> noise;
    uint64_t seed = 0;
    CalibrationConfig calibration;
};

struct ScalingResult {
    CosineFit calibration;
    std::vector<SensitivityPoint> points;
};

// Phase sensitivity sigma_phi(N): for each N runs `trials` estimates of
// `N / qubits-per-shot` shots and reports the spread of the inferred phase.
// EntangledPair requires every N even.
ScalingResult scaling_experiment(const ScalingConfig& config);

} // namespace qsense
