#include "qsense/estimation.hpp"

#include "qsense/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace qsense {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double se_slope = 0.0;
    double se_intercept = 0.0;
};

// y = slope * x + intercept with standard errors from residual variance.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    const size_t n = xs.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx < 1e-12) {
        throw FitError("degenerate design matrix: no spread in the abscissa");
    }

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += r * r;
    }
    const double s2 = n > 2 ? rss / static_cast<double>(n - 2) : 0.0;
    fit.se_slope = std::sqrt(s2 / sxx);
    fit.se_intercept =
        std::sqrt(s2 * (1.0 / static_cast<double>(n) + mean_x * mean_x / sxx));
    return fit;
}

} // namespace

double CosineFit::value_at(double phi) const {
    return -amplitude * std::cos(frequency * phi) + offset;
}

CosineFit fit_cosine(std::span<const std::pair<double, double>> points, int frequency) {
    if (frequency != 1 && frequency != 2) {
        throw std::invalid_argument("fringe frequency must be 1 or 2");
    }
    if (points.size() < 3) {
        throw std::invalid_argument("cosine fit needs at least 3 points");
    }
    // y = A x + B with x = -cos(k phi).
    std::vector<double> xs(points.size()), ys(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        xs[i] = -std::cos(frequency * points[i].first);
        ys[i] = points[i].second;
    }
    const LineFit line = fit_line(xs, ys);
    CosineFit fit;
    fit.amplitude = line.slope;
    fit.offset = line.intercept;
    fit.frequency = frequency;
    fit.se_amplitude = line.se_slope;
    fit.se_offset = line.se_intercept;
    return fit;
}

CosineFit fit_cosine(std::span<const SweepPoint> points, int frequency) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(points.size());
    for (const auto& p : points) {
        pairs.emplace_back(p.phi, p.mean);
    }
    return fit_cosine(pairs, frequency);
}

std::string cosine_fit_to_json_text(const CosineFit& fit) {
    nlohmann::json doc;
    doc["A"] = fit.amplitude;
    doc["B"] = fit.offset;
    doc["k"] = fit.frequency;
    doc["se_A"] = fit.se_amplitude;
    doc["se_B"] = fit.se_offset;
    return doc.dump();
}

double local_slope(const CosineFit& fit, double phi0) {
    return fit.amplitude * fit.frequency * std::sin(fit.frequency * phi0);
}

PhaseEstimate infer_phase(double measured, const CosineFit& fit, double phi0) {
    const double m = local_slope(fit, phi0);
    if (std::abs(m) < kSlopeFloor) {
        throw OperatingPointError(
            "uninvertible operating point: fringe slope below floor (extremum)");
    }
    PhaseEstimate est;
    est.phi0 = phi0;
    est.slope = m;
    est.phi_tilde = phi0 + (measured - fit.value_at(phi0)) / m;
    return est;
}

std::pair<double, double> sample_std(std::span<const double> values) {
    const size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("sample_std needs at least 2 values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(n - 1);
    const double sigma = std::sqrt(var);
    return {sigma, sigma / std::sqrt(2.0 * static_cast<double>(n - 1))};
}

double sql(uint64_t n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("N must be at least 1");
    }
    return 1.0 / std::sqrt(static_cast<double>(n_qubits));
}

double entangled_limit(uint64_t n_qubits) {
    if (n_qubits < 1 || n_qubits % 2 != 0) {
        throw std::invalid_argument("entangled limit requires even N");
    }
    return 1.0 / std::sqrt(2.0 * static_cast<double>(n_qubits));
}

PowerLawFit fit_power_law(std::span<const SensitivityPoint> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least 3 points");
    }
    std::vector<double> xs(points.size()), ys(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].sigma_phi > 0.0)) {
            throw std::invalid_argument("power-law fit requires positive sigma");
        }
        xs[i] = std::log(static_cast<double>(points[i].n_qubits));
        ys[i] = std::log(points[i].sigma_phi);
    }
    const LineFit line = fit_line(xs, ys);
    PowerLawFit fit;
    fit.exponent = line.slope;
    fit.prefactor = std::exp(line.intercept);
    fit.se_exponent = line.se_slope;
    fit.se_prefactor = fit.prefactor * line.se_intercept;
    return fit;
}

std::string power_law_to_json_text(const PowerLawFit& fit) {
    nlohmann::json doc;
    doc["exponent"] = fit.exponent;
    doc["prefactor"] = fit.prefactor;
    doc["se_exponent"] = fit.se_exponent;
    doc["se_prefactor"] = fit.se_prefactor;
    return doc.dump();
}

double default_phi0(CircuitKind kind) {
    return kind == CircuitKind::Single ? std::numbers::pi / 2.0
                                       : std::numbers::pi / 4.0;
}

CosineFit calibration_fit(CircuitKind kind,
                          const std::optional<ReadoutNoise>& noise,
                          uint64_t seed,
                          const CalibrationConfig& config) {
    SweepConfig sweep;
    sweep.kind = kind;
    sweep.angles = config.angles;
    sweep.shots_per_trial = config.shots_per_trial;
    sweep.trials = config.trials;
    sweep.noise = noise;
    sweep.seed = seed;
    sweep.stream_offset = stream_id_for(kCalibrationStreamBlock, 0);
    const auto points = run_fringe_sweep(sweep);
    return fit_cosine(points, fringe_frequency(kind));
}

namespace {

uint64_t shots_for_qubits(CircuitKind kind, uint64_t n_qubits) {
    const auto per_shot = static_cast<uint64_t>(circuit_qubits(kind));
    if (n_qubits < per_shot || n_qubits % per_shot != 0) {
        throw std::invalid_argument(
            "N must be a positive multiple of the qubits measured per shot");
    }
    return n_qubits / per_shot;
}

} // namespace

SenseResult sense_experiment(const SenseConfig& config) {
    const double phi0 = config.phi0 != 0.0 ? config.phi0 : default_phi0(config.kind);

    SenseResult result;
    result.calibration =
        calibration_fit(config.kind, config.noise, config.seed, config.calibration);

    ExperimentSpec spec;
    spec.kind = config.kind;
    spec.phi = phi0 + config.dphi;
    spec.shots_per_trial = config.shots_per_trial;
    spec.trials = config.trials;
    spec.noise = config.noise;
    spec.seed = config.seed;
    spec.stream_offset = stream_id_for(kMeasureStreamBlock, 0);
    const TrialSeries series = run_experiment(spec);

    result.measured = series.values;
    result.phi_tilde.reserve(series.values.size());
    for (double v : series.values) {
        result.phi_tilde.push_back(infer_phase(v, result.calibration, phi0).phi_tilde);
    }

    double mean_m = 0.0, mean_p = 0.0;
    for (size_t i = 0; i < result.measured.size(); ++i) {
        mean_m += result.measured[i];
        mean_p += result.phi_tilde[i];
    }
    mean_m /= static_cast<double>(result.measured.size());
    mean_p /= static_cast<double>(result.phi_tilde.size());
    result.mean_measured = mean_m;
    result.mean_phi = mean_p;
    std::tie(result.sigma_measured, result.se_sigma_measured) =
        sample_std(result.measured);
    std::tie(result.sigma_phi, result.se_sigma_phi) = sample_std(result.phi_tilde);
    return result;
}

ScalingResult scaling_experiment(const ScalingConfig& config) {
    if (config.n_values.empty()) {
        throw std::invalid_argument("scaling experiment needs at least one N");
    }
    if (config.trials < 2) {
        throw std::invalid_argument("scaling experiment needs at least 2 trials per N");
    }
    const double phi0 = config.phi0 != 0.0 ? config.phi0 : default_phi0(config.kind);

    ScalingResult result;
    result.calibration =
        calibration_fit(config.kind, config.noise, config.seed, config.calibration);

    result.points.reserve(config.n_values.size());
    for (size_t p = 0; p < config.n_values.size(); ++p) {
        const uint64_t n_qubits = config.n_values[p];
        ExperimentSpec spec;
        spec.kind = config.kind;
        spec.phi = phi0 + config.dphi;
        spec.shots_per_trial = shots_for_qubits(config.kind, n_qubits);
        spec.trials = config.trials;
        spec.noise = config.noise;
        spec.seed = config.seed;
        spec.stream_offset = stream_id_for(kScalingStreamBlockBase + p, 0);
        const TrialSeries series = run_experiment(spec);

        std::vector<double> phis;
        phis.reserve(series.values.size());
        for (double v : series.values) {
            phis.push_back(infer_phase(v, result.calibration, phi0).phi_tilde);
        }
        const auto [sigma, se] = sample_std(phis);
        result.points.push_back(SensitivityPoint{n_qubits, sigma, se});
    }
    return result;
}

} // namespace qsense
