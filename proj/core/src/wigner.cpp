#include "qsense/wigner.hpp"

#include "qsense/errors.hpp"
#include "qsense/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsense {

namespace {

constexpr double kHermTol = 1e-9;
using std::numbers::pi;

double factorial(int n) {
    static const auto table = [] {
        std::array<double, 25> f{};
        f[0] = 1.0;
        for (size_t i = 1; i < f.size(); ++i) {
            f[i] = f[i - 1] * static_cast<double>(i);
        }
        return f;
    }();
    return table[static_cast<size_t>(n)];
}

// Eigenvalues of a Hermitian matrix, dim 2 or 3, ascending. The 3x3 case
// uses the trigonometric closed form for the characteristic cubic.
std::array<double, 3> hermitian_eigenvalues(int dim, const std::vector<cdouble>& a) {
    if (dim == 2) {
        const double tr = a[0].real() + a[3].real();
        const double det = a[0].real() * a[3].real() - std::norm(a[1]);
        const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
        return {(tr - disc) / 2.0, (tr + disc) / 2.0, 0.0};
    }
    const auto at = [&](int r, int c) { return a[static_cast<size_t>(r) * 3 + c]; };
    const double p1 = std::norm(at(0, 1)) + std::norm(at(0, 2)) + std::norm(at(1, 2));
    const double q = (at(0, 0).real() + at(1, 1).real() + at(2, 2).real()) / 3.0;
    if (p1 < 1e-30) {
        std::array<double, 3> eig = {at(0, 0).real(), at(1, 1).real(), at(2, 2).real()};
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    const double p2 = (at(0, 0).real() - q) * (at(0, 0).real() - q) +
                      (at(1, 1).real() - q) * (at(1, 1).real() - q) +
                      (at(2, 2).real() - q) * (at(2, 2).real() - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - q I) / p; r = det(B) / 2 lies in [-1, 1] for Hermitian A.
    const auto b = [&](int r, int c) {
        cdouble v = at(r, c);
        if (r == c) {
            v -= q;
        }
        return v / p;
    };
    const cdouble det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::array<double, 3> eig = {e1, e2, e3};
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace

DensityMatrix::DensityMatrix(int dim, std::vector<cdouble> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ != 2 && dim_ != 3) {
        throw std::invalid_argument("density matrix dimension must be 2 or 3");
    }
    if (entries_.size() != static_cast<size_t>(dim_) * dim_) {
        throw std::invalid_argument("density matrix entry count does not match dimension");
    }
    cdouble trace = 0.0;
    for (int r = 0; r < dim_; ++r) {
        trace += at(r, r);
        for (int c = 0; c < dim_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > kHermTol) {
                throw std::invalid_argument("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(trace - cdouble(1.0)) > kHermTol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    const auto eig = hermitian_eigenvalues(dim_, entries_);
    if (eig[0] < -kHermTol) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix density_from_state(const StateVector& state) {
    std::vector<cdouble> spinor;
    if (state.n_qubits() == 1) {
        // Ascending m = -1/2, +1/2 with |0> = spin-up.
        spinor = {state.amp(1), state.amp(0)};
    } else if (state.n_qubits() == 2) {
        const cdouble singlet = (state.amp(1) - state.amp(2)) / std::numbers::sqrt2;
        if (std::norm(singlet) >= 1e-9) {
            throw SubspaceError(
                "two-qubit state has weight outside the symmetric (triplet) subspace");
        }
        spinor = {state.amp(3),
                  (state.amp(1) + state.amp(2)) / std::numbers::sqrt2,
                  state.amp(0)};
    } else {
        throw std::invalid_argument("density_from_state supports 1 or 2 qubits");
    }

    double norm2 = 0.0;
    for (const auto& c : spinor) {
        norm2 += std::norm(c);
    }
    const double scale = 1.0 / norm2;  // renormalizes away the discarded residue
    const int dim = static_cast<int>(spinor.size());
    std::vector<cdouble> entries(static_cast<size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            entries[static_cast<size_t>(r) * dim + c] =
                spinor[static_cast<size_t>(r)] * std::conj(spinor[static_cast<size_t>(c)]) * scale;
        }
    }
    return DensityMatrix(dim, std::move(entries));
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M) {
    if (two_M != two_m1 + two_m2) {
        return 0.0;
    }
    if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 ||
        std::abs(two_M) > two_J) {
        return 0.0;
    }
    if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) {
        return 0.0;
    }
    // Every factorial argument below must be a non-negative integer.
    const auto half = [](int doubled) { return doubled / 2; };
    if ((two_j1 + two_j2 + two_J) % 2 != 0 || (two_j1 + two_m1) % 2 != 0 ||
        (two_j2 + two_m2) % 2 != 0 || (two_J + two_M) % 2 != 0) {
        return 0.0;
    }

    const double triangle =
        factorial(half(two_j1 + two_j2 - two_J)) *
        factorial(half(two_j1 - two_j2 + two_J)) *
        factorial(half(-two_j1 + two_j2 + two_J)) /
        factorial(half(two_j1 + two_j2 + two_J) + 1);

    const double norm = std::sqrt(
        static_cast<double>(two_J + 1) * triangle *
        factorial(half(two_j1 + two_m1)) * factorial(half(two_j1 - two_m1)) *
        factorial(half(two_j2 + two_m2)) * factorial(half(two_j2 - two_m2)) *
        factorial(half(two_J + two_M)) * factorial(half(two_J - two_M)));

    const int t_min = std::max({0, half(two_j2 - two_J - two_m1),
                                half(two_j1 + two_m2 - two_J)});
    const int t_max = std::min({half(two_j1 + two_j2 - two_J),
                                half(two_j1 - two_m1), half(two_j2 + two_m2)});
    double sum = 0.0;
    for (int t = t_min; t <= t_max; ++t) {
        const double denom = factorial(t) *
                             factorial(half(two_j1 + two_j2 - two_J) - t) *
                             factorial(half(two_j1 - two_m1) - t) *
                             factorial(half(two_j2 + two_m2) - t) *
                             factorial(half(two_J - two_j2 + two_m1) + t) *
                             factorial(half(two_J - two_j1 - two_m2) + t);
        sum += (t % 2 == 0 ? 1.0 : -1.0) / denom;
    }
    return norm * sum;
}

MultipoleComponents::MultipoleComponents(int two_j)
    : two_j_(two_j),
      values_(static_cast<size_t>(two_j + 1) * (two_j + 1), cdouble(0.0)) {
    if (two_j < 1 || two_j > 2) {
        throw std::invalid_argument("multipoles supported for spin 1/2 and 1 only");
    }
}

size_t MultipoleComponents::index(int k, int q) const {
    if (k < 0 || k > two_j_ || std::abs(q) > k) {
        throw std::invalid_argument("multipole index (k, q) out of range");
    }
    return static_cast<size_t>(k) * k + static_cast<size_t>(q + k);
}

MultipoleComponents multipole_components(const DensityMatrix& rho) {
    const int two_j = rho.two_j();
    const int dim = rho.dim();
    MultipoleComponents comps(two_j);
    for (int k = 0; k <= two_j; ++k) {
        for (int q = -k; q <= k; ++q) {
            // rho_kq = Tr(rho T_kq^dagger) = sum_ab rho[a][b] conj(T_kq[a][b]).
            cdouble acc = 0.0;
            for (int a = 0; a < dim; ++a) {
                const int two_m = -two_j + 2 * a;
                for (int b = 0; b < dim; ++b) {
                    const int two_mp = -two_j + 2 * b;
                    const double t = std::sqrt(static_cast<double>(2 * k + 1) /
                                               static_cast<double>(two_j + 1)) *
                                     clebsch_gordan(two_j, two_mp, 2 * k, 2 * q,
                                                    two_j, two_m);
                    acc += rho.at(a, b) * t;  // T real in this basis
                }
            }
            comps.at(k, q) = acc;
        }
    }
    return comps;
}

MultipoleComponents rotated_components_z(const DensityMatrix& rho, double alpha) {
    const int dim = rho.dim();
    const int two_j = rho.two_j();
    // U = exp(-i alpha J_z) is diagonal with phases e^{-i m alpha}.
    std::vector<cdouble> phases(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        const double m = (-two_j + 2 * a) / 2.0;
        phases[static_cast<size_t>(a)] = std::polar(1.0, -m * alpha);
    }
    std::vector<cdouble> rotated(static_cast<size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            rotated[static_cast<size_t>(r) * dim + c] =
                phases[static_cast<size_t>(r)] * rho.at(r, c) *
                std::conj(phases[static_cast<size_t>(c)]);
        }
    }
    const MultipoleComponents before = multipole_components(rho);
    const MultipoleComponents after =
        multipole_components(DensityMatrix(dim, std::move(rotated)));
    for (int k = 0; k <= after.k_max(); ++k) {
        for (int q = -k; q <= k; ++q) {
            const cdouble expected = std::polar(1.0, -q * alpha) * before.at(k, q);
            if (std::abs(after.at(k, q) - expected) > kHermTol) {
                throw std::runtime_error(
                    "collective z-rotation violated the e^{-iq alpha} phase rule");
            }
        }
    }
    return after;
}

void SphereGrid::validate() const {
    if (n_theta < 2 || n_phi < 3) {
        throw std::invalid_argument("sphere grid needs n_theta >= 2 and n_phi >= 3");
    }
}

double SphereGrid::theta(int i) const {
    return pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
}

double SphereGrid::phi(int j) const {
    return 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_phi);
}

cdouble spherical_harmonic(int k, int q, double theta, double phi_az) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    double mag = 0.0;
    switch (k) {
        case 0:
            mag = 0.5 / std::sqrt(pi);
            break;
        case 1:
            if (q == 0) {
                mag = 0.5 * std::sqrt(3.0 / pi) * ct;
            } else {
                mag = -q * 0.5 * std::sqrt(1.5 / pi) * st;
            }
            break;
        case 2:
            if (q == 0) {
                mag = 0.25 * std::sqrt(5.0 / pi) * (3.0 * ct * ct - 1.0);
            } else if (std::abs(q) == 1) {
                mag = -q * 0.5 * std::sqrt(7.5 / pi) * st * ct;
            } else {
                mag = 0.25 * std::sqrt(7.5 / pi) * st * st;
            }
            break;
        default:
            throw std::invalid_argument("spherical harmonics implemented for k <= 2");
    }
    if (std::abs(q) > k) {
        throw std::invalid_argument("|q| must not exceed k");
    }
    return std::polar(mag, q * phi_az);
}

namespace {

cdouble synthesize(const MultipoleComponents& components, double theta,
                   double phi_az) {
    cdouble acc = 0.0;
    for (int k = 0; k <= components.k_max(); ++k) {
        for (int q = -k; q <= k; ++q) {
            acc += components.at(k, q) * spherical_harmonic(k, q, theta, phi_az);
        }
    }
    // 1/normalizer with normalizer = sqrt(4 pi / (2j + 1)) makes the sphere
    // integral equal 1.
    const double scale =
        std::sqrt(static_cast<double>(components.two_j() + 1) / (4.0 * pi));
    return acc * scale;
}

} // namespace

double evaluate_wigner(const MultipoleComponents& components, double theta,
                       double phi_az) {
    return synthesize(components, theta, phi_az).real();
}

WignerField wigner_field(const DensityMatrix& rho, const SphereGrid& grid) {
    grid.validate();
    WignerField field{grid, {}, multipole_components(rho)};
    field.values.resize(static_cast<size_t>(grid.n_theta) * grid.n_phi);
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int j = 0; j < grid.n_phi; ++j) {
            const cdouble w = synthesize(field.components, grid.theta(i), grid.phi(j));
            if (std::abs(w.imag()) > kHermTol) {
                throw std::runtime_error("Wigner synthesis produced a non-real value");
            }
            field.values[static_cast<size_t>(i) * grid.n_phi + j] = w.real();
        }
    }
    return field;
}

double sphere_integral(const WignerField& field) {
    const SphereGrid& grid = field.grid;
    const double dtheta = pi / static_cast<double>(grid.n_theta - 1);
    const double dphi = 2.0 * pi / static_cast<double>(grid.n_phi);
    double total = 0.0;
    for (int i = 0; i < grid.n_theta; ++i) {
        const double w_theta = (i == 0 || i == grid.n_theta - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int j = 0; j < grid.n_phi; ++j) {
            row += field.value(i, j);
        }
        total += w_theta * std::sin(grid.theta(i)) * row;
    }
    return total * dtheta * dphi;
}

double angular_width(const WignerField& field) {
    const SphereGrid& grid = field.grid;
    int best_i = 0, best_j = 0;
    double w_max = -1e300;
    for (int i = 0; i < grid.n_theta; ++i) {
        for (int j = 0; j < grid.n_phi; ++j) {
            if (field.value(i, j) > w_max) {
                w_max = field.value(i, j);
                best_i = i;
                best_j = j;
            }
        }
    }
    if (!(w_max > 0.0)) {
        throw DegenerateFieldError("field has no positive maximum");
    }
    const double half = w_max / 2.0;
    const double theta0 = grid.theta(best_i);
    const double phi0 = grid.phi(best_j);

    const std::array<double, 3> center = {std::sin(theta0) * std::cos(phi0),
                                          std::sin(theta0) * std::sin(phi0),
                                          std::cos(theta0)};
    const std::array<double, 3> e_theta = {std::cos(theta0) * std::cos(phi0),
                                           std::cos(theta0) * std::sin(phi0),
                                           -std::sin(theta0)};
    const std::array<double, 3> e_phi = {-std::sin(phi0), std::cos(phi0), 0.0};

    const double step = pi / static_cast<double>(grid.n_theta - 1);
    const auto value_at = [&](const std::array<double, 3>& dir, double s) {
        const double cs = std::cos(s), sn = std::sin(s);
        const std::array<double, 3> p = {cs * center[0] + sn * dir[0],
                                         cs * center[1] + sn * dir[1],
                                         cs * center[2] + sn * dir[2]};
        const double theta = std::acos(std::clamp(p[2], -1.0, 1.0));
        const double phi = std::atan2(p[1], p[0]);
        return evaluate_wigner(field.components, theta, phi);
    };
    // Arc distance to the half-maximum crossing along dir, or -1 if the
    // profile never falls below half within a half-turn.
    const auto crossing = [&](const std::array<double, 3>& dir) {
        double prev = w_max;
        for (double s = step; s <= pi + step / 2.0; s += step) {
            const double w = value_at(dir, s);
            if (w < half) {
                return (s - step) + step * (prev - half) / (prev - w);
            }
            prev = w;
        }
        return -1.0;
    };

    constexpr int kDirections = 90;  // half-turn; the opposite side is marched too
    double width = -1.0;
    for (int d = 0; d < kDirections; ++d) {
        const double psi = pi * static_cast<double>(d) / kDirections;
        std::array<double, 3> dir{}, anti{};
        for (int c = 0; c < 3; ++c) {
            dir[c] = std::cos(psi) * e_theta[c] + std::sin(psi) * e_phi[c];
            anti[c] = -dir[c];
        }
        const double s_plus = crossing(dir);
        const double s_minus = crossing(anti);
        if (s_plus < 0.0 || s_minus < 0.0) {
            continue;
        }
        const double w = s_plus + s_minus;
        if (width < 0.0 || w < width) {
            width = w;
        }
    }
    if (width < 0.0) {
        throw DegenerateFieldError("field never falls to half maximum");
    }
    return width;
}

double gaussian_equivalent_width(double fwhm) {
    return fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

void write_field_csv(const WignerField& field, const std::string& path) {
    std::ostringstream out;
    out << "theta,phi_az,w\n";
    for (int i = 0; i < field.grid.n_theta; ++i) {
        for (int j = 0; j < field.grid.n_phi; ++j) {
            out << format_g9(field.grid.theta(i)) << ','
                << format_g9(field.grid.phi(j)) << ','
                << format_g9(field.value(i, j)) << '\n';
        }
    }
    write_text_atomic(path, out.str());
}

void write_field_svg_from_csv(const std::string& csv_path,
                              const std::string& svg_path) {
    const std::string text = read_text(csv_path);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> thetas, phis, ws;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        double t = 0, p = 0, w = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &p, &w) != 3) {
            throw std::runtime_error("malformed field CSV row: " + line);
        }
        thetas.push_back(t);
        phis.push_back(p);
        ws.push_back(w);
    }
    if (ws.empty()) {
        throw std::runtime_error("field CSV has no data rows");
    }
    // Rows are written theta-major with a fixed phi period.
    size_t n_phi = 1;
    while (n_phi < phis.size() && phis[n_phi] > phis[n_phi - 1]) {
        ++n_phi;
    }
    const size_t n_theta = ws.size() / n_phi;

    double w_abs = 1e-300;
    for (double w : ws) {
        w_abs = std::max(w_abs, std::abs(w));
    }

    const int cell_w = 4, cell_h = 4, margin = 40;
    const int plot_w = static_cast<int>(n_phi) * cell_w;
    const int plot_h = static_cast<int>(n_theta) * cell_h;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << plot_w + 2 * margin << "\" height=\"" << plot_h + 2 * margin << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (size_t i = 0; i < n_theta; ++i) {
        for (size_t j = 0; j < n_phi; ++j) {
            const double v = ws[i * n_phi + j] / w_abs;  // diverging, centered on 0
            int red = 255, green = 255, blue = 255;
            if (v > 0) {
                green = blue = static_cast<int>(std::llround(255.0 * (1.0 - v)));
            } else if (v < 0) {
                red = green = static_cast<int>(std::llround(255.0 * (1.0 + v)));
            }
            svg << "<rect x=\"" << margin + static_cast<int>(j) * cell_w << "\" y=\""
                << margin + static_cast<int>(i) * cell_h << "\" width=\"" << cell_w
                << "\" height=\"" << cell_h << "\" fill=\"rgb(" << red << ','
                << green << ',' << blue << ")\"/>\n";
        }
    }
    svg << "<text x=\"" << margin << "\" y=\"" << margin - 12
        << "\" font-family=\"monospace\" font-size=\"12\">W(theta, phi_az), max |W| = "
        << format_g9(w_abs) << "</text>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << margin + plot_h + 16
        << "\" font-family=\"monospace\" font-size=\"10\">phi_az: 0 to 2pi, theta: 0 (top) to pi</text>\n";
    svg << "</svg>\n";
    write_text_atomic(svg_path, svg.str());
}

} // namespace qsense
