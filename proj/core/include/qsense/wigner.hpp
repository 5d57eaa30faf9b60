#pragma once

#include "qsense/statevector.hpp"

#include <string>
#include <vector>

namespace qsense {

// Hermitian, unit-trace, positive-semidefinite matrix for spin
// j = (dim - 1) / 2, dim 2 or 3. Rows and columns are ordered by ascending
// magnetic number m = -j .. +j, with |0> identified with spin-up.
class DensityMatrix {
public:
    DensityMatrix(int dim, std::vector<cdouble> entries);

    int dim() const { return dim_; }
    int two_j() const { return dim_ - 1; }
    cdouble at(int row, int col) const { return entries_[row * dim_ + col]; }
    const std::vector<cdouble>& entries() const { return entries_; }

private:
    int dim_;
    std::vector<cdouble> entries_;
};

// Pure-state projector |psi><psi|. Two-qubit states are expressed in the
// spin-1 triplet basis {|11>, (|01>+|10>)/sqrt2, |00>} (m = -1, 0, +1);
// weight outside that subspace beyond 1e-9 raises SubspaceError.
DensityMatrix density_from_state(const StateVector& state);

// <j1 m1; j2 m2 | J M> from the Racah closed form. Arguments are doubled so
// half-integer spins stay integral: two_j1 = 2*j1 and so on.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M);

// Multipole coefficients rho_kq = Tr(rho T_kq^dagger), k = 0..2j, q = -k..k,
// where T_kq is the irreducible spherical tensor operator with
// <j m|T_kq|j m'> = sqrt((2k+1)/(2j+1)) <j m'; k q|j m>.
class MultipoleComponents {
public:
    explicit MultipoleComponents(int two_j);

    int two_j() const { return two_j_; }
    int k_max() const { return two_j_; }
    cdouble at(int k, int q) const { return values_[index(k, q)]; }
    cdouble& at(int k, int q) { return values_[index(k, q)]; }

private:
    size_t index(int k, int q) const;

    int two_j_;
    std::vector<cdouble> values_;
};

MultipoleComponents multipole_components(const DensityMatrix& rho);

// Components after the collective rotation exp(-i alpha J_z), i.e. RZ(alpha)
// applied to every qubit. Cross-checks the computed components against the
// phase rule rho_kq -> exp(-i q alpha) rho_kq and throws if they disagree
// beyond 1e-9.
MultipoleComponents rotated_components_z(const DensityMatrix& rho, double alpha);

struct SphereGrid {
    int n_theta = 91;
    int n_phi = 180;

    void validate() const;  // n_theta >= 2, n_phi >= 3
    double theta(int i) const;
    double phi(int j) const;
};

// W(theta, phi_az) on the grid together with the multipoles it was built
// from. Normalized so the sphere integral is 1.
struct WignerField {
    SphereGrid grid;
    std::vector<double> values;  // row-major [i_theta][j_phi]
    MultipoleComponents components;

    double value(int i_theta, int j_phi) const {
        return values[static_cast<size_t>(i_theta) * grid.n_phi + j_phi];
    }
};

// Complex spherical harmonic Y_kq in the Condon-Shortley convention, k <= 2.
cdouble spherical_harmonic(int k, int q, double theta, double phi_az);

// Series synthesis sqrt((2j+1)/(4 pi)) * sum rho_kq Y_kq at one point.
double evaluate_wigner(const MultipoleComponents& components, double theta,
                       double phi_az);

WignerField wigner_field(const DensityMatrix& rho, const SphereGrid& grid);

// Trapezoid quadrature of the field over the sphere (sin-theta weights).
double sphere_integral(const WignerField& field);

// Full width at half maximum along the great-circle direction of steepest
// falloff from the field maximum, resolved by linear interpolation at the
// grid's theta step. Throws DegenerateFieldError when the field has no
// positive maximum or never falls to half.
double angular_width(const WignerField& field);

// FWHM / (2 sqrt(2 ln 2)), the sigma of the Gaussian with that FWHM.
double gaussian_equivalent_width(double fwhm);

// CSV rows (theta, phi_az, w); the heatmap is rendered from the CSV so the
// plot stays auditable against the shipped data.
void write_field_csv(const WignerField& field, const std::string& path);
void write_field_svg_from_csv(const std::string& csv_path,
                              const std::string& svg_path);

} // namespace qsense
