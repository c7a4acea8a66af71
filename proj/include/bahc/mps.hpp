#pragma once

#include "bahc/pauli.hpp"
#include "bahc/tensor.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace bahc {

/// Open-boundary matrix product state over spin-1/2 sites.
///
/// Site tensors have shape (chi_left, 2, chi_right) with chi = 1 at both chain
/// ends. Statevector bit order: site 0 is the most significant bit.
struct MPSState {
    std::vector<DenseTensor> tensors;
    std::optional<int> ortho_center;

    int n_sites() const { return static_cast<int>(tensors.size()); }
    std::size_t bond_dim(int bond) const;   // bond b sits between sites b-1 and b; 0..N
    std::size_t max_bond_dim() const;

    /// Structural invariants: shapes, matching bonds, boundary bonds of 1.
    void check_consistent() const;

    static MPSState product_state(const std::vector<int> &bits);
    static MPSState all_zeros(int n_sites);
};

cplx overlap(const MPSState &a, const MPSState &b);      // <a|b>
double fidelity(const MPSState &a, const MPSState &b);   // |<a|b>|^2

/// Move the orthogonality center via QR sweeps. The represented state is
/// unchanged up to global phase; no truncation happens here.
MPSState canonicalize(const MPSState &state, int center);

MPSState normalized(const MPSState &state);

/// sign * <psi| tensor-product of the string |psi>. Hermitian strings give a
/// real value; the imaginary residue can be captured through `imag_residue`.
double expect_pauli(const MPSState &state, const PauliString &p, double *imag_residue = nullptr);

struct ReducedDensityMatrix {
    Eigen::MatrixXcd entries;         // 2^l x 2^l, Hermitian, unit trace
    std::vector<double> spectrum;     // descending, clipped to [0, 1]
    double hermiticity_residual = 0;  // max |rho - rho^dagger| before symmetrization

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Spectrum + entries of rho for a ReducedDensityMatrix built from raw matrix
/// entries (also the tomography/bootstrap entry point): symmetrize, eigensolve,
/// clip eigenvalues to [0,1].
ReducedDensityMatrix make_rdm(const Eigen::MatrixXcd &raw);

ReducedDensityMatrix reduced_density_matrix(const MPSState &state, int first_site, int length,
                                            int length_cap = 8);

/// Squared Schmidt values across the bond between sites b and b+1, descending.
std::vector<double> entanglement_spectrum(const MPSState &state, int bond);

struct CompressionResult {
    MPSState state;
    double achieved_fidelity = 0.0;
    int sweeps_used = 0;
};

/// Variational compression to bond dimension <= target_chi, seeded by an
/// SVD-truncated copy and refined with two-site sweeps. Stops early once the
/// overlap gain per sweep drops below 1e-10.
CompressionResult compress(const MPSState &state, std::size_t target_chi, int sweeps);

/// Apply a two-qubit unitary on sites (left_site, left_site+1), splitting the
/// result with svd_truncate under `policy`. Rejects matrices that are not
/// unitary to 1e-8. Discarded weight accumulates into *discarded if given.
MPSState apply_two_qubit_gate(const MPSState &state, const Eigen::Matrix4cd &unitary,
                              int left_site, const TruncationPolicy &policy,
                              double *discarded = nullptr);

/// In-place variants used by the simulation loops; the state must already be
/// canonicalized with the center at left_site or left_site+1.
void apply_two_qubit_gate_inplace(MPSState &state, const Eigen::Matrix4cd &unitary,
                                  int left_site, const TruncationPolicy &policy,
                                  double *discarded = nullptr);
void apply_single_qubit_gate_inplace(MPSState &state, const Eigen::Matrix2cd &unitary, int site);
void move_center(MPSState &state, int target);

std::vector<cplx> to_statevector(const MPSState &state, int site_cap = 14);

/// Build an MPS from a full statevector by successive SVD splits (exact if the
/// policy is unlimited).
MPSState mps_from_statevector(const std::vector<cplx> &amps, int n_sites,
                              const TruncationPolicy &policy = TruncationPolicy::unlimited());

std::string mps_to_json(const MPSState &state);
MPSState mps_from_json(const std::string &text);
void save_mps(const MPSState &state, const std::string &path);
MPSState load_mps(const std::string &path);

} // namespace bahc
