#pragma once

#include "bahc/mps.hpp"
#include "bahc/tensor.hpp"

#include <string>
#include <vector>

namespace bahc {

/// Alternating couplings of the bond-alternating Heisenberg chain: bond i
/// (between sites i and i+1) carries j0 for even i and j1 for odd i.
struct CouplingPattern {
    double j0 = 1.0;
    double j1 = 1.0;
    int n_sites = 0;

    void validate() const;
};

/// Matrix product operator; site tensors have shape
/// (w_left, phys_out, phys_in, w_right) with boundary extents 1.
struct MPO {
    std::vector<DenseTensor> site_tensors;

    int n_sites() const { return static_cast<int>(site_tensors.size()); }
    void check_consistent() const;
};

enum class PhaseLabel { odd_haldane, even_haldane, ferromagnetic, boundary };

std::string to_string(PhaseLabel label);
PhaseLabel phase_label_from_string(const std::string &s);

/// H = (1/4) sum_i J_i (XX + YY + ZZ)_{i,i+1}, built from S+/S-/Z channels
/// with the couplings absorbed into the outgoing terms site by site. Bond
/// dimension 5.
MPO build_hamiltonian_mpo(const CouplingPattern &c);

PhaseLabel phase_label(double j0, double j1);

/// Exact decoupled-limit ground states: a singlet product for the even phase,
/// and singlets flanked by two up edge spins (the +1 magnetization member)
/// for the odd phase.
MPSState singlet_reference_state(PhaseLabel phase, int n_sites);

/// <psi| O |psi> via environment sweeps.
double mpo_expectation(const MPO &op, const MPSState &psi);

/// Dense matrix of the operator; for tests and small-N oracles (n <= 12).
std::vector<std::vector<cplx>> mpo_to_dense(const MPO &op);

} // namespace bahc
