#include "bahc/mps.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bahc {

namespace {

using MatrixRM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const MatrixRM> as_matrix(const DenseTensor &t, std::size_t rows, std::size_t cols) {
    return Eigen::Map<const MatrixRM>(t.data().data(), static_cast<Eigen::Index>(rows),
                                      static_cast<Eigen::Index>(cols));
}

DenseTensor from_matrix(const MatrixRM &m, std::vector<std::size_t> shape) {
    DenseTensor t(std::move(shape));
    Eigen::Map<MatrixRM>(t.data().data(), m.rows(), m.cols()) = m;
    return t;
}

// Left-orthonormalize site i, pushing the R factor into site i+1.
void push_right(MPSState &state, int i) {
    DenseTensor &m = state.tensors[static_cast<std::size_t>(i)];
    const std::size_t a = m.extent(0), d = m.extent(1), r = m.extent(2);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(as_matrix(m, a * d, r));
    const std::size_t k = std::min(a * d, r);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(
                             static_cast<Eigen::Index>(a * d), static_cast<Eigen::Index>(k));
    Eigen::MatrixXcd rr = qr.matrixQR()
                              .topRows(static_cast<Eigen::Index>(k))
                              .triangularView<Eigen::Upper>();
    m = from_matrix(q, {a, d, k});

    DenseTensor &next = state.tensors[static_cast<std::size_t>(i) + 1];
    const std::size_t nd = next.extent(1), nr = next.extent(2);
    MatrixRM merged = rr * as_matrix(next, r, nd * nr);
    next = from_matrix(merged, {k, nd, nr});
}

// Right-orthonormalize site i, pushing the L factor into site i-1.
void push_left(MPSState &state, int i) {
    DenseTensor &m = state.tensors[static_cast<std::size_t>(i)];
    const std::size_t a = m.extent(0), d = m.extent(1), r = m.extent(2);
    Eigen::MatrixXcd mt = as_matrix(m, a, d * r).adjoint(); // (d*r, a)
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mt);
    const std::size_t k = std::min(a, d * r);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(
                             static_cast<Eigen::Index>(d * r), static_cast<Eigen::Index>(k));
    Eigen::MatrixXcd rr = qr.matrixQR()
                              .topRows(static_cast<Eigen::Index>(k))
                              .triangularView<Eigen::Upper>();
    m = from_matrix(q.adjoint(), {k, d, r});

    DenseTensor &prev = state.tensors[static_cast<std::size_t>(i) - 1];
    const std::size_t pa = prev.extent(0), pd = prev.extent(1);
    MatrixRM merged = as_matrix(prev, pa * pd, a) * rr.adjoint();
    prev = from_matrix(merged, {pa, pd, k});
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// E'[ra, rb] = sum conj(A[la,s',ra]) op[s',s] E[la,lb] B[lb,s,rb]
DenseTensor transfer_step(const DenseTensor &env, const DenseTensor &bra_site,
                          const DenseTensor &ket_site, const Eigen::Matrix2cd *op) {
    DenseTensor t = contract(env, ket_site, {{1, 0}}); // (la, s, rb)
    if (op) {
        DenseTensor o({2, 2});
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                o.at({static_cast<std::size_t>(r), static_cast<std::size_t>(c)}) = (*op)(r, c);
        t = contract(o, t, {{1, 1}});             // (s', la, rb)
        t = t.permute({1, 0, 2});                 // (la, s', rb)
    }
    return contract(bra_site.conj(), t, {{0, 0}, {1, 1}}); // (ra, rb)
}

} // namespace

std::size_t MPSState::bond_dim(int bond) const {
    if (bond <= 0) return tensors.front().extent(0);
    if (bond >= n_sites()) return tensors.back().extent(2);
    return tensors[static_cast<std::size_t>(bond)].extent(0);
}

std::size_t MPSState::max_bond_dim() const {
    std::size_t m = 1;
    for (const auto &t : tensors) m = std::max(m, t.extent(2));
    return m;
}

void MPSState::check_consistent() const {
    if (tensors.empty()) throw std::invalid_argument("MPSState: empty chain");
    if (tensors.front().extent(0) != 1 || tensors.back().extent(2) != 1)
        throw std::invalid_argument("MPSState: boundary bond dimensions must be 1");
    for (std::size_t i = 0; i < tensors.size(); ++i) {
        if (tensors[i].rank() != 3 || tensors[i].extent(1) != 2)
            throw std::invalid_argument("MPSState: site tensors must be (chi, 2, chi)");
        if (i + 1 < tensors.size() && tensors[i].extent(2) != tensors[i + 1].extent(0)) {
            std::ostringstream msg;
            msg << "MPSState: bond mismatch between sites " << i << " and " << i + 1;
            throw std::invalid_argument(msg.str());
        }
    }
    if (ortho_center && (*ortho_center < 0 || *ortho_center >= n_sites()))
        throw std::invalid_argument("MPSState: ortho_center out of range");
}

MPSState MPSState::product_state(const std::vector<int> &bits) {
    if (bits.empty()) throw std::invalid_argument("product_state: empty chain");
    MPSState state;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("product_state: bits must be 0/1");
        DenseTensor t({1, 2, 1});
        t.at({0, static_cast<std::size_t>(b), 0}) = 1.0;
        state.tensors.push_back(std::move(t));
    }
    state.ortho_center = 0;
    return state;
}

MPSState MPSState::all_zeros(int n_sites) {
    return product_state(std::vector<int>(static_cast<std::size_t>(n_sites), 0));
}

cplx overlap(const MPSState &a, const MPSState &b) {
    if (a.n_sites() != b.n_sites())
        throw std::invalid_argument("overlap: chain length mismatch");
    DenseTensor env({1, 1});
    env.at({0, 0}) = 1.0;
    for (int i = 0; i < a.n_sites(); ++i)
        env = transfer_step(env, a.tensors[static_cast<std::size_t>(i)],
                            b.tensors[static_cast<std::size_t>(i)], nullptr);
    return env.at({0, 0});
}

double fidelity(const MPSState &a, const MPSState &b) {
    const cplx ov = overlap(a, b);
    return std::norm(ov);
}

MPSState canonicalize(const MPSState &state, int center) {
    if (center < 0 || center >= state.n_sites())
        throw std::invalid_argument("canonicalize: center out of range");
    MPSState out = state;
    for (int i = 0; i < center; ++i) push_right(out, i);
    for (int i = out.n_sites() - 1; i > center; --i) push_left(out, i);
    out.ortho_center = center;
    return out;
}

void move_center(MPSState &state, int target) {
    if (!state.ortho_center) {
        state = canonicalize(state, target);
        return;
    }
    int c = *state.ortho_center;
    while (c < target) push_right(state, c++);
    while (c > target) push_left(state, c--);
    state.ortho_center = target;
}

MPSState normalized(const MPSState &state) {
    MPSState out = state;
    double n;
    if (out.ortho_center) {
        n = out.tensors[static_cast<std::size_t>(*out.ortho_center)].norm();
    } else {
        n = std::sqrt(std::abs(overlap(out, out).real()));
    }
    if (n <= 0) throw std::runtime_error("normalized: zero-norm state");
    const std::size_t c = out.ortho_center ? static_cast<std::size_t>(*out.ortho_center) : 0;
    out.tensors[c] *= cplx(1.0 / n, 0.0);
    if (!out.ortho_center) {
        // no gauge info: rescale via full norm, recompute once
        const double full = std::sqrt(std::abs(overlap(out, out).real()));
        if (std::abs(full - 1.0) > 1e-12) out.tensors[0] *= cplx(1.0 / full, 0.0);
    }
    return out;
}

double expect_pauli(const MPSState &state, const PauliString &p, double *imag_residue) {
    for (const auto &[site, op] : p.ops) {
        (void)op;
        if (site < 0 || site >= state.n_sites())
            throw std::out_of_range("expect_pauli: site index out of range");
    }
    DenseTensor env({1, 1});
    env.at({0, 0}) = 1.0;
    for (int i = 0; i < state.n_sites(); ++i) {
        const auto it = p.ops.find(i);
        Eigen::Matrix2cd op;
        const Eigen::Matrix2cd *op_ptr = nullptr;
        if (it != p.ops.end()) {
            op = pauli_matrix(it->second);
            op_ptr = &op;
        }
        env = transfer_step(env, state.tensors[static_cast<std::size_t>(i)],
                            state.tensors[static_cast<std::size_t>(i)], op_ptr);
    }
    const cplx val = env.at({0, 0}) * static_cast<double>(p.sign);
    if (imag_residue) *imag_residue = std::abs(val.imag());
    return val.real();
}

ReducedDensityMatrix make_rdm(const Eigen::MatrixXcd &raw) {
    ReducedDensityMatrix rdm;
    rdm.hermiticity_residual = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    rdm.entries = 0.5 * (raw + raw.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rdm.entries);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("make_rdm: eigensolver failed");
    const auto &ev = es.eigenvalues();
    rdm.spectrum.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        rdm.spectrum[static_cast<std::size_t>(ev.size() - 1 - i)] =
            std::clamp(ev(i), 0.0, 1.0);
    return rdm;
}

ReducedDensityMatrix reduced_density_matrix(const MPSState &state, int first_site, int length,
                                            int length_cap) {
    if (length < 1 || length > length_cap) {
        std::ostringstream msg;
        msg << "reduced_density_matrix: length " << length << " outside [1," << length_cap << "]";
        throw std::invalid_argument(msg.str());
    }
    if (first_site < 0 || first_site + length > state.n_sites())
        throw std::invalid_argument("reduced_density_matrix: window out of range");

    MPSState st = canonicalize(state, first_site);
    // theta: (a, 2^l, r) accumulated over the window
    DenseTensor theta = st.tensors[static_cast<std::size_t>(first_site)];
    for (int i = first_site + 1; i < first_site + length; ++i) {
        theta = contract(theta, st.tensors[static_cast<std::size_t>(i)], {{2, 0}});
        theta = theta.reshape({theta.extent(0), theta.extent(1) * theta.extent(2), theta.extent(3)});
    }
    DenseTensor rho_t = contract(theta, theta.conj(), {{0, 0}, {2, 2}}); // (p, p')
    const auto dim = static_cast<Eigen::Index>(rho_t.extent(0));
    Eigen::MatrixXcd rho(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            rho(r, c) = rho_t.at({static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
    return make_rdm(rho);
}

std::vector<double> entanglement_spectrum(const MPSState &state, int bond) {
    if (bond < 0 || bond >= state.n_sites() - 1)
        throw std::invalid_argument("entanglement_spectrum: bond out of range");
    MPSState st = canonicalize(state, bond);
    const DenseTensor &m = st.tensors[static_cast<std::size_t>(bond)];
    const auto res = svd_truncate(m.reshape({m.extent(0) * m.extent(1), m.extent(2)}),
                                  TruncationPolicy::unlimited());
    std::vector<double> spec(res.singular_values.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] = res.singular_values[i] * res.singular_values[i];
    return spec;
}

namespace {

// <phi|psi> partial contraction from the left, up to (exclusive) site i.
DenseTensor overlap_env_left(const MPSState &phi, const MPSState &psi, int upto) {
    DenseTensor env({1, 1});
    env.at({0, 0}) = 1.0;
    for (int i = 0; i < upto; ++i)
        env = transfer_step(env, phi.tensors[static_cast<std::size_t>(i)],
                            psi.tensors[static_cast<std::size_t>(i)], nullptr);
    return env;
}

DenseTensor transfer_step_right(const DenseTensor &env, const DenseTensor &bra_site,
                                const DenseTensor &ket_site) {
    // env: (la_bra_next, la_ket_next) indexed by the bond to the LEFT of the
    // already-contracted region; returns the env one site further left.
    DenseTensor t = contract(ket_site, env, {{2, 1}});              // (lb, s, ra_bra)
    return contract(bra_site.conj(), t, {{1, 1}, {2, 2}});          // (la_bra, lb)
}

} // namespace

CompressionResult compress(const MPSState &state, std::size_t target_chi, int sweeps) {
    if (target_chi < 1) throw std::invalid_argument("compress: target_chi must be >= 1");
    const int n = state.n_sites();

    // seed: one-site SVD truncation sweep in mixed gauge
    MPSState phi = canonicalize(state, 0);
    TruncationPolicy seed_policy{target_chi, 0.0, 0.0};
    for (int i = 0; i + 1 < n; ++i) {
        DenseTensor &m = phi.tensors[static_cast<std::size_t>(i)];
        const std::size_t a = m.extent(0), d = m.extent(1), r = m.extent(2);
        auto res = svd_truncate(m.reshape({a * d, r}), seed_policy);
        const std::size_t k = res.singular_values.size();
        m = res.u.reshape({a, d, k});
        // absorb s * v_dagger into the next site
        for (std::size_t row = 0; row < k; ++row)
            for (std::size_t col = 0; col < r; ++col)
                res.v_dagger.at({row, col}) *= res.singular_values[row];
        DenseTensor &next = phi.tensors[static_cast<std::size_t>(i) + 1];
        next = contract(res.v_dagger, next, {{1, 0}});
        phi.ortho_center = i + 1;
    }
    phi = normalized(phi);

    if (state.max_bond_dim() <= target_chi) {
        // nothing to gain variationally
        return {phi, fidelity(state, phi), 0};
    }

    // right overlap environments R[i]: contraction right of (inclusive) site i
    std::vector<DenseTensor> renv(static_cast<std::size_t>(n) + 1);
    DenseTensor unit({1, 1});
    unit.at({0, 0}) = 1.0;
    renv[static_cast<std::size_t>(n)] = unit;
    auto rebuild_right = [&](int from) {
        for (int i = n - 1; i >= from; --i)
            renv[static_cast<std::size_t>(i)] =
                transfer_step_right(renv[static_cast<std::size_t>(i) + 1],
                                    phi.tensors[static_cast<std::size_t>(i)],
                                    state.tensors[static_cast<std::size_t>(i)]);
    };

    move_center(phi, 0);
    rebuild_right(1);

    double last_overlap = 0.0;
    int sweeps_used = 0;
    TruncationPolicy policy{target_chi, 0.0, 1e-14};
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        DenseTensor lenv = unit;
        // left-to-right
        for (int i = 0; i + 1 < n; ++i) {
            DenseTensor theta = contract(state.tensors[static_cast<std::size_t>(i)],
                                         state.tensors[static_cast<std::size_t>(i) + 1], {{2, 0}});
            DenseTensor blk = contract(lenv, theta, {{1, 0}});              // (aphi,d1,d2,bpsi)
            blk = contract(blk, renv[static_cast<std::size_t>(i) + 2], {{3, 1}}); // (aphi,d1,d2,bphi)
            const std::size_t a = blk.extent(0), b = blk.extent(3);
            auto res = svd_truncate(blk.reshape({a * 2, 2 * b}), policy);
            const std::size_t k = res.singular_values.size();
            double snorm = 0.0;
            for (double s : res.singular_values) snorm += s * s;
            snorm = std::sqrt(snorm);
            phi.tensors[static_cast<std::size_t>(i)] = res.u.reshape({a, 2, k});
            for (std::size_t row = 0; row < k; ++row)
                for (std::size_t col = 0; col < 2 * b; ++col)
                    res.v_dagger.at({row, col}) *= res.singular_values[row] / snorm;
            phi.tensors[static_cast<std::size_t>(i) + 1] = res.v_dagger.reshape({k, 2, b});
            phi.ortho_center = i + 1;
            lenv = transfer_step(lenv, phi.tensors[static_cast<std::size_t>(i)],
                                 state.tensors[static_cast<std::size_t>(i)], nullptr);
        }
        // right-to-left
        rebuild_right(n - 1);
        double sweep_overlap = 0.0;
        for (int i = n - 2; i >= 0; --i) {
            DenseTensor lenv2 = overlap_env_left(phi, state, i);
            DenseTensor theta = contract(state.tensors[static_cast<std::size_t>(i)],
                                         state.tensors[static_cast<std::size_t>(i) + 1], {{2, 0}});
            DenseTensor blk = contract(lenv2, theta, {{1, 0}});
            blk = contract(blk, renv[static_cast<std::size_t>(i) + 2], {{3, 1}});
            const std::size_t a = blk.extent(0), b = blk.extent(3);
            auto res = svd_truncate(blk.reshape({a * 2, 2 * b}), policy);
            const std::size_t k = res.singular_values.size();
            double snorm = 0.0;
            for (double s : res.singular_values) snorm += s * s;
            snorm = std::sqrt(snorm);
            sweep_overlap = snorm;
            phi.tensors[static_cast<std::size_t>(i) + 1] = res.v_dagger.reshape({k, 2, b});
            DenseTensor u = res.u;
            for (std::size_t row = 0; row < a * 2; ++row)
                for (std::size_t col = 0; col < k; ++col)
                    u.at({row, col}) *= res.singular_values[col] / snorm;
            phi.tensors[static_cast<std::size_t>(i)] = u.reshape({a, 2, k});
            phi.ortho_center = i;
            renv[static_cast<std::size_t>(i) + 1] =
                transfer_step_right(renv[static_cast<std::size_t>(i) + 2],
                                    phi.tensors[static_cast<std::size_t>(i) + 1],
                                    state.tensors[static_cast<std::size_t>(i) + 1]);
        }
        ++sweeps_used;
        if (std::abs(sweep_overlap - last_overlap) < 1e-10) break;
        last_overlap = sweep_overlap;
    }

    phi = normalized(phi);
    return {phi, fidelity(state, phi), sweeps_used};
}

void apply_single_qubit_gate_inplace(MPSState &state, const Eigen::Matrix2cd &unitary, int site) {
    if (site < 0 || site >= state.n_sites())
        throw std::out_of_range("apply_single_qubit_gate: site out of range");
    DenseTensor g({2, 2});
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            g.at({static_cast<std::size_t>(r), static_cast<std::size_t>(c)}) = unitary(r, c);
    DenseTensor &m = state.tensors[static_cast<std::size_t>(site)];
    m = contract(g, m, {{1, 1}}).permute({1, 0, 2});
}

void apply_two_qubit_gate_inplace(MPSState &state, const Eigen::Matrix4cd &unitary, int left_site,
                                  const TruncationPolicy &policy, double *discarded) {
    const int i = left_site;
    if (i < 0 || i + 1 >= state.n_sites())
        throw std::out_of_range("apply_two_qubit_gate: site pair out of range");
    if (!state.ortho_center || (*state.ortho_center != i && *state.ortho_center != i + 1))
        move_center(state, i);

    DenseTensor theta = contract(state.tensors[static_cast<std::size_t>(i)],
                                 state.tensors[static_cast<std::size_t>(i) + 1], {{2, 0}});
    const std::size_t a = theta.extent(0), b = theta.extent(3);
    const double norm_in = theta.norm();

    DenseTensor g({2, 2, 2, 2}); // (s1', s2', s1, s2); row index = s1'*2+s2'
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            g.at({static_cast<std::size_t>(r / 2), static_cast<std::size_t>(r % 2),
                  static_cast<std::size_t>(c / 2), static_cast<std::size_t>(c % 2)}) = unitary(r, c);
    theta = contract(g, theta, {{2, 1}, {3, 2}});   // (s1', s2', a, b)
    theta = theta.permute({2, 0, 1, 3});            // (a, s1', s2', b)

    auto res = svd_truncate(theta.reshape({a * 2, 2 * b}), policy);
    if (discarded) *discarded += res.discarded_weight;
    const std::size_t k = res.singular_values.size();
    double snorm = 0.0;
    for (double s : res.singular_values) snorm += s * s;
    snorm = std::sqrt(snorm);
    const double rescale = norm_in / snorm;

    state.tensors[static_cast<std::size_t>(i)] = res.u.reshape({a, 2, k});
    for (std::size_t row = 0; row < k; ++row)
        for (std::size_t col = 0; col < 2 * b; ++col)
            res.v_dagger.at({row, col}) *= res.singular_values[row] * rescale;
    state.tensors[static_cast<std::size_t>(i) + 1] = res.v_dagger.reshape({k, 2, b});
    state.ortho_center = i + 1;
}

MPSState apply_two_qubit_gate(const MPSState &state, const Eigen::Matrix4cd &unitary,
                              int left_site, const TruncationPolicy &policy, double *discarded) {
    const double unit_err = (unitary * unitary.adjoint() - Eigen::Matrix4cd::Identity())
                                .cwiseAbs()
                                .maxCoeff();
    if (unit_err > 1e-8) {
        std::ostringstream msg;
        msg << "apply_two_qubit_gate: matrix is not unitary (|UU^-I|_max=" << unit_err << ")";
        throw std::invalid_argument(msg.str());
    }
    MPSState out = state;
    apply_two_qubit_gate_inplace(out, unitary, left_site, policy, discarded);
    return out;
}

std::vector<cplx> to_statevector(const MPSState &state, int site_cap) {
    const int n = state.n_sites();
    if (n > site_cap) {
        std::ostringstream msg;
        msg << "to_statevector: " << n << " sites exceeds cap " << site_cap;
        throw std::invalid_argument(msg.str());
    }
    DenseTensor acc = state.tensors[0].reshape({2, state.tensors[0].extent(2)});
    for (int i = 1; i < n; ++i) {
        acc = contract(acc, state.tensors[static_cast<std::size_t>(i)], {{1, 0}});
        acc = acc.reshape({acc.extent(0) * 2, acc.extent(2)});
    }
    std::vector<cplx> out(acc.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i];
    return out;
}

MPSState mps_from_statevector(const std::vector<cplx> &amps, int n_sites,
                              const TruncationPolicy &policy) {
    if (amps.size() != (std::size_t{1} << n_sites))
        throw std::invalid_argument("mps_from_statevector: length is not 2^n_sites");
    MPSState state;
    DenseTensor rest({1, amps.size()}, amps);
    std::size_t chi = 1;
    for (int i = 0; i + 1 < n_sites; ++i) {
        const std::size_t cols = rest.extent(1) / 2;
        auto res = svd_truncate(rest.reshape({chi * 2, cols}), policy);
        const std::size_t k = res.singular_values.size();
        state.tensors.push_back(res.u.reshape({chi, 2, k}));
        for (std::size_t row = 0; row < k; ++row)
            for (std::size_t col = 0; col < cols; ++col)
                res.v_dagger.at({row, col}) *= res.singular_values[row];
        rest = std::move(res.v_dagger);
        chi = k;
    }
    state.tensors.push_back(rest.reshape({chi, 2, 1}));
    state.ortho_center = n_sites - 1;
    return state;
}

std::string mps_to_json(const MPSState &state) {
    nlohmann::json j;
    j["version"] = 1;
    j["n_sites"] = state.n_sites();
    if (state.ortho_center)
        j["ortho_center"] = *state.ortho_center;
    else
        j["ortho_center"] = nullptr;
    nlohmann::json tensors = nlohmann::json::array();
    for (const auto &t : state.tensors) {
        nlohmann::json jt;
        jt["shape"] = t.shape();
        nlohmann::json data = nlohmann::json::array();
        for (const auto &v : t.data()) data.push_back({v.real(), v.imag()});
        jt["data"] = std::move(data);
        tensors.push_back(std::move(jt));
    }
    j["tensors"] = std::move(tensors);
    return j.dump();
}

MPSState mps_from_json(const std::string &text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1)
        throw std::runtime_error("mps_from_json: unsupported version");
    MPSState state;
    for (const auto &jt : j.at("tensors")) {
        std::vector<std::size_t> shape = jt.at("shape").get<std::vector<std::size_t>>();
        std::vector<cplx> data;
        data.reserve(jt.at("data").size());
        for (const auto &pair : jt.at("data"))
            data.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        state.tensors.emplace_back(std::move(shape), std::move(data));
    }
    if (!j.at("ortho_center").is_null()) state.ortho_center = j.at("ortho_center").get<int>();
    if (j.at("n_sites").get<int>() != state.n_sites())
        throw std::runtime_error("mps_from_json: n_sites does not match tensor list");
    state.check_consistent();
    return state;
}

void save_mps(const MPSState &state, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_mps: cannot open " + path);
    out << mps_to_json(state);
}

MPSState load_mps(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_mps: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return mps_from_json(ss.str());
}

} // namespace bahc
