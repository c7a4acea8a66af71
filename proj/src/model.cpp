#include "bahc/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bahc {

void CouplingPattern::validate() const {
    if (n_sites < 4 || n_sites % 2 != 0)
        throw std::invalid_argument("CouplingPattern: n_sites must be even and >= 4");
    if (!std::isfinite(j0) || !std::isfinite(j1))
        throw std::invalid_argument("CouplingPattern: couplings must be finite");
}

void MPO::check_consistent() const {
    if (site_tensors.empty()) throw std::invalid_argument("MPO: empty chain");
    if (site_tensors.front().extent(0) != 1 || site_tensors.back().extent(3) != 1)
        throw std::invalid_argument("MPO: boundary extents must be 1");
    for (std::size_t i = 0; i < site_tensors.size(); ++i) {
        if (site_tensors[i].rank() != 4 || site_tensors[i].extent(1) != 2 ||
            site_tensors[i].extent(2) != 2)
            throw std::invalid_argument("MPO: site tensors must be (w, 2, 2, w)");
        if (i + 1 < site_tensors.size() &&
            site_tensors[i].extent(3) != site_tensors[i + 1].extent(0))
            throw std::invalid_argument("MPO: bond extent mismatch");
    }
}

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::odd_haldane: return "odd_haldane";
        case PhaseLabel::even_haldane: return "even_haldane";
        case PhaseLabel::ferromagnetic: return "ferromagnetic";
        case PhaseLabel::boundary: return "boundary";
    }
    return "?";
}

PhaseLabel phase_label_from_string(const std::string &s) {
    if (s == "odd_haldane" || s == "odd") return PhaseLabel::odd_haldane;
    if (s == "even_haldane" || s == "even") return PhaseLabel::even_haldane;
    if (s == "ferromagnetic") return PhaseLabel::ferromagnetic;
    if (s == "boundary") return PhaseLabel::boundary;
    throw std::invalid_argument("unknown phase label: " + s);
}

namespace {

// single-site operators in the (|0>=up, |1>=down) basis
struct SiteOps {
    // [out][in]
    static constexpr cplx I[2][2] = {{1, 0}, {0, 1}};
    static constexpr cplx Z[2][2] = {{1, 0}, {0, -1}};
    static constexpr cplx Sp[2][2] = {{0, 1}, {0, 0}}; // raises |1> -> |0>
    static constexpr cplx Sm[2][2] = {{0, 0}, {1, 0}};
};

void put_block(DenseTensor &w, std::size_t row, std::size_t col, const cplx (&op)[2][2],
               double factor = 1.0) {
    for (std::size_t o = 0; o < 2; ++o)
        for (std::size_t in = 0; in < 2; ++in)
            w.at({row, o, in, col}) = factor * op[o][in];
}

} // namespace

MPO build_hamiltonian_mpo(const CouplingPattern &c) {
    c.validate();
    const int n = c.n_sites;
    MPO mpo;
    mpo.site_tensors.reserve(static_cast<std::size_t>(n));

    // XX + YY = 2 (S+ S- + S- S+), so
    // H = sum_i J_i [ (1/2)(S+ S- + S- S+) + (1/4) Z Z ]_{i,i+1}
    auto coupling = [&](int bond) { return bond % 2 == 0 ? c.j0 : c.j1; };

    for (int i = 0; i < n; ++i) {
        const std::size_t wl = (i == 0) ? 1 : 5;
        const std::size_t wr = (i == n - 1) ? 1 : 5;
        DenseTensor w({wl, 2, 2, wr});
        const double j = (i < n - 1) ? coupling(i) : 0.0;

        const std::size_t row_top = 0;               // "nothing placed yet"
        const std::size_t col_done = wr - 1;         // "term complete"
        if (i < n - 1) {
            // outgoing halves, coupling absorbed here
            put_block(w, row_top, 1, SiteOps::Sp, j / 2.0);
            put_block(w, row_top, 2, SiteOps::Sm, j / 2.0);
            put_block(w, row_top, 3, SiteOps::Z, j / 4.0);
            put_block(w, row_top, 0, SiteOps::I);
        }
        if (i > 0) {
            // incoming halves
            put_block(w, 1, col_done, SiteOps::Sm);
            put_block(w, 2, col_done, SiteOps::Sp);
            put_block(w, 3, col_done, SiteOps::Z);
            put_block(w, 4, col_done, SiteOps::I);
        }
        if (i == 0 && n == 1) put_block(w, 0, 0, SiteOps::I, 0.0);
        mpo.site_tensors.push_back(std::move(w));
    }
    mpo.check_consistent();
    return mpo;
}

PhaseLabel phase_label(double j0, double j1) {
    if (j1 > 0 && j1 > j0) return PhaseLabel::odd_haldane;
    if (j0 > 0 && j0 > j1) return PhaseLabel::even_haldane;
    if (j0 < 0 && j1 < 0) return PhaseLabel::ferromagnetic;
    return PhaseLabel::boundary;
}

namespace {

// two-site singlet (|01> - |10>)/sqrt(2) as a pair of MPS tensors
std::pair<DenseTensor, DenseTensor> singlet_pair() {
    DenseTensor a({1, 2, 2}), b({2, 2, 1});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    a.at({0, 0, 0}) = inv_sqrt2;
    a.at({0, 1, 1}) = -inv_sqrt2;
    b.at({0, 1, 0}) = 1.0;
    b.at({1, 0, 0}) = 1.0;
    return {a, b};
}

} // namespace

MPSState singlet_reference_state(PhaseLabel phase, int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0)
        throw std::invalid_argument("singlet_reference_state: n_sites must be even and >= 2");
    if (phase != PhaseLabel::even_haldane && phase != PhaseLabel::odd_haldane)
        throw std::invalid_argument(
            "singlet_reference_state: only Haldane phases have a singlet reference");

    MPSState state;
    if (phase == PhaseLabel::even_haldane) {
        for (int p = 0; p < n_sites / 2; ++p) {
            auto [a, b] = singlet_pair();
            state.tensors.push_back(std::move(a));
            state.tensors.push_back(std::move(b));
        }
    } else {
        DenseTensor up({1, 2, 1});
        up.at({0, 0, 0}) = 1.0;
        state.tensors.push_back(up);
        for (int p = 0; p < n_sites / 2 - 1; ++p) {
            auto [a, b] = singlet_pair();
            state.tensors.push_back(std::move(a));
            state.tensors.push_back(std::move(b));
        }
        state.tensors.push_back(up);
    }
    state.ortho_center = 0;
    state.check_consistent();
    return state;
}

double mpo_expectation(const MPO &op, const MPSState &psi) {
    if (op.n_sites() != psi.n_sites())
        throw std::invalid_argument("mpo_expectation: length mismatch");
    // env: (bra_bond, w, ket_bond)
    DenseTensor env({1, 1, 1});
    env.at({0, 0, 0}) = 1.0;
    for (int i = 0; i < op.n_sites(); ++i) {
        const auto &m = psi.tensors[static_cast<std::size_t>(i)];
        const auto &w = op.site_tensors[static_cast<std::size_t>(i)];
        DenseTensor t = contract(env, m, {{2, 0}});          // (ab, w, s, rk)
        t = contract(t, w, {{1, 0}, {2, 2}});                // (ab, rk, s_out, wr)
        env = contract(m.conj(), t, {{0, 0}, {1, 2}});       // (rb, rk, wr)
        env = env.permute({0, 2, 1});                        // (rb, wr, rk)
    }
    const cplx val = env.at({0, 0, 0});
    return val.real();
}

std::vector<std::vector<cplx>> mpo_to_dense(const MPO &op) {
    const int n = op.n_sites();
    if (n > 12) throw std::invalid_argument("mpo_to_dense: too many sites");
    const std::size_t dim = std::size_t{1} << n;

    // accumulate (out_block, in_block, w_right)
    DenseTensor acc = op.site_tensors[0].reshape(
        {2, 2, op.site_tensors[0].extent(3)});
    for (int i = 1; i < n; ++i) {
        const auto &w = op.site_tensors[static_cast<std::size_t>(i)];
        DenseTensor t = contract(acc, w, {{2, 0}});   // (O, I, o, in, wr)
        t = t.permute({0, 2, 1, 3, 4});
        acc = t.reshape({t.extent(0) * 2, t.extent(2) * 2, w.extent(3)});
    }
    std::vector<std::vector<cplx>> dense(dim, std::vector<cplx>(dim));
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) dense[r][c] = acc.at({r, c, 0});
    return dense;
}

} // namespace bahc
