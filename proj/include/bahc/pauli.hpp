#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace bahc {

enum class Pauli : char { X = 'X', Y = 'Y', Z = 'Z' };

/// Sparse Pauli word: site -> operator, identity everywhere else, with a
/// +/-1 prefactor. Site order in `ops` is ascending by construction.
struct PauliString {
    std::map<int, Pauli> ops;
    int sign = +1;

    PauliString() = default;
    PauliString(std::map<int, Pauli> o, int s = +1) : ops(std::move(o)), sign(s) {
        if (sign != 1 && sign != -1) throw std::invalid_argument("PauliString: sign must be +/-1");
    }

    static PauliString z_string(int first, int length, int sign = +1) {
        PauliString p;
        p.sign = sign;
        for (int i = first; i < first + length; ++i) p.ops[i] = Pauli::Z;
        return p;
    }

    bool is_identity() const { return ops.empty(); }
    int max_site() const { return ops.empty() ? -1 : ops.rbegin()->first; }
    int min_site() const { return ops.empty() ? -1 : ops.begin()->first; }

    std::string label(int n_sites) const {
        std::string s(static_cast<std::size_t>(n_sites), 'I');
        for (const auto &[site, p] : ops) s[static_cast<std::size_t>(site)] = static_cast<char>(p);
        return s;
    }
};

} // namespace bahc
