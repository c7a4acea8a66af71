#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bahc {

using cplx = std::complex<double>;

/// Dense complex tensor with runtime rank.
///
/// Data layout is row-major ("C order"): the last axis runs fastest. Every
/// module in this codebase relies on this linearization, including the JSON
/// serializers, so it must never change.
class DenseTensor {
  public:
    DenseTensor() = default;
    explicit DenseTensor(std::vector<std::size_t> shape);
    DenseTensor(std::vector<std::size_t> shape, std::vector<cplx> data);

    static DenseTensor scalar(cplx value);

    std::size_t rank() const { return shape_.size(); }
    const std::vector<std::size_t> &shape() const { return shape_; }
    std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
    std::size_t size() const { return data_.size(); }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    cplx &operator[](std::size_t flat) { return data_[flat]; }
    const cplx &operator[](std::size_t flat) const { return data_[flat]; }

    cplx &at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    const cplx &at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }

    /// Same data, new shape; element count must match.
    DenseTensor reshape(std::vector<std::size_t> new_shape) const;

    /// Axis permutation: out.shape[k] = shape[axes[k]].
    DenseTensor permute(const std::vector<std::size_t> &axes) const;

    DenseTensor conj() const;

    double norm() const;          // Frobenius
    double norm_sq() const;

    DenseTensor &operator*=(cplx factor);
    DenseTensor &operator+=(const DenseTensor &other);

  private:
    std::size_t offset(std::initializer_list<std::size_t> idx) const;

    std::vector<std::size_t> shape_;
    std::vector<cplx> data_;
};

/// Limits applied when discarding singular values, in order:
/// chi_max, then svd_min, then trunc_cut. trunc_cut is a *squared*-weight
/// budget for the additional tail dropped in the third stage.
struct TruncationPolicy {
    std::size_t chi_max = 0;   // 0 means unlimited
    double svd_min = 0.0;
    double trunc_cut = 0.0;

    static TruncationPolicy unlimited() { return {0, 0.0, 0.0}; }
    static TruncationPolicy dmrg_default() { return {100, 1e-10, 1e-12}; }
};

enum class TruncationBinding { none, chi_max, svd_min, trunc_cut };

std::string to_string(TruncationBinding b);

struct SvdResult {
    DenseTensor u;                        // (rows, k) orthonormal columns
    std::vector<double> singular_values;  // descending, length k
    DenseTensor v_dagger;                 // (k, cols) orthonormal rows
    double discarded_weight = 0.0;        // sum of squares of dropped values
    TruncationBinding binding = TruncationBinding::none;
};

/// Tensor contraction over the given axis pairs (axis-of-a, axis-of-b).
/// Output axes are the unpaired axes of a (in order) followed by those of b.
DenseTensor contract(const DenseTensor &a, const DenseTensor &b,
                     const std::vector<std::pair<std::size_t, std::size_t>> &paired_axes);

/// Truncated SVD of a rank-2 tensor. Singular values come back non-negative,
/// sorted descending; degenerate values keep the order the backend produced.
SvdResult svd_truncate(const DenseTensor &m, const TruncationPolicy &policy);

} // namespace bahc
