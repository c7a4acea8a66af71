#include "bahc/tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bahc {

namespace {

std::size_t shape_product(const std::vector<std::size_t> &shape) {
    std::size_t n = 1;
    for (std::size_t s : shape) {
        if (s == 0) throw std::invalid_argument("DenseTensor: zero extent");
        n *= s;
    }
    return n;
}

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t> &shape) {
    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t i = shape.size(); i-- > 1;) strides[i - 1] = strides[i] * shape[i];
    return strides;
}

using MatrixRM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

} // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), cplx(0.0, 0.0)) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_product(shape_) != data_.size())
        throw std::invalid_argument("DenseTensor: shape does not match data length");
}

DenseTensor DenseTensor::scalar(cplx value) {
    DenseTensor t;
    t.shape_ = {};
    t.data_ = {value};
    return t;
}

std::size_t DenseTensor::offset(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != shape_.size())
        throw std::invalid_argument("DenseTensor: index rank mismatch");
    std::size_t off = 0;
    std::size_t axis = 0;
    for (std::size_t i : idx) {
        if (i >= shape_[axis]) throw std::out_of_range("DenseTensor: index out of range");
        off = off * shape_[axis] + i;
        ++axis;
    }
    return off;
}

DenseTensor DenseTensor::reshape(std::vector<std::size_t> new_shape) const {
    if (shape_product(new_shape) != data_.size()) {
        std::ostringstream msg;
        msg << "DenseTensor::reshape: element count mismatch (" << data_.size() << " stored)";
        throw std::invalid_argument(msg.str());
    }
    return DenseTensor(std::move(new_shape), data_);
}

DenseTensor DenseTensor::permute(const std::vector<std::size_t> &axes) const {
    if (axes.size() != shape_.size())
        throw std::invalid_argument("DenseTensor::permute: axis list rank mismatch");
    std::vector<bool> seen(shape_.size(), false);
    std::vector<std::size_t> out_shape(shape_.size());
    for (std::size_t k = 0; k < axes.size(); ++k) {
        if (axes[k] >= shape_.size() || seen[axes[k]])
            throw std::invalid_argument("DenseTensor::permute: invalid axis permutation");
        seen[axes[k]] = true;
        out_shape[k] = shape_[axes[k]];
    }

    DenseTensor out(out_shape);
    if (data_.empty()) return out;

    const auto in_strides = row_major_strides(shape_);
    // stride in the input for a unit step of each *output* axis
    std::vector<std::size_t> step(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) step[k] = in_strides[axes[k]];

    const std::size_t rank = out_shape.size();
    std::vector<std::size_t> counter(rank, 0);
    std::size_t in_off = 0;
    const std::size_t total = data_.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        out.data_[flat] = data_[in_off];
        // odometer increment over the output multi-index
        for (std::size_t k = rank; k-- > 0;) {
            in_off += step[k];
            if (++counter[k] < out_shape[k]) break;
            in_off -= step[k] * out_shape[k];
            counter[k] = 0;
        }
    }
    return out;
}

DenseTensor DenseTensor::conj() const {
    DenseTensor out = *this;
    for (auto &v : out.data_) v = std::conj(v);
    return out;
}

double DenseTensor::norm_sq() const {
    double s = 0.0;
    for (const auto &v : data_) s += std::norm(v);
    return s;
}

double DenseTensor::norm() const { return std::sqrt(norm_sq()); }

DenseTensor &DenseTensor::operator*=(cplx factor) {
    for (auto &v : data_) v *= factor;
    return *this;
}

DenseTensor &DenseTensor::operator+=(const DenseTensor &other) {
    if (shape_ != other.shape_)
        throw std::invalid_argument("DenseTensor::operator+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

std::string to_string(TruncationBinding b) {
    switch (b) {
        case TruncationBinding::none: return "none";
        case TruncationBinding::chi_max: return "chi_max";
        case TruncationBinding::svd_min: return "svd_min";
        case TruncationBinding::trunc_cut: return "trunc_cut";
    }
    return "?";
}

DenseTensor contract(const DenseTensor &a, const DenseTensor &b,
                     const std::vector<std::pair<std::size_t, std::size_t>> &paired_axes) {
    std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
    for (const auto &[ia, ib] : paired_axes) {
        if (ia >= a.rank() || ib >= b.rank())
            throw std::invalid_argument("contract: paired axis out of range");
        if (a_paired[ia] || b_paired[ib])
            throw std::invalid_argument("contract: axis paired twice");
        if (a.extent(ia) != b.extent(ib)) {
            std::ostringstream msg;
            msg << "contract: extent mismatch on pair (" << ia << "," << ib << "): "
                << a.extent(ia) << " vs " << b.extent(ib);
            throw std::invalid_argument(msg.str());
        }
        a_paired[ia] = true;
        b_paired[ib] = true;
    }

    std::vector<std::size_t> a_free, b_free, a_perm, b_perm;
    std::vector<std::size_t> out_shape;
    std::size_t m = 1, n = 1, k = 1;
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (!a_paired[i]) {
            a_free.push_back(i);
            out_shape.push_back(a.extent(i));
            m *= a.extent(i);
        }
    a_perm = a_free;
    for (const auto &[ia, ib] : paired_axes) {
        a_perm.push_back(ia);
        k *= a.extent(ia);
    }
    for (const auto &[ia, ib] : paired_axes) b_perm.push_back(ib);
    for (std::size_t i = 0; i < b.rank(); ++i)
        if (!b_paired[i]) {
            b_free.push_back(i);
            out_shape.push_back(b.extent(i));
            n *= b.extent(i);
        }
    b_perm.insert(b_perm.end(), b_free.begin(), b_free.end());

    const DenseTensor ap = a.permute(a_perm);
    const DenseTensor bp = b.permute(b_perm);

    DenseTensor out(out_shape.empty() ? std::vector<std::size_t>{} : out_shape);
    if (out.rank() == 0) out = DenseTensor::scalar(0.0);

    Eigen::Map<const MatrixRM> ma(ap.data().data(), static_cast<Eigen::Index>(m),
                                  static_cast<Eigen::Index>(k));
    Eigen::Map<const MatrixRM> mb(bp.data().data(), static_cast<Eigen::Index>(k),
                                  static_cast<Eigen::Index>(n));
    Eigen::Map<MatrixRM> mo(out.data().data(), static_cast<Eigen::Index>(m),
                            static_cast<Eigen::Index>(n));
    mo.noalias() = ma * mb;
    return out;
}

SvdResult svd_truncate(const DenseTensor &m, const TruncationPolicy &policy) {
    if (m.rank() != 2) throw std::invalid_argument("svd_truncate: rank-2 tensor required");
    const auto rows = static_cast<Eigen::Index>(m.extent(0));
    const auto cols = static_cast<Eigen::Index>(m.extent(1));

    Eigen::Map<const MatrixRM> mat(m.data().data(), rows, cols);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "svd_truncate: SVD failed to converge on " << rows << "x" << cols
            << " matrix, |M|_F=" << m.norm();
        throw std::runtime_error(msg.str());
    }

    const Eigen::VectorXd sv = svd.singularValues();
    const std::size_t full = static_cast<std::size_t>(sv.size());

    std::size_t keep = full;
    TruncationBinding binding = TruncationBinding::none;
    if (policy.chi_max > 0 && keep > policy.chi_max) {
        keep = policy.chi_max;
        binding = TruncationBinding::chi_max;
    }
    while (keep > 1 && sv(static_cast<Eigen::Index>(keep) - 1) < policy.svd_min) {
        --keep;
        binding = TruncationBinding::svd_min;
    }
    if (policy.trunc_cut > 0.0) {
        double tail = 0.0;
        while (keep > 1) {
            const double s2 = sv(static_cast<Eigen::Index>(keep) - 1) * sv(static_cast<Eigen::Index>(keep) - 1);
            if (tail + s2 > policy.trunc_cut) break;
            tail += s2;
            --keep;
            binding = TruncationBinding::trunc_cut;
        }
    }

    double discarded = 0.0;
    for (std::size_t i = keep; i < full; ++i) discarded += sv(static_cast<Eigen::Index>(i)) * sv(static_cast<Eigen::Index>(i));

    SvdResult res;
    res.singular_values.assign(sv.data(), sv.data() + keep);
    res.discarded_weight = discarded;
    res.binding = binding;

    res.u = DenseTensor({static_cast<std::size_t>(rows), keep});
    res.v_dagger = DenseTensor({keep, static_cast<std::size_t>(cols)});
    Eigen::Map<MatrixRM> mu(res.u.data().data(), rows, static_cast<Eigen::Index>(keep));
    Eigen::Map<MatrixRM> mv(res.v_dagger.data().data(), static_cast<Eigen::Index>(keep), cols);
    mu = svd.matrixU().leftCols(static_cast<Eigen::Index>(keep));
    mv = svd.matrixV().leftCols(static_cast<Eigen::Index>(keep)).adjoint();
    return res;
}

} // namespace bahc
