#pragma once

// Finite occupation-configuration spaces on a row of sites with per-site
// capacities, enumerated in colexicographic order (site 0 varies fastest),
// plus a small dense-matrix toolkit used by the transfer/duality layers.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vd/errors.hpp"

namespace vd {

// One occupation configuration: occ[i] particles at site i, 0 <= occ[i] <= caps[i].
using Occupation = std::vector<long>;

// Rotate a capacity (or occupation) vector one step to the right:
// {c0, c1, ..., c_{N-1}} -> {c_{N-1}, c0, ..., c_{N-2}}.
inline std::vector<long> rotate_right(const std::vector<long>& v) {
    if (v.empty()) return v;
    std::vector<long> out;
    out.reserve(v.size());
    out.push_back(v.back());
    out.insert(out.end(), v.begin(), v.end() - 1);
    return out;
}

// All occupation vectors bounded by fixed per-site capacities, in colex
// order: index 0 is the empty configuration and site 0 is the fastest-
// varying digit of the mixed-radix counter.
class ConfigSpace {
  public:
    explicit ConfigSpace(std::vector<long> caps) : caps_(std::move(caps)) {
        strides_.resize(caps_.size());
        std::size_t total = 1;
        for (std::size_t i = 0; i < caps_.size(); ++i) {
            if (caps_[i] < 0) throw domain_error("site capacity must be non-negative");
            strides_[i] = total;
            total *= static_cast<std::size_t>(caps_[i] + 1);
        }
        size_ = total;
    }

    std::size_t size() const { return size_; }
    std::size_t num_sites() const { return caps_.size(); }
    const std::vector<long>& caps() const { return caps_; }

    // Mixed-radix decode: index -> occupation vector.
    Occupation config(std::size_t index) const {
        if (index >= size_) throw domain_error("configuration index out of range");
        Occupation occ(caps_.size());
        for (std::size_t i = 0; i < caps_.size(); ++i) {
            const std::size_t radix = static_cast<std::size_t>(caps_[i] + 1);
            occ[i] = static_cast<long>(index % radix);
            index /= radix;
        }
        return occ;
    }

    // Mixed-radix encode: occupation vector -> index.
    std::size_t index(const Occupation& occ) const {
        if (occ.size() != caps_.size()) throw domain_error("occupation length mismatch");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < caps_.size(); ++i) {
            if (occ[i] < 0 || occ[i] > caps_[i])
                throw domain_error("occupation exceeds site capacity");
            idx += static_cast<std::size_t>(occ[i]) * strides_[i];
        }
        return idx;
    }

  private:
    std::vector<long> caps_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

// Sum of v[0..i) (exclusive prefix sum).
inline long prefix_sum(const std::vector<long>& v, std::size_t i) {
    long s = 0;
    for (std::size_t t = 0; t < i && t < v.size(); ++t) s += v[t];
    return s;
}

inline long total_sum(const std::vector<long>& v) { return prefix_sum(v, v.size()); }

// ---------------------------------------------------------------------------
// Dense row-major matrix over an arbitrary commutative-ring scalar.
// ---------------------------------------------------------------------------

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw dimension_mismatch("matrix dimension mismatch in product");
        Matrix out(a.rows_, b.cols_, T(0));
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& ark = a(r, k);
                if (ark == T(0)) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw dimension_mismatch("matrix dimension mismatch in difference");
        Matrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// Kronecker product (row/col index of the first factor is the slow index).
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols(), T(0));
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca)
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = a(ra, ca) * b(rb, cb);
    return out;
}

template <class T>
T abs_val(const T& x) {
    return x < T(0) ? T(-x) : x;
}

// Largest entrywise absolute difference between two equal-shape matrices.
template <class T>
T max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_mismatch("matrix dimension mismatch in comparison");
    T worst(0);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            T d = abs_val(T(a(r, c) - b(r, c)));
            if (worst < d) worst = d;
        }
    return worst;
}

}  // namespace vd
