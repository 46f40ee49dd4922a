#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace qrel {

// Dense row-major matrix over a scalar field S (GaussianRational or
// FloatComplex). Immutable by convention after construction.
template <class S>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<S> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw ValidationError("matrix entry count does not match shape");
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    // n x n matrix unit E_ij
    static Mat unit(std::size_t n, std::size_t i, std::size_t j) {
        Mat m(n, n);
        m.at(i, j) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    S& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<S>& entries() const { return e_; }

    bool is_zero() const {
        for (const S& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat adjoint() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
        return r;
    }

    S trace() const {
        S t;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
        return t;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        check_shape(a, b);
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        check_shape(a, b);
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Mat operator*(const S& c, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw ValidationError("matrix product shape mismatch");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return false;
        return true;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    friend Mat kron(const Mat& a, const Mat& b) {
        Mat r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
            }
        return r;
    }

    // block (i,j) of size br x bc, for matrices tiled into equal blocks
    Mat block(std::size_t i, std::size_t j, std::size_t br, std::size_t bc) const {
        Mat r(br, bc);
        for (std::size_t a = 0; a < br; ++a)
            for (std::size_t b = 0; b < bc; ++b) r.at(a, b) = at(i * br + a, j * bc + b);
        return r;
    }

private:
    static void check_shape(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<S> e_;
};

using MatQ = Mat<GaussianRational>;
using MatF = Mat<FloatComplex>;

}  // namespace qrel
