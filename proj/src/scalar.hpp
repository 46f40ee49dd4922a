#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace qrel {

// Exact complex scalar a + bi with a, b arbitrary-precision rationals.
// Equality and the zero test are exact, which is what makes canonical
// subspace bases (and hence subspace equality) decidable.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational from_rational(const mpq_class& q) { return {q, 0}; }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    // |z|^2, exact
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        mpq_class n = b.norm2();
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const {
        std::string s = re_.get_str();
        if (im_ != 0) s += (im_ > 0 ? "+" : "") + im_.get_str() + "i";
        return s;
    }

private:
    mpq_class re_, im_;
};

// Complex double whose zero test is |z| <= epsilon. The tolerance is a
// per-thread computation context, default 1e-9 (CLI --tol).
class FloatComplex {
public:
    FloatComplex() : v_(0.0, 0.0) {}
    FloatComplex(long v) : v_(static_cast<double>(v), 0.0) {}  // NOLINT(google-explicit-constructor)
    FloatComplex(double re, double im) : v_(re, im) {}
    explicit FloatComplex(std::complex<double> v) : v_(v) {}

    static double& tolerance() {
        thread_local double tol = 1e-9;
        return tol;
    }

    std::complex<double> value() const { return v_; }
    double real() const { return v_.real(); }
    double imag() const { return v_.imag(); }

    bool is_zero() const { return std::abs(v_) <= tolerance(); }

    FloatComplex conj() const { return FloatComplex(std::conj(v_)); }
    double abs() const { return std::abs(v_); }

    std::complex<double> to_complex() const { return v_; }

    friend FloatComplex operator+(const FloatComplex& a, const FloatComplex& b) { return FloatComplex(a.v_ + b.v_); }
    friend FloatComplex operator-(const FloatComplex& a, const FloatComplex& b) { return FloatComplex(a.v_ - b.v_); }
    friend FloatComplex operator-(const FloatComplex& a) { return FloatComplex(-a.v_); }
    friend FloatComplex operator*(const FloatComplex& a, const FloatComplex& b) { return FloatComplex(a.v_ * b.v_); }
    friend FloatComplex operator/(const FloatComplex& a, const FloatComplex& b) { return FloatComplex(a.v_ / b.v_); }
    FloatComplex& operator+=(const FloatComplex& o) { v_ += o.v_; return *this; }
    FloatComplex& operator-=(const FloatComplex& o) { v_ -= o.v_; return *this; }
    FloatComplex& operator*=(const FloatComplex& o) { v_ *= o.v_; return *this; }

    // Canonical-basis comparison; exactness is tolerance-governed.
    friend bool operator==(const FloatComplex& a, const FloatComplex& b) { return (a - b).is_zero(); }
    friend bool operator!=(const FloatComplex& a, const FloatComplex& b) { return !(a == b); }

private:
    std::complex<double> v_;
};

// Pivot choice in echelon reduction: exact mode takes any nonzero entry,
// float mode the entry of largest modulus (absolute epsilon threshold,
// no column scaling).
inline bool pivot_better(const GaussianRational&, const GaussianRational&) { return false; }
inline bool pivot_better(const FloatComplex& candidate, const FloatComplex& current) {
    return candidate.abs() > current.abs();
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static const char* name() { return "exact"; }
};

template <>
struct ScalarTraits<FloatComplex> {
    static constexpr bool exact = false;
    static const char* name() { return "float"; }
};

}  // namespace qrel
