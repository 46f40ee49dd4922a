#pragma once

#include <random>
#include <vector>

#include "matrix.hpp"
#include "subspace.hpp"

namespace qrel::test {

// Deterministic generators for property sweeps. Entries are small integers
// so exact arithmetic stays cheap and float runs stay condition-benign.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }

    GaussianRational scalar(long lo = -3, long hi = 3, bool complex_part = true) {
        return {mpq_class(integer(lo, hi)), complex_part ? mpq_class(integer(lo, hi)) : mpq_class(0)};
    }

    MatQ matrix(std::size_t rows, std::size_t cols, long lo = -3, long hi = 3, bool complex_part = true) {
        MatQ m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar(lo, hi, complex_part);
        return m;
    }

    Subspace<GaussianRational> subspace(std::size_t n, std::size_t generators) {
        std::vector<MatQ> gens;
        for (std::size_t i = 0; i < generators; ++i) gens.push_back(matrix(n, n));
        return Subspace<GaussianRational>::span(n, n, gens);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline MatF to_float(const MatQ& m) {
    MatF r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = FloatComplex(m.at(i, j).to_complex());
    return r;
}

}  // namespace qrel::test
