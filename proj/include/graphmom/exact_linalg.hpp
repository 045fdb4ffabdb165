#ifndef GRAPHMOM_EXACT_LINALG_HPP
#define GRAPHMOM_EXACT_LINALG_HPP

#include "rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphmom {

template <class Scalar>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const Scalar& fill = Scalar(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_symmetric() const
    {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    /// Rows and columns picked by index (principal when both lists agree).
    Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const
    {
        Matrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
        return m;
    }

    /// v^T M v.
    Scalar quadratic_form(const std::vector<Scalar>& v) const
    {
        if (!square() || v.size() != rows_) throw std::invalid_argument("quadratic_form: dimension mismatch");
        Scalar total = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (is_zero(v[i])) continue;
            Scalar row = 0;
            for (std::size_t j = 0; j < cols_; ++j) row += (*this)(i, j) * v[j];
            total += v[i] * row;
        }
        return total;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using ExactMatrix = Matrix<Rational>;

inline Matrix<double> to_float(const ExactMatrix& m)
{
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
    return out;
}

/// Rank over Q by Gaussian elimination; pivots are the first nonzero entry.
inline std::size_t rank_exact(ExactMatrix m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    Rational factor;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && sgn(m(pivot, c)) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            factor = m(i, c) / m(rank, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= factor * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

/**
 * Outcome of an exact semidefiniteness test. A negative answer carries a
 * rational witness v with v^T M v = value < 0.
 */
struct PsdCertificate {
    bool psd = false;
    std::size_t rank = 0; // number of positive pivots; the rank when psd
    std::vector<Rational> witness;
    Rational value = 0;
};

/**
 * Symmetric elimination with positive diagonal pivots. A negative diagonal
 * entry, or a zero diagonal entry whose row is nonzero, yields a witness
 * that is mapped back through the eliminated pivots.
 */
inline PsdCertificate psd_check(const ExactMatrix& input)
{
    if (!input.is_symmetric()) throw std::invalid_argument("psd_check: matrix is not symmetric");
    const std::size_t n = input.rows();
    ExactMatrix s = input; // Schur complement lives on the `active` indices
    std::vector<bool> active(n, true);

    struct Pivot {
        std::size_t index;
        std::vector<std::size_t> rest; // indices active after this pivot
        std::vector<Rational> row;     // s(index, rest) at elimination time
        Rational diag;
    };
    std::vector<Pivot> pivots;

    auto lift = [&](std::vector<Rational> v) {
        // x_p = -(sum_j s_pj x_j) / s_pp, undone from the last pivot back
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Rational acc = 0;
            for (std::size_t j = 0; j < it->rest.size(); ++j)
                if (sgn(it->row[j]) != 0 && sgn(v[it->rest[j]]) != 0) acc += it->row[j] * v[it->rest[j]];
            v[it->index] = -acc / it->diag;
        }
        return v;
    };
    auto fail = [&](std::vector<Rational> w) {
        PsdCertificate cert;
        cert.psd = false;
        cert.witness = lift(std::move(w));
        cert.value = input.quadratic_form(cert.witness);
        cert.rank = pivots.size();
        if (sgn(cert.value) >= 0) throw std::logic_error("psd_check: witness construction failed");
        return cert;
    };

    Rational factor;
    for (;;) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (active[i]) idx.push_back(i);
        if (idx.empty()) break;

        for (std::size_t i : idx)
            if (sgn(s(i, i)) < 0) {
                std::vector<Rational> w(n, Rational(0));
                w[i] = 1;
                return fail(std::move(w));
            }
        for (std::size_t i : idx) {
            if (sgn(s(i, i)) != 0) continue;
            for (std::size_t j : idx) {
                if (sgn(s(i, j)) == 0) continue;
                // [[0, b], [b, c]] with v = e_j + t e_i gives c + 2bt = -1
                std::vector<Rational> w(n, Rational(0));
                w[j] = 1;
                w[i] = (Rational(-1) - s(j, j)) / (2 * s(i, j));
                return fail(std::move(w));
            }
        }
        // drop zero rows; pick the first positive pivot
        std::optional<std::size_t> pivot;
        for (std::size_t i : idx) {
            if (sgn(s(i, i)) == 0)
                active[i] = false;
            else if (!pivot)
                pivot = i;
        }
        if (!pivot) break;
        const std::size_t p = *pivot;
        active[p] = false;
        Pivot record{p, {}, {}, s(p, p)};
        for (std::size_t i : idx)
            if (active[i]) {
                record.rest.push_back(i);
                record.row.push_back(s(p, i));
            }
        for (std::size_t a = 0; a < record.rest.size(); ++a) {
            const std::size_t i = record.rest[a];
            if (sgn(record.row[a]) == 0) continue;
            factor = record.row[a] / record.diag;
            for (std::size_t b = 0; b < record.rest.size(); ++b) {
                const std::size_t j = record.rest[b];
                if (sgn(record.row[b]) == 0) continue;
                s(i, j) -= factor * record.row[b];
            }
        }
        pivots.push_back(std::move(record));
    }
    // zero rows of the final complement were dropped; their variables stay 0
    PsdCertificate cert;
    cert.psd = true;
    cert.rank = pivots.size();
    return cert;
}

/// Singular-value rank with relative tolerance; advisory only.
inline std::size_t numeric_rank(const Matrix<double>& m, double rel_tol = 1e-10, double* condition = nullptr)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    if (e.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * top && sv(i) > 0) ++r;
    if (condition) *condition = r > 0 ? top / sv(static_cast<Eigen::Index>(r) - 1) : 0.0;
    return r;
}

/// Eigenvalues of a symmetric float matrix, ascending.
inline std::vector<double> symmetric_eigenvalues(const Matrix<double>& m)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

template <class Scalar>
std::size_t rank_of(const Matrix<Scalar>& m)
{
    if constexpr (is_exact_v<Scalar>)
        return rank_exact(m);
    else
        return numeric_rank(m);
}

} // namespace graphmom

#endif // GRAPHMOM_EXACT_LINALG_HPP
