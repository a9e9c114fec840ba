#pragma once
/**
 * @file linalg.hpp
 * Dense exact linear algebra over a field F: row reduction, solving,
 * inverses, determinants, characteristic polynomials, and an incremental
 * echelon structure for membership tests that also need the combination
 * realizing a dependency.
 *
 * Pivoting is deterministic (first nonzero entry top-down), so results
 * are reproducible across runs.
 */
#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace ftel {

template <class F>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, F(0)) {}
    Mat(std::initializer_list<std::initializer_list<F>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c_)
                throw std::invalid_argument("Mat: ragged initializer");
            for (const auto& v : row) a_.push_back(v);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    F& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const F& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    std::vector<F> row(int i) const {
        return {a_.begin() + static_cast<size_t>(i) * c_,
                a_.begin() + static_cast<size_t>(i + 1) * c_};
    }
    void set_row(int i, const std::vector<F>& v) {
        if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("Mat: row size");
        std::copy(v.begin(), v.end(), a_.begin() + static_cast<size_t>(i) * c_);
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        a.check_same(b);
        Mat m(a.r_, a.c_);
        for (size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        a.check_same(b);
        Mat m(a.r_, a.c_);
        for (size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] - b.a_[i];
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Mat: size mismatch in product");
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const F& aik = a.at(i, k);
                if (aik == F(0)) continue;
                for (int j = 0; j < b.c_; ++j) m.at(i, j) += aik * b.at(k, j);
            }
        return m;
    }
    Mat scaled(const F& s) const {
        Mat m(*this);
        for (auto& v : m.a_) v = v * s;
        return m;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    int r_, c_;
    std::vector<F> a_;
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: size mismatch");
    }
};

/// A * B.
template <class F>
Mat<F> mat_mul(const Mat<F>& A, const Mat<F>& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: size mismatch");
    Mat<F> R(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            if (A.at(i, k) == F(0)) continue;
            for (int j = 0; j < B.cols(); ++j) R.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return R;
}

/// A * v (column vector).
template <class F>
std::vector<F> mat_vec(const Mat<F>& A, const std::vector<F>& v) {
    if (A.cols() != static_cast<int>(v.size()))
        throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<F> r(static_cast<size_t>(A.rows()), F(0));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) r[i] += A.at(i, j) * v[j];
    return r;
}

/// v * A (row vector).
template <class F>
std::vector<F> vec_mat(const std::vector<F>& v, const Mat<F>& A) {
    if (A.rows() != static_cast<int>(v.size()))
        throw std::invalid_argument("vec_mat: size mismatch");
    std::vector<F> r(static_cast<size_t>(A.cols()), F(0));
    for (int j = 0; j < A.cols(); ++j)
        for (int i = 0; i < A.rows(); ++i) r[j] += v[i] * A.at(i, j);
    return r;
}

/// In-place reduced row echelon form; returns the pivot column of each
/// pivot row (so its size is the rank).
template <class F>
std::vector<int> rref(Mat<F>& A) {
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < A.cols() && prow < A.rows(); ++col) {
        int sel = -1;
        for (int i = prow; i < A.rows(); ++i)
            if (!(A.at(i, col) == F(0))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != prow)
            for (int j = 0; j < A.cols(); ++j) std::swap(A.at(sel, j), A.at(prow, j));
        const F inv = F(1) / A.at(prow, col);
        for (int j = col; j < A.cols(); ++j) A.at(prow, j) = A.at(prow, j) * inv;
        for (int i = 0; i < A.rows(); ++i) {
            if (i == prow) continue;
            const F f = A.at(i, col);
            if (f == F(0)) continue;
            for (int j = col; j < A.cols(); ++j)
                A.at(i, j) = A.at(i, j) - f * A.at(prow, j);
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

/// One solution of A x = b, if any.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b) {
    if (A.rows() != static_cast<int>(b.size()))
        throw std::invalid_argument("solve: size mismatch");
    Mat<F> aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;  // inconsistent
    std::vector<F> x(static_cast<size_t>(A.cols()), F(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), A.cols());
    return x;
}

/// Basis of the right null space of A (free variables set to 1, ascending).
template <class F>
std::vector<std::vector<F>> nullspace(const Mat<F>& A) {
    Mat<F> R = A;
    auto pivots = rref(R);
    std::vector<bool> is_pivot(static_cast<size_t>(A.cols()), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<std::vector<F>> basis;
    for (int free = 0; free < A.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<F> v(static_cast<size_t>(A.cols()), F(0));
        v[static_cast<size_t>(free)] = F(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<size_t>(pivots[i])] = -R.at(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
Mat<F> inverse(const Mat<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: not square");
    const int n = A.rows();
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = F(1);
    }
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

template <class F>
F det(const Mat<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("det: not square");
    Mat<F> M = A;
    const int n = M.rows();
    F d(1);
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int i = col; i < n; ++i)
            if (!(M.at(i, col) == F(0))) { sel = i; break; }
        if (sel < 0) return F(0);
        if (sel != col) {
            for (int j = 0; j < n; ++j) std::swap(M.at(sel, j), M.at(col, j));
            d = -d;
        }
        d = d * M.at(col, col);
        const F inv = F(1) / M.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            const F f = M.at(i, col) * inv;
            if (f == F(0)) continue;
            for (int j = col; j < n; ++j) M.at(i, j) = M.at(i, j) - f * M.at(col, j);
        }
    }
    return d;
}

template <class F>
F trace(const Mat<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("trace: not square");
    F s(0);
    for (int i = 0; i < A.rows(); ++i) s += A.at(i, i);
    return s;
}

/**
 * Characteristic polynomial det(s I - A), coefficients ascending in s,
 * by Faddeev-LeVerrier (divisions only by integers; F has characteristic
 * zero here).
 */
template <class F>
Poly<F> charpoly(const Mat<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("charpoly: not square");
    const int n = A.rows();
    std::vector<F> c(static_cast<size_t>(n) + 1, F(0));
    c[static_cast<size_t>(n)] = F(1);
    Mat<F> M = Mat<F>::identity(n);
    for (int k = 1; k <= n; ++k) {
        M = A * M;
        F ck = -(trace(M) / F(k));
        c[static_cast<size_t>(n - k)] = ck;
        for (int i = 0; i < n; ++i) M.at(i, i) += ck;
    }
    return Poly<F>(std::move(c));
}

/**
 * Incremental row echelon over F.  Stored rows are scaled to a unit
 * leading entry at their pivot (leftmost nonzero) position.  Every
 * reduction also reports the combination of the *inserted* vectors
 * (in insertion order) that was subtracted, so a caller detecting a
 * linear dependency gets the dependency coefficients for free.
 */
template <class F>
class Echelon {
public:
    explicit Echelon(int width) : width_(width) {}

    int width() const { return width_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    struct Pushed {
        bool added;              // false: v was already in the span
        std::vector<F> residual; // v minus the stored-row combination
        std::vector<F> combo;    // over inserted vectors: v = residual + sum combo[j] * inserted_j
    };

    /// Residual of v against the current span; combo (over inserted
    /// vectors) satisfies v = residual + sum combo[j] * inserted_j.
    std::vector<F> reduce(std::vector<F> v, std::vector<F>* combo = nullptr) const {
        check(v);
        if (combo) combo->assign(static_cast<size_t>(rank()), F(0));
        for (int j = 0; j < width_; ++j) {
            if (v[static_cast<size_t>(j)] == F(0)) continue;
            auto it = by_pivot_.find(j);
            if (it == by_pivot_.end()) continue;
            const Row& r = rows_[it->second];
            const F f = v[static_cast<size_t>(j)];
            for (int m = j; m < width_; ++m)
                v[static_cast<size_t>(m)] = v[static_cast<size_t>(m)] - f * r.v[static_cast<size_t>(m)];
            if (combo)
                for (size_t k = 0; k < r.combo.size(); ++k) (*combo)[k] += f * r.combo[k];
        }
        return v;
    }

    /// Reduces v and inserts the residual when it is nonzero.
    Pushed push(std::vector<F> v) {
        Pushed out;
        out.residual = reduce(std::move(v), &out.combo);
        int lead = -1;
        for (int j = 0; j < width_; ++j)
            if (!(out.residual[static_cast<size_t>(j)] == F(0))) { lead = j; break; }
        if (lead < 0) {
            out.added = false;
            return out;
        }
        // Normalized new row = (v - combination)/pivot; record how it is
        // built from the inserted vectors, including v itself.
        Row r;
        const F inv = F(1) / out.residual[static_cast<size_t>(lead)];
        r.v = out.residual;
        for (auto& x : r.v) x = x * inv;
        r.lead = lead;
        r.combo.assign(static_cast<size_t>(rank()) + 1, F(0));
        for (size_t k = 0; k < out.combo.size(); ++k) r.combo[k] = -inv * out.combo[k];
        r.combo.back() = inv;
        by_pivot_[lead] = rows_.size();
        rows_.push_back(std::move(r));
        out.added = true;
        return out;
    }

    bool insert(std::vector<F> v) { return push(std::move(v)).added; }

private:
    int width_;
    struct Row {
        std::vector<F> v;
        int lead;
        std::vector<F> combo;  // this row as a combination of inserted vectors
    };
    std::vector<Row> rows_;
    std::map<int, size_t> by_pivot_;

    void check(const std::vector<F>& v) const {
        if (static_cast<int>(v.size()) != width_)
            throw std::invalid_argument("Echelon: width mismatch");
    }
};

}  // namespace ftel
