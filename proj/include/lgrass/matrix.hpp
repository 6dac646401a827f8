#pragma once

#include "lgrass/rational.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace lgrass {

// Dense matrix over Rat. Sizes here are tiny (tens of rows/columns), so all
// algorithms are plain Gaussian elimination with first-nonzero pivoting,
// which keeps every result canonical for a given input.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}
    Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ ? int(rows.begin()->size()) : 0;
        a_.reserve(size_t(rows_) * size_t(cols_));
        for (const auto& r : rows) {
            if (int(r.size()) != cols_) throw ValidationError("ragged matrix literal");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw ValidationError("matrix product shape mismatch");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& x = (*this)(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Mat scaled(const Rat& c) const {
        Mat r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Mat column(int j) const {
        Mat r(rows_, 1);
        for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }

    void append_columns(const Mat& o) {
        if (rows_ != o.rows_ && cols_ != 0)
            throw ValidationError("hstack row mismatch");
        if (cols_ == 0) {
            *this = o;
            return;
        }
        Mat r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        *this = r;
    }

private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ValidationError("matrix shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

inline Mat hstack(const std::vector<Mat>& parts) {
    Mat r;
    for (const auto& p : parts) r.append_columns(p);
    return r;
}

// Reduced row echelon form in place; returns the pivot column indices.
inline std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rat inv = Rat(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(Mat m) { return int(rref(m).size()); }

inline bool invertible(const Mat& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Canonical basis of the null space {x : m x = 0}, one column per free
// variable, in increasing free-column order.
inline Mat kernel_basis(const Mat& m) {
    Mat r = m;
    std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(m.cols(), int(free_cols.size()));
    for (int fi = 0; fi < int(free_cols.size()); ++fi) {
        int f = free_cols[fi];
        k(f, fi) = 1;
        for (int pi = 0; pi < int(pivots.size()); ++pi) k(pivots[pi], fi) = -r(pi, f);
    }
    return k;
}

// Solves A X = B exactly. Returns the particular solution with all free
// variables zero, or nullopt when inconsistent.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw ValidationError("solve shape mismatch");
    Mat aug = a;
    aug.append_columns(b);
    std::vector<int> pivots = rref(aug);
    for (int c : pivots)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols());
    for (int pi = 0; pi < int(pivots.size()); ++pi)
        for (int j = 0; j < b.cols(); ++j) x(pivots[pi], j) = aug(pi, a.cols() + j);
    return x;
}

inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw MathCheckError("inverse of non-square matrix");
    auto x = solve(m, Mat::identity(m.rows()));
    if (!x || rank(m) != m.rows()) throw MathCheckError("matrix not invertible");
    return *x;
}

// Standard basis vectors extending the column space of s to all of K^t,
// chosen greedily by index; t x (t - rank s).
inline Mat complement_basis(const Mat& s, int t) {
    if (s.cols() > 0 && s.rows() != t) throw ValidationError("complement shape mismatch");
    Mat acc = s;
    int base = rank(acc);
    Mat out(t, 0);
    for (int i = 0; i < t && base + out.cols() < t; ++i) {
        Mat e(t, 1);
        e(i, 0) = 1;
        Mat trial = acc;
        trial.append_columns(e);
        if (rank(trial) > rank(acc)) {
            acc = trial;
            out.append_columns(e);
        }
    }
    return out;
}

} // namespace lgrass
