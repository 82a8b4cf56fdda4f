// Exact and floating-point determinants.
#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "tauwalk/numeric.hpp"

namespace tw {

template <typename T>
struct Matrix {
    int n = 0, m = 0;
    std::vector<T> a;
    Matrix() = default;
    Matrix(int rows, int cols) : n(rows), m(cols), a(rows * cols) {}
    T& at(int i, int j) { return a[i * m + j]; }
    const T& at(int i, int j) const { return a[i * m + j]; }
};

// Bareiss fraction-free elimination; exact over integers and rationals.
template <typename T>
T bareiss_det(Matrix<T> M) {
    if (M.n != M.m) throw std::invalid_argument("determinant of non-square matrix");
    int n = M.n;
    if (n == 0) return T(1);
    T prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == T(0)) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, k) != T(0)) {
                    p = i;
                    break;
                }
            if (p < 0) return T(0);
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                T v = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                M.at(i, j) = v / prev;  // divides exactly (Sylvester identity)
            }
        prev = M.at(k, k);
    }
    T d = M.at(n - 1, n - 1);
    return sign > 0 ? d : -d;
}

// Partially pivoted elimination; pivot_ratio (optional) reports
// min|pivot|/max|pivot| as a cheap conditioning signal.
inline double lu_det(Matrix<double> M, double* pivot_ratio = nullptr) {
    if (M.n != M.m) throw std::invalid_argument("determinant of non-square matrix");
    int n = M.n;
    if (n == 0) {
        if (pivot_ratio) *pivot_ratio = 1;
        return 1.0;
    }
    double det = 1.0, pmin = HUGE_VAL, pmax = 0.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(M.at(i, k)) > std::fabs(M.at(p, k))) p = i;
        if (M.at(p, k) == 0.0) {
            if (pivot_ratio) *pivot_ratio = 0;
            return 0.0;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(p, j));
            det = -det;
        }
        double piv = M.at(k, k);
        det *= piv;
        pmin = std::min(pmin, std::fabs(piv));
        pmax = std::max(pmax, std::fabs(piv));
        for (int i = k + 1; i < n; ++i) {
            double f = M.at(i, k) / piv;
            for (int j = k; j < n; ++j) M.at(i, j) -= f * M.at(k, j);
        }
    }
    if (pivot_ratio) *pivot_ratio = pmax > 0 ? pmin / pmax : 0;
    return det;
}

}  // namespace tw
