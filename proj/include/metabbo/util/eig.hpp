#pragma once

#include <cmath>
#include <vector>

#include "metabbo/util/mat.hpp"

namespace metabbo {

// Cyclic Jacobi eigendecomposition of a symmetric matrix: A = V diag(d) V^T
// with V's columns the eigenvectors. Deterministic and accurate to ~1e-14
// for the desk-scale dimensions used here.
inline void jacobi_eigen_sym(const Mat& a_in, Mat& vecs, std::vector<double>& vals) {
    const int n = a_in.rows;
    Mat a = a_in;
    vecs = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1.0e-28) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::fabs(apq) < 1.0e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = vecs.at(k, p), vkq = vecs.at(k, q);
                    vecs.at(k, p) = c * vkp - s * vkq;
                    vecs.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    vals.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = a.at(i, i);
}

} // namespace metabbo
