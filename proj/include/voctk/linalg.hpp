#pragma once

#include <vector>

namespace voctk {

// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major n x n).
// Fills eigenvalues (ascending) and the matching eigenvectors as columns of
// the row-major n x n matrix `vectors`.
void eigen_symmetric(const std::vector<double>& matrix, int n, std::vector<double>& values,
                     std::vector<double>& vectors);

// C = A * B for row-major n x n matrices.
std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int n);

} // namespace voctk
