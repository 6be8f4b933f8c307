#pragma once

#include <vector>

#include "field.h"

namespace alg {

using Row = std::vector<FE>;
using Mat = std::vector<Row>;

Mat mat_zero(const FieldDesc& fd, int rows, int cols);
Mat mat_identity(const FieldDesc& fd, int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);

// In-place reduced row echelon form; returns pivot column indices per rank row.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Basis of the right nullspace of m (each vector has m[0].size() entries),
// in RREF-canonical form for determinism.
Mat nullspace(const Mat& m, const FieldDesc& fd);

// Inverse; nullopt when singular.
std::optional<Mat> mat_inverse(const Mat& m, const FieldDesc& fd);

FE mat_det(Mat m, const FieldDesc& fd);

// Characteristic polynomial coefficients c_0..c_n of det(tI - M)
// via exact Faddeev-LeVerrier over a field of characteristic 0,
// and fraction-free elimination fallback otherwise.
std::vector<FE> char_poly(const Mat& m, const FieldDesc& fd);

// Do the rows of a and b span the same subspace?
bool same_row_space(Mat a, Mat b);

}  // namespace alg
