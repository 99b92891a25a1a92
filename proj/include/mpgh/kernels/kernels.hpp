#pragma once

// Float inner loops with a scalar reference implementation and an AVX2
// variant. The public entry points dispatch at runtime on CPU support; both
// variants perform the same IEEE operations in the same order, so results
// are bit-identical and the dispatch never changes an output.

#include <cstddef>

namespace mpgh::kernels {

enum class Isa { kScalar, kAvx2 };

/// Best ISA supported by this CPU and build.
Isa detected_isa();
/// ISA currently used by the dispatching entry points.
Isa active_isa();
/// Pins the dispatch target (tests, benchmarking). Requesting AVX2 on a CPU
/// without it falls back to scalar.
void set_active_isa(Isa isa);
const char* isa_name(Isa isa);

/// Structure-of-arrays point batch: coords[k][i] is coordinate k of point i.
struct PointBatch {
  const double* const* coords;
  std::size_t dim;
  std::size_t count;
};

/// max over rows of (min over columns) of a row-major block.
double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols);

/// min_d2[i] = min(min_d2[i], |p_i - segment(a,b)|^2).
void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2);
/// min_d2[i] = min(min_d2[i], |p_i - triangle(a,b,c)|^2), any ambient dimension.
void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2);
/// min_d2[i] = min(min_d2[i], |p_i - a|^2).
void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2);

namespace scalar {
double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols);
void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2);
void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2);
void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2);
}  // namespace scalar

namespace avx2 {
bool compiled();
double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols);
void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2);
void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2);
void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2);
}  // namespace avx2

}  // namespace mpgh::kernels
