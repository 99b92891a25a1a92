#include <atomic>

#include "mpgh/kernels/kernels.hpp"

namespace mpgh::kernels {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols) {
  return active_isa() == Isa::kAvx2 ? avx2::directed_hausdorff(block, rows, cols)
                                    : scalar::directed_hausdorff(block, rows, cols);
}

void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2) {
  active_isa() == Isa::kAvx2 ? avx2::min_dist2_point(pts, a, min_d2) : scalar::min_dist2_point(pts, a, min_d2);
}

void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2) {
  active_isa() == Isa::kAvx2 ? avx2::min_dist2_segment(pts, a, b, min_d2)
                             : scalar::min_dist2_segment(pts, a, b, min_d2);
}

void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2) {
  active_isa() == Isa::kAvx2 ? avx2::min_dist2_triangle(pts, a, b, c, min_d2)
                             : scalar::min_dist2_triangle(pts, a, b, c, min_d2);
}

}  // namespace mpgh::kernels
