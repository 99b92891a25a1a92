#include <limits>

#include "mpgh/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define MPGH_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#define MPGH_AVX2 __attribute__((target("avx2")))
#else
#define MPGH_HAVE_AVX2_BUILD 0
#endif

namespace mpgh::kernels::avx2 {

#if MPGH_HAVE_AVX2_BUILD

bool compiled() { return true; }

namespace {

// Scalar tail helpers mirror kernels_scalar.cpp exactly.
inline double min_of(double x, double m) { return x < m ? x : m; }

struct Segment {
  const double* a;
  double e[16];
  double ee;
};

Segment make_segment(const double* a, const double* b, std::size_t dim) {
  Segment s{a, {}, 0.0};
  for (std::size_t k = 0; k < dim; ++k) {
    s.e[k] = b[k] - a[k];
    s.ee = s.ee + s.e[k] * s.e[k];
  }
  return s;
}

double segment_d2_tail(const PointBatch& pts, std::size_t i, const Segment& s) {
  double vde = 0.0;
  for (std::size_t k = 0; k < pts.dim; ++k) vde = vde + (pts.coords[k][i] - s.a[k]) * s.e[k];
  double t = 0.0;
  if (s.ee > 0.0) {
    t = vde / s.ee;
    t = t > 0.0 ? t : 0.0;
    t = t < 1.0 ? t : 1.0;
  }
  double d2 = 0.0;
  for (std::size_t k = 0; k < pts.dim; ++k) {
    double w = (pts.coords[k][i] - s.a[k]) - t * s.e[k];
    d2 = d2 + w * w;
  }
  return d2;
}

MPGH_AVX2 inline __m256d segment_d2_x4(const PointBatch& pts, std::size_t i, const Segment& s) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d vde = zero;
  for (std::size_t k = 0; k < pts.dim; ++k) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(pts.coords[k] + i), _mm256_set1_pd(s.a[k]));
    vde = _mm256_add_pd(vde, _mm256_mul_pd(v, _mm256_set1_pd(s.e[k])));
  }
  __m256d t = zero;
  if (s.ee > 0.0) {
    t = _mm256_div_pd(vde, _mm256_set1_pd(s.ee));
    t = _mm256_max_pd(t, zero);
    t = _mm256_min_pd(t, _mm256_set1_pd(1.0));
  }
  __m256d d2 = zero;
  for (std::size_t k = 0; k < pts.dim; ++k) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(pts.coords[k] + i), _mm256_set1_pd(s.a[k]));
    __m256d w = _mm256_sub_pd(v, _mm256_mul_pd(t, _mm256_set1_pd(s.e[k])));
    d2 = _mm256_add_pd(d2, _mm256_mul_pd(w, w));
  }
  return d2;
}

}  // namespace

MPGH_AVX2 double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols) {
  double worst = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = block + r * cols;
    __m256d acc = _mm256_set1_pd(inf);
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) acc = _mm256_min_pd(_mm256_loadu_pd(row + c), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double best = inf;
    for (double v : lanes) best = min_of(v, best);
    for (; c < cols; ++c) best = min_of(row[c], best);
    worst = best > worst ? best : worst;
  }
  return worst;
}

MPGH_AVX2 void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2) {
  std::size_t i = 0;
  for (; i + 4 <= pts.count; i += 4) {
    __m256d d2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < pts.dim; ++k) {
      __m256d w = _mm256_sub_pd(_mm256_loadu_pd(pts.coords[k] + i), _mm256_set1_pd(a[k]));
      d2 = _mm256_add_pd(d2, _mm256_mul_pd(w, w));
    }
    _mm256_storeu_pd(min_d2 + i, _mm256_min_pd(d2, _mm256_loadu_pd(min_d2 + i)));
  }
  for (; i < pts.count; ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < pts.dim; ++k) {
      double w = pts.coords[k][i] - a[k];
      d2 = d2 + w * w;
    }
    min_d2[i] = min_of(d2, min_d2[i]);
  }
}

MPGH_AVX2 void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2) {
  const Segment s = make_segment(a, b, pts.dim);
  std::size_t i = 0;
  for (; i + 4 <= pts.count; i += 4)
    _mm256_storeu_pd(min_d2 + i, _mm256_min_pd(segment_d2_x4(pts, i, s), _mm256_loadu_pd(min_d2 + i)));
  for (; i < pts.count; ++i) min_d2[i] = min_of(segment_d2_tail(pts, i, s), min_d2[i]);
}

MPGH_AVX2 void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c,
                                  double* min_d2) {
  const std::size_t dim = pts.dim;
  const Segment ab = make_segment(a, b, dim), bc = make_segment(b, c, dim), ac = make_segment(a, c, dim);
  double g00 = 0.0, g01 = 0.0, g11 = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    g00 = g00 + ab.e[k] * ab.e[k];
    g01 = g01 + ab.e[k] * ac.e[k];
    g11 = g11 + ac.e[k] * ac.e[k];
  }
  const double det = g00 * g11 - g01 * g01;
  const bool planar = det > 1e-14 * (g00 * g11);
  const double inf = std::numeric_limits<double>::infinity();

  std::size_t i = 0;
  for (; i + 4 <= pts.count; i += 4) {
    __m256d m = _mm256_set1_pd(inf);
    if (planar) {
      const __m256d zero = _mm256_setzero_pd();
      __m256d r0 = zero, r1 = zero;
      for (std::size_t k = 0; k < dim; ++k) {
        __m256d v = _mm256_sub_pd(_mm256_loadu_pd(pts.coords[k] + i), _mm256_set1_pd(a[k]));
        r0 = _mm256_add_pd(r0, _mm256_mul_pd(v, _mm256_set1_pd(ab.e[k])));
        r1 = _mm256_add_pd(r1, _mm256_mul_pd(v, _mm256_set1_pd(ac.e[k])));
      }
      const __m256d vg00 = _mm256_set1_pd(g00), vg01 = _mm256_set1_pd(g01), vg11 = _mm256_set1_pd(g11);
      const __m256d vdet = _mm256_set1_pd(det);
      __m256d s = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(vg11, r0), _mm256_mul_pd(vg01, r1)), vdet);
      __m256d t = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(vg00, r1), _mm256_mul_pd(vg01, r0)), vdet);
      __m256d inside = _mm256_and_pd(_mm256_cmp_pd(s, zero, _CMP_GE_OQ), _mm256_cmp_pd(t, zero, _CMP_GE_OQ));
      inside = _mm256_and_pd(inside, _mm256_cmp_pd(_mm256_add_pd(s, t), _mm256_set1_pd(1.0), _CMP_LE_OQ));
      if (_mm256_movemask_pd(inside) != 0) {
        __m256d d2 = zero;
        for (std::size_t k = 0; k < dim; ++k) {
          __m256d v = _mm256_sub_pd(_mm256_loadu_pd(pts.coords[k] + i), _mm256_set1_pd(a[k]));
          __m256d w = _mm256_sub_pd(_mm256_sub_pd(v, _mm256_mul_pd(s, _mm256_set1_pd(ab.e[k]))),
                                    _mm256_mul_pd(t, _mm256_set1_pd(ac.e[k])));
          d2 = _mm256_add_pd(d2, _mm256_mul_pd(w, w));
        }
        m = _mm256_blendv_pd(m, d2, inside);
      }
    }
    m = _mm256_min_pd(segment_d2_x4(pts, i, ab), m);
    m = _mm256_min_pd(segment_d2_x4(pts, i, bc), m);
    m = _mm256_min_pd(segment_d2_x4(pts, i, ac), m);
    _mm256_storeu_pd(min_d2 + i, _mm256_min_pd(m, _mm256_loadu_pd(min_d2 + i)));
  }
  for (; i < pts.count; ++i) {
    double m = inf;
    if (planar) {
      double r0 = 0.0, r1 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double v = pts.coords[k][i] - a[k];
        r0 = r0 + v * ab.e[k];
        r1 = r1 + v * ac.e[k];
      }
      double s = (g11 * r0 - g01 * r1) / det;
      double t = (g00 * r1 - g01 * r0) / det;
      if (s >= 0.0 && t >= 0.0 && (s + t) <= 1.0) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          double w = ((pts.coords[k][i] - a[k]) - s * ab.e[k]) - t * ac.e[k];
          d2 = d2 + w * w;
        }
        m = d2;
      }
    }
    m = min_of(segment_d2_tail(pts, i, ab), m);
    m = min_of(segment_d2_tail(pts, i, bc), m);
    m = min_of(segment_d2_tail(pts, i, ac), m);
    min_d2[i] = min_of(m, min_d2[i]);
  }
}

#else

bool compiled() { return false; }
double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols) {
  return scalar::directed_hausdorff(block, rows, cols);
}
void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2) {
  scalar::min_dist2_point(pts, a, min_d2);
}
void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2) {
  scalar::min_dist2_segment(pts, a, b, min_d2);
}
void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2) {
  scalar::min_dist2_triangle(pts, a, b, c, min_d2);
}

#endif

}  // namespace mpgh::kernels::avx2
