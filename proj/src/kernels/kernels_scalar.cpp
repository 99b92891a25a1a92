#include <limits>

#include "mpgh/kernels/kernels.hpp"

// Reference kernels. The operation order here is the contract the AVX2
// variants reproduce lane-for-lane; keep the two files in step.

namespace mpgh::kernels::scalar {

namespace {

inline double clamp01(double t) {
  t = t > 0.0 ? t : 0.0;
  return t < 1.0 ? t : 1.0;
}

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

double segment_d2(const PointBatch& pts, std::size_t i, const Segment& s) {
  double vde = 0.0;
  for (std::size_t k = 0; k < pts.dim; ++k) vde = vde + (pts.coords[k][i] - s.a[k]) * s.e[k];
  double t = s.ee > 0.0 ? clamp01(vde / s.ee) : 0.0;
  double d2 = 0.0;
  for (std::size_t k = 0; k < pts.dim; ++k) {
    double w = (pts.coords[k][i] - s.a[k]) - t * s.e[k];
    d2 = d2 + w * w;
  }
  return d2;
}

}  // namespace

double directed_hausdorff(const double* block, std::size_t rows, std::size_t cols) {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = block + r * cols;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols; ++c) best = min_of(row[c], best);
    worst = best > worst ? best : worst;
  }
  return worst;
}

void min_dist2_point(const PointBatch& pts, const double* a, double* min_d2) {
  for (std::size_t i = 0; i < pts.count; ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < pts.dim; ++k) {
      double w = pts.coords[k][i] - a[k];
      d2 = d2 + w * w;
    }
    min_d2[i] = min_of(d2, min_d2[i]);
  }
}

void min_dist2_segment(const PointBatch& pts, const double* a, const double* b, double* min_d2) {
  const Segment s = make_segment(a, b, pts.dim);
  for (std::size_t i = 0; i < pts.count; ++i) min_d2[i] = min_of(segment_d2(pts, i, s), min_d2[i]);
}

void min_dist2_triangle(const PointBatch& pts, const double* a, const double* b, const double* c, double* min_d2) {
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

  for (std::size_t i = 0; i < pts.count; ++i) {
    double m = std::numeric_limits<double>::infinity();
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
    m = min_of(segment_d2(pts, i, ab), m);
    m = min_of(segment_d2(pts, i, bc), m);
    m = min_of(segment_d2(pts, i, ac), m);
    min_d2[i] = min_of(m, min_d2[i]);
  }
}

}  // namespace mpgh::kernels::scalar
