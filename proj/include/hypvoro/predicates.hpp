#pragma once

namespace hypvoro {

// Sign of the orientation determinant of (a, b, c): +1 counterclockwise,
// -1 clockwise, 0 collinear. Floating-point filter with an exact rational
// fallback, so the sign is always correct.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

// Sign of the incircle determinant for counterclockwise (a, b, c): +1 when d
// lies strictly inside their circumcircle, -1 strictly outside, 0 on it.
// Exact via the same filter + rational fallback.
int incircle(double ax, double ay, double bx, double by, double cx, double cy,
             double dx, double dy);

}  // namespace hypvoro
