#pragma once

namespace mgg::detail {

struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Quintic Hermite interpolation on [t0, t1] from value, first and second
/// derivative at both ends; returns the interpolant and its first two
/// derivatives at t.
inline Jet quintic_hermite(double t0, const Jet& y0, double t1, const Jet& y1, double t) {
  const double h = t1 - t0;
  const double u = (t - t0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double u4 = u3 * u;
  const double u5 = u4 * u;

  // Basis functions and their u-derivatives.
  const double H0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
  const double H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
  const double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
  const double H3 = 0.5 * u3 - u4 + 0.5 * u5;
  const double H4 = -4 * u3 + 7 * u4 - 3 * u5;
  const double H5 = 10 * u3 - 15 * u4 + 6 * u5;

  const double D0 = -30 * u2 + 60 * u3 - 30 * u4;
  const double D1 = 1 - 18 * u2 + 32 * u3 - 15 * u4;
  const double D2 = u - 4.5 * u2 + 6 * u3 - 2.5 * u4;
  const double D3 = 1.5 * u2 - 4 * u3 + 2.5 * u4;
  const double D4 = -12 * u2 + 28 * u3 - 15 * u4;
  const double D5 = 30 * u2 - 60 * u3 + 30 * u4;

  const double S0 = -60 * u + 180 * u2 - 120 * u3;
  const double S1 = -36 * u + 96 * u2 - 60 * u3;
  const double S2 = 1 - 9 * u + 18 * u2 - 10 * u3;
  const double S3 = 3 * u - 12 * u2 + 10 * u3;
  const double S4 = -24 * u + 84 * u2 - 60 * u3;
  const double S5 = 60 * u - 180 * u2 + 120 * u3;

  const double a0 = y0.value;
  const double a1 = h * y0.d1;
  const double a2 = h * h * y0.d2;
  const double b2 = h * h * y1.d2;
  const double b1 = h * y1.d1;
  const double b0 = y1.value;

  Jet out;
  out.value = H0 * a0 + H1 * a1 + H2 * a2 + H3 * b2 + H4 * b1 + H5 * b0;
  out.d1 = (D0 * a0 + D1 * a1 + D2 * a2 + D3 * b2 + D4 * b1 + D5 * b0) / h;
  out.d2 = (S0 * a0 + S1 * a1 + S2 * a2 + S3 * b2 + S4 * b1 + S5 * b0) / (h * h);
  return out;
}

}  // namespace mgg::detail
