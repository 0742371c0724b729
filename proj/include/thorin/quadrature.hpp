#pragma once

#include <functional>

namespace thorin::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

using Fn = std::function<double(double)>;

// f(x, d): d is the signed distance from x to the nearest endpoint,
// negative near the left end and positive near the right end.
using FnC = std::function<double(double, double)>;

// Double-exponential rule on a finite interval; tolerates integrable
// endpoint singularities (logarithmic or algebraic).
Result finite(const Fn& f, double a, double b, double rel_tol = 1e-12);
Result finite_c(const FnC& f, double a, double b, double rel_tol = 1e-12);

// [a, inf).
Result upper(const Fn& f, double a, double rel_tol = 1e-12);

// Adaptive Gauss-Kronrod (31 points) for smooth integrands.
Result smooth(const Fn& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 20);

// int_a^b (x-a)^pa (b-x)^pb g(x) dx with pa, pb > -1. Each half is mapped by
// a power substitution that absorbs the algebraic factor exactly.
Result algebraic(const Fn& g, double a, double b, double pa, double pb, double rel_tol = 1e-12);

// int_a^inf (x-a)^pa g(x) dx, pa > -1; g must decay.
Result algebraic_upper(const Fn& g, double a, double pa, double rel_tol = 1e-12);

// int_{10^lo}^{10^hi} f, one Gauss-Kronrod panel per decade. For densities on
// (0, inf) with slowly decaying power tails, where the double-exponential
// rules truncate early.
Result decades(const Fn& f, int lo = -30, int hi = 30, double rel_tol = 1e-12);

}  // namespace thorin::quad
