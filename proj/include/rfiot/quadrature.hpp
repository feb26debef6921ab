#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfiot {

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;           ///< estimated absolute error bound
    std::uint64_t evals = 0;      ///< integrand evaluations consumed
};

struct QuadOptions {
    double rel_tol = 1e-7;
    double abs_tol = 1e-10;
    std::uint64_t max_evals = 500000;
};

/// Budget ran out before the tolerance was met; carries the best estimate.
class QuadratureBudgetError : public std::runtime_error {
  public:
    QuadratureBudgetError(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double value() const { return value_; }
    double error_bound() const { return error_; }

  private:
    double value_;
    double error_;
};

class NoSignChangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod 7-15 on [lo, hi]. Stops once the summed panel error
/// is below max(abs_tol, rel_tol*|value|).
QuadResult integrate_1d(const Integrand1D& f, double lo, double hi, const QuadOptions& opt = {});

/// Integral over [lo, inf) through the substitution r = lo + t/(1-t); the
/// endpoint t = 1 is never evaluated.
QuadResult integrate_semi_infinite(const Integrand1D& f, double lo, const QuadOptions& opt = {});

/// Internal boundaries of the triangle {0 < r1 < r2 < inf}: outer break
/// points on r2 plus an optional r1 boundary curve, so each quadrature panel
/// sees a smooth integrand.
struct RegionSplit {
    std::vector<double> outer_breaks;                 ///< sorted, finite, > 0
    std::function<double(double)> inner_boundary;     ///< r2 -> break in (0, r2], may be empty

    void validate() const;
};

/// Nested integral of f(r1, r2) over {0 < r1 < r2 < inf} with the panels
/// implied by `split`. `inner` should be tighter than `outer`.
QuadResult integrate_triangle(const Integrand2D& f, const RegionSplit& split,
                              const QuadOptions& outer = {.rel_tol = 1e-6},
                              const QuadOptions& inner = {});

/// Bisection root of a monotone g with g(lo), g(hi) of opposite sign; the
/// bracket is narrowed to rel_tol times its initial width.
double root_bisect(const std::function<double(double)>& g, double lo, double hi,
                   double rel_tol = 1e-12);

/// Piecewise-cubic cache of an expensive scalar function, refined until the
/// interpolant tracks the function to `tol` at panel midpoints.
class AdaptiveTable {
  public:
    AdaptiveTable(const std::function<double(double)>& f, double lo, double hi, double tol,
                  int max_depth = 12);

    /// Hermite interpolation; arguments outside [lo, hi] clamp to the ends.
    double operator()(double x) const;

    std::size_t size() const { return xs_.size(); }

  private:
    void refine(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double tol, int depth);
    std::vector<double> xs_, ys_, slopes_;
};

}  // namespace rfiot
