#include "rfiot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace rfiot {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1]; the 7-point Gauss rule
// sits on the odd-index Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// One GK15 application with the QUADPACK error estimate.
Panel gk15(const Integrand1D& f, double lo, double hi, std::uint64_t& evals) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);
    evals += 15;

    double kron = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        kron += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    kron += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::abs(fv[7]);

    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double mean = kron * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    kron *= half;
    gauss *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs(kron - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    return {lo, hi, kron, err};
}

}  // namespace

QuadResult integrate_1d(const Integrand1D& f, double lo, double hi, const QuadOptions& opt) {
    if (!(lo < hi)) throw std::invalid_argument("integrate_1d: need lo < hi");
    if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0))
        throw std::invalid_argument("integrate_1d: tolerances must be > 0");

    std::uint64_t evals = 0;
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, lo, hi, evals);
    double total = first.value;
    double toterr = first.error;
    heap.push(first);

    while (toterr > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (heap.empty()) break;  // all remaining panels at fp resolution
        if (evals + 30 > opt.max_evals)
            throw QuadratureBudgetError("integrate_1d: evaluation budget exhausted", total, toterr);
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) continue;  // unsplittable; already counted
        Panel left = gk15(f, worst.lo, mid, evals);
        Panel right = gk15(f, mid, worst.hi, evals);
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (toterr <= 0.0) break;
    }
    return {total, toterr, evals};
}

QuadResult integrate_semi_infinite(const Integrand1D& f, double lo, const QuadOptions& opt) {
    auto transformed = [&f, lo](double t) -> double {
        const double w = 1.0 / (1.0 - t);
        const double fv = f(lo + t * w);
        if (fv == 0.0) return 0.0;
        return fv * w * w;
    };
    return integrate_1d(transformed, 0.0, 1.0, opt);
}

void RegionSplit::validate() const {
    double prev = 0.0;
    for (double b : outer_breaks) {
        if (!(b > prev) || !std::isfinite(b))
            throw std::invalid_argument("RegionSplit: breaks must be finite, positive, ascending");
        prev = b;
    }
}

QuadResult integrate_triangle(const Integrand2D& f, const RegionSplit& split,
                              const QuadOptions& outer, const QuadOptions& inner) {
    split.validate();

    std::uint64_t inner_evals = 0;
    double max_inner_err = 0.0;
    auto row_integral = [&](double r2) -> double {
        std::vector<double> cuts{0.0};
        if (split.inner_boundary) {
            const double c = split.inner_boundary(r2);
            if (c > 0.0 && c < r2) cuts.push_back(c);
        }
        cuts.push_back(r2);
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
            if (!(cuts[j] < cuts[j + 1])) continue;
            QuadResult q = integrate_1d([&](double r1) { return f(r1, r2); }, cuts[j],
                                        cuts[j + 1], inner);
            inner_evals += q.evals;
            max_inner_err = std::max(max_inner_err, q.error);
            sum += q.value;
        }
        return sum;
    };

    std::vector<double> edges{0.0};
    for (double b : split.outer_breaks) edges.push_back(b);

    double value = 0.0, error = 0.0;
    std::uint64_t outer_evals = 0;
    try {
        for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
            QuadResult q = integrate_1d(row_integral, edges[j], edges[j + 1], outer);
            value += q.value;
            error += q.error;
            outer_evals += q.evals;
        }
        QuadResult tail = integrate_semi_infinite(row_integral, edges.back(), outer);
        value += tail.value;
        error += tail.error;
        outer_evals += tail.evals;
    } catch (const QuadratureBudgetError& e) {
        throw QuadratureBudgetError(std::string("integrate_triangle: ") + e.what(),
                                    value + e.value(), error + e.error_bound());
    }
    // Inner tolerances are much tighter than the outer ones; fold a
    // conservative share of them into the reported bound.
    error += inner.rel_tol * std::abs(value) + max_inner_err;
    return {value, error, outer_evals + inner_evals};
}

double root_bisect(const std::function<double(double)>& g, double lo, double hi,
                   double rel_tol) {
    if (!(lo < hi)) throw std::invalid_argument("root_bisect: need lo < hi");
    double flo = g(lo);
    double fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoSignChangeError("root_bisect: no sign change on bracket");
    const double width0 = hi - lo;
    while (hi - lo > rel_tol * width0) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

AdaptiveTable::AdaptiveTable(const std::function<double(double)>& f, double lo, double hi,
                             double tol, int max_depth) {
    if (!(lo < hi)) throw std::invalid_argument("AdaptiveTable: need lo < hi");
    xs_.push_back(lo);
    ys_.push_back(f(lo));
    refine(f, lo, ys_.front(), hi, f(hi), tol, max_depth);
    // refine() appends in ascending order, finishing with hi
    slopes_.resize(xs_.size());
    const std::size_t n = xs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i == 0 ? 0 : i - 1;
        const std::size_t b = i + 1 == n ? i : i + 1;
        slopes_[i] = (ys_[b] - ys_[a]) / (xs_[b] - xs_[a]);
    }
}

void AdaptiveTable::refine(const std::function<double(double)>& f, double a, double fa, double b,
                           double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double predicted = 0.5 * (fa + fb);
    if (depth <= 0 || std::abs(fm - predicted) <= tol) {
        // Acceptance is based on the parabolic correction being small; keep
        // the midpoint so the stored grid supports cubic interpolation.
        xs_.push_back(m);
        ys_.push_back(fm);
        xs_.push_back(b);
        ys_.push_back(fb);
        return;
    }
    refine(f, a, fa, m, fm, tol, depth - 1);
    refine(f, m, fm, b, fb, tol, depth - 1);
}

double AdaptiveTable::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

}  // namespace rfiot
