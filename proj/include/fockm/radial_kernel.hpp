#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "coeffspace.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "quadrature.hpp"
#include "taylor.hpp"

namespace fockm {

// Radial weights K_m on (0, inf): K_1(x) = exp(-x) and K_{m+1} = K_m * K_1 under
// Mellin convolution (f*g)(x) = int_0^inf f(x/t) g(t) dt/t. The n-th moment of K_m
// is (n!)^m. Values are handled as ln K_m throughout, since K_m spans hundreds of
// orders of magnitude across the grid.

inline double k1_eval(double x) {
  if (!(x > 0.0)) throw DomainError("K_1 is evaluated on x > 0");
  return std::exp(-x);
}

namespace detail {

/// Log-integrand budget: points where the integrand is below exp(-budget) times its
/// peak are dropped.
inline double truncation_budget(const QuadratureConfig& cfg) { return std::log(1.0 / cfg.rel_tol) + 16.0; }

/// For a convex excess(t) >= 0 vanishing at `center`, returns [lo, hi] outside which
/// excess(t) > budget.
template <typename Excess>
std::pair<double, double> convex_bounds(Excess excess, double center, double budget) {
  auto search = [&](double dir) {
    double step = 0.5;
    double inside = center;
    double outside = center + dir * step;
    while (excess(outside) <= budget) {
      inside = outside;
      step = std::min(step * 1.5, 4.0);
      outside = inside + dir * step;
      if (std::abs(outside - center) > 1e4) break;
    }
    for (int i = 0; i < 40 && std::abs(outside - inside) > 1e-3; ++i) {
      const double mid = 0.5 * (inside + outside);
      (excess(mid) <= budget ? inside : outside) = mid;
    }
    return outside;
  };
  return {search(-1.0), search(1.0)};
}

/// Maximizer of a concave function on [a, b] by golden-section search.
template <typename F>
double golden_max(F f, double a, double b, int iterations = 90, double resolution = 1e-4) {
  constexpr double r = 0.6180339887498949;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && (b - a) > resolution; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Nested quadrature of the exponentially mapped representation
///   K_m(x) = int_{R^{m-1}} exp(-x^{1/m} (sum_i e^{t_i} + e^{-sum_i t_i})) dt.
/// The exponent is shifted by its minimum m so integrand values stay in (0, 1]; the
/// shifted exponent is accumulated as sum_i (e^{t_i} - 1 - t_i) + (e^{-S} - 1 + S),
/// S = sum_i t_i, a sum of non-negative terms free of cancellation at large x.
class ExponentialForm {
 public:
  ExponentialForm(int m, double x, const QuadratureConfig& cfg)
      : dims_(m - 1), m_(m), c_(std::pow(x, 1.0 / m)), cfg_(cfg), budget_(truncation_budget(cfg)) {
    // Laplace estimate of the integral, used to set inner absolute tolerances.
    const double laplace = std::pow(2.0 * std::numbers::pi / std::max(c_, 1.0), 0.5 * dims_) / std::sqrt(m_);
    inner_abs_tol_ = cfg.rel_tol * laplace * 1e-3;
  }

  double log_value() const { return -c_ * m_ + std::log(level(0, 0.0, 0.0)); }

 private:
  static double excess(double t) { return std::expm1(t) - t; }

  // Integrates over t_j given A = sum_{i<j} excess(t_i) and s = sum_{i<j} t_i.
  double level(int j, double A, double s) const {
    const int rest = dims_ - 1 - j;
    const double k = rest + 1.0;
    // Minimum over the remaining variables of the exponent, as a function of t_j.
    auto envelope = [&](double t) { return std::exp(t) + k * std::exp(-(s + t) / k); };
    const double center = -s / (k + 1.0);
    const double env_min = envelope(center);
    auto [lo, hi] = convex_bounds([&](double t) { return c_ * (envelope(t) - env_min); }, center, budget_);
    auto integrand = [&](double t) {
      if (rest == 0) return std::exp(-c_ * (A + excess(t) + excess(-s - t)));
      return level(j + 1, A + excess(t), s + t);
    };
    const double abs_tol = j == 0 ? cfg_.abs_tol : inner_abs_tol_;
    return integrate(integrand, lo, hi, cfg_.rel_tol, abs_tol, cfg_.max_refinements).value;
  }

  int dims_;
  double m_;
  double c_;
  QuadratureConfig cfg_;
  double budget_;
  double inner_abs_tol_;
};

/// Nested quadrature of the product representation in the original variables
///   K_m(x) = int_{(0,inf)^{m-1}} exp(-sum x_i - x / prod x_i) / prod x_i dx,
/// each half-line mapped onto (0, 1) by x_i = sigma tau / (1 - tau).
class ProductForm {
 public:
  ProductForm(int m, double x, const QuadratureConfig& cfg) : dims_(m - 1), x_(x), cfg_(cfg) {}

  double value() const { return level(0, 0.0, 1.0); }

 private:
  double level(int j, double S, double P) const {
    const int rest = dims_ - 1 - j;
    const double sigma = std::pow(x_ / P, 1.0 / (rest + 2.0));
    auto integrand = [&](double tau) {
      const double one_minus = 1.0 - tau;
      const double xi = sigma * tau / one_minus;
      const double jac = sigma / (one_minus * one_minus);
      if (!(xi > 0.0) || !std::isfinite(xi)) return 0.0;
      double inner;
      if (rest == 0) {
        const double prod = P * xi;
        inner = std::exp(-(S + xi) - x_ / prod) / prod;
      } else {
        inner = level(j + 1, S + xi, P * xi);
      }
      return inner * jac;
    };
    return integrate(integrand, 0.0, 1.0, cfg_.rel_tol, cfg_.abs_tol, cfg_.max_refinements).value;
  }

  int dims_;
  double x_;
  QuadratureConfig cfg_;
};

}  // namespace detail

/// K_m via the exponentially mapped (m-1)-fold integral. Cost grows exponentially in m.
inline double log_km_exponential_form(int m, double x, const QuadratureConfig& cfg) {
  if (m < 1) throw DomainError("K_m requires m >= 1");
  if (!(x > 0.0)) throw DomainError("K_m is evaluated on x > 0");
  if (m == 1) return -x;
  return detail::ExponentialForm(m, x, cfg).log_value();
}

inline double km_exponential_form(int m, double x, const QuadratureConfig& cfg) {
  return std::exp(log_km_exponential_form(m, x, cfg));
}

/// K_m via the (m-1)-fold integral in the original product variables.
inline double km_product_form(int m, double x, const QuadratureConfig& cfg) {
  if (m < 1) throw DomainError("K_m requires m >= 1");
  if (!(x > 0.0)) throw DomainError("K_m is evaluated on x > 0");
  if (m == 1) return std::exp(-x);
  return detail::ProductForm(m, x, cfg).value();
}

/// ln of the Mellin convolution (K * K_1)(x) = int K(x e^{-u}) exp(-e^u) du for a
/// log-concave-in-log kernel supplied as y -> ln K(y).
///
/// The log-integrand is concave in u; its peak is located by golden section and the
/// integration range is cut where it drops below the peak by the truncation budget.
template <typename LogKernel>
double log_mellin_convolve(const LogKernel& log_k, double x, const QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("Mellin convolution is evaluated on x > 0");
  const double lx = std::log(x);
  auto g = [&](double u) { return log_k(std::exp(lx - u)) - std::exp(u); };
  const double u_peak = detail::golden_max(g, -120.0, std::max(6.0, lx + 4.0));
  const double g_peak = g(u_peak);
  const double budget = detail::truncation_budget(cfg);
  auto [lo, hi] = detail::convex_bounds([&](double u) { return g_peak - g(u); }, u_peak, budget);
  auto integrand = [&](double u) { return std::exp(g(u) - g_peak); };
  const QuadResult r = integrate(integrand, lo, hi, cfg.rel_tol, cfg.abs_tol, cfg.max_refinements);
  return g_peak + std::log(r.value);
}

template <typename LogKernel>
double mellin_convolve(const LogKernel& log_k, double x, const QuadratureConfig& cfg) {
  return std::exp(log_mellin_convolve(log_k, x, cfg));
}

/// ln K_m tabulated on a uniform grid in ln x, interpolated by local quintics in
/// (ln x, ln K). Outside the grid the end segments are extended linearly.
class RadialKernelTable {
 public:
  RadialKernelTable(int m, double log_xmin, double step, std::vector<double> log_values)
      : m_(m), log_xmin_(log_xmin), step_(step), log_values_(std::move(log_values)) {
    if (log_values_.size() < 6) throw InputError("kernel table needs at least 6 points");
    for (std::size_t i = 1; i < log_values_.size(); ++i)
      if (!(log_values_[i] < log_values_[i - 1]))
        throw ConsistencyError("tabulated K_m is not strictly decreasing at grid index " + std::to_string(i));
  }

  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return log_values_.size(); }
  double x_at(std::size_t i) const { return std::exp(log_xmin_ + step_ * static_cast<double>(i)); }
  double log_value_at(std::size_t i) const { return log_values_[i]; }
  double xmin() const { return x_at(0); }
  double xmax() const { return x_at(size() - 1); }

  double log_eval(double x) const {
    const double p = (std::log(x) - log_xmin_) / step_;
    const auto last = static_cast<double>(size() - 1);
    if (p <= 0.0) return log_values_[0] + p * (log_values_[1] - log_values_[0]);
    if (p >= last) return log_values_.back() + (p - last) * (log_values_.back() - log_values_[size() - 2]);
    // Six-point Lagrange stencil, shifted inward at the ends.
    constexpr std::ptrdiff_t width = 6;
    auto i0 = static_cast<std::ptrdiff_t>(std::floor(p)) - (width / 2 - 1);
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, static_cast<std::ptrdiff_t>(size()) - width);
    const double s = p - static_cast<double>(i0);
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < width; ++i) {
      double l = 1.0;
      for (std::ptrdiff_t k = 0; k < width; ++k)
        if (k != i) l *= (s - static_cast<double>(k)) / static_cast<double>(i - k);
      acc += l * log_values_[static_cast<std::size_t>(i0 + i)];
    }
    return acc;
  }

  double eval(double x) const { return std::exp(log_eval(x)); }

  /// Builds the table for K_m by Mellin convolution against the table for K_{m-1}
  /// (or against exp(-x) when m == 2).
  static RadialKernelTable build(int m, const QuadratureConfig& cfg, const RadialKernelTable* previous) {
    cfg.validate();
    if (m < 2) throw DomainError("kernel tables are built for m >= 2");
    const double lo = std::log(cfg.grid_xmin);
    const double step = std::numbers::ln10 / cfg.grid_points_per_decade;
    const auto n = static_cast<std::size_t>(std::ceil((std::log(cfg.grid_xmax) - lo) / step)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::exp(lo + step * static_cast<double>(i));
      if (m == 2)
        values[i] = log_mellin_convolve([](double y) { return -y; }, x, cfg);
      else
        values[i] = log_mellin_convolve([previous](double y) { return previous->log_eval(y); }, x, cfg);
    }
    return RadialKernelTable(m, lo, step, std::move(values));
  }

 private:
  int m_;
  double log_xmin_;
  double step_;
  std::vector<double> log_values_;
};

/// Cache of kernel tables keyed by m, built on first use for a given configuration.
/// Insertion is exclusive; published tables are immutable and shared.
class KernelTableCache {
 public:
  std::shared_ptr<const RadialKernelTable> get(int m, const QuadratureConfig& cfg) {
    std::lock_guard lock(mutex_);
    if (!(cfg == cfg_)) {
      tables_.clear();
      cfg_ = cfg;
    }
    return get_locked(m);
  }

  void clear() {
    std::lock_guard lock(mutex_);
    tables_.clear();
  }

 private:
  std::shared_ptr<const RadialKernelTable> get_locked(int m) {
    if (auto it = tables_.find(m); it != tables_.end()) return it->second;
    std::shared_ptr<const RadialKernelTable> prev = m > 2 ? get_locked(m - 1) : nullptr;
    auto table = std::make_shared<const RadialKernelTable>(RadialKernelTable::build(m, cfg_, prev.get()));
    tables_.emplace(m, table);
    return table;
  }

  std::mutex mutex_;
  QuadratureConfig cfg_;
  std::map<int, std::shared_ptr<const RadialKernelTable>> tables_;
};

inline KernelTableCache& default_kernel_cache() {
  static KernelTableCache cache;
  return cache;
}

/// K_m through the recursive convolution chain: one convolution step against the
/// cached table for K_{m-1}.
inline double log_km_recursive(int m, double x, const QuadratureConfig& cfg,
                               KernelTableCache& cache = default_kernel_cache()) {
  if (m < 1) throw DomainError("K_m requires m >= 1");
  if (!(x > 0.0)) throw DomainError("K_m is evaluated on x > 0");
  if (m == 1) return -x;
  if (m == 2) return log_mellin_convolve([](double y) { return -y; }, x, cfg);
  auto prev = cache.get(m - 1, cfg);
  return log_mellin_convolve([&prev](double y) { return prev->log_eval(y); }, x, cfg);
}

/// Region where a table-backed convolution step is trusted; below it the end
/// extrapolation of the previous table would feed the integral.
inline bool in_table_range(double x, const QuadratureConfig& cfg) {
  return x >= cfg.grid_xmin * std::exp(4.0) && x <= cfg.grid_xmax;
}

/// ln K_m(x). m = 1 is exact, m = 2, 3 use the exponentially mapped integral,
/// m >= 4 one Mellin convolution step over the cached K_{m-1} table. Below the table
/// range the convolution recurses on exact lower-order evaluations instead.
inline double log_km_eval(int m, double x, const QuadratureConfig& cfg,
                          KernelTableCache& cache = default_kernel_cache()) {
  if (m < 1) throw DomainError("K_m requires m >= 1");
  if (!(x > 0.0)) throw DomainError("K_m is evaluated on x > 0");
  if (m == 1) return -x;
  if (m <= 3) return log_km_exponential_form(m, x, cfg);
  if (in_table_range(x, cfg)) return log_km_recursive(m, x, cfg, cache);
  return log_mellin_convolve([&](double y) { return log_km_eval(m - 1, y, cfg, cache); }, x, cfg);
}

inline double km_eval(int m, double x, const QuadratureConfig& cfg,
                      KernelTableCache& cache = default_kernel_cache()) {
  return std::exp(log_km_eval(m, x, cfg, cache));
}

struct MomentResult {
  double value = 0.0;
  /// Quadrature error estimate over the integrated range.
  double error = 0.0;
  /// Bound on the omitted contribution from (0, x_lo].
  double near_zero_error = 0.0;
  /// Lower integration limit in x.
  double x_lo = 0.0;
};

/// int_0^inf x^n K_m(x) dx, integrated in s = ln x where the log-integrand
/// (n+1)s + ln K_m(e^s) is concave. The omitted piece below x_lo is bounded by the
/// tangent line of the log-integrand at the cut.
inline MomentResult km_moment_detailed(int m, std::size_t n, const QuadratureConfig& cfg,
                                       KernelTableCache& cache = default_kernel_cache()) {
  if (m < 1) throw DomainError("K_m requires m >= 1");
  cfg.validate();
  const double np1 = static_cast<double>(n) + 1.0;
  auto h = [&](double s) { return np1 * s + log_km_eval(m, std::exp(s), cfg, cache); };
  // The peak sits near x = (n+1)^m; search a generous bracket around it.
  const double guess = m * std::log(np1);
  const double s_peak = detail::golden_max(h, guess - 12.0, guess + 12.0, 60);
  const double h_peak = h(s_peak);
  const double budget = detail::truncation_budget(cfg);
  auto [lo, hi] = detail::convex_bounds([&](double s) { return h_peak - h(s); }, s_peak, budget);
  auto integrand = [&](double s) { return std::exp(h(s) - h_peak); };
  const QuadResult q = integrate(integrand, lo, hi, cfg.rel_tol, cfg.abs_tol, cfg.max_refinements);

  MomentResult r;
  const double scale = std::exp(h_peak);
  r.value = q.value * scale;
  r.error = q.error * scale;
  r.x_lo = std::exp(lo);
  const double ds = 1e-3;
  const double slope = (h(lo + ds) - h(lo - ds)) / (2.0 * ds);
  r.near_zero_error = slope > 0.0 ? std::exp(h(lo)) / slope : std::numeric_limits<double>::infinity();
  return r;
}

inline double km_moment(int m, std::size_t n, const QuadratureConfig& cfg,
                        KernelTableCache& cache = default_kernel_cache()) {
  return km_moment_detailed(m, n, cfg, cache).value;
}

/// Moments n = 0..n_max of K_m.
inline std::vector<double> km_moments(int m, std::size_t n_max, const QuadratureConfig& cfg,
                                      KernelTableCache& cache = default_kernel_cache()) {
  std::vector<double> out(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out[n] = km_moment(m, n, cfg, cache);
  return out;
}

/// Geometric inner product from precomputed moments of K_m.
inline cplx geometric_inner_product(const TaylorCoeffs& f, const TaylorCoeffs& g, const std::vector<double>& moments) {
  const std::size_t n_max = std::min(f.size(), g.size());
  if (n_max > moments.size()) throw InputError("not enough moments for the given elements");
  CompensatedSum<cplx> acc;
  for (std::size_t n = 0; n < n_max; ++n) acc.add(f.coeffs()[n] * std::conj(g.coeffs()[n]) * moments[n]);
  return acc.value();
}

/// (1/pi) int_C f conj(g) K_m(|z|^2) dA, reduced by angular orthogonality to
/// sum_n f_n conj(g_n) int_0^inf u^n K_m(u) du.
inline cplx geometric_inner_product(const TaylorCoeffs& f, const TaylorCoeffs& g, int m, const QuadratureConfig& cfg,
                                    KernelTableCache& cache = default_kernel_cache()) {
  if (m < 1) throw DomainError("geometric inner product requires m >= 1");
  const std::size_t n_max = std::min(f.size(), g.size());
  CompensatedSum<cplx> acc;
  for (std::size_t n = 0; n < n_max; ++n) {
    const cplx fg = f.coeffs()[n] * std::conj(g.coeffs()[n]);
    if (fg == cplx{}) continue;
    acc.add(fg * km_moment(m, n, cfg, cache));
  }
  return acc.value();
}

}  // namespace fockm
