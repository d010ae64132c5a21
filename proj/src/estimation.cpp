#include "agdn/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace agdn {

namespace {

constexpr std::size_t kMaxSymbols = 8;

void check_window(std::size_t n, std::size_t m) {
    if (n == 0) throw std::invalid_argument("no samples");
    if (m == 0 || m > n) {
        throw std::invalid_argument("window size " + std::to_string(m) + " must lie in [1, " + std::to_string(n) + "]");
    }
}

}  // namespace

WindowExtremes window_mean_extremes(std::span<const double> values, std::size_t m) {
    check_window(values.size(), m);
    // Prefix sums in extended precision; every window mean is a difference of
    // two prefixes, so the result does not depend on scan order.
    std::vector<long double> prefix(values.size() + 1, 0.0L);
    for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];

    const long double inv_m = 1.0L / static_cast<long double>(m);
    long double lo = std::numeric_limits<long double>::infinity();
    long double hi = -lo;
    for (std::size_t k = 0; k + m <= values.size(); ++k) {
        const long double mean = (prefix[k + m] - prefix[k]) * inv_m;
        lo = std::min(lo, mean);
        hi = std::max(hi, mean);
    }
    return {static_cast<double>(lo), static_cast<double>(hi)};
}

UncertaintyInterval estimate_mean_interval(std::span<const IoSample> samples, std::size_t m) {
    check_window(samples.size(), m);
    std::vector<double> residuals(samples.size());
    std::transform(samples.begin(), samples.end(), residuals.begin(), [](const IoSample& s) { return s.y - s.x; });
    const auto ext = window_mean_extremes(residuals, m);
    return {ext.min, ext.max};
}

ResidualSystem::ResidualSystem(std::span<const IoSample> samples, std::size_t m, UncertaintyInterval mean_hat,
                               double y0)
    : m_(m), windows_(0), mean_hat_(mean_hat), y0_(y0) {
    check_window(samples.size(), m);
    if (!std::isfinite(y0)) throw std::invalid_argument("threshold must be finite");

    for (const auto& s : samples) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw std::invalid_argument("non-finite sample");
        if (std::find(symbols_.begin(), symbols_.end(), s.x) == symbols_.end()) {
            if (symbols_.size() == kMaxSymbols) throw std::invalid_argument("too many distinct transmitted symbols");
            symbols_.push_back(s.x);
        }
    }
    std::sort(symbols_.begin(), symbols_.end());

    const std::size_t n = samples.size();
    windows_ = n - m + 1;
    std::vector<std::uint32_t> below_prefix(n + 1, 0);
    std::vector<std::vector<std::uint32_t>> hit_prefix(symbols_.size(), std::vector<std::uint32_t>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        below_prefix[i + 1] = below_prefix[i] + (samples[i].y <= y0 ? 1u : 0u);
        const auto idx = static_cast<std::size_t>(
            std::lower_bound(symbols_.begin(), symbols_.end(), samples[i].x) - symbols_.begin());
        for (std::size_t s = 0; s < symbols_.size(); ++s) hit_prefix[s][i + 1] = hit_prefix[s][i] + (s == idx ? 1u : 0u);
    }

    below_.resize(windows_);
    hits_.assign(symbols_.size(), std::vector<std::uint32_t>(windows_));
    for (std::size_t k = 0; k < windows_; ++k) {
        below_[k] = below_prefix[k + m] - below_prefix[k];
        for (std::size_t s = 0; s < symbols_.size(); ++s) hits_[s][k] = hit_prefix[s][k + m] - hit_prefix[s][k];
    }
}

template <class Kernel, class Pick>
double ResidualSystem::scan(Kernel kernel, double shift, Pick pick) const {
    std::array<double, kMaxSymbols> f{};
    for (std::size_t s = 0; s < symbols_.size(); ++s) f[s] = kernel(y0_ - symbols_[s] - shift);

    double best = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < windows_; ++k) {
        double expected = 0.0;
        for (std::size_t s = 0; s < symbols_.size(); ++s) expected += static_cast<double>(hits_[s][k]) * f[s];
        const double v = (static_cast<double>(below_[k]) - expected) / static_cast<double>(m_);
        best = k == 0 ? v : pick(best, v);
    }
    return best;
}

double ResidualSystem::upper(const SigmaBox& sigma) const {
    return scan([&](double t) { return semi_g_upper_cdf(t, sigma); }, mean_hat_.lo(),
                [](double a, double b) { return std::max(a, b); });
}

double ResidualSystem::lower(const SigmaBox& sigma) const {
    return scan([&](double t) { return semi_g_lower_cdf(t, sigma); }, mean_hat_.hi(),
                [](double a, double b) { return std::min(a, b); });
}

double residual_upper(const SigmaBox& sigma, const UncertaintyInterval& mean_hat, double y0,
                      std::span<const IoSample> samples, std::size_t m) {
    return ResidualSystem(samples, m, mean_hat, y0).upper(sigma);
}

double residual_lower(const SigmaBox& sigma, const UncertaintyInterval& mean_hat, double y0,
                      std::span<const IoSample> samples, std::size_t m) {
    return ResidualSystem(samples, m, mean_hat, y0).lower(sigma);
}

namespace {

// Search coordinates: a = ln sigma_lo, b with sigma_hi = sigma_lo * exp(|b|),
// so every point maps into the constrained region sigma_lo <= sigma_hi.
struct Point {
    double a;
    double b;
};

SigmaBox to_box(Point p) {
    const double lo = std::exp(p.a);
    return {lo, lo * std::exp(std::abs(p.b))};
}

class Objective {
public:
    explicit Objective(const ResidualSystem& sys) : sys_(sys) {}

    SigmaSolution evaluate(const SigmaBox& box) const {
        const double up = sys_.upper(box);
        const double lo = sys_.lower(box);
        return {box, up, lo, std::max(std::abs(up), std::abs(lo)), 0};
    }

    double operator()(Point p) const { return evaluate(to_box(p)).residual_norm; }

private:
    const ResidualSystem& sys_;
};

struct SimplexResult {
    Point best;
    double value;
    int iterations;
};

// Nelder-Mead on a nonsmooth 2-D objective; stops at `target`, on collapse,
// or after max_iter iterations.
template <class F>
SimplexResult nelder_mead(const F& f, Point start, double step, double target, int max_iter) {
    std::array<Point, 3> x{start, Point{start.a + step, start.b}, Point{start.a, start.b + step}};
    std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};

    auto order = [&] {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return fx[i] < fx[j]; });
        x = {x[idx[0]], x[idx[1]], x[idx[2]]};
        fx = {fx[idx[0]], fx[idx[1]], fx[idx[2]]};
    };
    auto lin = [](Point p, Point q, double t) { return Point{p.a + t * (q.a - p.a), p.b + t * (q.b - p.b)}; };

    int it = 0;
    order();
    while (it < max_iter && fx[0] > target) {
        const double size = std::max({std::abs(x[1].a - x[0].a), std::abs(x[1].b - x[0].b),
                                      std::abs(x[2].a - x[0].a), std::abs(x[2].b - x[0].b)});
        if (size < 1e-12) break;
        ++it;

        const Point centroid{0.5 * (x[0].a + x[1].a), 0.5 * (x[0].b + x[1].b)};
        const Point reflected = lin(centroid, x[2], -1.0);
        const double fr = f(reflected);
        if (fr < fx[0]) {
            const Point expanded = lin(centroid, x[2], -2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                x[2] = expanded;
                fx[2] = fe;
            } else {
                x[2] = reflected;
                fx[2] = fr;
            }
        } else if (fr < fx[1]) {
            x[2] = reflected;
            fx[2] = fr;
        } else {
            const bool outside = fr < fx[2];
            const Point contracted = lin(centroid, outside ? reflected : x[2], 0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, fx[2])) {
                x[2] = contracted;
                fx[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    x[i] = lin(x[0], x[i], 0.5);
                    fx[i] = f(x[i]);
                }
            }
        }
        order();
    }
    return {x[0], fx[0], it};
}

std::string failure_message(const SigmaSolution& best, double tol) {
    std::ostringstream os;
    os.precision(6);
    os << "sigma solve did not converge: best residual norm " << best.residual_norm << " > tolerance " << tol
       << " at sigma box [" << best.sigma.lo() << ", " << best.sigma.hi() << "]";
    return os.str();
}

}  // namespace

SigmaSolution estimate_sigma_interval(std::span<const IoSample> samples, std::size_t m,
                                      const UncertaintyInterval& mean_hat, double y0, const SolverOptions& options) {
    check_window(samples.size(), m);

    const double mid = mean_hat.midpoint();
    long double sum = 0.0L;
    for (const auto& s : samples) sum += s.y - s.x - mid;
    const long double mean = sum / static_cast<long double>(samples.size());
    long double ss = 0.0L;
    for (const auto& s : samples) {
        const long double d = s.y - s.x - mid - mean;
        ss += d * d;
    }
    const double s0 = static_cast<double>(std::sqrt(ss / static_cast<long double>(samples.size())));
    if (!(s0 > 0.0) || !std::isfinite(s0)) {
        throw DegenerateInputError("degenerate input: received values have zero spread around the mean estimate");
    }

    const ResidualSystem sys(samples, m, mean_hat, y0);
    const Objective f(sys);

    const Point origin{std::log(s0), 0.0};
    SigmaSolution best = f.evaluate(SigmaBox(s0, s0));
    if (best.residual_norm <= options.tolerance) return best;

    int iterations = 0;
    auto refine = [&](Point start, double step) {
        const auto r = nelder_mead(f, start, step, options.tolerance, options.max_iterations);
        iterations += r.iterations;
        auto candidate = f.evaluate(to_box(r.best));
        if (candidate.residual_norm < best.residual_norm) best = candidate;
    };

    refine(origin, 0.1);

    if (best.residual_norm > options.tolerance) {
        const int g = std::max(2, options.grid_points);
        const double span = std::log(options.grid_span);
        const double h = 2.0 * span / (g - 1);
        Point seed{};
        double seed_value = std::numeric_limits<double>::infinity();
        double seed_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < g; ++i) {
            for (int j = i; j < g; ++j) {
                const double la = -span + i * h;
                const double lb = -span + j * h;
                const double v = f(Point{origin.a + la, lb - la});
                const double dist = std::hypot(la, lb);
                if (v < seed_value || (v == seed_value && dist < seed_dist)) {
                    seed = Point{origin.a + la, lb - la};
                    seed_value = v;
                    seed_dist = dist;
                }
            }
        }
        refine(seed, h);
    }

    best.iterations = iterations;
    if (best.residual_norm > options.tolerance) throw EstimationError(failure_message(best, options.tolerance), best);
    return best;
}

EstimationResult estimate_all(std::span<const IoSample> samples, std::size_t m, const Constellation& c,
                              const SolverOptions& options) {
    for (const auto& s : samples) {
        if (s.x != c.x_a() && s.x != c.x_b()) {
            throw std::invalid_argument("sample symbol is not a constellation point");
        }
    }
    const auto mean_hat = estimate_mean_interval(samples, m);
    const double y0 = 0.5 * (c.x_a() + c.x_b() + mean_hat.hi() + mean_hat.lo());
    const auto sigma = estimate_sigma_interval(samples, m, mean_hat, y0, options);
    const auto envelope = error_envelope(c, NoiseModel{mean_hat, sigma.sigma});
    return {mean_hat, sigma.sigma, y0, envelope, sigma.residual_norm, sigma.iterations};
}

SigmaBox phi_max_mean_variance(std::span<const double> noise_samples, std::size_t m) {
    check_window(noise_samples.size(), m);
    std::vector<double> squares(noise_samples.size());
    std::transform(noise_samples.begin(), noise_samples.end(), squares.begin(), [](double z) { return z * z; });
    const auto ext = window_mean_extremes(squares, m);
    if (!(ext.min > 0.0)) throw DegenerateInputError("degenerate input: a window has zero second moment");
    return {std::sqrt(ext.min), std::sqrt(ext.max)};
}

}  // namespace agdn
