#include "memkin/numerics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "memkin/error.hpp"

namespace memkin {

void check_quadrature_spec(const QuadratureSpec& spec) {
    if (spec.window < 0) throw ValidationError("quadrature window must be positive");
    if (spec.nodes < 16) throw ValidationError("quadrature needs at least 16 nodes");
    if (!(spec.tolerance > 0 && spec.tolerance <= 1e-4))
        throw ValidationError("quadrature tolerance must lie in (0, 1e-4]");
    if (spec.max_nodes < spec.nodes) throw ValidationError("max_nodes below nodes");
}

double fermi(double E, double kT) {
    double x = E / kT;
    if (x > 700) return 0.0;
    if (x < -700) return 1.0;
    // evaluate on the side where exp cannot overflow
    if (x > 0) {
        double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double e1_scaled(double x) {
    if (!(x > 0)) throw ValidationError("e1_scaled needs x > 0");
    if (x < 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double sum = 0, term = 1;
        for (int k = 1; k < 60; ++k) {
            term *= -x / k;
            double t = term / k;
            sum += t;
            if (std::abs(t) < 1e-17 * std::abs(sum)) break;
        }
        return std::exp(x) * (-std::numbers::egamma - std::log(x) - sum);
    }
    // continued fraction for e^x E1(x), modified Lentz
    const double tiny = 1e-300;
    double b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2;
        d = 1 / (a * d + b);
        c = b + a / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1) < 1e-16) break;
    }
    return h;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto rule = std::make_unique<GaussRule>();
    rule->x.resize(n);
    rule->w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1, p2 = 0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule->x[i] = -z;
        rule->x[n - 1 - i] = z;
        rule->w[i] = rule->w[n - 1 - i] = 2 / ((1 - z * z) * pp * pp);
    }
    auto& ref = *rule;
    cache.emplace(n, std::move(rule));
    return ref;
}

namespace {

double gl_integral(double center, double spread4kT, double kT, bool use_hole, double W, int n) {
    const GaussRule& g = gauss_legendre(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double E = W * g.x[i];
        double u = center + E;
        double f = fermi(E, kT);
        double w = use_hole ? fermi(-E, kT) : f;
        sum += g.w[i] * std::exp(-u * u / spread4kT) * w;
    }
    return sum * W;
}

}  // namespace

double gaussian_fermi_integral(double center, double spread4kT, double kT, bool use_hole,
                               const QuadratureSpec& spec) {
    if (!(spread4kT > 0)) throw ValidationError("spread4kT must be positive");
    if (!(kT > 0)) throw ValidationError("kT must be positive");
    double W = spec.window > 0 ? spec.window
                               : std::abs(center) + 6 * std::sqrt(spread4kT / 2) + 20 * kT;
    int n = spec.nodes;
    double prev = gl_integral(center, spread4kT, kT, use_hole, W, n);
    while (2 * n <= spec.max_nodes) {
        n *= 2;
        double cur = gl_integral(center, spread4kT, kT, use_hole, W, n);
        double scale = std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= spec.tolerance * scale) return cur;
        prev = cur;
    }
    throw ModelError("gaussian_fermi_integral did not converge at " + std::to_string(n) + " nodes");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    if (n < 2 || y.size() != n) throw ValidationError("line fit needs at least two paired points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw ValidationError("line fit needs distinct x values");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        sse += r * r;
    }
    f.r2 = syy > 0 ? 1 - sse / syy : 1.0;
    return f;
}

}  // namespace memkin
