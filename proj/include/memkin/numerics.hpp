#pragma once

#include <vector>

namespace memkin {

struct QuadratureSpec {
    double window = 0;  // half-width in eV; 0 selects the automatic window
    int nodes = 96;
    double tolerance = 1e-10;
    int max_nodes = 6144;
};

void check_quadrature_spec(const QuadratureSpec& spec);

double fermi(double E, double kT);

// e^x * E1(x) for x > 0.
double e1_scaled(double x);

// Integral over E of exp(-(center + E)^2 / spread4kT) * w(E), w = psi or 1 - psi.
// Nodes are doubled until two successive estimates agree within spec.tolerance.
double gaussian_fermi_integral(double center, double spread4kT, double kT, bool use_hole,
                               const QuadratureSpec& spec = {});

// Gauss-Legendre nodes and weights on [-1, 1]; cached per node count.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

struct LineFit {
    double slope = 0, intercept = 0, r2 = 0;
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace memkin
