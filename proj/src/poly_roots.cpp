#include "poly_roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

namespace fwt::detail {

Poly poly_add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Poly poly_scale(const Poly& a, double s)
{
    Poly r = a;
    for (double& c : r) c *= s;
    return r;
}

double poly_eval(const Poly& p, double x)
{
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

bool real_roots(const Poly& p, std::vector<double>& roots, double imag_tol)
{
    roots.clear();
    double scale = 0.0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
        return false;
    }

    std::size_t deg = p.size() - 1;
    while (deg > 0 && std::abs(p[deg]) <= 1e-14 * scale) {
        --deg;
    }
    if (deg == 0) {
        return true;  // nonzero constant
    }
    if (deg == 1) {
        roots.push_back(-p[0] / p[1]);
        return true;
    }
    if (deg == 2) {
        const double a = p[2], b = p[1], c = p[0];
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) {
            // near-double roots still get a candidate
            if (disc >= -imag_tol * b * b) {
                roots.push_back(-b / (2.0 * a));
            }
            return true;
        }
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q != 0.0) {
            roots.push_back(c / q);
            roots.push_back(q / a);
        } else {
            roots.push_back(0.0);
        }
        return true;
    }

    Eigen::VectorXd coeffs(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) {
        coeffs[static_cast<Eigen::Index>(i)] = p[i] / scale;
    }
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
        const auto& z = solver.roots()[i];
        if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z.real()))) {
            roots.push_back(z.real());
        }
    }
    return true;
}

}  // namespace fwt::detail
