#include "remd/field.hpp"

#include <algorithm>
#include <cmath>

namespace remd {

ScalarField add(const ScalarField& a, const ScalarField& b) {
    a.require_same_grid(b, "add");
    ScalarField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.raw()[i] += b.raw()[i];
    return out;
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
    a.require_same_grid(b, "sub");
    ScalarField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.raw()[i] -= b.raw()[i];
    return out;
}

ScalarField scale(const ScalarField& a, double s) {
    ScalarField out = a;
    for (double& x : out.raw()) x *= s;
    return out;
}

void axpy(double s, const ScalarField& x, ScalarField& y) {
    x.require_same_grid(y, "axpy");
    for (std::size_t i = 0; i < y.size(); ++i) y.raw()[i] += s * x.raw()[i];
}

double field_sum(const ScalarField& a) {
    double s = 0.0;
    for (double x : a.raw()) s += x;
    return s;
}

double field_mean(const ScalarField& a) {
    return field_sum(a) / static_cast<double>(a.size());
}

double field_variance(const ScalarField& a) {
    const double m = field_mean(a);
    double s = 0.0;
    for (double x : a.raw()) s += (x - m) * (x - m);
    return s / static_cast<double>(a.size());
}

double field_min(const ScalarField& a) {
    return *std::min_element(a.raw().begin(), a.raw().end());
}

double field_max(const ScalarField& a) {
    return *std::max_element(a.raw().begin(), a.raw().end());
}

double norm_l2(const ScalarField& a) {
    double s = 0.0;
    for (double x : a.raw()) s += x * x;
    return std::sqrt(s);
}

double dot(const ScalarField& a, const ScalarField& b) {
    a.require_same_grid(b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.raw()[i] * b.raw()[i];
    return s;
}

ScalarField field_fill(const Grid2D& g, double c) {
    ScalarField out(g);
    std::fill(out.raw().begin(), out.raw().end(), c);
    return out;
}

ScalarField field_axpy(double a, const ScalarField& x, const ScalarField& y) {
    x.require_same_grid(y, "field_axpy");
    ScalarField out = y;
    axpy(a, x, out);
    return out;
}

FieldNorms field_norms(const ScalarField& x) {
    FieldNorms n;
    double sq = 0.0, sum = 0.0;
    for (double v : x.raw()) {
        sq += v * v;
        sum += v;
        n.linf = std::max(n.linf, std::abs(v));
    }
    n.l2 = std::sqrt(sq / static_cast<double>(x.size()));
    n.mean = sum / static_cast<double>(x.size());
    return n;
}

ScalarField apply_mask(const ScalarField& x, const FluidMask& m) {
    if (m.grid.nx != x.nx() || m.grid.ny != x.ny())
        throw std::invalid_argument("apply_mask: grid mismatch");
    if (m.values.size() != x.size())
        throw std::invalid_argument("apply_mask: mask length mismatch");
    ScalarField out = x;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (m.values[i] == 0) out.raw()[i] = 0.0;
    return out;
}

void require_same_grid(const ScalarField& a, const ScalarField& b,
                       const std::string& who) {
    a.require_same_grid(b, who);
}

}  // namespace remd
