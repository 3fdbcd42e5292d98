#include "remd/stencils.hpp"

namespace remd {

VectorField2 gradient(const ScalarField& x) {
    VectorField2 out{ScalarField(x.nx(), x.ny(), x.dx(), x.dy(), x.boundary()),
                     ScalarField(x.nx(), x.ny(), x.dx(), x.dy(), x.boundary())};
    const double ix = 1.0 / (2.0 * x.dx());
    const double iy = 1.0 / (2.0 * x.dy());
    for (int j = 0; j < x.ny(); ++j)
        for (int i = 0; i < x.nx(); ++i) {
            out.u(i, j) = (x.at_bc(i + 1, j) - x.at_bc(i - 1, j)) * ix;
            out.v(i, j) = (x.at_bc(i, j + 1) - x.at_bc(i, j - 1)) * iy;
        }
    return out;
}

ScalarField divergence(const VectorField2& w) {
    w.u.require_same_grid(w.v, "divergence");
    const ScalarField& u = w.u;
    const ScalarField& v = w.v;
    ScalarField out(u.nx(), u.ny(), u.dx(), u.dy(), u.boundary());
    const double ix = 1.0 / (2.0 * u.dx());
    const double iy = 1.0 / (2.0 * u.dy());
    for (int j = 0; j < u.ny(); ++j)
        for (int i = 0; i < u.nx(); ++i)
            out(i, j) = (u.at_bc(i + 1, j) - u.at_bc(i - 1, j)) * ix +
                        (v.at_bc(i, j + 1) - v.at_bc(i, j - 1)) * iy;
    return out;
}

ScalarField laplacian(const ScalarField& x) {
    ScalarField out(x.nx(), x.ny(), x.dx(), x.dy(), x.boundary());
    const double ix2 = 1.0 / (x.dx() * x.dx());
    const double iy2 = 1.0 / (x.dy() * x.dy());
    for (int j = 0; j < x.ny(); ++j)
        for (int i = 0; i < x.nx(); ++i)
            out(i, j) = (x.at_bc(i + 1, j) - 2.0 * x(i, j) + x.at_bc(i - 1, j)) * ix2 +
                        (x.at_bc(i, j + 1) - 2.0 * x(i, j) + x.at_bc(i, j - 1)) * iy2;
    return out;
}

ScalarField biharmonic(const ScalarField& x) {
    return laplacian(laplacian(x));
}

ScalarField vorticity(const VectorField2& w) {
    w.u.require_same_grid(w.v, "vorticity");
    const ScalarField& u = w.u;
    const ScalarField& v = w.v;
    ScalarField out(u.nx(), u.ny(), u.dx(), u.dy(), u.boundary());
    const double ix = 1.0 / (2.0 * u.dx());
    const double iy = 1.0 / (2.0 * u.dy());
    for (int j = 0; j < u.ny(); ++j)
        for (int i = 0; i < u.nx(); ++i)
            out(i, j) = (v.at_bc(i + 1, j) - v.at_bc(i - 1, j)) * ix -
                        (u.at_bc(i, j + 1) - u.at_bc(i, j - 1)) * iy;
    return out;
}

}  // namespace remd
