#pragma once

#include "remd/field.hpp"

namespace remd {

/// Central differences (x[i+1]-x[i-1])/(2dx) per axis, boundary-aware.
VectorField2 gradient(const ScalarField& x);

/// du/dx + dv/dy via central differences.
ScalarField divergence(const VectorField2& w);

/// 5-point Laplacian; anisotropic spacing uses the two-term form
/// (x[i+1]-2x+x[i-1])/dx^2 + (x[j+1]-2x+x[j-1])/dy^2.
ScalarField laplacian(const ScalarField& x);

/// laplacian applied twice (consistent boundary handling by composition).
ScalarField biharmonic(const ScalarField& x);

/// dv/dx - du/dy.
ScalarField vorticity(const VectorField2& w);

}  // namespace remd
