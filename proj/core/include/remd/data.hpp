#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "remd/field.hpp"

namespace remd {

/// Gaussian random field with radial power law E(k) ~ k^slope, exactly
/// zero mean and unit variance after post-hoc normalization. Deterministic
/// in (grid, slope, seed).
ScalarField gen_grf(const Grid2D& g, double slope, std::uint64_t seed);

/// Taylor-Green vortex sampled at cell centers (x, y in physical units):
/// u = A cos(2 pi x) sin(2 pi y), v = -A sin(2 pi x) cos(2 pi y). On a
/// unit-length periodic domain this is a single Fourier mode and exactly
/// divergence-free in the spectral sense.
VectorField2 gen_taylor_green(const Grid2D& g, double amplitude);

/// n independent seeded GRFs; item i uses a sub-seed derived from
/// (seed, "grf-item-<i>").
std::vector<ScalarField> make_dataset(int n, const Grid2D& g, double slope,
                                      std::uint64_t seed);

// ==================== field file I/O ====================

/// Binary field container: magic "RMD1", version u32, nx/ny/channels u32,
/// dx/dy f64, boundary u8, then channels*nx*ny little-endian f64 values,
/// channel-major then row-major. Round trips are bit-exact.
void write_fields(const std::string& path,
                  const std::vector<ScalarField>& fields);
std::vector<ScalarField> read_fields(const std::string& path);

/// Single-channel conveniences.
void write_field(const std::string& path, const ScalarField& f);
ScalarField read_field(const std::string& path);

}  // namespace remd
