#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace remd {

/// Boundary handling for stencil neighbor access.
enum class Boundary : std::uint8_t { periodic = 0, reflect = 1 };

/// Geometry shared by fields and masks: cell counts, spacings, boundary rule.
struct Grid2D {
    int nx = 0, ny = 0;
    double dx = 1.0, dy = 1.0;
    Boundary bc = Boundary::periodic;
};

/// A scalar field sampled at cell centers of a regular 2D grid.
///
/// Storage is row-major: element (x, y) lives at v[y*nx + x].
class ScalarField {
public:
    ScalarField() = default;

    explicit ScalarField(const Grid2D& g)
        : ScalarField(g.nx, g.ny, g.dx, g.dy, g.bc) {}

    ScalarField(int nx, int ny, double dx = 1.0, double dy = 1.0,
                Boundary bc = Boundary::periodic)
        : nx_(nx), ny_(ny), dx_(dx), dy_(dy), bc_(bc),
          v_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0.0) {
        if (nx <= 0 || ny <= 0)
            throw std::invalid_argument("ScalarField: grid dimensions must be positive");
        if (dx <= 0.0 || dy <= 0.0)
            throw std::invalid_argument("ScalarField: grid spacing must be positive");
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    Boundary boundary() const { return bc_; }
    void set_boundary(Boundary bc) { bc_ = bc; }
    Grid2D grid() const { return {nx_, ny_, dx_, dy_, bc_}; }

    std::size_t size() const { return v_.size(); }

    double& operator()(int x, int y) { return v_[idx(x, y)]; }
    double operator()(int x, int y) const { return v_[idx(x, y)]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    std::vector<double>& raw() { return v_; }
    const std::vector<double>& raw() const { return v_; }

    /// Neighbor access with boundary-resolved (possibly out-of-range) indices.
    double at_bc(int x, int y) const {
        return v_[idx(wrap(x, nx_), wrap(y, ny_))];
    }

    /// Maps an out-of-range index into the grid per the boundary rule.
    /// periodic: modular wrap. reflect: mirror about the cell-edge
    /// (ghost[-1] = x[0], ghost[n] = x[n-1]), applied repeatedly.
    int wrap(int i, int n) const {
        if (bc_ == Boundary::periodic) {
            int m = i % n;
            return m < 0 ? m + n : m;
        }
        while (i < 0 || i >= n) {
            if (i < 0) i = -i - 1;
            if (i >= n) i = 2 * n - 1 - i;
        }
        return i;
    }

    bool same_grid(const ScalarField& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_;
    }

    void require_same_grid(const ScalarField& o, const std::string& who) const {
        if (!same_grid(o))
            throw std::invalid_argument(who + ": grid mismatch (" +
                std::to_string(nx_) + "x" + std::to_string(ny_) + " vs " +
                std::to_string(o.nx_) + "x" + std::to_string(o.ny_) + ")");
    }

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(nx_) +
               static_cast<std::size_t>(x);
    }

    int nx_ = 0, ny_ = 0;
    double dx_ = 1.0, dy_ = 1.0;
    Boundary bc_ = Boundary::periodic;
    std::vector<double> v_;
};

/// A 2D vector field as two co-located scalar components.
struct VectorField2 {
    ScalarField u;
    ScalarField v;
};

/// Binary fluid/land mask on a grid; 1 marks fluid cells.
struct FluidMask {
    Grid2D grid;
    std::vector<std::uint8_t> values;  ///< length nx*ny, entries in {0,1}

    std::uint8_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * grid.nx + x];
    }
};

// ==================== elementwise arithmetic and reductions ====================

/// a + b
ScalarField add(const ScalarField& a, const ScalarField& b);
/// a - b
ScalarField sub(const ScalarField& a, const ScalarField& b);
/// s * a
ScalarField scale(const ScalarField& a, double s);
/// y <- y + s*x
void axpy(double s, const ScalarField& x, ScalarField& y);

/// Constant field on a grid.
ScalarField field_fill(const Grid2D& g, double c);
/// a*x + y, elementwise.
ScalarField field_axpy(double a, const ScalarField& x, const ScalarField& y);

/// Bundle of the three norms used by convergence checks.
struct FieldNorms {
    double l2 = 0.0;    ///< root mean square
    double linf = 0.0;  ///< max absolute value
    double mean = 0.0;  ///< arithmetic mean
};
FieldNorms field_norms(const ScalarField& x);

/// Zeroes values where the mask is 0.
ScalarField apply_mask(const ScalarField& x, const FluidMask& m);

double field_sum(const ScalarField& a);
double field_mean(const ScalarField& a);
/// Population variance (divide by N).
double field_variance(const ScalarField& a);
double field_min(const ScalarField& a);
double field_max(const ScalarField& a);
/// Euclidean norm of the raw value vector.
double norm_l2(const ScalarField& a);
double dot(const ScalarField& a, const ScalarField& b);

/// Free-function form of ScalarField::require_same_grid.
void require_same_grid(const ScalarField& a, const ScalarField& b,
                       const std::string& who);

}  // namespace remd
