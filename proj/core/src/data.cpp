#include "remd/data.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "remd/rng.hpp"
#include "remd/spectral.hpp"

namespace remd {

namespace {

int signed_freq(int k, int n) { return k > n / 2 ? k - n : k; }

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is, const char* what) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is)
        throw std::runtime_error(std::string("read_fields: truncated ") + what);
    return v;
}

constexpr char kMagic[4] = {'R', 'M', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

ScalarField gen_grf(const Grid2D& g, double slope, std::uint64_t seed) {
    if (g.bc != Boundary::periodic)
        throw std::invalid_argument("gen_grf: requires a periodic grid");
    Rng rng(derive_seed(seed, "grf"));

    // Independent complex Gaussian per mode, radially shaped so the
    // per-mode power follows k^slope; the inverse transform's real part is
    // a stationary Gaussian field with the same radial law.
    std::vector<std::complex<double>> spec(
        static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
    for (int ky = 0; ky < g.ny; ++ky) {
        for (int kx = 0; kx < g.nx; ++kx) {
            const double re = rng.normal();
            const double im = rng.normal();
            const double k = std::hypot(signed_freq(kx, g.nx),
                                        signed_freq(ky, g.ny));
            if (k == 0.0) continue;  // DC removed; mean is fixed below anyway
            const double amp = std::pow(k, 0.5 * slope);
            spec[static_cast<std::size_t>(ky) * g.nx + kx] =
                amp * std::complex<double>(re, im);
        }
    }
    const Spectrum2D s2{g.nx, g.ny, g.dx, g.dy, std::move(spec)};
    const ScalarField raw = idft2(s2);
    ScalarField f(g);
    f.raw() = raw.raw();

    // Exact post-hoc normalization to zero mean, unit variance.
    const double mean = field_mean(f);
    for (double& v : f.raw()) v -= mean;
    const double sd = std::sqrt(field_variance(f));
    if (sd > 0.0)
        for (double& v : f.raw()) v /= sd;
    return f;
}

VectorField2 gen_taylor_green(const Grid2D& g, double amplitude) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    ScalarField u(g), v(g);
    for (int j = 0; j < g.ny; ++j) {
        const double y = (j + 0.5) * g.dy;
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) * g.dx;
            u(i, j) = amplitude * std::cos(two_pi * x) * std::sin(two_pi * y);
            v(i, j) = -amplitude * std::sin(two_pi * x) * std::cos(two_pi * y);
        }
    }
    return {std::move(u), std::move(v)};
}

std::vector<ScalarField> make_dataset(int n, const Grid2D& g, double slope,
                                      std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("make_dataset: n must be >= 0");
    std::vector<ScalarField> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(
            gen_grf(g, slope, derive_seed(seed, "grf-item-" + std::to_string(i))));
    return out;
}

void write_fields(const std::string& path,
                  const std::vector<ScalarField>& fields) {
    if (fields.empty())
        throw std::invalid_argument("write_fields: no fields to write");
    for (const ScalarField& f : fields)
        require_same_grid(fields.front(), f, "write_fields");

    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("write_fields: cannot open " + path);
    const ScalarField& f0 = fields.front();
    os.write(kMagic, 4);
    write_pod(os, kVersion);
    write_pod(os, static_cast<std::uint32_t>(f0.nx()));
    write_pod(os, static_cast<std::uint32_t>(f0.ny()));
    write_pod(os, static_cast<std::uint32_t>(fields.size()));
    write_pod(os, f0.dx());
    write_pod(os, f0.dy());
    write_pod(os, static_cast<std::uint8_t>(f0.boundary()));
    for (const ScalarField& f : fields)
        os.write(reinterpret_cast<const char*>(f.data()),
                 static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!os)
        throw std::runtime_error("write_fields: write failed on " + path);
}

std::vector<ScalarField> read_fields(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("read_fields: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_fields: bad magic in " + path);
    const auto version = read_pod<std::uint32_t>(is, "version");
    if (version != kVersion)
        throw std::runtime_error("read_fields: unsupported version " +
                                 std::to_string(version));
    const auto nx = read_pod<std::uint32_t>(is, "header");
    const auto ny = read_pod<std::uint32_t>(is, "header");
    const auto channels = read_pod<std::uint32_t>(is, "header");
    const auto dx = read_pod<double>(is, "header");
    const auto dy = read_pod<double>(is, "header");
    const auto bflag = read_pod<std::uint8_t>(is, "header");
    if (nx == 0 || ny == 0 || channels == 0)
        throw std::runtime_error("read_fields: degenerate header in " + path);

    std::vector<ScalarField> out;
    out.reserve(channels);
    const std::size_t per = static_cast<std::size_t>(nx) * ny;
    for (std::uint32_t c = 0; c < channels; ++c) {
        ScalarField f(static_cast<int>(nx), static_cast<int>(ny), dx, dy,
                      static_cast<Boundary>(bflag));
        is.read(reinterpret_cast<char*>(f.data()),
                static_cast<std::streamsize>(per * sizeof(double)));
        const std::size_t got =
            static_cast<std::size_t>(is.gcount()) / sizeof(double);
        if (got != per)
            throw std::runtime_error(
                "read_fields: truncated payload: expected " +
                std::to_string(per) + " values in channel " +
                std::to_string(c) + ", got " + std::to_string(got));
        out.push_back(std::move(f));
    }
    return out;
}

void write_field(const std::string& path, const ScalarField& f) {
    write_fields(path, std::vector<ScalarField>{f});
}

ScalarField read_field(const std::string& path) {
    std::vector<ScalarField> fs = read_fields(path);
    if (fs.size() != 1)
        throw std::runtime_error("read_field: expected 1 channel in " + path +
                                 ", found " + std::to_string(fs.size()));
    return std::move(fs.front());
}

}  // namespace remd
