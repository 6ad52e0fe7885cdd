#include "csaf/environment/terrain.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"

#include <cmath>
#include <numeric>
#include <span>

namespace csaf::environment {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Eight unit gradients.
constexpr std::array<std::array<double, 2>, 8> kGradients{{{1.0, 0.0},
                                                            {-1.0, 0.0},
                                                            {0.0, 1.0},
                                                            {0.0, -1.0},
                                                            {kInvSqrt2, kInvSqrt2},
                                                            {-kInvSqrt2, kInvSqrt2},
                                                            {kInvSqrt2, -kInvSqrt2},
                                                            {-kInvSqrt2, -kInvSqrt2}}};

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double lerp(double a, double b, double t) { return a + t * (b - a); }

double grad(std::uint8_t hash, double x, double z) {
    const auto& g = kGradients[hash & 7u];
    return g[0] * x + g[1] * z;
}

} // namespace

void validate(const TerrainSpec& spec) {
    require(spec.width >= 2 && spec.depth >= 2, ErrorCode::InvalidArgument, "terrain grid needs at least 2x2 nodes");
    require(spec.cell_size > 0.0 && std::isfinite(spec.cell_size), ErrorCode::InvalidArgument, "cell_size must be > 0");
    require(spec.amplitude >= 0.0 && std::isfinite(spec.amplitude), ErrorCode::InvalidArgument, "amplitude must be >= 0");
    require(spec.frequency >= 0.0 && std::isfinite(spec.frequency), ErrorCode::InvalidArgument, "frequency must be >= 0");
    require(spec.octaves >= 1, ErrorCode::InvalidArgument, "octaves must be >= 1");
    require(spec.persistence > 0.0 && spec.persistence <= 1.0, ErrorCode::InvalidArgument,
            "persistence must be in (0, 1]");
}

PerlinNoise::PerlinNoise(std::uint64_t seed) {
    std::array<std::uint8_t, 256> p{};
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    Rng rng = make_rng(seed);
    shuffle(std::span<std::uint8_t>(p), rng);
    for (std::size_t i = 0; i < 512; ++i) perm_[i] = p[i & 255u];
}

double PerlinNoise::operator()(double x, double z) const {
    const double fx = std::floor(x);
    const double fz = std::floor(z);
    const auto xi = static_cast<std::uint8_t>(static_cast<long long>(fx) & 255);
    const auto zi = static_cast<std::uint8_t>(static_cast<long long>(fz) & 255);
    const double dx = x - fx;
    const double dz = z - fz;
    const double u = fade(dx);
    const double v = fade(dz);
    const std::uint8_t aa = perm_[perm_[xi] + zi];
    const std::uint8_t ab = perm_[perm_[xi] + zi + 1];
    const std::uint8_t ba = perm_[perm_[xi + 1] + zi];
    const std::uint8_t bb = perm_[perm_[xi + 1] + zi + 1];
    const double x0 = lerp(grad(aa, dx, dz), grad(ba, dx - 1.0, dz), u);
    const double x1 = lerp(grad(ab, dx, dz - 1.0), grad(bb, dx - 1.0, dz - 1.0), u);
    return lerp(x0, x1, v);
}

double PerlinNoise::lipschitz_bound() {
    // |sum w_i grad_i| <= 1 plus fade'(t) <= 15/8 times the spread of corner values (<= 2*sqrt 2).
    return 1.0 + 1.875 * 2.0 * std::sqrt(2.0);
}

bool Heightmap::contains(double x, double z) const {
    return x >= 0.0 && z >= 0.0 && x <= extent_x() && z <= extent_z();
}

double fractal_height(const TerrainSpec& spec, const PerlinNoise& noise, double x, double z) {
    double sum = 0.0;
    double weight = 1.0;
    double freq = spec.frequency;
    for (int o = 0; o < spec.octaves; ++o) {
        sum += weight * noise(freq * x, freq * z);
        weight *= spec.persistence;
        freq *= 2.0;
    }
    return spec.amplitude * sum;
}

double height_bound(const TerrainSpec& spec) {
    double total = 0.0;
    double weight = 1.0;
    for (int o = 0; o < spec.octaves; ++o) {
        total += weight;
        weight *= spec.persistence;
    }
    return spec.amplitude * total * kInvSqrt2;
}

Heightmap generate_terrain(const TerrainSpec& spec) {
    validate(spec);
    const PerlinNoise noise(spec.seed);
    Heightmap grid;
    grid.cell_size = spec.cell_size;
    grid.heights.resize(spec.depth, spec.width);
    for (int i = 0; i < spec.depth; ++i)
        for (int j = 0; j < spec.width; ++j)
            grid.heights(i, j) = fractal_height(spec, noise, j * spec.cell_size, i * spec.cell_size);
    return grid;
}

double terrain_height(const Heightmap& grid, double x, double z) {
    require(grid.contains(x, z), ErrorCode::OutOfRange,
            "terrain query (" + csv::format_number(x) + ", " + csv::format_number(z) + ") outside the grid");
    const double gx = x / grid.cell_size;
    const double gz = z / grid.cell_size;
    const auto last_col = static_cast<double>(grid.heights.cols() - 1);
    const auto last_row = static_cast<double>(grid.heights.rows() - 1);
    const double cx = std::min(std::floor(gx), last_col - 1.0);
    const double cz = std::min(std::floor(gz), last_row - 1.0);
    const double tx = gx - cx;
    const double tz = gz - cz;
    const auto j = static_cast<Eigen::Index>(cx);
    const auto i = static_cast<Eigen::Index>(cz);
    const auto& h = grid.heights;
    const double a = lerp(h(i, j), h(i, j + 1), tx);
    const double b = lerp(h(i + 1, j), h(i + 1, j + 1), tx);
    return lerp(a, b, tz);
}

std::string heightmap_csv(const Heightmap& grid) {
    std::string out;
    for (Eigen::Index i = 0; i < grid.heights.rows(); ++i) {
        for (Eigen::Index j = 0; j < grid.heights.cols(); ++j) {
            if (j > 0) out += ',';
            out += csv::format_number(grid.heights(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace csaf::environment
