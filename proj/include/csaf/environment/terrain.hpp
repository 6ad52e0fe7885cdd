#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>

namespace csaf::environment {

struct TerrainSpec {
    std::uint64_t seed = 0;
    int width = 64;   ///< nodes along x
    int depth = 64;   ///< nodes along z
    double cell_size = 1.0;
    double amplitude = 2.0;
    double frequency = 0.05;
    int octaves = 4;
    double persistence = 0.5;
};

void validate(const TerrainSpec& spec);

/// Classic 2D gradient noise over a seed-shuffled 256-entry permutation table.
class PerlinNoise {
  public:
    explicit PerlinNoise(std::uint64_t seed);

    /// Noise value; |value| <= 1/sqrt(2) with the unit gradient set used here.
    [[nodiscard]] double operator()(double x, double z) const;

    /// Upper bound of |dn/dx| and |dn/dz|.
    static double lipschitz_bound();

  private:
    std::array<std::uint8_t, 512> perm_{};
};

/// Heights at grid nodes; row index is z, column index is x. Node (i, j) sits at (j, i) * cell_size.
struct Heightmap {
    double cell_size = 1.0;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> heights;

    [[nodiscard]] double extent_x() const { return cell_size * static_cast<double>(heights.cols() - 1); }
    [[nodiscard]] double extent_z() const { return cell_size * static_cast<double>(heights.rows() - 1); }
    [[nodiscard]] bool contains(double x, double z) const;
};

/// amplitude * sum_o persistence^o * noise(frequency * 2^o * (x, z)), evaluated at a world point.
double fractal_height(const TerrainSpec& spec, const PerlinNoise& noise, double x, double z);

/// Largest possible |height| for a spec: amplitude * sum_o persistence^o * noise bound.
double height_bound(const TerrainSpec& spec);

Heightmap generate_terrain(const TerrainSpec& spec);

/// Bilinear interpolation of the four surrounding nodes. Throws OutOfRange outside the grid.
double terrain_height(const Heightmap& grid, double x, double z);

/// Row-major CSV of node heights, one grid row (constant z) per line.
std::string heightmap_csv(const Heightmap& grid);

} // namespace csaf::environment
