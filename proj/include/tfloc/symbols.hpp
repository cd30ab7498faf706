#pragma once

#include "tfloc/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace tfloc {

enum class SymbolKind { circle, gaussians, star, lines_circles, blurred_lines_circles, tiles, bitmap };

std::string to_string(SymbolKind kind);
SymbolKind parse_symbol_kind(const std::string& name);

struct GaussianBump {
    double n = 0.0;
    double m = 0.0;
    double sigma = 1.0;
    double amplitude = 1.0;
};

/// Parameters for synthetic symbols. Geometry is given in lattice units; a negative
/// value means "use the size-dependent default" (see gen_symbol).
struct SymbolSpec {
    SymbolKind kind = SymbolKind::circle;
    Index size = 64;
    double lo = 0.0;
    double hi = 1.0;
    double center_n = -1.0;
    double center_m = -1.0;
    double radius = -1.0;      ///< circle radius, star outer radius
    double inner_ratio = 0.5;  ///< star inner/outer radius
    int points = 5;            ///< star points
    double tile = -1.0;        ///< tile edge length
    double extent = -1.0;      ///< tiled square / lines-and-circles half width
    double blur = -1.0;        ///< Gaussian blur std-dev; 0 disables
    std::vector<GaussianBump> bumps;
    std::filesystem::path path;  ///< bitmap source (PGM)

    /// Fills any fields left at their defaults from the kind and size.
    SymbolSpec resolved() const;
    nlohmann::json to_json() const;
    static SymbolSpec from_json(const nlohmann::json& j);
};

/// Deterministic synthetic symbol with entries in [lo, hi].
PhaseMap gen_symbol(const SymbolSpec& spec);

/// Cyclic Gaussian blur with a unit-mass separable kernel of standard deviation sigma.
PhaseMap gaussian_blur(const PhaseMap& f, double sigma);

/// Reads a square P2/P5 PGM, mapping gray [0, maxval] linearly onto [lo, hi].
PhaseMap load_pgm(const std::filesystem::path& path, double lo = 0.0, double hi = 1.0);

/// Writes a 16-bit P5 PGM; values are clamped to [lo, hi] and quantized.
void save_pgm(const PhaseMap& map, const std::filesystem::path& path, double lo, double hi);

/// Row-major CSV, 17 significant digits (exact round trip for doubles).
void save_csv(const PhaseMap& map, const std::filesystem::path& path);
PhaseMap load_csv(const std::filesystem::path& path);

/// Loads by extension: .csv verbatim, anything else as PGM mapped to [lo, hi].
PhaseMap load_map(const std::filesystem::path& path, double lo = 0.0, double hi = 1.0);

}  // namespace tfloc
