#pragma once

#include "tfloc/grid.hpp"

#include <string>
#include <vector>

namespace tfloc {

/// "gauss" or "hermite:k" (k-th orthonormalized Hermite function, centred like the Gaussian).
Signal parse_window(const std::string& text, Index length);

/// Comma-separated terms "[weight*]window", e.g. "0.5*gauss,0.5*hermite:1".
/// A single term without weight gets weight 1.
WindowSystem parse_window_system(const std::string& text, Index length);

/// "standard", "dft", or "hermite:N@n,m" (N shifted Hermite functions centred at (n, m)).
std::vector<Signal> parse_basis(const std::string& text, Index length);

}  // namespace tfloc
