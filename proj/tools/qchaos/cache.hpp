#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qchaos {

// Raw diagonalization payload, column-major eigenvectors.
struct SpectrumData {
  int32_t n_max = 0;
  double eps = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;
};

// Resolution order: QBOX_CACHE_DIR, XDG_CACHE_HOME/qbox, HOME/.cache/qbox.
// Empty when no candidate exists.
std::filesystem::path cache_dir();

// File name keyed by the basis cutoff and the exact defect bit pattern.
std::filesystem::path cache_path(int32_t n_max, double eps);

// Loads and fully validates a cached spectrum (magic, version, key match,
// sizes, trailing checksum). Any defect is treated as a miss.
bool load_cached(int32_t n_max, double eps, SpectrumData& out);

// Writes atomically (temporary file + rename). Returns false with a message
// on failure; a missing cache directory is created first.
bool store_cached(const SpectrumData& data, std::string& error);

}  // namespace qchaos
