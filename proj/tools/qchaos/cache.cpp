#include "cache.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <system_error>
#include <unistd.h>

namespace qchaos {

namespace {

constexpr char kMagic[8] = {'Q', 'B', 'O', 'X', 'C', 'A', 'C', 'H'};
constexpr uint32_t kVersion = 1;

uint64_t fnv1a(uint64_t hash, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

constexpr uint64_t kFnvOffset = 14695981039346656037ULL;

struct Hasher {
  uint64_t hash = kFnvOffset;
  void feed(const void* data, std::size_t n) { hash = fnv1a(hash, data, n); }
};

bool read_exact(std::ifstream& is, void* data, std::size_t n, Hasher& hasher) {
  if (!is.read(static_cast<char*>(data), static_cast<std::streamsize>(n))) return false;
  hasher.feed(data, n);
  return true;
}

void write_bytes(std::ofstream& os, const void* data, std::size_t n, Hasher& hasher) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  hasher.feed(data, n);
}

}  // namespace

std::filesystem::path cache_dir() {
  if (const char* dir = std::getenv("QBOX_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "qbox";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "qbox";
  return {};
}

std::filesystem::path cache_path(int32_t n_max, double eps) {
  const auto dir = cache_dir();
  if (dir.empty()) return {};
  char name[64];
  std::snprintf(name, sizeof(name), "spectrum_n%d_e%016llx_v%u.qbc", n_max,
                static_cast<unsigned long long>(std::bit_cast<uint64_t>(eps)),
                kVersion);
  return dir / name;
}

bool load_cached(int32_t n_max, double eps, SpectrumData& out) {
  const auto path = cache_path(n_max, eps);
  if (path.empty()) return false;
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;

  Hasher hasher;
  char magic[8];
  uint32_t version = 0;
  int32_t stored_n_max = 0;
  uint64_t dim = 0;
  double stored_eps = 0.0;
  if (!read_exact(is, magic, sizeof(magic), hasher)) return false;
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return false;
  if (!read_exact(is, &version, sizeof(version), hasher)) return false;
  if (version != kVersion) return false;
  if (!read_exact(is, &stored_n_max, sizeof(stored_n_max), hasher)) return false;
  if (!read_exact(is, &dim, sizeof(dim), hasher)) return false;
  if (!read_exact(is, &stored_eps, sizeof(stored_eps), hasher)) return false;
  if (stored_n_max != n_max) return false;
  if (std::bit_cast<uint64_t>(stored_eps) != std::bit_cast<uint64_t>(eps)) return false;
  // guard against absurd sizes before allocating
  if (dim == 0 || dim > (1ULL << 20)) return false;

  SpectrumData data;
  data.n_max = n_max;
  data.eps = eps;
  data.eigenvalues.resize(dim);
  data.eigenvectors.resize(dim * dim);
  if (!read_exact(is, data.eigenvalues.data(), dim * sizeof(double), hasher))
    return false;
  if (!read_exact(is, data.eigenvectors.data(), dim * dim * sizeof(double), hasher))
    return false;

  const uint64_t expected = hasher.hash;
  uint64_t stored_hash = 0;
  if (!is.read(reinterpret_cast<char*>(&stored_hash), sizeof(stored_hash)))
    return false;
  if (stored_hash != expected) return false;
  // the file must end here
  is.peek();
  if (!is.eof()) return false;

  out = std::move(data);
  return true;
}

bool store_cached(const SpectrumData& data, std::string& error) {
  const auto path = cache_path(data.n_max, data.eps);
  if (path.empty()) {
    error = "no cache directory (set QBOX_CACHE_DIR, XDG_CACHE_HOME, or HOME)";
    return false;
  }
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    error = "cannot create " + path.parent_path().string() + ": " + ec.message();
    return false;
  }

  const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      error = "cannot open " + tmp;
      return false;
    }
    Hasher hasher;
    const uint64_t dim = data.eigenvalues.size();
    write_bytes(os, kMagic, sizeof(kMagic), hasher);
    write_bytes(os, &kVersion, sizeof(kVersion), hasher);
    write_bytes(os, &data.n_max, sizeof(data.n_max), hasher);
    write_bytes(os, &dim, sizeof(dim), hasher);
    write_bytes(os, &data.eps, sizeof(data.eps), hasher);
    write_bytes(os, data.eigenvalues.data(), dim * sizeof(double), hasher);
    write_bytes(os, data.eigenvectors.data(), dim * dim * sizeof(double), hasher);
    os.write(reinterpret_cast<const char*>(&hasher.hash), sizeof(hasher.hash));
    os.flush();
    if (!os) {
      error = "write to " + tmp + " failed";
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    error = "rename to " + path.string() + " failed: " + ec.message();
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace qchaos
