#pragma once

// Content-addressed on-disk cache. File names are FNV-1a hashes of a key
// string that includes kCacheVersion, so artifacts from other versions are
// never found. Every file starts with a header line repeating the full key;
// a mismatch (hash collision, truncation) makes the entry a miss.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "wittrep/chartab.hpp"
#include "wittrep/group.hpp"

namespace wittrep {

inline constexpr std::string_view kCacheVersion = "wittrep-cache-v1";

std::uint64_t fnv1a(std::string_view data);
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

class Cache {
public:
  /// An empty path disables the cache.
  explicit Cache(std::filesystem::path dir = {});

  bool enabled() const noexcept { return !dir_.empty(); }
  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::optional<std::string> load_text(std::string_view kind, const std::string& key) const;
  void store_text(std::string_view kind, const std::string& key, const std::string& body) const;

  /// Elements (row-major codes) and the class partition.
  std::optional<MatrixGroup> load_group(const GroupScheme& scheme, const RingPtr& ring) const;
  void store_group(const MatrixGroup& group) const;

  std::optional<CharacterTable> load_table(const MatrixGroup& group, std::uint64_t ell, std::uint64_t seed) const;
  void store_table(const MatrixGroup& group, const CharacterTable& table) const;

  std::filesystem::path path_for(std::string_view kind, const std::string& key) const;

private:
  std::filesystem::path dir_;
};

/// Enumerates through the cache.
MatrixGroup cached_group(const Cache& cache, const GroupScheme& scheme, const RingPtr& ring,
                         const EnumerationBounds& bounds);
/// Dixon table through the cache, keyed by (group, l, seed).
CharacterTable cached_table(const Cache& cache, const MatrixGroup& group, const DixonOptions& options);

}  // namespace wittrep
