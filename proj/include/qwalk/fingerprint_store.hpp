#ifndef QWALK_FINGERPRINT_STORE_HPP
#define QWALK_FINGERPRINT_STORE_HPP

#include "qwalk/fingerprint.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace qwalk {

struct FingerprintKey {
  Provenance provenance;
  double bin_width = kDefaultBinWidth;
};

class CorruptRecordError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFingerprintFormatVersion = 1;

/// Serialises a fingerprint as a self-describing text record ending in an
/// FNV-1a checksum line.
std::string serialize_fingerprint(const Fingerprint &fp);

/// Throws CorruptRecordError on checksum, version or syntax problems.
Fingerprint deserialize_fingerprint(const std::string &text);

/// One file per key in a directory.
class FingerprintStore {
public:
  explicit FingerprintStore(std::filesystem::path directory);

  const std::filesystem::path &directory() const { return dir_; }
  std::filesystem::path path_for(const FingerprintKey &key) const;

  void store(const Fingerprint &fp) const;

  /// Returns nullopt on a miss. A record whose embedded key differs from
  /// `key` is also a miss.
  std::optional<Fingerprint> load(const FingerprintKey &key) const;

private:
  std::filesystem::path dir_;
};

} // namespace qwalk

#endif // QWALK_FINGERPRINT_STORE_HPP
