#include "qwalk/fingerprint_store.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qwalk {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Hex-float text keeps doubles bit-exact through the round trip.
std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string key_text(const Provenance &p, double bin_width) {
  return hex64(p.graph_hash) + " " + std::to_string(p.particles) + " " +
         std::string(to_string(p.statistics)) + " " + exact(p.time) + " " + exact(bin_width);
}

template <typename T> T expect_field(std::istringstream &in, const std::string &name) {
  std::string label;
  T value{};
  if (!(in >> label) || label != name || !(in >> value))
    throw CorruptRecordError("fingerprint record: expected field '" + name + "'");
  return value;
}

double parse_exact(const std::string &s) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw CorruptRecordError("fingerprint record: bad number '" + s + "'");
  return v;
}

} // namespace

std::string serialize_fingerprint(const Fingerprint &fp) {
  const Provenance &p = fp.provenance();
  std::ostringstream out;
  out << "qwalk-fingerprint " << kFingerprintFormatVersion << "\n"
      << "graph_hash " << hex64(p.graph_hash) << "\n"
      << "particles " << p.particles << "\n"
      << "statistics " << to_string(p.statistics) << "\n"
      << "time " << exact(p.time) << "\n"
      << "bin_width " << exact(fp.bin_width()) << "\n"
      << "total_elements " << fp.total_elements() << "\n"
      << "bins " << fp.bins().size() << "\n";
  for (const auto &b : fp.bins())
    out << b.index << " " << b.multiplicity << "\n";
  const std::string body = out.str();
  return body + "checksum " + hex64(fnv1a(body)) + "\n";
}

Fingerprint deserialize_fingerprint(const std::string &text) {
  const auto pos = text.rfind("checksum ");
  if (pos == std::string::npos)
    throw CorruptRecordError("fingerprint record: missing checksum");
  const std::string body = text.substr(0, pos);
  std::string stored = text.substr(pos + 9);
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r'))
    stored.pop_back();
  if (stored != hex64(fnv1a(body)))
    throw CorruptRecordError("fingerprint record: checksum mismatch");

  std::istringstream in(body);
  const int version = expect_field<int>(in, "qwalk-fingerprint");
  if (version != kFingerprintFormatVersion)
    throw CorruptRecordError("fingerprint record: unsupported version " + std::to_string(version));
  Provenance p;
  p.graph_hash = std::stoull(expect_field<std::string>(in, "graph_hash"), nullptr, 16);
  p.particles = expect_field<int>(in, "particles");
  try {
    p.statistics = parse_statistics(expect_field<std::string>(in, "statistics"));
  } catch (const std::invalid_argument &e) {
    throw CorruptRecordError(std::string("fingerprint record: ") + e.what());
  }
  p.time = parse_exact(expect_field<std::string>(in, "time"));
  const double width = parse_exact(expect_field<std::string>(in, "bin_width"));
  const auto total = expect_field<std::uint64_t>(in, "total_elements");
  const auto count = expect_field<std::size_t>(in, "bins");

  std::vector<FingerprintBin> bins(count);
  for (auto &b : bins)
    if (!(in >> b.index >> b.multiplicity))
      throw CorruptRecordError("fingerprint record: truncated bin list");
  try {
    Fingerprint fp(std::move(bins), width, p);
    if (fp.total_elements() != total)
      throw CorruptRecordError("fingerprint record: element count mismatch");
    return fp;
  } catch (const std::invalid_argument &e) {
    throw CorruptRecordError(std::string("fingerprint record: ") + e.what());
  }
}

FingerprintStore::FingerprintStore(std::filesystem::path directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path FingerprintStore::path_for(const FingerprintKey &key) const {
  return dir_ / (hex64(fnv1a(key_text(key.provenance, key.bin_width))) + ".fp");
}

void FingerprintStore::store(const Fingerprint &fp) const {
  const auto target = path_for({fp.provenance(), fp.bin_width()});
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write " + tmp.string());
    out << serialize_fingerprint(fp);
  }
  std::filesystem::rename(tmp, target);
}

std::optional<Fingerprint> FingerprintStore::load(const FingerprintKey &key) const {
  const auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  Fingerprint fp = deserialize_fingerprint(ss.str());
  if (!(fp.provenance() == key.provenance) || fp.bin_width() != key.bin_width)
    return std::nullopt;
  return fp;
}

} // namespace qwalk
