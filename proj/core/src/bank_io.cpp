#include <array>
#include <cstring>
#include <fstream>
#include <string>

#include "qsynth/error.hpp"
#include "qsynth/pattern_bank.hpp"

namespace qsynth {

namespace {

constexpr std::array<char, 4> kMagic{'Q', 'S', 'B', 'K'};

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }

  template <typename T>
  void put(T value) {
    std::array<char, sizeof(T)> bytes;
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
    out_.write(bytes.data(), bytes.size());
  }

  void raw(const char* data, std::size_t size) { out_.write(data, static_cast<std::streamsize>(size)); }

  void finish(const std::filesystem::path& path) {
    out_.flush();
    if (!out_) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw Error(ErrorCode::MissingBank, "cannot open bank file " + path.string());
  }

  template <typename T>
  T get() {
    std::array<unsigned char, sizeof(T)> bytes;
    read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return static_cast<T>(value);
  }

  void read(char* data, std::size_t size) {
    in_.read(data, static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in_.gcount()) != size) {
      throw Error(ErrorCode::TruncatedFile, "unexpected end of " + path_.string());
    }
  }

  /// Upper bound on how many records of the given size can still follow.
  std::uint64_t remaining() {
    const auto here = in_.tellg();
    in_.seekg(0, std::ios::end);
    const auto end = in_.tellg();
    in_.seekg(here);
    return static_cast<std::uint64_t>(end - here);
  }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
};

}  // namespace

void save_bank(const SetOp& set_op, const MapXor& map_xor, const std::filesystem::path& path) {
  if (set_op.n() != map_xor.n()) throw Error(ErrorCode::InvalidArgument, "SetOp and MapXor sizes differ");
  Writer w(path);
  w.raw(kMagic.data(), kMagic.size());
  w.put<std::uint32_t>(kBankFormatVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set_op.n()));
  w.put<std::uint64_t>(set_op.size());
  for (const auto& e : set_op.entries()) {
    w.put<std::uint64_t>(e.code);
    w.put<std::uint32_t>(e.l1);
    w.put<std::uint32_t>(e.l2);
    w.put<std::uint32_t>(e.residual);
  }
  w.put<std::uint64_t>(map_xor.key_count());
  for (std::size_t i = 0; i < map_xor.key_count(); ++i) {
    const auto pairs = map_xor.pairs_at(i);
    w.put<std::uint64_t>(map_xor.key(i));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(pairs.size()));
    for (const auto& p : pairs) {
      w.put<std::uint32_t>(p.a);
      w.put<std::uint32_t>(p.b);
    }
  }
  w.finish(path);
}

PatternBank load_bank(int n, const std::filesystem::path& path) {
  Reader r(path);
  std::array<char, 4> magic{};
  r.read(magic.data(), magic.size());
  if (magic != kMagic) throw Error(ErrorCode::BadMagic, path.string() + " is not a pattern bank");
  const auto version = r.get<std::uint32_t>();
  if (version != kBankFormatVersion) {
    throw Error(ErrorCode::VersionMismatch, "bank format version " + std::to_string(version) + ", expected " +
                                                std::to_string(kBankFormatVersion));
  }
  const auto file_n = r.get<std::uint32_t>();
  if (static_cast<int>(file_n) != n) {
    throw Error(ErrorCode::WrongN, "bank holds n=" + std::to_string(file_n) + ", requested n=" + std::to_string(n));
  }

  const auto set_count = r.get<std::uint64_t>();
  if (set_count > r.remaining() / 20) throw Error(ErrorCode::TruncatedFile, "SetOp count exceeds file size");
  std::vector<PatternEntry> entries(set_count);
  for (auto& e : entries) {
    e.code = r.get<std::uint64_t>();
    e.l1 = r.get<std::uint32_t>();
    e.l2 = r.get<std::uint32_t>();
    e.residual = r.get<std::uint32_t>();
  }

  const auto key_count = r.get<std::uint64_t>();
  if (key_count > r.remaining() / 12) throw Error(ErrorCode::TruncatedFile, "MapXor key count exceeds file size");
  std::vector<QuadCode> keys(key_count);
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(key_count + 1);
  std::vector<IndexPair> pairs;
  for (auto& key : keys) {
    key = r.get<std::uint64_t>();
    const auto count = r.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto a = r.get<std::uint32_t>();
      const auto b = r.get<std::uint32_t>();
      if (a >= set_count || b >= set_count) throw Error(ErrorCode::InvalidArgument, "pair index out of range");
      pairs.push_back({a, b});
    }
    offsets.push_back(pairs.size());
  }
  return PatternBank{SetOp(n, std::move(entries)), MapXor(n, std::move(keys), std::move(offsets), std::move(pairs))};
}

std::filesystem::path default_bank_path(const std::filesystem::path& dir, int n) {
  return dir / ("bank_n" + std::to_string(n) + ".qsbk");
}

}  // namespace qsynth
