#include "stackrl/io/container.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "stackrl/errors.h"

namespace stackrl::io {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put(std::string& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

void put_string(std::string& out, std::string_view s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  void section(std::string_view name) { section_ = name; }

  template <typename T>
  T get() {
    need(sizeof(T));
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }

  void expect_tag(std::string_view tag) {
    need(tag.size());
    if (bytes_.substr(pos_, tag.size()) != tag) fail("missing section tag '" + std::string(tag) + "'");
    pos_ += tag.size();
  }

  bool at_end() const { return pos_ == bytes_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("checkpoint section '" + section_ + "' is corrupt: " + what +
                    " (at byte " + std::to_string(pos_) + ")");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) fail("unexpected end of data");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
  std::string section_ = "header";
};

}  // namespace

const std::string* Container::config_value(std::string_view key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return &v;
  }
  return nullptr;
}

const autodiff::Tensor* Container::tensor(std::string_view name) const {
  for (const auto& [k, t] : tensors) {
    if (k == name) return &t;
  }
  return nullptr;
}

std::string encode(const Container& c) {
  if (c.magic.size() != 4) throw DataError("container magic must be 4 bytes");
  std::string out = c.magic;
  put<std::uint32_t>(out, c.version);

  out += "CONF";
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.config.size()));
  for (const auto& [k, v] : c.config) {
    put_string(out, k);
    put_string(out, v);
  }

  out += "VOCB";
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.vocabulary.size()));
  for (const auto& tok : c.vocabulary) put_string(out, tok);

  out += "TENS";
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.tensors.size()));
  for (const auto& [name, t] : c.tensors) {
    put_string(out, name);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t d : t.shape()) put<std::uint64_t>(out, d);
    for (double v : t.data()) put<double>(out, v);
  }
  return out;
}

Container decode(std::string_view bytes, std::string_view expected_magic) {
  Reader in(bytes);
  Container c;
  if (bytes.size() < 4) in.fail("file too short");
  c.magic = std::string(bytes.substr(0, 4));
  if (c.magic != expected_magic) {
    in.fail("magic '" + c.magic + "' does not match expected '" + std::string(expected_magic) + "'");
  }
  in.expect_tag(expected_magic);
  c.version = in.get<std::uint32_t>();
  if (c.version != kContainerVersion) {
    in.fail("unsupported format version " + std::to_string(c.version));
  }

  in.section("config");
  in.expect_tag("CONF");
  const auto n_config = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_config; ++i) {
    std::string k = in.get_string();
    std::string v = in.get_string();
    c.config.emplace_back(std::move(k), std::move(v));
  }

  in.section("vocabulary");
  in.expect_tag("VOCB");
  const auto n_vocab = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_vocab; ++i) c.vocabulary.push_back(in.get_string());

  in.section("tensors");
  in.expect_tag("TENS");
  const auto n_tensors = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_tensors; ++i) {
    std::string name = in.get_string();
    const auto rank = in.get<std::uint32_t>();
    if (rank < 1 || rank > 2) in.fail("tensor '" + name + "' has rank " + std::to_string(rank));
    autodiff::Shape shape;
    std::size_t count = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      const auto dim = in.get<std::uint64_t>();
      if (dim == 0 || dim > (1ull << 32)) in.fail("tensor '" + name + "' has bad dimension");
      shape.push_back(static_cast<std::size_t>(dim));
      count *= static_cast<std::size_t>(dim);
    }
    if (count > bytes.size()) in.fail("tensor '" + name + "' larger than file");
    std::vector<double> data(count);
    for (double& v : data) v = in.get<double>();
    c.tensors.emplace_back(std::move(name), autodiff::Tensor(std::move(shape), std::move(data)));
  }
  if (!in.at_end()) in.fail("trailing bytes after tensor list");
  return c;
}

void write_container(const std::filesystem::path& path, const Container& container) {
  const std::string bytes = encode(container);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Container read_container(const std::filesystem::path& path, std::string_view expected_magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return decode(buffer.str(), expected_magic);
}

}  // namespace stackrl::io
