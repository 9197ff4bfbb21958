#ifndef STACKRL_IO_CONTAINER_H_
#define STACKRL_IO_CONTAINER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stackrl/autodiff/tensor.h"

namespace stackrl::io {

// Versioned binary checkpoint:
//
//   magic[4] u32:version
//   "CONF" u32:n  n x (str key, str value)
//   "VOCB" u32:n  n x str
//   "TENS" u32:n  n x (str name, u32 rank, u64 dim[rank], f64 data[...])
//
// Integers and doubles are little-endian; str is u32 length + bytes. Order of
// every list is preserved, so decode followed by encode reproduces the input.
struct Container {
  std::string magic;
  std::uint32_t version = 1;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> vocabulary;
  std::vector<std::pair<std::string, autodiff::Tensor>> tensors;

  const std::string* config_value(std::string_view key) const;
  const autodiff::Tensor* tensor(std::string_view name) const;
};

inline constexpr std::uint32_t kContainerVersion = 1;

std::string encode(const Container& container);
// Throws DataError naming the section that failed to decode.
Container decode(std::string_view bytes, std::string_view expected_magic);

void write_container(const std::filesystem::path& path, const Container& container);
Container read_container(const std::filesystem::path& path, std::string_view expected_magic);

}  // namespace stackrl::io

#endif  // STACKRL_IO_CONTAINER_H_
