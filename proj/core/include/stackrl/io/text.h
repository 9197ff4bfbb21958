#ifndef STACKRL_IO_TEXT_H_
#define STACKRL_IO_TEXT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stackrl::io {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
// Whole-string parse; throws DataError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);

// One record per line; blank lines and lines starting with '#' are skipped.
// Only the first whitespace-separated field of each line is kept.
std::vector<std::string> read_smiles_file(const std::filesystem::path& path);
std::vector<std::string> parse_smiles_lines(std::string_view text);

// Writes `header` (already '#'-prefixed lines) followed by one record per line.
void write_lines(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::string>& lines);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

// Flat "key = value" configuration with '#' comments. Keys keep sorted order
// so that serialization is canonical.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  // Applies "key=value"; throws DataError on a malformed override.
  void apply_override(std::string_view assignment);
  void merge(const KeyValueConfig& other);

  bool contains(std::string_view key) const;
  std::optional<std::string> find(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key, double fallback) const;
  long get_int(std::string_view key, long fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  // Canonical serialization, one "key = value" per line.
  std::string to_string() const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Lines prefixed with `comment` recording tool name/version and the resolved
// configuration. Every output file produced by the tool starts with this.
std::string provenance_header(std::string_view command, const KeyValueConfig& config,
                              std::string_view comment = "# ");

}  // namespace stackrl::io

#endif  // STACKRL_IO_TEXT_H_
