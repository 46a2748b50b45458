#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace vortexmix {

/// Line-oriented `key = value` text with `#` comments. Later keys override
/// earlier ones. Every key must be consumed, which catches typos.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  void merge(const KeyValueConfig& other);

  [[nodiscard]] bool contains(const std::string& key) const { return entries_.contains(key); }
  [[nodiscard]] const std::map<std::string, std::string>& entries() const { return entries_; }

  [[nodiscard]] std::optional<std::string> get_string(const std::string& key) const;
  [[nodiscard]] std::optional<double> get_double(const std::string& key) const;
  [[nodiscard]] std::optional<long> get_int(const std::string& key) const;
  [[nodiscard]] std::optional<std::uint64_t> get_u64(const std::string& key) const;
  [[nodiscard]] std::optional<bool> get_bool(const std::string& key) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace vortexmix
