#include "polytess/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace polytess {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool write_manifest(const std::string& output_path, const Manifest& entries) {
  std::ofstream out(output_path + ".manifest", std::ios::binary);
  if (!out) return false;
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace polytess
