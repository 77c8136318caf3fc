#include "mcms/pattern.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace mcms {

std::size_t PatternPoint::occupied_count() const {
  std::size_t n = 0;
  for (bool b : neighbor_mask) n += b ? 1 : 0;
  return n;
}

void Pattern::insert(PhysVector phys, LatticePoint n, std::vector<Rational> lift) {
  ++accepted;
  auto it = points.find(phys);
  if (it == points.end()) {
    points.emplace(phys, PatternPoint{phys, std::move(n), std::move(lift), {}});
    return;
  }
  ++merged;
  if (lift != it->second.lift) ++collisions;
  if (n < it->second.source) it->second.source = std::move(n);
}

std::vector<PhysVector> difference(const Pattern& a, const Pattern& b) {
  std::vector<PhysVector> out;
  for (const auto& [p, _] : a.points)
    if (!b.contains(p)) out.push_back(p);
  return out;
}

namespace {

std::string float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string pattern_csv_body(const Pattern& pattern) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pattern.k; ++i) os << "nx" << (i + 1) << ",";
  os << "x_rat,x_gold,y_rat,y_gold,z_rat,z_gold,x_f,y_f,z_f,occupied_count\n";
  for (const auto& [phys, pt] : pattern.points) {
    for (long v : pt.source) os << v << ",";
    for (int c = 0; c < 3; ++c) {
      auto q = [](const Rational& r) { return r.is_integer() ? r.str() + "/1" : r.str(); };
      os << q(phys[c].rat()) << "," << q(phys[c].gold()) << ",";
    }
    for (int c = 0; c < 3; ++c) os << float17(phys[c].approx()) << ",";
    os << pt.occupied_count() << "\n";
  }
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string pattern_csv(const Pattern& pattern) {
  std::string body = pattern_csv_body(pattern);
  return body + "# sha256 " + sha256_hex(body) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mcms
