// Writes the built-in catalog to data/catalog.v1.json in canonical form,
// together with a SHA-256 checksum file, so that the shipped data files can
// be regenerated and diffed against the compiled-in tables.
//
// Usage: make_catalog [output-directory]   (default: data)

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <openssl/evp.h>

#include "unillc/catalog.hpp"

namespace {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("sha256: digest failure");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    std::string json = unillc::catalog_to_json(unillc::builtin_catalog());

    std::filesystem::path json_path = dir / "catalog.v1.json";
    {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + json_path.string());
      out << json;
    }
    std::filesystem::path sum_path = dir / "catalog.v1.sha256";
    {
      std::ofstream out(sum_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + sum_path.string());
      out << sha256_hex(json) << "  catalog.v1.json\n";
    }
    std::cout << "wrote " << json_path.string() << " ("
              << unillc::builtin_catalog().entries.size() << " entries, "
              << json.size() << " bytes)\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "make_catalog: " << ex.what() << "\n";
    return 1;
  }
}
