#include "dsmeta/sha256.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsmeta/diagnostics.hpp"

namespace dsmeta {

namespace {

std::string to_hex(const unsigned char* digest, unsigned len) {
    static const char* hexdig = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hexdig[digest[i] >> 4]);
        out.push_back(hexdig[digest[i] & 0xF]);
    }
    return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    return to_hex(digest, len);
}

std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file for hashing: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string data = ss.str();
    return sha256_hex(data);
}

}  // namespace dsmeta
