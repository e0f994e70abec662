#include "ctxjudge/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace ctxjudge {

namespace {

std::string to_hex(const unsigned char* bytes, size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 2);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(digits[bytes[i] >> 4]);
        out.push_back(digits[bytes[i] & 0x0f]);
    }
    return out;
}

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256: init failed");
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::string_view data) {
        if (EVP_DigestUpdate(ctx_, data.data(), data.size()) != 1)
            throw std::runtime_error("sha256: update failed");
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, md.data(), &len) != 1)
            throw std::runtime_error("sha256: final failed");
        return to_hex(md.data(), len);
    }

private:
    EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(data);
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    Sha256 h;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h.update(std::string_view(buf, static_cast<size_t>(in.gcount())));
    return h.hex();
}

std::string pair_digest(std::string_view model_id, std::string_view prompt) {
    Sha256 h;
    uint64_t len = model_id.size();
    char frame[8];
    for (int i = 0; i < 8; ++i) frame[i] = static_cast<char>((len >> (8 * i)) & 0xff);
    h.update(std::string_view(frame, 8));
    h.update(model_id);
    h.update(prompt);
    return h.hex();
}

}  // namespace ctxjudge
