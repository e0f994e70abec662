#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace ctxjudge {

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's contents. Throws std::runtime_error if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Digest of a (model_id, prompt) pair. Length-framed so the digest depends
/// only on the two byte strings, never on how they might concatenate.
std::string pair_digest(std::string_view model_id, std::string_view prompt);

}  // namespace ctxjudge
