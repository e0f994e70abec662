#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>

namespace ctxjudge {

using json = nlohmann::json;

struct JsonlError : std::runtime_error {
    JsonlError(const std::filesystem::path& path, size_t line, const std::string& what)
        : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what),
          line_number(line) {}
    size_t line_number;
};

/// Calls fn(record, line_number) for every non-blank line. Parse failures
/// throw JsonlError unless on_bad_line is given, in which case they are
/// reported there and the line is skipped.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, size_t)>& fn,
                    const std::function<void(size_t, const std::string&)>& on_bad_line = nullptr);

/// One JSON object per line, keys sorted (nlohmann default), '\n' terminated.
class JsonlWriter {
public:
    explicit JsonlWriter(const std::filesystem::path& path, bool append = false)
        : out_(path, append ? std::ios::app : std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path.string());
    }

    void write(const json& record) {
        out_ << record.dump() << '\n';
        out_.flush();
    }

private:
    std::ofstream out_;
};

}  // namespace ctxjudge
