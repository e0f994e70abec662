#include "ctxjudge/jsonl.hpp"

namespace ctxjudge {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, size_t)>& fn,
                    const std::function<void(size_t, const std::string&)>& on_bad_line) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            if (on_bad_line) {
                on_bad_line(line_no, e.what());
                continue;
            }
            throw JsonlError(path, line_no, e.what());
        }
        fn(record, line_no);
    }
}

}  // namespace ctxjudge
