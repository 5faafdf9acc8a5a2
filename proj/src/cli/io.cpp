#include "vcx/cli/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "vcx/errors.hpp"

namespace vcx::cli {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
    throw UsageError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

long parse_int(std::string_view tok, std::string_view source, std::size_t line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        fail(source, line, "not an integer: '" + std::string(tok) + "'");
    }
    return value;
}

}  // namespace

UniformFamily parse_family(std::string_view text, std::string_view source) {
    int n = -1;
    int k = -1;
    std::vector<Subset> members;
    std::set<std::uint64_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (n < 0) {
            if (toks.size() != 2) fail(source, line_no, "header must be \"n k\"");
            const long hn = parse_int(toks[0], source, line_no);
            const long hk = parse_int(toks[1], source, line_no);
            if (hn < 1 || hn > kMaxGroundSize) fail(source, line_no, "n must lie in [1, 63]");
            if (hk < 0 || hk > hn) fail(source, line_no, "k must lie in [0, n]");
            n = static_cast<int>(hn);
            k = static_cast<int>(hk);
        } else {
            if (static_cast<int>(toks.size()) != k) {
                fail(source, line_no,
                     "expected " + std::to_string(k) + " elements, got " + std::to_string(toks.size()));
            }
            std::uint64_t bits = 0;
            long prev = 0;
            for (const auto tok : toks) {
                const long e = parse_int(tok, source, line_no);
                if (e < 1 || e > n) fail(source, line_no, "element " + std::to_string(e) + " out of range [1, " + std::to_string(n) + "]");
                if (e <= prev) fail(source, line_no, "elements must be strictly increasing");
                prev = e;
                bits |= std::uint64_t{1} << e;
            }
            if (!seen.insert(bits).second) fail(source, line_no, "duplicate member");
            members.emplace_back(n, bits);
        }
        if (end == text.size()) break;
    }
    if (n < 0) fail(source, line_no, "missing \"n k\" header");
    return UniformFamily(n, k, std::move(members));
}

UniformFamily load_family(const std::filesystem::path& path) {
    return parse_family(read_file(path), path.string());
}

std::string format_family(const UniformFamily& fam) {
    std::string out = std::to_string(fam.n()) + " " + std::to_string(fam.k()) + "\n";
    for (const Subset& m : fam) {
        out += m.to_line();
        out += '\n';
    }
    return out;
}

void save_family(const std::filesystem::path& path, const UniformFamily& fam) {
    write_file(path, format_family(fam));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw UsageError("write failed: " + path.string());
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace vcx::cli
