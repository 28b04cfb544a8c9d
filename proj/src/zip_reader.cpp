#include "amcp/zip_reader.hpp"

#include <cstring>
#include <fstream>

#include <zlib.h>

#include "amcp/error.hpp"

namespace amcp {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralSig = 0x06054b50;

std::uint16_t read_u16(const std::vector<std::uint8_t>& b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::vector<std::uint8_t> inflate_raw(const std::uint8_t* data, std::size_t size,
                                      std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    z_stream stream{};
    if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) throw Error("zlib init failed");
    stream.next_in = const_cast<Bytef*>(data);
    stream.avail_in = static_cast<uInt>(size);
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&stream, Z_FINISH);
    inflateEnd(&stream);
    if (rc != Z_STREAM_END || stream.total_out != expected)
        throw Error("corrupt deflate stream in archive");
    return out;
}

} // namespace

bool looks_like_zip(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4) return false;
    return magic[0] == 'P' && magic[1] == 'K' &&
           ((magic[2] == 3 && magic[3] == 4) || (magic[2] == 5 && magic[3] == 6));
}

std::vector<ZipEntry> read_zip(const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() < 22) throw Error("not a zip archive: " + path.string());

    // Locate the end-of-central-directory record (last 64KiB + record).
    std::size_t eocd = bytes.size();
    std::size_t lowest = bytes.size() > 22 + 65535 ? bytes.size() - 22 - 65535 : 0;
    for (std::size_t at = bytes.size() - 22 + 1; at-- > lowest;) {
        if (read_u32(bytes, at) == kEndOfCentralSig) {
            eocd = at;
            break;
        }
    }
    if (eocd == bytes.size()) throw Error("zip end-of-central-directory not found: " + path.string());

    std::uint16_t entry_count = read_u16(bytes, eocd + 10);
    std::uint32_t cd_offset = read_u32(bytes, eocd + 16);
    if (entry_count == 0xFFFF || cd_offset == 0xFFFFFFFF)
        throw Error("zip64 archives are not supported");

    std::vector<ZipEntry> entries;
    std::size_t at = cd_offset;
    for (std::uint16_t i = 0; i < entry_count; ++i) {
        if (at + 46 > bytes.size() || read_u32(bytes, at) != kCentralHeaderSig)
            throw Error("corrupt zip central directory");
        std::uint16_t flags = read_u16(bytes, at + 8);
        std::uint16_t method = read_u16(bytes, at + 10);
        std::uint32_t comp_size = read_u32(bytes, at + 20);
        std::uint32_t uncomp_size = read_u32(bytes, at + 24);
        std::uint16_t name_len = read_u16(bytes, at + 28);
        std::uint16_t extra_len = read_u16(bytes, at + 30);
        std::uint16_t comment_len = read_u16(bytes, at + 32);
        std::uint32_t local_offset = read_u32(bytes, at + 42);
        if (at + 46 + name_len > bytes.size()) throw Error("corrupt zip central directory");
        std::string name(reinterpret_cast<const char*>(bytes.data() + at + 46), name_len);
        at += 46 + name_len + extra_len + comment_len;

        if (!name.empty() && name.back() == '/') continue; // directory entry
        if (flags & 0x1) throw Error("encrypted zip entries are not supported");
        if (method != 0 && method != 8)
            throw Error("unsupported zip compression method " + std::to_string(method));

        // Name/extra lengths in the local header may differ from the
        // central directory; the data sits after the local copies.
        if (local_offset + 30 > bytes.size() || read_u32(bytes, local_offset) != kLocalHeaderSig)
            throw Error("corrupt zip local header");
        std::uint16_t local_name_len = read_u16(bytes, local_offset + 26);
        std::uint16_t local_extra_len = read_u16(bytes, local_offset + 28);
        std::size_t data_at = static_cast<std::size_t>(local_offset) + 30 + local_name_len + local_extra_len;
        if (data_at + comp_size > bytes.size()) throw Error("truncated zip entry data");

        ZipEntry entry;
        entry.name = std::move(name);
        if (method == 0) {
            if (comp_size != uncomp_size) throw Error("corrupt stored zip entry");
            entry.data.assign(bytes.begin() + data_at, bytes.begin() + data_at + comp_size);
        } else {
            entry.data = inflate_raw(bytes.data() + data_at, comp_size, uncomp_size);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace amcp
