#include "testutil.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace testutil {

namespace {

struct LittleEndian {
    std::vector<std::uint8_t>& out;
    void u16(std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v));
        u16(static_cast<std::uint16_t>(v >> 16));
    }
};

std::vector<std::uint8_t> deflate_raw(const std::vector<std::uint8_t>& data) {
    z_stream stream{};
    if (deflateInit2(&stream, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");
    std::vector<std::uint8_t> out(deflateBound(&stream, static_cast<uLong>(data.size())));
    stream.next_in = const_cast<Bytef*>(data.data());
    stream.avail_in = static_cast<uInt>(data.size());
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    if (deflate(&stream, Z_FINISH) != Z_STREAM_END) {
        deflateEnd(&stream);
        throw std::runtime_error("deflate failed");
    }
    out.resize(stream.total_out);
    deflateEnd(&stream);
    return out;
}

} // namespace

void write_zip(const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::vector<std::uint8_t>>>& entries) {
    std::vector<std::uint8_t> file;
    LittleEndian w{file};

    struct Record {
        std::string name;
        std::uint32_t crc, comp_size, uncomp_size, offset;
        std::uint16_t method;
    };
    std::vector<Record> records;

    for (const auto& [name, data] : entries) {
        std::vector<std::uint8_t> deflated = deflate_raw(data);
        bool use_deflate = deflated.size() < data.size();
        const std::vector<std::uint8_t>& payload = use_deflate ? deflated : data;

        Record rec;
        rec.name = name;
        rec.crc = static_cast<std::uint32_t>(
            crc32(0, data.empty() ? Z_NULL : data.data(), static_cast<uInt>(data.size())));
        rec.comp_size = static_cast<std::uint32_t>(payload.size());
        rec.uncomp_size = static_cast<std::uint32_t>(data.size());
        rec.offset = static_cast<std::uint32_t>(file.size());
        rec.method = use_deflate ? 8 : 0;

        w.u32(0x04034b50);
        w.u16(20);         // version needed
        w.u16(0);          // flags
        w.u16(rec.method);
        w.u16(0);          // mtime
        w.u16(0);          // mdate
        w.u32(rec.crc);
        w.u32(rec.comp_size);
        w.u32(rec.uncomp_size);
        w.u16(static_cast<std::uint16_t>(name.size()));
        w.u16(0); // extra
        file.insert(file.end(), name.begin(), name.end());
        file.insert(file.end(), payload.begin(), payload.end());
        records.push_back(std::move(rec));
    }

    std::uint32_t cd_offset = static_cast<std::uint32_t>(file.size());
    for (const Record& rec : records) {
        w.u32(0x02014b50);
        w.u16(20); // version made by
        w.u16(20); // version needed
        w.u16(0);  // flags
        w.u16(rec.method);
        w.u16(0); // mtime
        w.u16(0); // mdate
        w.u32(rec.crc);
        w.u32(rec.comp_size);
        w.u32(rec.uncomp_size);
        w.u16(static_cast<std::uint16_t>(rec.name.size()));
        w.u16(0); // extra
        w.u16(0); // comment
        w.u16(0); // disk
        w.u16(0); // internal attrs
        w.u32(0); // external attrs
        w.u32(rec.offset);
        file.insert(file.end(), rec.name.begin(), rec.name.end());
    }
    std::uint32_t cd_size = static_cast<std::uint32_t>(file.size()) - cd_offset;

    w.u32(0x06054b50);
    w.u16(0);
    w.u16(0);
    w.u16(static_cast<std::uint16_t>(records.size()));
    w.u16(static_cast<std::uint16_t>(records.size()));
    w.u32(cd_size);
    w.u32(cd_offset);
    w.u16(0); // comment

    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(file.data()), static_cast<std::streamsize>(file.size()));
    if (!out) throw std::runtime_error("cannot write zip " + path.string());
}

std::filesystem::path temp_dir(const std::string& tag) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / ("amcp_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testutil
