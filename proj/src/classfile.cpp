#include "amcp/classfile.hpp"

#include <algorithm>
#include <optional>

#include "amcp/error.hpp"

namespace amcp {

namespace {

constexpr std::uint32_t kClassFileMagic = 0xCAFEBABE;

// Constant pool tags (JVMS table 4.4-B).
enum : std::uint8_t {
    kUtf8 = 1,
    kInteger = 3,
    kFloat = 4,
    kLong = 5,
    kDouble = 6,
    kClass = 7,
    kString = 8,
    kFieldref = 9,
    kMethodref = 10,
    kInterfaceMethodref = 11,
    kNameAndType = 12,
    kMethodHandle = 15,
    kMethodType = 16,
    kDynamic = 17,
    kInvokeDynamic = 18,
    kModule = 19,
    kPackage = 20,
};

struct Cursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    void need(std::size_t count, const char* context) const {
        if (pos + count > data.size()) throw Error(context);
    }
    std::uint8_t u1(const char* context) {
        need(1, context);
        return data[pos++];
    }
    std::uint16_t u2(const char* context) {
        need(2, context);
        std::uint16_t v = static_cast<std::uint16_t>(data[pos] << 8 | data[pos + 1]);
        pos += 2;
        return v;
    }
    std::uint32_t u4(const char* context) {
        need(4, context);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | data[pos + i];
        pos += 4;
        return v;
    }
    void skip(std::size_t count, const char* context) {
        need(count, context);
        pos += count;
    }
};

// Strips array dimensions; returns the element class name or nothing for a
// primitive element type.
std::optional<std::string> element_class(std::string name) {
    std::size_t dims = 0;
    while (dims < name.size() && name[dims] == '[') ++dims;
    if (dims == 0) return name;
    name.erase(0, dims);
    if (name.size() >= 2 && name.front() == 'L' && name.back() == ';')
        return name.substr(1, name.size() - 2);
    return std::nullopt; // primitive element type
}

} // namespace

ClassFileSummary parse_class_file(std::span<const std::uint8_t> bytes) {
    Cursor cur{bytes};
    if (bytes.size() < 4 || cur.u4("not a class file") != kClassFileMagic)
        throw Error("not a class file");

    ClassFileSummary summary;
    summary.minor_version = cur.u2("truncated class file header");
    summary.major_version = cur.u2("truncated class file header");

    const char* pool_err = "malformed constant pool";
    std::uint16_t pool_count = cur.u2(pool_err);
    if (pool_count == 0) throw Error(pool_err);

    std::vector<std::string> utf8(pool_count);          // by pool index
    std::vector<std::uint16_t> class_entries(pool_count, 0); // name_index or 0

    for (std::uint16_t index = 1; index < pool_count; ++index) {
        std::uint8_t tag = cur.u1(pool_err);
        switch (tag) {
        case kUtf8: {
            std::uint16_t length = cur.u2(pool_err);
            cur.need(length, pool_err);
            utf8[index].assign(reinterpret_cast<const char*>(cur.data.data() + cur.pos), length);
            cur.pos += length;
            break;
        }
        case kInteger:
        case kFloat:
            cur.skip(4, pool_err);
            break;
        case kLong:
        case kDouble:
            cur.skip(8, pool_err);
            ++index; // 8-byte constants take two pool slots
            if (index >= pool_count) throw Error(pool_err);
            break;
        case kClass:
            class_entries[index] = cur.u2(pool_err);
            break;
        case kString:
        case kMethodType:
        case kModule:
        case kPackage:
            cur.skip(2, pool_err);
            break;
        case kFieldref:
        case kMethodref:
        case kInterfaceMethodref:
        case kNameAndType:
        case kDynamic:
        case kInvokeDynamic:
            cur.skip(4, pool_err);
            break;
        case kMethodHandle:
            cur.skip(3, pool_err);
            break;
        default:
            throw Error("unsupported constant tag " + std::to_string(tag));
        }
    }

    cur.skip(2, "truncated class file"); // access_flags
    std::uint16_t this_class = cur.u2("truncated class file");
    if (this_class == 0 || this_class >= pool_count || class_entries[this_class] == 0)
        throw Error(pool_err);
    std::uint16_t own_name_index = class_entries[this_class];
    if (own_name_index >= pool_count || utf8[own_name_index].empty()) throw Error(pool_err);
    summary.class_name = utf8[own_name_index];

    for (std::uint16_t index = 1; index < pool_count; ++index) {
        std::uint16_t name_index = class_entries[index];
        if (name_index == 0) continue;
        if (name_index >= pool_count || utf8[name_index].empty()) throw Error(pool_err);
        std::optional<std::string> name = element_class(utf8[name_index]);
        if (name && *name != summary.class_name) summary.referenced_classes.push_back(*name);
    }
    std::sort(summary.referenced_classes.begin(), summary.referenced_classes.end());
    summary.referenced_classes.erase(
        std::unique(summary.referenced_classes.begin(), summary.referenced_classes.end()),
        summary.referenced_classes.end());
    return summary;
}

} // namespace amcp
