#include "hopfcert/group_cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "hopfcert/error.hpp"

namespace hopfcert {

namespace {

constexpr char kMagic[8] = {'H', 'C', 'G', 'R', 'P', '0', '0', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

std::uint64_t fnv1a(const std::string& data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string header(Family family, const FiniteField& field, std::uint64_t order) {
    std::string out(kMagic, kMagic + 8);
    put_u32(out, static_cast<std::uint32_t>(family));
    put_u32(out, field.order());
    put_u32(out, static_cast<std::uint32_t>(field.modulus().size()));
    for (unsigned c : field.modulus()) put_u32(out, c);
    put_u64(out, order);
    return out;
}

class Reader {
public:
    explicit Reader(const std::string& data) : data_(data) {}
    std::uint64_t get(unsigned bytes) {
        if (pos_ + bytes > data_.size()) throw CacheIntegrityError("group cache file is truncated");
        std::uint64_t v = 0;
        for (unsigned i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += bytes;
        return v;
    }
    std::size_t pos() const { return pos_; }

private:
    const std::string& data_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string group_cache_path(const std::string& dir, Family family, const FiniteField& field) {
    std::string name = to_string(family) + "_q" + std::to_string(field.order()) + "_m";
    for (unsigned c : field.modulus()) name += std::to_string(c) + "-";
    name.pop_back();
    return (std::filesystem::path(dir) / (name + ".grp")).string();
}

std::optional<std::vector<Matrix>> load_group_cache(const std::string& dir, Family family, const FiniteField& field) {
    const std::string path = group_cache_path(dir, family, field);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < 8 || data.compare(0, 8, std::string(kMagic, kMagic + 8)) != 0) {
        throw CacheIntegrityError("group cache " + path + " has a bad magic number");
    }
    Reader r(data);
    r.get(8);
    if (r.get(4) != static_cast<std::uint32_t>(family) || r.get(4) != field.order()) {
        throw CacheIntegrityError("group cache " + path + " was written for another group");
    }
    const auto mod_len = r.get(4);
    if (mod_len != field.modulus().size()) throw CacheIntegrityError("group cache " + path + " modulus mismatch");
    for (unsigned c : field.modulus()) {
        if (r.get(4) != c) throw CacheIntegrityError("group cache " + path + " modulus mismatch");
    }
    const std::uint64_t order = r.get(8);
    if (data.size() != r.pos() + order * 16 + 8) {
        throw CacheIntegrityError("group cache " + path + " has the wrong length");
    }
    const std::size_t body_end = r.pos() + order * 16;
    std::uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) stored |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[body_end + i])) << (8 * i);
    if (stored != fnv1a(data, body_end)) throw CacheIntegrityError("group cache " + path + " fails its checksum");

    const unsigned dim = family_dimension(family);
    std::vector<Matrix> out;
    out.reserve(order);
    for (std::uint64_t i = 0; i < order; ++i) {
        const GroupKey lo = r.get(8);
        const GroupKey hi = r.get(8);
        const GroupKey key = (hi << 64) | lo;
        Matrix m = decode(key, dim, field.order());
        if (encode(m, field.order()) != key) throw CacheIntegrityError("group cache " + path + " holds an invalid key");
        if (!out.empty() && !(out.back() < m)) throw CacheIntegrityError("group cache " + path + " is not strictly sorted");
        out.push_back(m);
    }
    return out;
}

void write_group_cache(const std::string& dir, Family family, const FiniteField& field,
                       const std::vector<Matrix>& elements) {
    std::filesystem::create_directories(dir);
    std::string data = header(family, field, elements.size());
    data.reserve(data.size() + elements.size() * 16 + 8);
    for (const Matrix& m : elements) {
        const GroupKey key = encode(m, field.order());
        put_u64(data, static_cast<std::uint64_t>(key));
        put_u64(data, static_cast<std::uint64_t>(key >> 64));
    }
    put_u64(data, fnv1a(data, data.size()));
    const std::string path = group_cache_path(dir, family, field);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write group cache " + tmp);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) throw Error("cannot write group cache " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hopfcert
