#include "hydrostat/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <zlib.h>

namespace hydrostat {

namespace {

constexpr char kMagic[8] = {'H', 'Y', 'S', 'N', 'A', 'P', '0', '1'};
constexpr std::uint32_t kVersion = 1;

void put(std::vector<char>& buf, const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    buf.insert(buf.end(), c, c + n);
}

template <typename T>
void put_value(std::vector<char>& buf, T v) {
    put(buf, &v, sizeof(v));
}

struct Reader {
    const std::vector<char>& buf;
    std::size_t pos = 0;

    void get(void* p, std::size_t n) {
        if (pos + n > buf.size()) throw SnapshotError("snapshot: truncated file");
        std::memcpy(p, buf.data() + pos, n);
        pos += n;
    }
    template <typename T>
    T get_value() {
        T v;
        get(&v, sizeof(v));
        return v;
    }
};

std::uint8_t parity_tag(Parity p) { return p == Parity::Odd ? 1 : 0; }
Parity tag_parity(std::uint8_t t) { return t == 1 ? Parity::Odd : Parity::Even; }

void put_field(std::vector<char>& buf, const SpectralField3D& f) {
    put(buf, f.coeffs.data(), f.coeffs.size() * sizeof(Complex));
}

} // namespace

void write_snapshot(const std::string& path, const State& state) {
    const Grid3& g = state.grid();
    std::vector<char> buf;
    buf.reserve(3 * g.size() * sizeof(Complex) + 128);
    put(buf, kMagic, sizeof(kMagic));
    put_value(buf, kVersion);
    put_value<std::int32_t>(buf, g.nx);
    put_value<std::int32_t>(buf, g.ny);
    put_value<std::int32_t>(buf, g.nz);
    for (double v : {g.h, state.params.R1, state.params.R2, state.params.R3, state.params.f0,
                     state.params.epsilon, state.time})
        put_value(buf, v);
    put_value(buf, parity_tag(state.v1.parity));
    put_value(buf, parity_tag(state.v2.parity));
    put_value(buf, parity_tag(state.T.parity));
    put_field(buf, state.v1);
    put_field(buf, state.v2);
    put_field(buf, state.T);

    const std::uint32_t crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
    put_value(buf, crc);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("snapshot: cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw SnapshotError("snapshot: write failed for " + path);
}

State read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("snapshot: cannot open " + path);
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < sizeof(kMagic) + sizeof(std::uint32_t))
        throw SnapshotError("snapshot: truncated file");

    const std::size_t body = buf.size() - sizeof(std::uint32_t);
    std::uint32_t stored;
    std::memcpy(&stored, buf.data() + body, sizeof(stored));
    const std::uint32_t computed = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(body)));
    if (stored != computed) throw SnapshotError("snapshot: checksum mismatch in " + path);

    Reader r{buf};
    char magic[8];
    r.get(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw SnapshotError("snapshot: bad magic in " + path);
    if (r.get_value<std::uint32_t>() != kVersion)
        throw SnapshotError("snapshot: unsupported version in " + path);

    const int nx = r.get_value<std::int32_t>();
    const int ny = r.get_value<std::int32_t>();
    const int nz = r.get_value<std::int32_t>();
    const double h = r.get_value<double>();
    Grid3 g(nx, ny, nz, h);

    State s;
    s.params.R1 = r.get_value<double>();
    s.params.R2 = r.get_value<double>();
    s.params.R3 = r.get_value<double>();
    s.params.f0 = r.get_value<double>();
    s.params.epsilon = r.get_value<double>();
    s.params.h = h;
    s.time = r.get_value<double>();
    const Parity p1 = tag_parity(r.get_value<std::uint8_t>());
    const Parity p2 = tag_parity(r.get_value<std::uint8_t>());
    const Parity pT = tag_parity(r.get_value<std::uint8_t>());

    s.v1 = SpectralField3D(g, p1);
    s.v2 = SpectralField3D(g, p2);
    s.T = SpectralField3D(g, pT);
    r.get(s.v1.coeffs.data(), g.size() * sizeof(Complex));
    r.get(s.v2.coeffs.data(), g.size() * sizeof(Complex));
    r.get(s.T.coeffs.data(), g.size() * sizeof(Complex));
    if (r.pos != body) throw SnapshotError("snapshot: trailing bytes in " + path);
    s.params.validate();
    return s;
}

} // namespace hydrostat
