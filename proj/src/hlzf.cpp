#include "helmlab/hlzf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "helmlab/errors.hpp"

namespace helmlab {

static_assert(std::endian::native == std::endian::little, "HLZF I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'H', 'L', 'Z', 'F'};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("hlzf: truncated stream");
    return v;
}

}  // namespace

void write_hlzf(std::ostream& os, const SampledField& f) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, hlzf_version);
    put<std::uint32_t>(os, std::uint32_t(f.grid.ndim()));
    put<std::uint32_t>(os, std::uint32_t(f.domain));
    for (int a = 0; a < f.grid.ndim(); ++a) {
        put<std::uint64_t>(os, f.grid.points[a]);
        put<double>(os, f.grid.half_width[a]);
    }
    for (const auto& z : f.values) {
        put<double>(os, z.real());
        put<double>(os, z.imag());
    }
    if (!os) throw IoError("hlzf: write failed");
}

SampledField read_hlzf(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw IoError("hlzf: bad magic");
    const auto version = get<std::uint32_t>(is);
    if (version != hlzf_version) throw IoError("hlzf: unsupported version " + std::to_string(version));
    const auto ndim = get<std::uint32_t>(is);
    const auto tag = get<std::uint32_t>(is);
    if (ndim < 1 || ndim > 3) throw IoError("hlzf: bad dimension count");
    if (tag > 1) throw IoError("hlzf: bad domain tag");
    GridSpec g;
    for (std::uint32_t a = 0; a < ndim; ++a) {
        g.points.push_back(std::size_t(get<std::uint64_t>(is)));
        g.half_width.push_back(get<double>(is));
    }
    try {
        g.validate();
    } catch (const InvalidInput& e) {
        throw IoError(std::string("hlzf: ") + e.what());
    }
    SampledField f(g, Domain(tag));
    for (auto& z : f.values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        z = cplx(re, im);
    }
    return f;
}

void write_hlzf(const std::string& path, const SampledField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("hlzf: cannot open " + path);
    write_hlzf(os, f);
}

SampledField read_hlzf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("hlzf: cannot open " + path);
    return read_hlzf(is);
}

}  // namespace helmlab
