#include "sarkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sarkit::io {

namespace {

constexpr char kMagic[8] = {'S', 'A', 'R', 'K', 'I', 'T', 'I', 'O'};
constexpr std::uint32_t kVersion = 1;

static_assert(sizeof(float) == 4 && sizeof(double) == 8);

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("sarkit-io: truncated file");
    return value;
}

void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("sarkit-io: " + path.string() + ": " + what);
}

}  // namespace

void write_array(const std::filesystem::path& path, const Array& array) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.dtype));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.kind));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.dims.size()));
    std::uint64_t count = array.dims.empty() ? 0 : 1;
    for (auto d : array.dims) {
        put<std::uint64_t>(out, d);
        count *= d;
    }
    if (count != array.data.size()) fail(path, "dims do not match payload size");
    put<std::uint32_t>(out, static_cast<std::uint32_t>(array.aux.size()));
    for (double a : array.aux) put<double>(out, a);

    if (array.dtype == Dtype::kComplex64) {
        std::vector<float> buf(array.data.size() * 2);
        for (std::size_t i = 0; i < array.data.size(); ++i) {
            buf[2 * i] = static_cast<float>(array.data[i].real());
            buf[2 * i + 1] = static_cast<float>(array.data[i].imag());
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
    } else {
        out.write(reinterpret_cast<const char*>(array.data.data()),
                  static_cast<std::streamsize>(array.data.size() * sizeof(cplx)));
    }
    if (!out) fail(path, "write failed");
}

Array read_array(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) fail(path, "bad magic");
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion) fail(path, "unsupported version " + std::to_string(version));

    Array array;
    const auto dtype = get<std::uint32_t>(in);
    if (dtype != 1 && dtype != 2) fail(path, "unknown dtype tag");
    array.dtype = static_cast<Dtype>(dtype);
    array.kind = static_cast<Kind>(get<std::uint32_t>(in));
    const auto ndim = get<std::uint32_t>(in);
    if (ndim > 4) fail(path, "too many dimensions");
    std::uint64_t count = ndim ? 1 : 0;
    array.dims.resize(ndim);
    for (auto& d : array.dims) {
        d = get<std::uint64_t>(in);
        count *= d;
    }
    const auto n_aux = get<std::uint32_t>(in);
    if (n_aux > 64) fail(path, "oversized aux block");
    array.aux.resize(n_aux);
    for (auto& a : array.aux) a = get<double>(in);

    array.data.resize(count);
    if (array.dtype == Dtype::kComplex64) {
        std::vector<float> buf(count * 2);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(float)));
        if (!in) fail(path, "truncated payload");
        for (std::size_t i = 0; i < count; ++i) array.data[i] = cplx(buf[2 * i], buf[2 * i + 1]);
    } else {
        in.read(reinterpret_cast<char*>(array.data.data()),
                static_cast<std::streamsize>(count * sizeof(cplx)));
        if (!in) fail(path, "truncated payload");
    }
    return array;
}

void write_signal(const std::filesystem::path& path, const ComplexSignal& sig, Dtype dtype) {
    Array array;
    array.dtype = dtype;
    array.kind = Kind::kSignal;
    array.dims = {sig.size()};
    array.aux = {sig.fs, sig.t0};
    array.data = sig.data;
    write_array(path, array);
}

ComplexSignal read_signal(const std::filesystem::path& path) {
    Array array = read_array(path);
    if (array.kind != Kind::kSignal || array.aux.size() < 2) fail(path, "not a signal artifact");
    ComplexSignal sig;
    sig.fs = array.aux[0];
    sig.t0 = array.aux[1];
    sig.data = std::move(array.data);
    return sig;
}

void write_signal_matrix(const std::filesystem::path& path,
                         const std::vector<ComplexSignal>& rows, double f_prf, Dtype dtype) {
    if (rows.empty()) fail(path, "empty signal matrix");
    Array array;
    array.dtype = dtype;
    array.kind = Kind::kSignalMatrix;
    array.dims = {rows.size(), rows.front().size()};
    array.aux = {rows.front().fs, rows.front().t0, f_prf};
    array.data.reserve(rows.size() * rows.front().size());
    for (const auto& row : rows) {
        if (row.size() != rows.front().size()) fail(path, "ragged signal matrix");
        array.data.insert(array.data.end(), row.data.begin(), row.data.end());
    }
    write_array(path, array);
}

std::vector<ComplexSignal> read_signal_matrix(const std::filesystem::path& path, double& f_prf) {
    Array array = read_array(path);
    if (array.kind != Kind::kSignalMatrix || array.dims.size() != 2 || array.aux.size() < 3)
        fail(path, "not a signal-matrix artifact");
    f_prf = array.aux[2];
    std::vector<ComplexSignal> rows(array.dims[0]);
    const std::size_t cols = array.dims[1];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r].fs = array.aux[0];
        rows[r].t0 = array.aux[1];
        rows[r].data.assign(array.data.begin() + static_cast<long>(r * cols),
                            array.data.begin() + static_cast<long>((r + 1) * cols));
    }
    return rows;
}

void write_profile_matrix(const std::filesystem::path& path,
                          const std::vector<rangeproc::RangeProfile>& profiles, double f_prf,
                          Dtype dtype) {
    if (profiles.empty()) fail(path, "empty profile matrix");
    Array array;
    array.dtype = dtype;
    array.kind = Kind::kProfileMatrix;
    array.dims = {profiles.size(), profiles.front().r.size()};
    array.aux = {profiles.front().cell_size, static_cast<double>(profiles.front().oversample),
                 profiles.front().domain == rangeproc::RangeDomain::kMonostaticTwoWay ? 0.0 : 1.0,
                 f_prf};
    array.data.reserve(profiles.size() * profiles.front().r.size());
    for (const auto& p : profiles) {
        if (p.r.size() != profiles.front().r.size()) fail(path, "ragged profile matrix");
        array.data.insert(array.data.end(), p.r.begin(), p.r.end());
    }
    write_array(path, array);
}

std::vector<rangeproc::RangeProfile> read_profile_matrix(const std::filesystem::path& path,
                                                         double& f_prf) {
    Array array = read_array(path);
    if (array.kind != Kind::kProfileMatrix || array.dims.size() != 2 || array.aux.size() < 4)
        fail(path, "not a profile-matrix artifact");
    f_prf = array.aux[3];
    std::vector<rangeproc::RangeProfile> profiles(array.dims[0]);
    const std::size_t cols = array.dims[1];
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        auto& p = profiles[i];
        p.cell_size = array.aux[0];
        p.oversample = static_cast<int>(array.aux[1]);
        p.domain = array.aux[2] == 0.0 ? rangeproc::RangeDomain::kMonostaticTwoWay
                                       : rangeproc::RangeDomain::kBistaticRelative;
        p.m = static_cast<int>(i);
        p.t_m = f_prf > 0.0 ? static_cast<double>(i) / f_prf : 0.0;
        p.r.assign(array.data.begin() + static_cast<long>(i * cols),
                   array.data.begin() + static_cast<long>((i + 1) * cols));
    }
    return profiles;
}

void write_image(const std::filesystem::path& path, const imaging::SarImage& image, Dtype dtype) {
    Array array;
    array.dtype = dtype;
    array.kind = Kind::kImage;
    array.dims = {static_cast<std::uint64_t>(image.grid.nv),
                  static_cast<std::uint64_t>(image.grid.nu)};
    const auto& g = image.grid;
    array.aux = {g.origin.x, g.origin.y, g.origin.z, g.u_axis.x, g.u_axis.y, g.u_axis.z,
                 g.v_axis.x, g.v_axis.y, g.v_axis.z, g.du,       g.dv,
                 static_cast<double>(image.provenance), static_cast<double>(image.m_used)};
    array.data = image.a;
    write_array(path, array);
}

imaging::SarImage read_image(const std::filesystem::path& path) {
    Array array = read_array(path);
    if (array.kind != Kind::kImage || array.dims.size() != 2 || array.aux.size() < 13)
        fail(path, "not an image artifact");
    imaging::SarImage image;
    image.grid.nv = static_cast<int>(array.dims[0]);
    image.grid.nu = static_cast<int>(array.dims[1]);
    const auto& aux = array.aux;
    image.grid.origin = {aux[0], aux[1], aux[2]};
    image.grid.u_axis = {aux[3], aux[4], aux[5]};
    image.grid.v_axis = {aux[6], aux[7], aux[8]};
    image.grid.du = aux[9];
    image.grid.dv = aux[10];
    image.provenance = static_cast<imaging::Provenance>(static_cast<int>(aux[11]));
    image.m_used = static_cast<int>(aux[12]);
    image.a = std::move(array.data);
    return image;
}

void write_pgm_db(const std::filesystem::path& path, const std::vector<cplx>& values,
                  std::size_t width, std::size_t height, double floor_db) {
    if (values.size() != width * height) fail(path, "pgm dims mismatch");
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> row(width);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double mag = std::abs(values[y * width + x]);
            double db = peak > 0.0 && mag > 0.0 ? 20.0 * std::log10(mag / peak) : floor_db;
            db = std::clamp(db, floor_db, 0.0);
            row[x] = static_cast<unsigned char>(std::lround(255.0 * (1.0 - db / floor_db)));
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(width));
    }
}

void write_image_csv(const std::filesystem::path& path, const imaging::SarImage& image) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out << "u_m,v_m,re,im,abs\n";
    out.precision(9);
    for (int iv = 0; iv < image.grid.nv; ++iv)
        for (int iu = 0; iu < image.grid.nu; ++iu) {
            const cplx v = image.at(iu, iv);
            out << iu * image.grid.du << ',' << iv * image.grid.dv << ',' << v.real() << ','
                << v.imag() << ',' << std::abs(v) << '\n';
        }
}

void write_cut_csv(const std::filesystem::path& path, const imaging::Profile1D& cut) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out << "offset_m,value_db\n";
    out.precision(9);
    for (std::size_t i = 0; i < cut.offset_m.size(); ++i)
        out << cut.offset_m[i] << ',' << cut.value_db[i] << '\n';
}

}  // namespace sarkit::io
