#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sarkit/complex_signal.hpp"
#include "sarkit/imaging.hpp"
#include "sarkit/rangeproc.hpp"

namespace sarkit::io {

// Binary container for signals, measurement matrices, range-profile matrices
// and SAR images. Layout (little-endian):
//   char[8]  magic "SARKITIO"
//   u32      version (1)
//   u32      dtype   (1 = complex64 float pairs, 2 = complex128 double pairs)
//   u32      kind    (1 signal, 2 signal matrix, 3 profile matrix, 4 image)
//   u32      ndim
//   u64[ndim] dims   (row-major; rows = measurements / v index)
//   u32      n_aux
//   f64[n_aux] aux   (kind-specific, see write_* functions)
//   payload: interleaved re/im
enum class Dtype : std::uint32_t { kComplex64 = 1, kComplex128 = 2 };
enum class Kind : std::uint32_t { kSignal = 1, kSignalMatrix = 2, kProfileMatrix = 3, kImage = 4 };

struct Array {
    Dtype dtype = Dtype::kComplex64;
    Kind kind = Kind::kSignal;
    std::vector<std::uint64_t> dims;
    std::vector<double> aux;
    std::vector<cplx> data;  // held as double precision in memory

    std::uint64_t rows() const { return dims.size() > 1 ? dims[0] : 1; }
    std::uint64_t cols() const { return dims.empty() ? 0 : dims.back(); }
};

void write_array(const std::filesystem::path& path, const Array& array);
Array read_array(const std::filesystem::path& path);

// aux = [fs, t0]
void write_signal(const std::filesystem::path& path, const ComplexSignal& sig,
                  Dtype dtype = Dtype::kComplex64);
ComplexSignal read_signal(const std::filesystem::path& path);

// aux = [fs, t0, f_prf]
void write_signal_matrix(const std::filesystem::path& path,
                         const std::vector<ComplexSignal>& rows, double f_prf,
                         Dtype dtype = Dtype::kComplex64);
std::vector<ComplexSignal> read_signal_matrix(const std::filesystem::path& path, double& f_prf);

// aux = [cell_size, oversample, domain (0 mono / 1 bistatic-relative), f_prf]
void write_profile_matrix(const std::filesystem::path& path,
                          const std::vector<rangeproc::RangeProfile>& profiles, double f_prf,
                          Dtype dtype = Dtype::kComplex64);
std::vector<rangeproc::RangeProfile> read_profile_matrix(const std::filesystem::path& path,
                                                         double& f_prf);

// aux = [origin xyz, u xyz, v xyz, du, dv, provenance, m_used]
void write_image(const std::filesystem::path& path, const imaging::SarImage& image,
                 Dtype dtype = Dtype::kComplex64);
imaging::SarImage read_image(const std::filesystem::path& path);

/// 8-bit grayscale PGM of |values| in dB: 0 dB -> 255, <= -30 dB -> 0.
void write_pgm_db(const std::filesystem::path& path, const std::vector<cplx>& values,
                  std::size_t width, std::size_t height, double floor_db = -30.0);

void write_image_csv(const std::filesystem::path& path, const imaging::SarImage& image);

void write_cut_csv(const std::filesystem::path& path, const imaging::Profile1D& cut);

}  // namespace sarkit::io
