#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sarkit/io.hpp"
#include "sarkit/rng.hpp"
#include "sarkit/scenario.hpp"

using namespace sarkit;
using namespace sarkit::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sarkit_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

}  // namespace

TEST_CASE("empty scenario text yields the full default parameter set") {
    const auto sc = parse_scenario("");
    CHECK(sc.params.fc == doctest::Approx(1.2e9));
    CHECK(sc.params.n_subcarriers == 4096);
    CHECK(sc.params.delta_f == doctest::Approx(100e3));
    CHECK(sc.params.bandwidth() == doctest::Approx(409.6e6));
    CHECK(sc.params.symbol_T == doctest::Approx(12.5e-6));
    CHECK(sc.params.cp_T == doctest::Approx(3.125e-6));
    CHECK(sc.params.fs == doctest::Approx(1.024e9));
    CHECK(sc.params.adc_bits == 14);
    CHECK(sc.params.f_prf == doctest::Approx(100.0));
    CHECK(sc.measurements == 3001);
    CHECK(sc.targets.size() == 5);
    CHECK(sc.rx_offsets.size() == 1);
    CHECK(sc.processing.oversample == 8);
    CHECK(sc.seed == 1);
}

TEST_CASE("scenario keys override defaults and drive derived geometry") {
    const char* text = R"(
# reduced study
[ofdm]
f_prf_hz = 50

[scene]
tx_start = 0 -2 8
tx_velocity = 0 0.5 0
target = 12 0 0
target = 18 1 0 0.5 -0.5
rx_offset = none
rx_offset = 0 -1.5 0

[campaign]
measurements = 11
seed = 42
)";
    const auto sc = parse_scenario(text, "inline");
    CHECK(sc.params.f_prf == 50.0);
    CHECK(sc.measurements == 11);
    CHECK(sc.seed == 42);
    REQUIRE(sc.targets.size() == 2);
    CHECK(sc.targets[1].reflectivity == cplx(0.5, -0.5));
    REQUIRE(sc.rx_offsets.size() == 1);
    CHECK(sc.rx_offsets[0].y == doctest::Approx(-1.5));

    const auto traj = sc.tx_trajectory();
    REQUIRE(traj.samples.size() == 11);
    CHECK(traj.samples.back().t == doctest::Approx(10.0 / 50.0));
    CHECK(traj.samples.back().pos.y == doctest::Approx(-2.0 + 0.5 * 0.2));

    const auto scn = sc.make_scene();
    CHECK(scn.rx.size() == 1);
    CHECK(scn.rx[0].samples[0].pos.y == doctest::Approx(-3.5));
}

TEST_CASE("shipped scenarios load and agree with the reference parameters") {
    const auto full = load_scenario(fs::path(SARKIT_SOURCE_DIR) / "scenarios/sim_full.scn");
    CHECK(full.params.fc == doctest::Approx(1.2e9));
    CHECK(full.params.n_subcarriers == 4096);
    CHECK(full.params.delta_f == doctest::Approx(100e3));
    CHECK(full.measurements == 3001);

    const auto small = load_scenario(fs::path(SARKIT_SOURCE_DIR) / "scenarios/sim_small.scn");
    CHECK(small.measurements == 301);
    CHECK(small.processing.window == rangeproc::Window::kNone);

    const auto tandem = load_scenario(fs::path(SARKIT_SOURCE_DIR) / "scenarios/uav_tandem.scn");
    CHECK(tandem.params.f_prf == doctest::Approx(20.0));
    CHECK(tandem.rx_offsets.at(0).y == doctest::Approx(-4.7));
    // duty cycle and data rate at 20 Hz match the outdoor budget
    CHECK(waveform::duty_cycle(tandem.params.symbol_T + tandem.params.cp_T,
                               tandem.params.t_pri()) == doctest::Approx(0.0003125));
}

TEST_CASE("parse failures carry file and line diagnostics") {
    try {
        parse_scenario("[ofdm]\nbogus_key = 1\n", "bad.scn");
        FAIL("expected a parse error");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.scn:2") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS(parse_scenario("[nope]\n", "x"));
    CHECK_THROWS(parse_scenario("key_without_section = 1\n", "x"));
    CHECK_THROWS(parse_scenario("[ofdm]\nfc_hz = not_a_number\n", "x"));
}

TEST_CASE("validation rejects aliased configurations") {
    try {
        parse_scenario("[ofdm]\nsample_rate_hz = 2.0e8\n", "alias.scn");
        FAIL("expected a validation error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("B = N*delta_f <= fs") != std::string::npos);
    }
}

TEST_CASE("binary array round trip preserves header and payload") {
    TempDir tmp;
    Rng rng(2024);
    io::Array a;
    a.kind = io::Kind::kProfileMatrix;
    a.dims = {3, 17};
    a.aux = {0.5, 8.0, 1.0, 100.0};
    for (int i = 0; i < 51; ++i) a.data.emplace_back(rng.gauss(), rng.gauss());

    SUBCASE("complex128 is lossless") {
        a.dtype = io::Dtype::kComplex128;
        io::write_array(tmp.path / "x.bin", a);
        const auto b = io::read_array(tmp.path / "x.bin");
        CHECK(b.dims == a.dims);
        CHECK(b.aux == a.aux);
        CHECK(b.data == a.data);
        CHECK(b.kind == a.kind);
    }
    SUBCASE("complex64 round trips to float precision") {
        a.dtype = io::Dtype::kComplex64;
        io::write_array(tmp.path / "y.bin", a);
        const auto b = io::read_array(tmp.path / "y.bin");
        REQUIRE(b.data.size() == a.data.size());
        for (std::size_t i = 0; i < a.data.size(); ++i)
            CHECK(std::abs(b.data[i] - a.data[i]) < 1e-6 * (1.0 + std::abs(a.data[i])));
    }
}

TEST_CASE("signal and image containers survive the file round trip") {
    TempDir tmp;
    ComplexSignal sig;
    sig.fs = 1.024e9;
    sig.t0 = -3.125e-6;
    for (int i = 0; i < 33; ++i) sig.data.emplace_back(i, -i);
    io::write_signal(tmp.path / "sig.bin", sig, io::Dtype::kComplex128);
    const auto sig2 = io::read_signal(tmp.path / "sig.bin");
    CHECK(sig2.fs == sig.fs);
    CHECK(sig2.t0 == sig.t0);
    CHECK(sig2.data == sig.data);

    imaging::SarImage image;
    image.grid.origin = {3.0, -6.0, 0.0};
    image.grid.nu = 4;
    image.grid.nv = 2;
    image.provenance = imaging::Provenance::kCombinedCoherent;
    image.m_used = 7;
    for (int i = 0; i < 8; ++i) image.a.emplace_back(i * 0.5, 1.0);
    io::write_image(tmp.path / "img.bin", image, io::Dtype::kComplex128);
    const auto image2 = io::read_image(tmp.path / "img.bin");
    CHECK(image2.grid.nu == 4);
    CHECK(image2.grid.nv == 2);
    CHECK(image2.provenance == imaging::Provenance::kCombinedCoherent);
    CHECK(image2.m_used == 7);
    CHECK(image2.a == image.a);

    CHECK_THROWS(io::read_signal(tmp.path / "img.bin"));  // kind mismatch
}

TEST_CASE("PGM export maps dB to gray levels") {
    TempDir tmp;
    // magnitudes: 0 dB, -20 dB, -30 dB, silence
    const std::vector<cplx> values{cplx(1.0, 0.0), cplx(0.1, 0.0), cplx(0.0316227766, 0.0),
                                   cplx(0.0, 0.0)};
    io::write_pgm_db(tmp.path / "img.pgm", values, 2, 2);
    std::ifstream in(tmp.path / "img.pgm", std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header == "P5");
    std::string dims, maxval;
    std::getline(in, dims);
    std::getline(in, maxval);
    CHECK(dims == "2 2");
    unsigned char px[4];
    in.read(reinterpret_cast<char*>(px), 4);
    CHECK(static_cast<int>(px[0]) == 255);
    CHECK(static_cast<int>(px[1]) == 85);
    CHECK(static_cast<int>(px[2]) == 0);
    CHECK(static_cast<int>(px[3]) == 0);
}
