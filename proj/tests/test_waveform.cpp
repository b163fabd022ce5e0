#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sarkit/constants.hpp"
#include "sarkit/waveform.hpp"
#include "test_helpers.hpp"

using namespace sarkit;
using namespace sarkit::waveform;
using sarkit::testing::full_params;
using sarkit::testing::small_params;

TEST_CASE("code symbols are unit-magnitude QPSK, reproducible from the seed") {
    auto params = full_params();
    const auto a = generate_code(params, 42);
    const auto b = generate_code(params, 42);
    REQUIRE(a.d.size() == 4096);
    CHECK(a.d == b.d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& sym : a.d) {
        CHECK(std::abs(std::abs(sym) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(sym.real()) - inv_sqrt2) < 1e-15);
        CHECK(std::abs(std::abs(sym.imag()) - inv_sqrt2) < 1e-15);
    }
}

TEST_CASE("adjacent seeds give different codes") {
    auto params = full_params();
    const auto a = generate_code(params, 7);
    const auto b = generate_code(params, 8);
    std::size_t differing = 0;
    for (std::size_t n = 0; n < a.d.size(); ++n)
        if (a.d[n] != b.d[n]) ++differing;
    CHECK(differing >= 1);
}

TEST_CASE("single DC subcarrier gives a constant symbol body") {
    OfdmParams p;
    p.n_subcarriers = 1;
    p.delta_f = 100e3;
    p.fs = 100e3;  // one sample per 1/delta_f
    p.symbol_T = 30e-6;
    p.cp_T = 0.0;
    p.f_prf = 100.0;
    CodeSymbols code;
    code.d = {cplx(1.0, 0.0)};
    const auto sym = generate_symbol(p, code);
    REQUIRE(sym.size() == static_cast<std::size_t>(p.body_samples()));
    for (const auto& v : sym.data) CHECK(sarkit::testing::rel_err(v, cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("symbol body length follows T at the full parameter set") {
    auto params = full_params();
    const auto code = generate_code(params, 1);
    const auto sym = generate_symbol(params, code);
    CHECK(params.body_samples() == 12800);  // 12.5 us at 1.024 GS/s
    CHECK(sym.size() == static_cast<std::size_t>(12800 + 3200));
    CHECK(sym.t0 == doctest::Approx(-params.cp_T));
}

TEST_CASE("cyclic prefix is the tail of the body") {
    auto params = small_params();
    const auto code = generate_code(params, 3);
    const auto sym = generate_symbol(params, code);
    const long n_cp = params.cp_samples();
    const long n_body = params.body_samples();
    for (long j = 0; j < n_cp; ++j)
        CHECK(sym.data[static_cast<std::size_t>(j)] ==
              sym.data[static_cast<std::size_t>(n_body + j)]);
}

TEST_CASE("mean body power over one orthogonality period equals N") {
    auto params = small_params();
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto sym = generate_symbol(params, generate_code(params, seed));
        const long n_cp = params.cp_samples();
        const long k_win = params.dft_samples();
        double acc = 0.0;
        for (long k = 0; k < k_win; ++k)
            acc += std::norm(sym.data[static_cast<std::size_t>(n_cp + k)]);
        acc /= static_cast<double>(k_win);
        CHECK(acc == doctest::Approx(params.n_subcarriers).epsilon(1e-9));
    }
}

TEST_CASE("aliased synthesis is rejected") {
    auto params = small_params();
    params.fs = params.bandwidth() / 2.0;  // B > fs
    CodeSymbols code;
    code.d.assign(static_cast<std::size_t>(params.n_subcarriers), cplx(1.0, 0.0));
    CHECK_THROWS_AS(generate_symbol(params, code), std::invalid_argument);
}

TEST_CASE("upconvert: zero frequency is the identity") {
    auto params = small_params();
    const auto sym = generate_symbol(params, generate_code(params, 5));
    const auto up = upconvert(sym, 0.0);
    for (std::size_t i = 0; i < sym.size(); ++i) CHECK(up.data[i] == sym.data[i]);
}

TEST_CASE("upconvert at fs/4 cycles through quadrature phases") {
    ComplexSignal x;
    x.fs = 4e6;
    x.t0 = 0.0;
    x.data.assign(8, cplx(1.0, 0.0));
    const auto up = upconvert(x, x.fs / 4.0);
    const cplx expected[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (std::size_t i = 0; i < up.size(); ++i)
        CHECK(std::abs(up.data[i] - expected[i % 4]) < 1e-12);
}

TEST_CASE("frame assembly reproduces the duty-cycle budget and layout") {
    ComplexSignal trig, radar, payload;
    radar.fs = trig.fs = payload.fs = 1.024e9;
    radar.data.assign(16000, cplx(1.0, 0.0));  // 15.625 us

    auto frame = assemble_frame(trig, radar, payload, 10e-3);
    CHECK(frame.active_fraction() == doctest::Approx(0.0015625).epsilon(1e-12));
    CHECK(frame.radar_start == 0);  // zero-length trigger
    CHECK(frame.period_samples == 10240000);

    const auto period = materialize_frame(frame);
    CHECK(period.size() == 10240000);
    CHECK(period.data[15999] == cplx(1.0, 0.0));
    CHECK(period.data[16000] == cplx(0.0, 0.0));
}

TEST_CASE("segments exceeding the PRI overflow") {
    ComplexSignal trig, radar, payload;
    radar.fs = 1.024e9;
    radar.data.assign(static_cast<std::size_t>(11e-3 * 1.024e9), cplx(1.0, 0.0));
    CHECK_THROWS_AS(assemble_frame(trig, radar, payload, 10e-3), std::overflow_error);
}

TEST_CASE("frame repetition puts trigger starts at m*round(T_pri*fs)") {
    auto params = small_params();
    ComplexSignal trig;
    trig.fs = params.fs;
    trig.data.assign(32, cplx(1.0, 0.0));
    const auto radar = generate_symbol(params, generate_code(params, 9));
    const double t_pri = 50e-6;
    const auto frame = assemble_frame(trig, radar, {}, t_pri);
    const auto stream = materialize_stream(frame, 4);
    const long period = std::lround(t_pri * params.fs);
    REQUIRE(stream.size() == static_cast<std::size_t>(4 * period));
    for (int m = 0; m < 4; ++m) {
        CHECK(stream.data[static_cast<std::size_t>(m * period)] == cplx(1.0, 0.0));
        if (m > 0) CHECK(stream.data[static_cast<std::size_t>(m * period - 1)] == cplx(0.0, 0.0));
    }
}

TEST_CASE("duty cycle values from both parameter tables") {
    CHECK(duty_cycle(15.625e-6, 10e-3) == doctest::Approx(0.0015625).epsilon(1e-12));
    CHECK(duty_cycle(15.625e-6, 50e-3) == doctest::Approx(0.0003125).epsilon(1e-12));
    CHECK(duty_cycle(1.0, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(duty_cycle(2.0, 1.0), std::domain_error);
}

TEST_CASE("mean data rate reproduces the system budgets") {
    CHECK(mean_data_rate(1.024e9, 14, 0.0015625, 2) == doctest::Approx(44.8e6).epsilon(1e-12));
    CHECK(mean_data_rate(1.024e9, 14, 0.0003125, 2) == doctest::Approx(8.96e6).epsilon(1e-12));
    CHECK(mean_data_rate(1.024e9, 14, 0.0, 2) == 0.0);
}

TEST_CASE("effective chirp bandwidth") {
    CHECK(effective_bandwidth_chirp(12.5e-6, 0.0, 409.6e6) == doctest::Approx(409.6e6));
    CHECK(effective_bandwidth_chirp(12.5e-6, 1.25e-6, 409.6e6) ==
          doctest::Approx(368.64e6).epsilon(1e-12));
    CHECK(effective_bandwidth_chirp(12.5e-6, 12.5e-6, 409.6e6) == doctest::Approx(0.0));
    CHECK_THROWS_AS(effective_bandwidth_chirp(12.5e-6, 13e-6, 409.6e6), std::domain_error);
}

TEST_CASE("timing budget values and linear scaling") {
    const auto b = timing_budget(0.02, 10e-3, 10.0);
    CHECK(b.dt_sync == doctest::Approx(2.0 * 0.02 / kC0).epsilon(1e-15));
    CHECK(b.dt_sync == doctest::Approx(133e-12).epsilon(5e-3));
    CHECK(b.dt_pri == doctest::Approx(10e-3));
    CHECK(b.dt_loc == doctest::Approx(4e-3).epsilon(1e-12));

    const auto b2 = timing_budget(0.04, 10e-3, 10.0);
    CHECK(b2.dt_sync == doctest::Approx(2.0 * b.dt_sync).epsilon(1e-12));
    CHECK(b2.dt_loc == doctest::Approx(2.0 * b.dt_loc).epsilon(1e-12));
}

TEST_CASE("bandwidth identity holds for constructed parameter sets") {
    for (int n : {1, 64, 4096}) {
        OfdmParams p = small_params();
        p.n_subcarriers = n;
        p.fs = std::max(p.fs, n * p.delta_f);
        if (std::fmod(p.fs / p.delta_f, 1.0) != 0.0) continue;
        p.validate();
        CHECK(p.bandwidth() == doctest::Approx(n * p.delta_f));
    }
}
