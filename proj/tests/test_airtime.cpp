#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loracap/airtime.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace loracap;

namespace {

PhyConfig phy(int sf, int pl, int ih = 1, int de = 0, int cr = 1, double bw = 125000.0,
              int n_preamble = 8) {
    PhyConfig p;
    p.sf = sf;
    p.payload_bytes = pl;
    p.ih = ih;
    p.de = de;
    p.cr_index = cr;
    p.bw_hz = bw;
    p.n_preamble = n_preamble;
    return p;
}

}  // namespace

TEST_CASE("symbol duration") {
    CHECK(symbol_duration(7, 125000.0) == doctest::Approx(1.024e-3).epsilon(1e-12));
    CHECK(symbol_duration(12, 125000.0) == doctest::Approx(32.768e-3).epsilon(1e-12));
    CHECK(symbol_duration(7, 250000.0) == doctest::Approx(0.512e-3).epsilon(1e-12));

    CHECK_THROWS_AS(symbol_duration(6, 125000.0), std::invalid_argument);
    CHECK_THROWS_AS(symbol_duration(13, 125000.0), std::invalid_argument);
    CHECK_THROWS_AS(symbol_duration(7, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(symbol_duration(7, -125000.0), std::invalid_argument);
}

TEST_CASE("preamble duration") {
    CHECK(preamble_duration(phy(7, 16)) == doctest::Approx(12.544e-3).epsilon(1e-12));
    CHECK(preamble_duration(phy(12, 16)) == doctest::Approx(401.408e-3).epsilon(1e-12));
    // zero programmed preamble still carries the 4.25 symbol tail
    CHECK(preamble_duration(phy(7, 16, 1, 0, 1, 125000.0, 0)) ==
          doctest::Approx(4.352e-3).epsilon(1e-12));
}

TEST_CASE("payload symbol count") {
    CHECK(payload_symbol_count(phy(7, 16)) == 33);
    CHECK(payload_symbol_count(phy(12, 1)) == 8);  // negative numerator clamps
    CHECK(payload_symbol_count(phy(11, 16)) == 23);

    SUBCASE("never below eight symbols") {
        for (int sf = 7; sf <= 12; ++sf)
            for (int pl = 1; pl <= 64; ++pl)
                for (int ih = 0; ih <= 1; ++ih)
                    CHECK(payload_symbol_count(phy(sf, pl, ih)) >= 8);
    }
}

TEST_CASE("time on air examples") {
    CHECK(time_on_air(phy(7, 16)) == doctest::Approx(46.336e-3).epsilon(1e-12));
    CHECK(time_on_air(phy(11, 16)) == doctest::Approx(577.536e-3).epsilon(1e-12));
}

TEST_CASE("time on air equals preamble plus payload symbols") {
    for (int sf = 7; sf <= 12; ++sf)
        for (int pl : {1, 13, 16, 32, 51, 64}) {
            const PhyConfig p = phy(sf, pl);
            CHECK(time_on_air(p) ==
                  preamble_duration(p) + payload_symbol_count(p) * symbol_duration(p.sf, p.bw_hz));
        }
}

TEST_CASE("matches the brute-force re-derivation over the full grid") {
    for (int sf = 7; sf <= 12; ++sf)
        for (int pl = 1; pl <= 64; ++pl)
            for (int cr = 1; cr <= 4; ++cr)
                for (int ih = 0; ih <= 1; ++ih)
                    for (int de = 0; de <= 1; ++de) {
                        const PhyConfig p = phy(sf, pl, ih, de, cr);
                        const double expect =
                            oracle::time_on_air_bruteforce(sf, 125000.0, cr, 8, ih, de, pl);
                        CHECK(time_on_air(p) == doctest::Approx(expect).epsilon(1e-12));
                        CHECK(payload_symbol_count(p) ==
                              doctest::Approx(oracle::payload_symbols_bruteforce(sf, cr, ih, de, pl))
                                  .epsilon(1e-12));
                    }
}

TEST_CASE("monotone in payload and coding rate") {
    for (int sf = 7; sf <= 12; ++sf) {
        for (int pl = 1; pl < 64; ++pl)
            CHECK(time_on_air(phy(sf, pl + 1)) >= time_on_air(phy(sf, pl)));
        for (int cr = 1; cr < 4; ++cr)
            CHECK(time_on_air(phy(sf, 16, 1, 0, cr + 1)) >= time_on_air(phy(sf, 16, 1, 0, cr)));
    }
}

TEST_CASE("doubling the bandwidth halves every duration") {
    for (int sf = 7; sf <= 12; ++sf)
        for (int pl : {1, 16, 48}) {
            const PhyConfig narrow = phy(sf, pl);
            const PhyConfig wide = phy(sf, pl, 1, 0, 1, 250000.0);
            CHECK(symbol_duration(wide.sf, wide.bw_hz) ==
                  doctest::Approx(0.5 * symbol_duration(narrow.sf, narrow.bw_hz)).epsilon(1e-12));
            CHECK(preamble_duration(wide) ==
                  doctest::Approx(0.5 * preamble_duration(narrow)).epsilon(1e-12));
            CHECK(time_on_air(wide) == doctest::Approx(0.5 * time_on_air(narrow)).epsilon(1e-12));
        }
}

TEST_CASE("validation warns outside the usual payload range but does not fail") {
    CHECK(validate(phy(7, 16)).empty());
    CHECK(validate(phy(7, 13)).empty());
    CHECK(validate(phy(7, 51)).empty());
    CHECK(validate(phy(7, 5)).size() == 1);
    CHECK(validate(phy(7, 52)).size() == 1);
    CHECK_THROWS_AS(validate(phy(7, 0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(phy(7, 16, 2)), std::invalid_argument);
    CHECK_THROWS_AS(validate(phy(7, 16, 1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(validate(phy(7, 16, 1, 0, 5)), std::invalid_argument);
    CHECK_THROWS_AS(validate(phy(7, 16, 1, 0, 0)), std::invalid_argument);
}
