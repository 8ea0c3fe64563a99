#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vbs/basis.hpp"

using namespace vbs;

TEST_CASE("indexer dimensions and strides") {
    BasisIndexer ix({0, 1, 2}, {1, 2, 1});  // spins 1/2, 1, 1/2
    CHECK(ix.dim() == 12);
    CHECK(ix.local_dim(0) == 2);
    CHECK(ix.local_dim(1) == 3);
    CHECK(ix.stride(0) == 1);
    CHECK(ix.stride(1) == 2);
    CHECK(ix.stride(2) == 6);
    CHECK(ix.position_of(2) == 2);
    CHECK(ix.position_of(7) == -1);
}

TEST_CASE("digit convention: d = 0 is m = +S, little-endian order") {
    BasisIndexer ix({0, 1}, {1, 2});
    // index 0: all digits 0 -> m = (+1/2, +1)
    CHECK(ix.twice_m(0, 0) == 1);
    CHECK(ix.twice_m(0, 1) == 2);
    // index 1: first site digit 1 -> m = (-1/2, +1)
    CHECK(ix.twice_m(1, 0) == -1);
    CHECK(ix.twice_m(1, 1) == 2);
    // index 2: second site digit 1
    CHECK(ix.twice_m(2, 0) == 1);
    CHECK(ix.twice_m(2, 1) == 0);
    CHECK(ix.total_twice_m(0) == 3);
}

TEST_CASE("mixed-radix round trip on random dimensions") {
    std::mt19937_64 rng(20240817);
    for (int rep = 0; rep < 25; ++rep) {
        const int sites = 1 + static_cast<int>(rng() % 8);
        std::vector<VertexId> verts;
        std::vector<TwiceSpin> spins;
        std::size_t dim = 1;
        for (int i = 0; i < sites; ++i) {
            verts.push_back(i);
            TwiceSpin ts = 1 + static_cast<TwiceSpin>(rng() % 5);
            spins.push_back(ts);
            dim *= static_cast<std::size_t>(ts) + 1;
        }
        if (dim > 1000000) continue;
        BasisIndexer ix(verts, spins);
        REQUIRE(ix.dim() == dim);

        std::vector<int> digits(static_cast<std::size_t>(sites));
        if (dim <= 20000) {  // exhaustive on small spaces
            for (std::size_t idx = 0; idx < dim; ++idx) {
                ix.digits_of(idx, digits);
                REQUIRE(ix.index_of(digits) == idx);
            }
        }
        for (int probe = 0; probe < 200; ++probe) {
            const std::size_t idx = rng() % dim;
            ix.digits_of(idx, digits);
            CHECK(ix.index_of(digits) == idx);
            for (int p = 0; p < sites; ++p) CHECK(ix.digit(idx, p) == digits[static_cast<std::size_t>(p)]);
        }
    }
}

TEST_CASE("dimension guard refuses oversized spaces unless forced") {
    std::vector<VertexId> verts;
    std::vector<TwiceSpin> spins;
    for (int i = 0; i < 26; ++i) {
        verts.push_back(i);
        spins.push_back(1);
    }
    CHECK_THROWS_AS(BasisIndexer(verts, spins), Error);  // 2^26 > 2^24

    NumericPolicy forced;
    forced.force = true;
    BasisIndexer ix(verts, spins, forced);
    CHECK(ix.dim() == (std::size_t(1) << 26));
}

TEST_CASE("phase fixing makes the first nonzero amplitude real positive") {
    BasisIndexer ix({0}, {1});
    StateVector psi = zero_state(ix);
    psi.amplitudes(0) = cplx(0, -2.0);
    psi.amplitudes(1) = cplx(1.0, 1.0);
    fix_phase(psi);
    CHECK(psi.amplitudes(0).real() == doctest::Approx(2.0));
    CHECK(std::abs(psi.amplitudes(0).imag()) < 1e-15);
    CHECK(psi.norm() == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("normalized overlap") {
    BasisIndexer ix({0}, {1});
    StateVector a = zero_state(ix), b = zero_state(ix);
    a.amplitudes << 1.0, 1.0;
    b.amplitudes << cplx(0, 2.0), cplx(0, 2.0);
    CHECK(normalized_overlap(a, b) == doctest::Approx(1.0));
    b.amplitudes << 1.0, -1.0;
    CHECK(normalized_overlap(a, b) == doctest::Approx(0.0));

    StateVector z = zero_state(ix);
    CHECK_THROWS_AS(normalized_overlap(a, z), Error);
}
