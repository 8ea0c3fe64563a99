#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vbs/closed_form.hpp"
#include "vbs/density.hpp"
#include "vbs/vbs_state.hpp"

using namespace vbs;

TEST_CASE("rational arithmetic is exact and normalized") {
    Rational a(2, -4);
    CHECK(a.num() == -1);
    CHECK(a.den() == 2);
    CHECK(a.str() == "-1/2");
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(9, 4)).str() == "3/2");
    CHECK((Rational(1) - Rational(1, 3)).value() == doctest::Approx(2.0 / 3.0));
    CHECK(Rational::pow(Rational(-1, 3), 3).str() == "-1/27");
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational(1, 3) / Rational(0), Error);
}

TEST_CASE("basic chain eigenvalues at small N_b") {
    auto e1 = basic_chain_eigenvalues(1);
    CHECK(e1.lambda0.str() == "0");
    CHECK(e1.lambda1.str() == "1/3");

    auto e2 = basic_chain_eigenvalues(2);
    CHECK(e2.lambda0.str() == "1/3");
    CHECK(e2.lambda1.str() == "2/9");

    CHECK_THROWS_AS(basic_chain_eigenvalues(0), Error);
}

TEST_CASE("lambda0 + 3 lambda1 = 1 exactly, and both saturate to 1/4 geometrically") {
    for (int n = 1; n <= 20; ++n) {
        auto e = basic_chain_eigenvalues(n);
        CHECK((e.lambda0 + Rational(3) * e.lambda1) == Rational(1));
        const double bound = std::pow(1.0 / 3.0, n);
        CHECK(std::abs(e.lambda0.value() - 0.25) <= bound + 1e-15);
        CHECK(std::abs(e.lambda1.value() - 0.25) <= bound + 1e-15);
    }
}

TEST_CASE("lambda(l, S) factorial formula") {
    CHECK(lambda_ls(1, 1).str() == "-1/3");
    CHECK(lambda_ls(1, 2).str() == "-1/2");
    CHECK(lambda_ls(2, 2).str() == "1/10");
    for (int spin = 1; spin <= 6; ++spin) CHECK(lambda_ls(0, spin) == Rational(1));
    CHECK_THROWS_AS(lambda_ls(3, 2), Error);
    CHECK_THROWS_AS(lambda_ls(-1, 2), Error);
}

TEST_CASE("lambda_ls and lambda_lm are the same function") {
    for (int m = 1; m <= 6; ++m)
        for (int l = 0; l <= m; ++l) CHECK(lambda_ls(l, m) == lambda_lm(l, m));
}

TEST_CASE("decay factor over internal edges") {
    CHECK(decay_factor(ChainSpec::basic(4), 0) == Rational(1));
    CHECK(decay_factor(ChainSpec::basic(4), 1).str() == "-1/27");  // (-1/3)^3

    ChainSpec two;
    two.block_length = 3;
    two.internal = {2, 2};
    two.cut_left = two.cut_right = 2;
    CHECK(decay_factor(two, 2).str() == "1/100");
    CHECK(decay_factor(two, 1).str() == "1/4");
    CHECK_THROWS_AS(decay_factor(two, 3), Error);
}

namespace {

DensitySpectrum chain_block_spectrum(const char* text, const std::vector<VertexId>& block) {
    auto g = parse_graph(text).graph;
    auto s = infer_spins(g);
    auto cut = cut_graph(g, block);
    auto psi = vbs_schwinger(g, s);
    return spectrum(density_matrix(psi, cut).rho);
}

}  // namespace

TEST_CASE("numerical chain spectra match the closed-form structure") {
    // basic spin-1 chain, N_b = 2 and 3
    auto s2 = chain_block_spectrum("e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\n", {2, 3});
    auto r2 = verify_chain_spectrum(ChainSpec::basic(2), s2.eigenvalues, s2.zero_threshold);
    CHECK(r2.count_ok);
    CHECK(r2.multiplets_ok);
    CHECK(r2.basic_values_ok);
    CHECK(r2.is_basic);

    auto s3 =
        chain_block_spectrum("e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\ne 5 6 1\n", {2, 3, 4});
    auto r3 = verify_chain_spectrum(ChainSpec::basic(3), s3.eigenvalues, s3.zero_threshold);
    CHECK(r3.basic_values_ok);

    // homogeneous S=2 chain, N_b = 3: 9 nonzero eigenvalues in multiplets 1+3+5
    auto h3 = chain_block_spectrum("e 0 1 2\ne 1 2 2\ne 2 3 2\ne 3 4 2\n", {1, 2, 3});
    auto hr = verify_chain_spectrum(ChainSpec::homogeneous(2, 3), h3.eigenvalues,
                                    h3.zero_threshold);
    CHECK(hr.count_ok);
    CHECK(hr.multiplets_ok);
    CHECK_FALSE(hr.is_basic);
    std::vector<int> sizes;
    for (const auto& grp : hr.groups) sizes.push_back(grp.count);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 3, 5});

    // generalized chain M = (1,2,1), block of the two spin-3/2 vertices:
    // J in {0, 1} -> multiplets (1, 3)
    auto g3 = chain_block_spectrum("e 0 1 1\ne 1 2 2\ne 2 3 1\n", {1, 2});
    ChainSpec gen;
    gen.block_length = 2;
    gen.internal = {2};
    gen.cut_left = gen.cut_right = 1;
    auto gr = verify_chain_spectrum(gen, g3.eigenvalues, g3.zero_threshold);
    CHECK(gr.count_ok);
    CHECK(gr.multiplets_ok);
    CHECK(gr.expected_multiplicities == std::vector<int>{3, 1});
}

TEST_CASE("spectrum mismatch raises a diagnostic error") {
    Eigen::VectorXd fake(4);
    fake << 0.5, 0.3, 0.1, 0.1;
    CHECK_THROWS_WITH_AS(verify_chain_spectrum(ChainSpec::basic(2), fake, 1e-12),
                         doctest::Contains("SpectrumMismatch"), Error);
}

namespace {

// Environment-side spectrum: same nonzero eigenvalues as the block by the
// Schmidt decomposition, at a fraction of the diagonalization cost.
DensitySpectrum env_side_spectrum(const std::string& text,
                                  const std::vector<VertexId>& block) {
    auto g = parse_graph(text).graph;
    auto s = infer_spins(g);
    auto cut = cut_graph(g, block);
    auto psi = vbs_schwinger(g, s);
    return spectrum(partial_trace(psi, cut.environment).rho);
}

// spin-1 chain with one environment site each side
std::string basic_chain(int n_b) {
    std::string text;
    for (int i = 0; i + 1 < n_b + 2; ++i)
        text += "e " + std::to_string(i) + " " + std::to_string(i + 1) + " 1\n";
    return text;
}

std::string s2_chain(int n_b) {
    std::string text;
    for (int i = 0; i + 1 < n_b + 2; ++i)
        text += "e " + std::to_string(i) + " " + std::to_string(i + 1) + " 2\n";
    return text;
}

std::vector<VertexId> bulk_block(int n_b) {
    std::vector<VertexId> block;
    for (int i = 1; i <= n_b; ++i) block.push_back(i);
    return block;
}

double flatness(const DensitySpectrum& spec, long deg) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
        if (spec.eigenvalues(i) > spec.zero_threshold)
            dev = std::max(dev, std::abs(spec.eigenvalues(i) - 1.0 / deg));
    return dev;
}

}  // namespace

TEST_CASE("chain families verify across desk-scale block lengths") {
    for (int n_b = 2; n_b <= 6; ++n_b) {
        auto spec = env_side_spectrum(basic_chain(n_b), bulk_block(n_b));
        auto rep = verify_chain_spectrum(ChainSpec::basic(n_b), spec.eigenvalues,
                                         spec.zero_threshold);
        CHECK(rep.basic_values_ok);
        CHECK(rep.multiplets_ok);
    }
    for (int n_b = 2; n_b <= 4; ++n_b) {
        auto spec = env_side_spectrum(s2_chain(n_b), bulk_block(n_b));
        auto rep = verify_chain_spectrum(ChainSpec::homogeneous(2, n_b), spec.eigenvalues,
                                         spec.zero_threshold);
        CHECK(rep.count_ok);
        CHECK(rep.multiplets_ok);
    }
}

TEST_CASE("eigenvalues flatten toward 1/deg at the decay_factor rate") {
    // basic chain: |lambda - 1/4| shrinks by exactly lambda(1,1) = -1/3 per site
    std::vector<double> dev_basic;
    for (int n_b = 3; n_b <= 5; ++n_b)
        dev_basic.push_back(flatness(env_side_spectrum(basic_chain(n_b), bulk_block(n_b)), 4));
    const double step_basic = std::abs(lambda_ls(1, 1).value());
    CHECK(dev_basic[1] / dev_basic[0] == doctest::Approx(step_basic).epsilon(1e-9));
    CHECK(dev_basic[2] / dev_basic[1] == doctest::Approx(step_basic).epsilon(1e-9));

    // S=2 chain: ratio approaches lambda(1,2) = -1/2, corrections O((1/5)^{N_b})
    std::vector<double> dev_s2;
    for (int n_b = 3; n_b <= 5; ++n_b)
        dev_s2.push_back(flatness(env_side_spectrum(s2_chain(n_b), bulk_block(n_b)), 9));
    const double step_s2 = std::abs(lambda_lm(1, 2).value());
    CHECK(dev_s2[1] / dev_s2[0] == doctest::Approx(step_s2).epsilon(0.1));
    CHECK(dev_s2[2] / dev_s2[1] == doctest::Approx(step_s2).epsilon(0.1));

    // and decay_factor aggregates the per-edge factors over a whole block
    CHECK(std::abs(decay_factor(ChainSpec::basic(5), 1).value()) ==
          doctest::Approx(std::pow(step_basic, 4)).epsilon(1e-12));
}
