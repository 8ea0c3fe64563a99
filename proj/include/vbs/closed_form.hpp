#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vbs/types.hpp"

namespace vbs {

// Exact rational with int64 storage; throws on overflow. Enough headroom for
// every desk-scale chain formula here.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    static Rational pow(const Rational& base, int exponent);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// 1D chain block: N_b vertices, internal edge multiplicities, and the two cut
// multiplicities at the ends.
struct ChainSpec {
    int block_length = 0;        // N_b
    std::vector<int> internal;   // M_{j,j+1}, size N_b - 1
    int cut_left = 1;            // M_01
    int cut_right = 1;           // M_{L,L+1}

    static ChainSpec basic(int n_b);                  // spin-1 chain, all M = 1
    static ChainSpec homogeneous(int spin, int n_b);  // spin-S chain, all M = S
    long degeneracy() const;                          // (M_01+1)(M_{L,L+1}+1)
};

struct BasicChainEigenvalues {
    Rational lambda0;  // multiplicity 1
    Rational lambda1;  // multiplicity 3
};

// Lambda_0 = (1 + 3(-1/3)^{N_b})/4, Lambda_1 = (1 - (-1/3)^{N_b})/4.
BasicChainEigenvalues basic_chain_eigenvalues(int n_b);

// (-1)^l S! (S+1)! / [(S-l)! (S+l+1)!], exact.
Rational lambda_ls(int l, int spin);
// Same factorial form with a multiplicity number in place of the spin.
Rational lambda_lm(int l, int multiplicity);

// prod_j lambda(l, M_{j,j+1}) over the internal edges of a chain block.
Rational decay_factor(const ChainSpec& chain, int l);

struct MultipletGroup {
    double eigenvalue = 0.0;  // group mean
    int count = 0;
};

struct ChainSpectrumReport {
    long expected_count = 0;
    int nonzero_count = 0;
    std::vector<MultipletGroup> groups;      // descending eigenvalue
    std::vector<int> expected_multiplicities;  // descending, {2J+1}
    bool count_ok = false;
    bool multiplets_ok = false;
    bool basic_values_ok = false;  // only meaningful when the chain is basic
    bool is_basic = false;
};

// Validates a numerically computed rho_b spectrum against the closed-form
// structure: eigenvalue count, (2J+1)-fold multiplets for J in [|J_-|, J_+],
// and, for the basic chain, the exact eigenvalues. Throws SpectrumMismatch
// with a diagnostic table on failure.
ChainSpectrumReport verify_chain_spectrum(const ChainSpec& chain,
                                          const Eigen::VectorXd& eigenvalues_descending,
                                          double zero_threshold,
                                          const NumericPolicy& policy = {});

}  // namespace vbs
