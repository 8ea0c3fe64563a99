#include "vbs/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vbs {

namespace {

std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(Errc::NumericalInstability, "rational overflow");
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error(Errc::NumericalInstability, "zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked(static_cast<__int128>(num_) * o.den_ +
                            static_cast<__int128>(o.num_) * den_),
                    checked(static_cast<__int128>(den_) * o.den_));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(checked(static_cast<__int128>(num_) * o.num_),
                    checked(static_cast<__int128>(den_) * o.den_));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw Error(Errc::NumericalInstability, "division by zero");
    return Rational(checked(static_cast<__int128>(num_) * o.den_),
                    checked(static_cast<__int128>(den_) * o.num_));
}

Rational Rational::pow(const Rational& base, int exponent) {
    Rational r(1);
    for (int i = 0; i < exponent; ++i) r = r * base;
    return r;
}

ChainSpec ChainSpec::basic(int n_b) {
    ChainSpec c;
    c.block_length = n_b;
    c.internal.assign(static_cast<std::size_t>(std::max(0, n_b - 1)), 1);
    c.cut_left = c.cut_right = 1;
    return c;
}

ChainSpec ChainSpec::homogeneous(int spin, int n_b) {
    ChainSpec c;
    c.block_length = n_b;
    c.internal.assign(static_cast<std::size_t>(std::max(0, n_b - 1)), spin);
    c.cut_left = c.cut_right = spin;
    return c;
}

long ChainSpec::degeneracy() const {
    return static_cast<long>(cut_left + 1) * (cut_right + 1);
}

BasicChainEigenvalues basic_chain_eigenvalues(int n_b) {
    if (n_b < 1) throw Error(Errc::LOutOfRange, "N_b must be >= 1");
    const Rational q = Rational::pow(Rational(-1, 3), n_b);
    BasicChainEigenvalues out;
    out.lambda0 = (Rational(1) + Rational(3) * q) * Rational(1, 4);
    out.lambda1 = (Rational(1) - q) * Rational(1, 4);
    return out;
}

Rational lambda_ls(int l, int spin) {
    if (l < 0 || l > spin) throw Error(Errc::LOutOfRange, "need 0 <= l <= S");
    // (-1)^l S!(S+1)!/[(S-l)!(S+l+1)!] = (-1)^l prod_{i<l}(S-i) / prod_{i=2}^{l+1}(S+i)
    Rational r((l % 2 == 0) ? 1 : -1);
    for (int i = 0; i < l; ++i) r = r * Rational(spin - i);
    for (int i = 2; i <= l + 1; ++i) r = r / Rational(spin + i);
    return r;
}

Rational lambda_lm(int l, int multiplicity) {
    if (l < 0 || l > multiplicity) throw Error(Errc::LOutOfRange, "need 0 <= l <= M");
    return lambda_ls(l, multiplicity);
}

Rational decay_factor(const ChainSpec& chain, int l) {
    int m_min = INT32_MAX;
    for (int m : chain.internal) m_min = std::min(m_min, m);
    if (!chain.internal.empty() && l > m_min)
        throw Error(Errc::LOutOfRange, "l exceeds the minimum internal multiplicity");
    Rational r(1);
    for (int m : chain.internal) r = r * lambda_lm(l, m);
    return r;
}

ChainSpectrumReport verify_chain_spectrum(const ChainSpec& chain,
                                          const Eigen::VectorXd& eigenvalues_descending,
                                          double zero_threshold,
                                          const NumericPolicy& policy) {
    (void)policy;
    ChainSpectrumReport rep;
    rep.expected_count = chain.degeneracy();
    rep.is_basic = chain.cut_left == 1 && chain.cut_right == 1 &&
                   std::all_of(chain.internal.begin(), chain.internal.end(),
                               [](int m) { return m == 1; });

    std::vector<double> nonzero;
    for (Eigen::Index i = 0; i < eigenvalues_descending.size(); ++i)
        if (eigenvalues_descending(i) > zero_threshold)
            nonzero.push_back(eigenvalues_descending(i));
    rep.nonzero_count = static_cast<int>(nonzero.size());
    rep.count_ok = rep.nonzero_count == rep.expected_count;

    // cluster into multiplets; desk-scale gaps are far above this tolerance
    const double cluster_tol = 1e-7;
    for (double l : nonzero) {
        if (!rep.groups.empty() &&
            std::abs(rep.groups.back().eigenvalue - l) < cluster_tol) {
            auto& grp = rep.groups.back();
            grp.eigenvalue = (grp.eigenvalue * grp.count + l) / (grp.count + 1);
            grp.count += 1;
        } else {
            rep.groups.push_back({l, 1});
        }
    }

    // expected multiplet sizes 2J+1 for J from |J_-| to J_+
    const int tj_minus = std::abs(chain.cut_left - chain.cut_right);
    const int tj_plus = chain.cut_left + chain.cut_right;
    for (int tj = tj_minus; tj <= tj_plus; tj += 2)
        rep.expected_multiplicities.push_back(tj + 1);
    std::sort(rep.expected_multiplicities.rbegin(), rep.expected_multiplicities.rend());

    std::vector<int> got;
    for (const auto& grp : rep.groups) got.push_back(grp.count);
    std::sort(got.rbegin(), got.rend());
    rep.multiplets_ok = got == rep.expected_multiplicities;

    if (rep.is_basic && rep.count_ok) {
        const BasicChainEigenvalues ev = basic_chain_eigenvalues(chain.block_length);
        std::vector<double> expected = {ev.lambda0.value(), ev.lambda1.value(),
                                        ev.lambda1.value(), ev.lambda1.value()};
        std::sort(expected.rbegin(), expected.rend());
        rep.basic_values_ok = true;
        for (std::size_t i = 0; i < expected.size(); ++i)
            rep.basic_values_ok =
                rep.basic_values_ok && std::abs(expected[i] - nonzero[i]) <= 1e-10;
    }

    const bool ok = rep.count_ok && rep.multiplets_ok && (!rep.is_basic || rep.basic_values_ok);
    if (!ok) {
        std::ostringstream os;
        os << "chain spectrum mismatch: expected " << rep.expected_count << " nonzero, got "
           << rep.nonzero_count << "; groups";
        for (const auto& grp : rep.groups)
            os << " [" << grp.eigenvalue << " x" << grp.count << "]";
        os << "; expected multiplicities";
        for (int m : rep.expected_multiplicities) os << " " << m;
        throw Error(Errc::SpectrumMismatch, os.str());
    }
    return rep;
}

}  // namespace vbs
