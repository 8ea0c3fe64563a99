#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vbs {

using VertexId = int;
// Spins are stored doubled (2S) so half-integer values stay exact integers.
using TwiceSpin = int;
using cplx = std::complex<double>;

enum class Errc {
    SelfLoop,
    DuplicateEdge,
    NonPositiveMultiplicity,
    UnknownVertexInBlockDirective,
    SyntaxError,
    EmptyBlock,
    BlockIsWholeGraph,
    BlockTooSmall,
    DimensionMismatch,
    DimensionGuard,
    JOutOfRange,
    LOutOfRange,
    MissingCoefficient,
    NonPositiveCoefficient,
    UniquenessViolated,
    NotBasicModel,
    NormZero,
    NonPositiveAlpha,
    InsufficientSamples,
    SpectrumMismatch,
    NumericalInstability,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message, int line = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          line_(line) {}

    Errc code() const { return code_; }
    int line() const { return line_; }  // 1-based input line for parse errors, -1 otherwise

private:
    Errc code_;
    int line_;
};

// One audited knob for every floating-point comparison in the pipeline.
struct NumericPolicy {
    double hermiticity_tol = 1e-12;
    // zero eigenvalue threshold for density spectra: dim * zero_eig_rel * lambda_max
    double zero_eig_rel = 1e-12;
    // absolute override of the zero threshold when >= 0 (CLI --tol)
    double zero_eig_abs = -1.0;
    // null-space threshold for block Hamiltonians: null_rel * ||H||
    double null_rel = 1e-10;
    // residual tolerance for theorem checks, relative to ||H_b||
    double theorem_tol = 1e-8;
    // projector idempotency drift that triggers a hard error
    double projector_drift = 1e-8;
    std::size_t dim_guard = std::size_t(1) << 24;
    bool force = false;

    double zero_threshold(std::size_t dim, double lambda_max) const {
        if (zero_eig_abs >= 0.0) return zero_eig_abs;
        return static_cast<double>(dim) * zero_eig_rel * lambda_max;
    }
};

}  // namespace vbs
