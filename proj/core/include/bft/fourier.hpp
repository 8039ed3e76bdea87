#pragma once

#include <cstdint>
#include <vector>

#include "bft/boolfn.hpp"

namespace bft {

// Fourier coefficients under the +/-1 convention (value b maps to (-1)^b):
// coef[S] = 2^-n * sum_x (-1)^(f(x) xor parity_S(x)), S encoded as a bit mask.
struct FourierSpectrum {
    uint32_t n = 0;
    std::vector<double> coef;  // size 2^n, indexed by subset mask

    double at(uint64_t mask) const { return coef[mask]; }
    double parseval_sum() const;
    double max_coef() const;
};

// In-place fast Walsh-Hadamard transform (unnormalized).
void fwht(std::vector<double>& v);

FourierSpectrum walsh_hadamard(const TruthTable& t);
FourierSpectrum walsh_hadamard(const BooleanFunction& f);

// Integer correlations sum_x (-1)^(f(x) xor parity_S(x)), indexed by mask S.
// Exact counterpart of 2^n * fhat(S).
std::vector<int64_t> integer_correlations(const TruthTable& t);

// Exact distance from f to the nearest (homogeneous) linear function,
// (1 - max_S fhat(S)) / 2, as an exact fraction of 2^n.
Rational distance_to_linear(const TruthTable& t);

}  // namespace bft
