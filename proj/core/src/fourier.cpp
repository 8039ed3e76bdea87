#include "bft/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace bft {

double FourierSpectrum::parseval_sum() const {
    double s = 0;
    for (double c : coef) s += c * c;
    return s;
}

double FourierSpectrum::max_coef() const {
    return *std::max_element(coef.begin(), coef.end());
}

void fwht(std::vector<double>& v) {
    const size_t size = v.size();
    for (size_t h = 1; h < size; h <<= 1) {
        for (size_t i = 0; i < size; i += h << 1) {
            for (size_t j = i; j < i + h; ++j) {
                double a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

namespace {

void fwht_i64(std::vector<int64_t>& v) {
    const size_t size = v.size();
    for (size_t h = 1; h < size; h <<= 1) {
        for (size_t i = 0; i < size; i += h << 1) {
            for (size_t j = i; j < i + h; ++j) {
                int64_t a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

FourierSpectrum walsh_hadamard(const TruthTable& t) {
    const uint64_t size = t.size();
    FourierSpectrum s;
    s.n = t.n;
    s.coef.resize(size);
    for (uint64_t i = 0; i < size; ++i) s.coef[i] = t.get(i) ? -1.0 : 1.0;
    fwht(s.coef);
    const double scale = std::ldexp(1.0, -int(t.n));
    for (double& c : s.coef) c *= scale;
    return s;
}

FourierSpectrum walsh_hadamard(const BooleanFunction& f) {
    if (f.dim() > kMaxDenseN) throw CapacityError("walsh_hadamard: n > 24");
    return walsh_hadamard(truth_table(f));
}

std::vector<int64_t> integer_correlations(const TruthTable& t) {
    const uint64_t size = t.size();
    std::vector<int64_t> v(size);
    for (uint64_t i = 0; i < size; ++i) v[i] = t.get(i) ? -1 : 1;
    fwht_i64(v);
    return v;
}

Rational distance_to_linear(const TruthTable& t) {
    const uint64_t size = t.size();
    std::vector<int64_t> v = integer_correlations(t);
    int64_t best = *std::max_element(v.begin(), v.end());
    // correlation c with a parity means (2^n - c)/2 disagreements
    return Rational{uint64_t((int64_t(size) - best) / 2), size};
}

}  // namespace bft
