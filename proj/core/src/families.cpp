#include "bft/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "bft/errors.hpp"
#include "bft/fourier.hpp"
#include "bft/gf2.hpp"

namespace bft {

namespace {

constexpr uint64_t kEnumCap = 2'000'000;     // member count cap for enumeration
constexpr uint64_t kScanCap = uint64_t(1) << 26;  // table-scan work cap

void for_each_combination(uint32_t n, uint32_t k,
                          const std::function<void(const std::vector<uint32_t>&)>& fn) {
    if (k > n) return;
    std::vector<uint32_t> c(k);
    for (uint32_t i = 0; i < k; ++i) c[i] = i;
    for (;;) {
        fn(c);
        int32_t i = int32_t(k) - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (uint32_t j = uint32_t(i) + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

std::vector<uint32_t> random_subset(uint32_t n, uint32_t k, Rng& rng) {
    // Floyd's algorithm
    std::vector<uint32_t> out;
    out.reserve(k);
    for (uint32_t j = n - k; j < n; ++j) {
        uint32_t t = uint32_t(rng.below(j + 1));
        if (std::find(out.begin(), out.end(), t) == out.end())
            out.push_back(t);
        else
            out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> random_bits(uint64_t count, Rng& rng) {
    std::vector<uint64_t> w((count + 63) / 64, 0);
    for (auto& x : w) x = rng.next();
    if (count % 64 != 0 && !w.empty()) w.back() &= (uint64_t(1) << (count % 64)) - 1;
    return w;
}

std::vector<uint64_t> bits_from_index(uint64_t count, uint64_t idx) {
    std::vector<uint64_t> w((count + 63) / 64, 0);
    if (!w.empty()) w[0] = idx;
    return w;
}

uint64_t psym_cells(uint32_t n, uint32_t k) { return (uint64_t(1) << k) * (n - k + 1); }

// Exact distance to the nearest function constant on each class, where
// key(x) gives the class of point x. Each class contributes the minority
// count under the best (majority) completion.
uint64_t grouped_majority_disagreements(const TruthTable& t, uint64_t classes,
                                        const std::function<uint64_t(uint64_t)>& key) {
    std::vector<uint64_t> ones(classes, 0), total(classes, 0);
    const uint64_t size = t.size();
    for (uint64_t x = 0; x < size; ++x) {
        uint64_t c = key(x);
        ++total[c];
        ones[c] += t.get(x);
    }
    uint64_t bad = 0;
    for (uint64_t c = 0; c < classes; ++c) bad += std::min(ones[c], total[c] - ones[c]);
    return bad;
}

uint64_t popcount_xor(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    uint64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::popcount(a[i] ^ b[i]);
    return s;
}

}  // namespace

Family Family::lin_k(uint32_t n, uint32_t k) {
    if (k > n) throw ContractError("lin_k: k > n");
    return {FamilyKind::LinK, n, k};
}
Family Family::linear(uint32_t n) { return {FamilyKind::Linear, n, 0}; }
Family Family::jun_k(uint32_t n, uint32_t k) {
    if (k > n) throw ContractError("jun_k: k > n");
    return {FamilyKind::JunK, n, k};
}
Family Family::sym_t(uint32_t n, uint32_t t) {
    if (t > n) throw ContractError("sym_t: t > n");
    return {FamilyKind::SymT, n, t};
}
Family Family::sym_n_minus_k(uint32_t n, uint32_t k) {
    if (k > n) throw ContractError("sym_n_minus_k: k > n");
    return {FamilyKind::SymNminusK, n, k};
}
Family Family::pol_d(uint32_t n, uint32_t d) {
    if (d > n) throw ContractError("pol_d: d > n");
    return {FamilyKind::PolD, n, d};
}

std::string Family::to_string() const {
    switch (kind) {
        case FamilyKind::LinK: return "lin" + std::to_string(param) + "(n=" + std::to_string(n) + ")";
        case FamilyKind::Linear: return "linear(n=" + std::to_string(n) + ")";
        case FamilyKind::JunK: return "jun" + std::to_string(param) + "(n=" + std::to_string(n) + ")";
        case FamilyKind::SymT: return "sym_t=" + std::to_string(param) + "(n=" + std::to_string(n) + ")";
        case FamilyKind::SymNminusK:
            return "sym_{n-" + std::to_string(param) + "}(n=" + std::to_string(n) + ")";
        case FamilyKind::PolD: return "pol" + std::to_string(param) + "(n=" + std::to_string(n) + ")";
    }
    return "?";
}

BooleanFunction sample_uniform(const Family& fam, Rng& rng) {
    const uint32_t n = fam.n;
    switch (fam.kind) {
        case FamilyKind::LinK:
            return BooleanFunction(n, KLinear{random_subset(n, fam.param, rng)});
        case FamilyKind::Linear: {
            std::vector<uint32_t> idx;
            for (uint32_t i = 0; i < n; ++i)
                if (rng.bit()) idx.push_back(i);
            return BooleanFunction(n, KLinear{std::move(idx)});
        }
        case FamilyKind::PolD: {
            uint64_t nd = monomial_count(n, fam.param);
            if (nd > kEnumCap) throw CapacityError("sample pol_d: basis too large");
            MonomialBasis basis = MonomialBasis::make(n, fam.param);
            Gf2Polynomial p;
            for (const auto& m : basis.monomials)
                if (rng.bit()) p.monomials.push_back(m);
            return BooleanFunction(n, std::move(p));
        }
        case FamilyKind::SymT: {
            uint32_t t = fam.param;
            std::vector<uint32_t> sym = random_subset(n, t, rng);
            std::vector<uint32_t> asym;
            for (uint32_t i = 0, j = 0; i < n; ++i) {
                if (j < sym.size() && sym[j] == i)
                    ++j;
                else
                    asym.push_back(i);
            }
            uint32_t k = n - t;
            return BooleanFunction(n, PartiallySymmetric{std::move(asym),
                                                         random_bits(psym_cells(n, k), rng)});
        }
        case FamilyKind::SymNminusK: {
            uint32_t k = fam.param;
            return BooleanFunction(n, PartiallySymmetric{random_subset(n, k, rng),
                                                         random_bits(psym_cells(n, k), rng)});
        }
        case FamilyKind::JunK: {
            uint32_t k = fam.param;
            return BooleanFunction(
                n, Junta{random_subset(n, k, rng), random_bits(uint64_t(1) << k, rng)});
        }
    }
    throw ContractError("sample_uniform: unknown kind");
}

TruthTable algebraic_normal_form(const TruthTable& t) {
    TruthTable a = t;
    const uint64_t size = a.size();
    for (uint32_t i = 0; i < a.n; ++i) {
        const uint64_t bit = uint64_t(1) << i;
        for (uint64_t m = 0; m < size; ++m)
            if (m & bit) a.set(m, a.get(m) ^ a.get(m ^ bit));
    }
    return a;
}

std::vector<uint32_t> influential_variables(const TruthTable& t) {
    std::vector<uint32_t> out;
    const uint64_t size = t.size();
    for (uint32_t i = 0; i < t.n; ++i) {
        const uint64_t bit = uint64_t(1) << i;
        bool dep = false;
        for (uint64_t x = 0; x < size && !dep; ++x)
            if ((x & bit) == 0) dep = t.get(x) != t.get(x | bit);
        if (dep) out.push_back(i);
    }
    return out;
}

namespace {

// Adjacency masks of the swap-invariance graph: vertices are variables,
// i ~ j when f is invariant under swapping x_i and x_j.
std::vector<uint64_t> swap_invariance_graph(const TruthTable& t) {
    const uint32_t n = t.n;
    const uint64_t size = t.size();
    std::vector<uint64_t> adj(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = i + 1; j < n; ++j) {
            const uint64_t bi = uint64_t(1) << i, bj = uint64_t(1) << j;
            bool inv = true;
            for (uint64_t x = 0; x < size && inv; ++x) {
                bool xi = x & bi, xj = x & bj;
                if (xi == xj) continue;
                inv = t.get(x) == t.get(x ^ bi ^ bj);
            }
            if (inv) {
                adj[i] |= uint64_t(1) << j;
                adj[j] |= uint64_t(1) << i;
            }
        }
    }
    return adj;
}

// Largest T such that all transpositions within T fix f (max clique in the
// swap-invariance graph; transpositions within T generate all of S_T).
uint32_t max_symmetric_set(const TruthTable& t) {
    const uint32_t n = t.n;
    if (n > 20) throw CapacityError("symmetric-set search: n > 20");
    std::vector<uint64_t> adj = swap_invariance_graph(t);
    uint32_t best = n ? 1 : 0;
    for (uint64_t s = 1; s < (uint64_t(1) << n); ++s) {
        if (uint32_t(std::popcount(s)) <= best) continue;
        bool clique = true;
        for (uint64_t rest = s; rest && clique; rest &= rest - 1) {
            uint32_t i = uint32_t(std::countr_zero(rest));
            clique = (s & ~(adj[i] | (uint64_t(1) << i))) == 0;
        }
        if (clique) best = uint32_t(std::popcount(s));
    }
    return best;
}

uint64_t lin_distance_count(const TruthTable& t, uint32_t k) {
    std::vector<int64_t> corr = integer_correlations(t);
    int64_t best = INT64_MIN;
    for (uint64_t s = 0; s < corr.size(); ++s)
        if (uint32_t(std::popcount(s)) == k) best = std::max(best, corr[s]);
    return uint64_t((int64_t(t.size()) - best) / 2);
}

uint64_t psym_distance_count(const TruthTable& t, const std::vector<uint32_t>& asym) {
    const uint32_t n = t.n;
    const uint32_t k = uint32_t(asym.size());
    uint64_t amask = 0;
    for (uint32_t i : asym) amask |= uint64_t(1) << i;
    const uint64_t classes = psym_cells(n, k);
    return grouped_majority_disagreements(t, classes, [&](uint64_t x) {
        uint64_t a = 0;
        for (uint32_t j = 0; j < k; ++j) a |= uint64_t((x >> asym[j]) & 1) << j;
        uint64_t w = std::popcount(x & ~amask);
        return a * (n - k + 1) + w;
    });
}

uint64_t junta_distance_count(const TruthTable& t, const std::vector<uint32_t>& vars) {
    const uint32_t k = uint32_t(vars.size());
    return grouped_majority_disagreements(t, uint64_t(1) << k, [&](uint64_t x) {
        uint64_t p = 0;
        for (uint32_t j = 0; j < k; ++j) p |= uint64_t((x >> vars[j]) & 1) << j;
        return p;
    });
}

// min over coefficient vectors of Pol_d, by a Gray-code walk that toggles
// one monomial table per step.
uint64_t pold_distance_count(const TruthTable& t, uint32_t d) {
    const uint64_t nd = monomial_count(t.n, d);
    if (nd > 20) throw CapacityError("pol_d distance: n_d > 20");
    MonomialBasis basis = MonomialBasis::make(t.n, d);
    const uint64_t size = t.size();
    std::vector<std::vector<uint64_t>> montab(nd);
    for (uint64_t j = 0; j < nd; ++j) {
        TruthTable mt = TruthTable::zeros(t.n);
        for (uint64_t x = 0; x < size; ++x) {
            bool prod = true;
            for (uint32_t i : basis.monomials[j]) prod &= (x >> i) & 1;
            mt.set(x, prod);
        }
        montab[j] = std::move(mt.bits);
    }
    std::vector<uint64_t> cur = t.bits;
    uint64_t best = 0;
    for (uint64_t w : cur) best += std::popcount(w);
    for (uint64_t g = 1; g < (uint64_t(1) << nd); ++g) {
        uint32_t j = uint32_t(std::countr_zero(g));
        uint64_t s = 0;
        for (size_t i = 0; i < cur.size(); ++i) {
            cur[i] ^= montab[j][i];
            s += std::popcount(cur[i]);
        }
        best = std::min(best, s);
    }
    return best;
}

}  // namespace

bool is_member(const BooleanFunction& f, const Family& fam) {
    if (f.dim() != fam.n) throw ContractError("is_member: dimension mismatch");
    const uint32_t n = fam.n;

    // Syntactic shortcuts on structured representations.
    if (const auto* kl = f.as<KLinear>()) {
        uint32_t j = uint32_t(kl->indices.size());
        switch (fam.kind) {
            case FamilyKind::LinK: return j == fam.param;
            case FamilyKind::Linear: return true;
            case FamilyKind::PolD: return fam.param >= 1 || j == 0;
            case FamilyKind::JunK: return j <= fam.param;
            case FamilyKind::SymNminusK: return j <= fam.param;
            case FamilyKind::SymT: return std::max(j, n - j) >= fam.param;
        }
    }
    if (const auto* ps = f.as<PartiallySymmetric>()) {
        if (fam.kind == FamilyKind::SymNminusK && ps->asym.size() <= fam.param) return true;
        if (fam.kind == FamilyKind::SymT && n - ps->asym.size() >= fam.param) return true;
    }
    if (const auto* j = f.as<Junta>()) {
        if (fam.kind == FamilyKind::JunK && j->vars.size() <= fam.param) return true;
    }
    if (const auto* p = f.as<Gf2Polynomial>()) {
        if (fam.kind == FamilyKind::PolD) {
            // parity-reduce duplicate monomials before taking the degree
            auto mons = p->monomials;
            std::sort(mons.begin(), mons.end());
            uint32_t deg = 0;
            for (size_t i = 0; i < mons.size();) {
                size_t r = i;
                while (r < mons.size() && mons[r] == mons[i]) ++r;
                if ((r - i) % 2 == 1) deg = std::max(deg, uint32_t(mons[i].size()));
                i = r;
            }
            if (deg <= fam.param) return true;
        }
    }

    // Semantic decision on the dense table.
    switch (fam.kind) {
        case FamilyKind::LinK:
            return lin_distance_count(truth_table(f), fam.param) == 0;
        case FamilyKind::Linear:
            return distance_to_linear(truth_table(f)).num == 0;
        case FamilyKind::PolD: {
            TruthTable anf = algebraic_normal_form(truth_table(f));
            for (uint64_t s = 0; s < anf.size(); ++s)
                if (anf.get(s) && uint32_t(std::popcount(s)) > fam.param) return false;
            return true;
        }
        case FamilyKind::JunK:
            if (n > 16) throw CapacityError("is_member jun_k: n > 16");
            return influential_variables(truth_table(f)).size() <= fam.param;
        case FamilyKind::SymT:
            if (n > 16) throw CapacityError("is_member sym_t: n > 16");
            return max_symmetric_set(truth_table(f)) >= fam.param;
        case FamilyKind::SymNminusK:
            if (n > 16) throw CapacityError("is_member sym_{n-k}: n > 16");
            return max_symmetric_set(truth_table(f)) >= n - fam.param;
    }
    throw ContractError("is_member: unknown kind");
}

Rational exact_distance_to_family(const BooleanFunction& f, const Family& fam) {
    if (f.dim() != fam.n) throw ContractError("distance_to_family: dimension mismatch");
    const uint32_t n = fam.n;
    const uint64_t size = uint64_t(1) << n;
    TruthTable t = truth_table(f);
    switch (fam.kind) {
        case FamilyKind::LinK:
            return Rational{lin_distance_count(t, fam.param), size};
        case FamilyKind::Linear:
            return distance_to_linear(t);
        case FamilyKind::PolD:
            return Rational{pold_distance_count(t, fam.param), size};
        case FamilyKind::SymNminusK: {
            uint32_t k = fam.param;
            if (binomial(n, k) * size > kScanCap)
                throw CapacityError("distance sym_{n-k}: instance too large");
            uint64_t best = size;
            for_each_combination(n, k, [&](const std::vector<uint32_t>& a) {
                best = std::min(best, psym_distance_count(t, a));
            });
            return Rational{best, size};
        }
        case FamilyKind::SymT: {
            uint32_t tt = fam.param;
            uint32_t k = n - tt;
            if (binomial(n, k) * size > kScanCap)
                throw CapacityError("distance sym_t: instance too large");
            uint64_t best = size;
            for_each_combination(n, k, [&](const std::vector<uint32_t>& a) {
                best = std::min(best, psym_distance_count(t, a));
            });
            return Rational{best, size};
        }
        case FamilyKind::JunK: {
            uint32_t k = fam.param;
            if (binomial(n, k) * size > kScanCap)
                throw CapacityError("distance jun_k: instance too large");
            uint64_t best = size;
            for_each_combination(n, k, [&](const std::vector<uint32_t>& j) {
                best = std::min(best, junta_distance_count(t, j));
            });
            return Rational{best, size};
        }
    }
    throw ContractError("distance_to_family: unknown kind");
}

std::vector<BooleanFunction> enumerate_family(const Family& fam) {
    const uint32_t n = fam.n;
    std::vector<BooleanFunction> out;
    switch (fam.kind) {
        case FamilyKind::LinK: {
            if (binomial(n, fam.param) > kEnumCap) throw CapacityError("enumerate lin_k");
            for_each_combination(n, fam.param, [&](const std::vector<uint32_t>& c) {
                out.emplace_back(n, KLinear{c});
            });
            return out;
        }
        case FamilyKind::Linear: {
            if (n > 20) throw CapacityError("enumerate linear: n > 20");
            for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
                std::vector<uint32_t> idx;
                for (uint32_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1) idx.push_back(i);
                out.emplace_back(n, KLinear{std::move(idx)});
            }
            return out;
        }
        case FamilyKind::PolD: {
            uint64_t nd = monomial_count(n, fam.param);
            if (nd > 16) throw CapacityError("enumerate pol_d: n_d > 16");
            MonomialBasis basis = MonomialBasis::make(n, fam.param);
            for (uint64_t mask = 0; mask < (uint64_t(1) << nd); ++mask) {
                Gf2Polynomial p;
                for (uint64_t j = 0; j < nd; ++j)
                    if ((mask >> j) & 1) p.monomials.push_back(basis.monomials[j]);
                out.emplace_back(n, std::move(p));
            }
            return out;
        }
        case FamilyKind::SymT:
        case FamilyKind::SymNminusK: {
            uint32_t k = fam.kind == FamilyKind::SymT ? n - fam.param : fam.param;
            uint64_t cells = psym_cells(n, k);
            if (cells > 20 || binomial(n, k) * (uint64_t(1) << cells) > kEnumCap)
                throw CapacityError("enumerate partially symmetric: instance too large");
            for_each_combination(n, k, [&](const std::vector<uint32_t>& a) {
                for (uint64_t mask = 0; mask < (uint64_t(1) << cells); ++mask)
                    out.emplace_back(n, PartiallySymmetric{a, bits_from_index(cells, mask)});
            });
            return out;
        }
        case FamilyKind::JunK: {
            uint32_t k = fam.param;
            if (k > 4 || binomial(n, k) * (uint64_t(1) << (uint64_t(1) << k)) > kEnumCap)
                throw CapacityError("enumerate jun_k: instance too large");
            uint64_t cells = uint64_t(1) << k;
            for_each_combination(n, k, [&](const std::vector<uint32_t>& j) {
                for (uint64_t mask = 0; mask < (uint64_t(1) << cells); ++mask)
                    out.emplace_back(n, Junta{j, bits_from_index(cells, mask)});
            });
            return out;
        }
    }
    throw ContractError("enumerate_family: unknown kind");
}

EpsilonNet greedy_epsilon_net(const Family& fam, double eps) {
    EpsilonNet net{fam, eps, {}};
    std::vector<TruthTable> chosen;
    for (auto& g : enumerate_family(fam)) {
        TruthTable tg = truth_table(g);
        bool far_from_all = true;
        for (const auto& c : chosen) {
            if (double(popcount_xor(c.bits, tg.bits)) / double(tg.size()) < eps) {
                far_from_all = false;
                break;
            }
        }
        if (far_from_all) {
            chosen.push_back(tg);
            net.members.push_back(std::move(g));
        }
    }
    return net;
}

FarFunction far_function_generator(const Family& fam, double eps, Rng& rng) {
    if (eps <= 0) {
        BooleanFunction f = make_seeded_random(fam.n, rng.next());
        return {std::move(f), 0.0, true};
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        BooleanFunction f = make_seeded_random(fam.n, rng.next());
        try {
            Rational d = exact_distance_to_family(f, fam);
            if (d.value() >= eps) return {std::move(f), d.value(), true};
            continue;
        } catch (const CapacityError&) {
            // fall through to the estimate-with-margin path
        }
        if (fam.kind == FamilyKind::Linear) {
            // learn the unique linear function consistent with a basis of
            // random points, then estimate the distance to it
            const uint32_t n = fam.n;
            std::vector<BitVector> pts;
            BitVector vals(n + 30);
            for (uint32_t i = 0; i < n + 30; ++i) {
                pts.push_back(BitVector::random(n, rng));
                vals.set(i, f.evaluate(pts.back()));
            }
            auto sol = solve(Gf2Matrix::from_rows(pts), vals);
            std::vector<uint32_t> idx;
            if (sol)
                for (uint32_t i = 0; i < n; ++i)
                    if (sol->get(i)) idx.push_back(i);
            BooleanFunction g = make_klinear(n, idx);
            const uint64_t m = 20000;
            double est = estimate_distance(f, g, m, rng);
            double margin = 3.0 / (2.0 * std::sqrt(double(m)));
            if (!sol || est >= eps + margin) return {std::move(f), est, false};
            continue;
        }
        throw CapacityError("far_function_generator: no verification path for this kind/size");
    }
    throw std::runtime_error("far_function_generator: failed after bounded retries");
}

}  // namespace bft
