#include "bft/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace bft {

namespace {

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4] = {(unsigned char)(v & 0xff), (unsigned char)((v >> 8) & 0xff),
                          (unsigned char)((v >> 16) & 0xff), (unsigned char)((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& is, const std::string& path) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw IoError(path + ": truncated header");
    return uint32_t(b[0]) | (uint32_t(b[1]) << 8) | (uint32_t(b[2]) << 16) | (uint32_t(b[3]) << 24);
}

std::vector<unsigned char> pack_bits(const std::vector<uint64_t>& words, uint64_t nbits) {
    std::vector<unsigned char> out((nbits + 7) / 8, 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = (unsigned char)(words[i >> 3] >> ((i & 7) * 8));
    return out;
}

std::vector<uint64_t> unpack_bits(const std::vector<unsigned char>& bytes, uint64_t nbits) {
    std::vector<uint64_t> words((nbits + 63) / 64, 0);
    for (size_t i = 0; i < bytes.size(); ++i) words[i >> 3] |= uint64_t(bytes[i]) << ((i & 7) * 8);
    return words;
}

uint64_t parse_u64(const std::string& s, const std::string& ctx) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw IoError(ctx + ": bad number '" + s + "'");
    return v;
}

// "1,4,7" -> {0, 3, 6}; empty string -> {}
std::vector<uint32_t> parse_index_list(const std::string& s, const std::string& ctx) {
    std::vector<uint32_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        uint64_t v = parse_u64(tok, ctx);
        if (v == 0) throw IoError(ctx + ": indices are 1-based");
        out.push_back(uint32_t(v - 1));
    }
    return out;
}

std::string format_index_list(const std::vector<uint32_t>& idx) {
    std::string s;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i] + 1);
    }
    return s;
}

std::vector<uint64_t> parse_bit_string(const std::string& s, const std::string& ctx) {
    std::vector<uint64_t> words((s.size() + 63) / 64, 0);
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            words[i >> 6] |= uint64_t(1) << (i & 63);
        else if (s[i] != '0')
            throw IoError(ctx + ": bit string must be 0/1");
    }
    return words;
}

std::string format_bit_string(const std::vector<uint64_t>& words, uint64_t nbits) {
    std::string s(nbits, '0');
    for (uint64_t i = 0; i < nbits; ++i)
        if ((words[i >> 6] >> (i & 63)) & 1) s[i] = '1';
    return s;
}

struct Fields {
    std::string kind;
    std::map<std::string, std::string> kv;

    const std::string& need(const std::string& key, const std::string& ctx) const {
        auto it = kv.find(key);
        if (it == kv.end()) throw IoError(ctx + ": missing field '" + key + "'");
        return it->second;
    }
};

Fields split_descriptor(const std::string& descriptor) {
    Fields f;
    std::stringstream ss(descriptor);
    if (!(ss >> f.kind)) throw IoError("empty descriptor");
    std::string tok;
    while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw IoError("descriptor '" + descriptor + "': expected key=value, got '" + tok + "'");
        f.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return f;
}

}  // namespace

void write_truth_table(const std::string& path, const TruthTable& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path + ": cannot open for writing");
    put_u32(os, t.n);
    auto bytes = pack_bits(t.bits, t.size());
    os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!os) throw IoError(path + ": write failed");
}

TruthTable read_truth_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path + ": cannot open");
    uint32_t n = get_u32(is, path);
    if (n > kMaxDenseN) throw IoError(path + ": n exceeds dense cap");
    uint64_t nbits = uint64_t(1) << n;
    std::vector<unsigned char> bytes((nbits + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size())))
        throw IoError(path + ": truncated body");
    TruthTable t = TruthTable::zeros(n);
    t.bits = unpack_bits(bytes, nbits);
    return t;
}

void write_matrix(const std::string& path, const Gf2Matrix& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path + ": cannot open for writing");
    put_u32(os, m.rows());
    put_u32(os, m.cols());
    for (uint32_t r = 0; r < m.rows(); ++r) {
        BitVector row = m.row(r);
        std::vector<uint64_t> words(row.words().begin(), row.words().end());
        auto bytes = pack_bits(words, m.cols());
        os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    }
    if (!os) throw IoError(path + ": write failed");
}

Gf2Matrix read_matrix(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path + ": cannot open");
    uint32_t rows = get_u32(is, path);
    uint32_t cols = get_u32(is, path);
    if (uint64_t(rows) * cols > (uint64_t(1) << 32)) throw IoError(path + ": matrix too large");
    Gf2Matrix m(rows, cols);
    std::vector<unsigned char> bytes((cols + 7) / 8);
    for (uint32_t r = 0; r < rows; ++r) {
        if (!is.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size())))
            throw IoError(path + ": truncated body");
        auto words = unpack_bits(bytes, cols);
        BitVector row(cols);
        for (uint32_t c = 0; c < cols; ++c) row.set(c, (words[c >> 6] >> (c & 63)) & 1);
        m.set_row(r, row);
    }
    return m;
}

BooleanFunction parse_function(const std::string& descriptor) {
    Fields f = split_descriptor(descriptor);
    const std::string ctx = "descriptor '" + descriptor + "'";
    uint32_t n = uint32_t(parse_u64(f.need("n", ctx), ctx));
    if (f.kind == "klinear") {
        auto idx = parse_index_list(f.need("I", ctx), ctx);
        return BooleanFunction(n, KLinear{std::move(idx)});
    }
    if (f.kind == "junta") {
        Junta j;
        j.vars = parse_index_list(f.need("J", ctx), ctx);
        const std::string& t = f.need("T", ctx);
        if (t.size() != (size_t(1) << j.vars.size()))
            throw IoError(ctx + ": subtable length must be 2^|J|");
        j.subtable = parse_bit_string(t, ctx);
        return BooleanFunction(n, std::move(j));
    }
    if (f.kind == "psym") {
        PartiallySymmetric p;
        p.asym = parse_index_list(f.need("A", ctx), ctx);
        const std::string& t = f.need("T", ctx);
        uint64_t want = (uint64_t(1) << p.asym.size()) * (n - p.asym.size() + 1);
        if (t.size() != want)
            throw IoError(ctx + ": table length must be 2^|A| * (n-|A|+1)");
        p.table = parse_bit_string(t, ctx);
        return BooleanFunction(n, std::move(p));
    }
    if (f.kind == "poly") {
        Gf2Polynomial p;
        const std::string& m = f.need("M", ctx);
        if (m != "0") {
            std::stringstream ss(m);
            std::string term;
            while (std::getline(ss, term, '+')) {
                if (term == "1") {
                    p.monomials.emplace_back();
                    continue;
                }
                std::vector<uint32_t> vars;
                std::stringstream ts(term);
                std::string v;
                while (std::getline(ts, v, '*')) {
                    uint64_t i = parse_u64(v, ctx);
                    if (i == 0) throw IoError(ctx + ": variables are 1-based");
                    vars.push_back(uint32_t(i - 1));
                }
                p.monomials.push_back(std::move(vars));
            }
        }
        return BooleanFunction(n, std::move(p));
    }
    if (f.kind == "random")
        return make_seeded_random(n, parse_u64(f.need("seed", ctx), ctx));
    if (f.kind == "table") {
        const std::string& b = f.need("bits", ctx);
        if (b.size() != (uint64_t(1) << n)) throw IoError(ctx + ": bits length must be 2^n");
        TruthTable t = TruthTable::zeros(n);
        t.bits = parse_bit_string(b, ctx);
        return make_from_table(std::move(t));
    }
    throw IoError(ctx + ": unknown kind '" + f.kind + "'");
}

std::string format_function(const BooleanFunction& f) {
    const std::string head = " n=" + std::to_string(f.dim());
    if (const auto* k = f.as<KLinear>()) return "klinear" + head + " I=" + format_index_list(k->indices);
    if (const auto* j = f.as<Junta>())
        return "junta" + head + " J=" + format_index_list(j->vars) +
               " T=" + format_bit_string(j->subtable, uint64_t(1) << j->vars.size());
    if (const auto* p = f.as<PartiallySymmetric>())
        return "psym" + head + " A=" + format_index_list(p->asym) +
               " T=" + format_bit_string(
                           p->table, (uint64_t(1) << p->asym.size()) * (f.dim() - p->asym.size() + 1));
    if (const auto* p = f.as<Gf2Polynomial>()) {
        std::string m;
        for (size_t i = 0; i < p->monomials.size(); ++i) {
            if (i) m += '+';
            if (p->monomials[i].empty()) {
                m += '1';
                continue;
            }
            for (size_t j = 0; j < p->monomials[i].size(); ++j) {
                if (j) m += '*';
                m += std::to_string(p->monomials[i][j] + 1);
            }
        }
        if (m.empty()) m = "0";
        return "poly" + head + " M=" + m;
    }
    if (const auto* r = f.as<SeededRandom>())
        return "random" + head + " seed=" + std::to_string(r->seed);
    const auto* t = f.as<TruthTable>();
    if (t->n > 20) throw CapacityError("format_function: dense table too large for text");
    return "table" + head + " bits=" + format_bit_string(t->bits, t->size());
}

Family parse_family(const std::string& descriptor) {
    Fields f = split_descriptor(descriptor);
    const std::string ctx = "family '" + descriptor + "'";
    uint32_t n = uint32_t(parse_u64(f.need("n", ctx), ctx));
    if (f.kind == "link") return Family::lin_k(n, uint32_t(parse_u64(f.need("k", ctx), ctx)));
    if (f.kind == "linear") return Family::linear(n);
    if (f.kind == "junk") return Family::jun_k(n, uint32_t(parse_u64(f.need("k", ctx), ctx)));
    if (f.kind == "symt") return Family::sym_t(n, uint32_t(parse_u64(f.need("t", ctx), ctx)));
    if (f.kind == "symnk")
        return Family::sym_n_minus_k(n, uint32_t(parse_u64(f.need("k", ctx), ctx)));
    if (f.kind == "pold") return Family::pol_d(n, uint32_t(parse_u64(f.need("d", ctx), ctx)));
    throw IoError(ctx + ": unknown family kind '" + f.kind + "'");
}

std::string format_family(const Family& fam) {
    const std::string head = " n=" + std::to_string(fam.n);
    const std::string p = std::to_string(fam.param);
    switch (fam.kind) {
        case FamilyKind::LinK: return "link" + head + " k=" + p;
        case FamilyKind::Linear: return "linear" + head;
        case FamilyKind::JunK: return "junk" + head + " k=" + p;
        case FamilyKind::SymT: return "symt" + head + " t=" + p;
        case FamilyKind::SymNminusK: return "symnk" + head + " k=" + p;
        case FamilyKind::PolD: return "pold" + head + " d=" + p;
    }
    throw ContractError("format_family: bad kind");
}

}  // namespace bft
