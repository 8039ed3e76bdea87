#pragma once

#include <string>

#include "bft/boolfn.hpp"
#include "bft/families.hpp"
#include "bft/gf2.hpp"

namespace bft {

// Flat binary truth table: u32 little-endian n, then 2^n bits LSB-first.
void write_truth_table(const std::string& path, const TruthTable& t);
TruthTable read_truth_table(const std::string& path);

// Same layout generalized: u32 LE rows, u32 LE cols, then the rows in order,
// each padded to a whole number of bytes, bits LSB-first.
void write_matrix(const std::string& path, const Gf2Matrix& m);
Gf2Matrix read_matrix(const std::string& path);

// Textual descriptors; variable indices are 1-based externally.
//   klinear n=10 I=1,4,7         parity of the listed coordinates
//   junta n=10 J=1,2 T=0110      subtable bit j = value at pattern j
//   psym n=10 A=2 T=...          rows: assignment to A, cols: outside weight
//   poly n=6 M=1*2+3+1           GF(2) sum of monomials; lone "1" = constant
//   random n=20 seed=42          keyed pseudorandom function
//   table n=3 bits=01101001      dense table, index order
BooleanFunction parse_function(const std::string& descriptor);
std::string format_function(const BooleanFunction& f);

// Family descriptors: link n=10 k=2 | linear n=10 | junk n=10 k=2 |
// symt n=10 t=8 | symnk n=10 k=2 | pold n=10 d=2
Family parse_family(const std::string& descriptor);
std::string format_family(const Family& fam);

}  // namespace bft
