#pragma once

#include <cstdint>
#include <vector>

#include "brickwall/core.hpp"

namespace brickwall {

// Orthonormal single-site basis under tr(a^dagger b)/2:
//   letter 0: 1, letter 1: z, letter 2: sqrt2 s+ = sqrt2 |1><0|, letter 3: sqrt2 s- = sqrt2 |0><1|.
// In the transformed layout, the coefficient of a string sits at the matrix
// position (r, c) whose bits at each site encode the letter:
// (0,0) -> 1, (1,1) -> z, (1,0) -> +, (0,1) -> -. The support of the string is r | c.
void to_local_basis(CMatrix& m, int L);
void from_local_basis(CMatrix& m, int L);

inline int letter_from_bits(int r, int c) {
    static constexpr int table[2][2] = {{0, 3}, {2, 1}};
    return table[r][c];
}

inline void bits_from_letter(int letter, int& r, int& c) {
    static constexpr int rr[4] = {0, 1, 1, 0};
    static constexpr int cc[4] = {0, 1, 0, 1};
    r = rr[letter];
    c = cc[letter];
}

// Length of the shortest cyclic window (ring of L sites) covering the mask;
// site i is bit L-1-i.
int cyclic_span(std::uint64_t mask, int L);
// First site of that window.
int cyclic_span_start(std::uint64_t mask, int L);
// cyclic_span for every mask in [0, 2^L).
std::vector<int> cyclic_span_table(int L);

}  // namespace brickwall
