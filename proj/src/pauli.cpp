#include "brickwall/pauli.hpp"

#include <cmath>

namespace brickwall {

namespace {

template <bool Forward>
void transform(CMatrix& m, int L) {
    const std::uint64_t n = 1ull << L;
    if (static_cast<std::uint64_t>(m.rows()) != n || m.cols() != m.rows())
        throw ParameterError("local-basis transform: matrix must be 2^L square");
    const double s2 = std::sqrt(2.0);
    cplx* d = m.data();
    for (int site = 0; site < L; ++site) {
        const std::uint64_t b = 1ull << (L - 1 - site);
        for (std::uint64_t c = 0; c < n; ++c) {
            if (c & b) continue;
            for (std::uint64_t r = 0; r < n; ++r) {
                if (r & b) continue;
                cplx& x00 = d[c * n + r];
                cplx& x01 = d[(c | b) * n + r];
                cplx& x10 = d[c * n + (r | b)];
                cplx& x11 = d[(c | b) * n + (r | b)];
                if constexpr (Forward) {
                    const cplx one = 0.5 * (x00 + x11), z = 0.5 * (x11 - x00);
                    const cplx plus = x10 / s2, minus = x01 / s2;
                    x00 = one;
                    x11 = z;
                    x10 = plus;
                    x01 = minus;
                } else {
                    const cplx one = x00, z = x11;
                    x00 = one - z;
                    x11 = one + z;
                    x10 *= s2;
                    x01 *= s2;
                }
            }
        }
    }
}

}  // namespace

void to_local_basis(CMatrix& m, int L) { transform<true>(m, L); }
void from_local_basis(CMatrix& m, int L) { transform<false>(m, L); }

namespace {

// Returns (span, start) of the shortest covering cyclic window.
std::pair<int, int> cyclic_window(std::uint64_t mask, int L) {
    if (mask == 0) return {0, 0};
    auto occupied = [&](int site) { return (mask >> (L - 1 - site)) & 1u; };
    // longest cyclic run of empty sites; the window starts right after it
    int best_run = 0, best_end = 0;
    for (int start = 0; start < L; ++start) {
        if (!occupied(start)) continue;
        int run = 0;
        for (int k = 1; k < L && !occupied((start + k) % L); ++k) ++run;
        if (run > best_run) {
            best_run = run;
            best_end = (start + run + 1) % L;
        }
    }
    if (best_run == 0) {
        // every gap is empty-free: window starts at the first occupied site
        int first = 0;
        while (!occupied(first)) ++first;
        return {L, first};
    }
    return {L - best_run, best_end};
}

}  // namespace

int cyclic_span(std::uint64_t mask, int L) { return cyclic_window(mask, L).first; }
int cyclic_span_start(std::uint64_t mask, int L) { return cyclic_window(mask, L).second; }

std::vector<int> cyclic_span_table(int L) {
    std::vector<int> t(std::size_t(1) << L);
    for (std::uint64_t m = 0; m < t.size(); ++m) t[m] = cyclic_span(m, L);
    return t;
}

}  // namespace brickwall
