#include "pureheap/rank.hpp"

#include <algorithm>

namespace pureheap {

using u128 = unsigned __int128;

RankParams RankParams::from_exponent(int d, int W, int a) {
    RankParams p;
    p.d = d;
    p.W = W;
    if (a < 0 || a > 40) fail(ErrorCode::ParseError, "threshold exponent out of range");
    p.T = (1LL << a) * (2LL * d + 1);
    p.validate();
    return p;
}

void RankParams::validate() const {
    if (d < 1) fail(ErrorCode::ParseError, "d must be at least 1");
    if (W < 1) fail(ErrorCode::ParseError, "W must be at least 1");
    if (T < 1) fail(ErrorCode::ParseError, "T must be at least 1");
}

bool RankParams::size_bound_coherent() const {
    // The induction behind s_k <= w^k needs (w-1)*w^W + (T-w+1) <= w^{W+1},
    // i.e. T <= w^W + w - 1.
    u128 lim = pow_u128(unsigned(w()), W) + unsigned(w()) - 1;
    return u128(T) <= lim;
}

RankStep rank_fold_push(RankFold& st, int child_rank, const RankParams& p) {
    RankStep step;
    step.efficient = child_rank >= st.rank - p.W && child_rank <= st.rank;
    long long len = st.run_len + 1;
    int eff = st.run_eff + (step.efficient ? 1 : 0);
    step.incremental = (step.efficient && eff == p.w()) || len == p.T;
    if (step.incremental) {
        st.rank += 1;
        st.run_len = 0;
        st.run_eff = 0;
    } else {
        st.run_len = len;
        st.run_eff = eff;
    }
    return step;
}

unsigned __int128 max_unmarked_heap_size(int k, const RankParams& p) {
    if (k <= 0) return 1;
    std::vector<u128> s(std::size_t(k) + 1, 1);
    for (int i = 1; i <= k; ++i) {
        u128 v = u128(p.w() - 1) * s[std::size_t(i - 1)];
        int j = i - p.W - 1;
        // A default-case increment needs a full run of T children; below
        // index 0 there is no heap to fill it with, so the term vanishes.
        if (j >= 0) v += u128(p.T - (p.w() - 1)) * s[std::size_t(j)];
        s[std::size_t(i)] = v;
    }
    return s[std::size_t(k)];
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out += char('0' + int(v % 10));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

unsigned __int128 pow_u128(unsigned __int128 base, int exp) {
    unsigned __int128 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace pureheap
