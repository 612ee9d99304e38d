#include "boxkoszul/morassoc.hpp"

#include <functional>

namespace boxk {

std::size_t mor_dimension(Arity a) {
    return (a.p == a.r && a.q >= 1) ? 1 : 0;
}

MorKey mor_compose(const MorKey& bottom, const std::vector<MorKey>& tops) {
    if ((int)tops.size() != bottom.q)
        throw ArityMismatch("mor_compose expects " + std::to_string(bottom.q) + " tops");
    if (tops.empty()) throw ArityMismatch("mor_compose with no tops");
    int p1 = tops[0].p, q = 0;
    for (const auto& t : tops) {
        if (t.p != p1) throw ArityMismatch("tops must share one horizontal arity");
        if (!t.valid()) throw InvalidKey(t.str());
        q += t.q;
    }
    return MorKey{bottom.p + p1, q};
}

std::vector<MorCooperation> mordual_decompose(const MorDualKey& k) {
    if (!k.valid()) throw InvalidKey(k.str());
    std::vector<MorCooperation> out;
    std::vector<int> qs;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            int n = (int)qs.size();
            int e = 0;
            for (int i = 1; i <= n; ++i) e += (qs[i - 1] - 1) * (n - i);
            for (int p0 = 0; p0 <= k.p; ++p0) {
                MorCooperation coop;
                coop.sign = (e % 2 == 0) ? 1 : -1;
                coop.bottom = MorDualKey{p0, n};
                for (int i = 0; i < n; ++i) coop.tops.push_back(MorDualKey{k.p - p0, qs[i]});
                out.push_back(std::move(coop));
            }
            return;
        }
        for (int q2 = 1; q2 <= rem; ++q2) {
            qs.push_back(q2);
            rec(rem - q2);
            qs.pop_back();
        }
    };
    rec(k.q);
    return out;
}

ChainSlice assoc_koszul_data(int q) {
    if (q < 1) throw OutOfRange("assoc_koszul_data at q=" + std::to_string(q));
    ChainSlice c;
    c.deg_min = -1;
    c.deg_max = q - 2;
    // basis at degree n-2: bottoms m^c_n over compositions of q into n parts
    std::map<int, std::vector<std::vector<int>>> comps;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            comps[(int)cur.size()].push_back(cur);
            return;
        }
        for (int t = 1; t <= rem; ++t) {
            cur.push_back(t);
            rec(rem - t);
            cur.pop_back();
        }
    };
    rec(q);
    auto name = [](const std::vector<int>& qs) {
        std::string s = "mc" + std::to_string(qs.size()) + "[";
        for (std::size_t i = 0; i < qs.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(qs[i]);
        }
        return s + "]";
    };
    std::map<int, std::map<std::vector<int>, std::size_t>> index;
    for (int n = 1; n <= q; ++n) {
        int deg = n - 2;
        for (const auto& qs : comps[n]) {
            index[deg][qs] = c.basis[deg].size();
            c.basis[deg].push_back(name(qs));
        }
    }
    for (int n = 2; n <= q; ++n) {
        int deg = n - 2;
        RatMatrix m(c.basis[deg - 1].size(), c.basis[deg].size());
        for (const auto& qs : comps[n]) {
            std::size_t col = index[deg][qs];
            for (int i = 1; i <= n - 1; ++i) {
                std::vector<int> merged;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    merged.push_back(j == i - 1 ? qs[i - 1] + qs[i] : qs[j]);
                }
                int e = n + q - i + 1; // thin column of the Mor differential
                m.add(index[deg - 1][merged], col, Rat(e % 2 == 0 ? 1 : -1));
            }
        }
        c.diff[deg] = std::move(m);
    }
    return c;
}

} // namespace boxk
