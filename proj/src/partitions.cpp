#include "boxkoszul/partitions.hpp"

#include <algorithm>
#include <functional>

namespace boxk {

std::vector<Partition> enumerate_partitions(int p, int r) {
    std::vector<Partition> out;
    if (p == 0 && r == 0) {
        out.push_back(Partition{});
        return out;
    }
    if (p < r || p == 0 || r == 0) return out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int slots) {
        if (slots == 1) {
            if (rem >= 1) {
                cur.push_back(rem);
                out.push_back(Partition(cur));
                cur.pop_back();
            }
            return;
        }
        for (int t = 1; t + (slots - 1) <= rem; ++t) {
            cur.push_back(t);
            rec(rem - t, slots - 1);
            cur.pop_back();
        }
    };
    rec(p, r);
    return out;
}

Partition compose(const Partition& P, const Partition& Q) {
    if (P.length() != Q.weight())
        throw ArityMismatch("compose " + P.str() + " with " + Q.str());
    std::vector<int> out;
    out.reserve(Q.parts.size());
    std::size_t idx = 0;
    for (int block : Q.parts) {
        int s = 0;
        for (int j = 0; j < block; ++j) s += P.parts[idx++];
        out.push_back(s);
    }
    return Partition(std::move(out));
}

Partition concat(const Partition& P, const Partition& Q) {
    std::vector<int> out = P.parts;
    out.insert(out.end(), Q.parts.begin(), Q.parts.end());
    return Partition(std::move(out));
}

long stacking_number(const Partition& P, int q) {
    int p = P.weight(), r = P.length();
    if (p + q - r < 1) throw InvalidKey("stacking_number of " + P.str() + ", q=" + std::to_string(q));
    long sn = (long)p * q;
    const auto& t = P.parts;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > 1) {
            long before = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (t[j] > 1) before += t[j];
            sn += (long)(t[i] - 1) * t[i] / 2 + (long)(t[i] - 1) * before;
        } else {
            for (std::size_t j = i + 1; j < t.size(); ++j) sn += t[j] - 1;
        }
    }
    return sn;
}

long stacking_number_oracle(const Partition& P, int q, int cap) {
    int p = P.weight(), r = P.length();
    if (p + q - r < 1) throw InvalidKey("oracle key " + P.str());
    if (p > cap) throw CapExceeded("stacking_number_oracle at p=" + std::to_string(p));
    if (P.is_zero()) return 0; // no epsilon factor exists at p = 0
    // Chains of n = p+q-r epsilon factors read left to right. A factor
    // eps^{a,b} with a<b costs a and drops the width by one; eps^{b,b}
    // costs b, keeps the width and spends one of the q thin slots.
    long best = -1;
    std::function<void(int, Partition, int, long)> rec =
        [&](int width, Partition acc, int q_left, long cost) {
            if (width == r && q_left == 0) {
                if (acc == P) best = std::max(best, cost);
                // chains may still continue only via more factors; none left to add
            }
            if (width < r) return;
            // f-type factor eps^{width,width}
            if (q_left > 0 && width >= 1) rec(width, acc, q_left - 1, cost + width);
            // c-type factor eps^{a,width}
            if (width > r) {
                for (int a = 1; a < width; ++a) {
                    LaxKey e = epsilon(a, width);
                    Partition nxt = compose(acc, e.P);
                    // prune: nxt must coarsen toward P
                    rec(width - 1, nxt, q_left, cost + a);
                }
            }
        };
    rec(p, ones(p), q, 0);
    if (best < 0) throw Error("oracle found no chain for " + P.str() + ",q=" + std::to_string(q));
    return best;
}

long stacking_difference(const LaxKey& a, const LaxKey& b) {
    if (a.P.length() != b.P.weight())
        throw ArityMismatch("stacking_difference " + a.str() + " " + b.str());
    long d = stacking_number(compose(a.P, b.P), a.q + b.q) - stacking_number(a.P, a.q) -
             stacking_number(b.P, b.q);
    if (d < 0) throw Error("negative stacking difference");
    return d;
}

LaxKey epsilon(int i, int p) {
    if (i < 1 || i > p) throw OutOfRange("epsilon(" + std::to_string(i) + "," + std::to_string(p) + ")");
    if (i == p) return LaxKey{ones(p), 1};
    std::vector<int> parts(p - 1, 1);
    parts[i - 1] = 2;
    return LaxKey{Partition(std::move(parts)), 0};
}

std::vector<std::pair<PathSeq, int>> paths(int p_prime) {
    std::vector<std::pair<PathSeq, int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int j, int sign) {
        if (j == p_prime) {
            out.push_back({PathSeq{cur}, sign});
            return;
        }
        for (int i = 1; i <= p_prime - j; ++i) {
            cur.push_back(i);
            rec(j + 1, (i % 2 == 0) ? sign : -sign);
            cur.pop_back();
        }
    };
    rec(1, 1);
    return out;
}

std::vector<std::pair<Shuffle, int>> shuffles(int k, int l) {
    std::vector<std::pair<Shuffle, int>> out;
    int n = k + l;
    std::vector<int> pos(k); // images of 1..k, increasing
    std::function<void(int, int)> rec = [&](int j, int lo) {
        if (j == k) {
            Shuffle beta(n);
            std::vector<bool> used(n + 1, false);
            int e = 0;
            for (int t = 0; t < k; ++t) {
                beta[t] = pos[t];
                used[pos[t]] = true;
                e += pos[t] - (t + 1);
            }
            int next = 1;
            for (int t = k; t < n; ++t) {
                while (used[next]) ++next;
                beta[t] = next;
                used[next] = true;
            }
            out.push_back({beta, (e % 2 == 0) ? 1 : -1});
            return;
        }
        for (int v = lo; v <= n - (k - 1 - j); ++v) {
            pos[j] = v;
            rec(j + 1, v + 1);
        }
    };
    rec(0, 1);
    return out;
}

std::vector<LaxKey> beta_sequence(const Shuffle& beta, const PathSeq& path,
                                  const std::vector<LaxKey>& tops) {
    int k = (int)path.idx.size(); // p'-1 path entries
    int n = (int)tops.size();
    int p_prime = k + 1;
    if ((int)beta.size() != k + n) throw NonComposable("shuffle size");
    // top-chain widths p_0..p_n
    std::vector<int> widths(n + 1);
    widths[0] = n ? tops[0].p() : 0;
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n && tops[i].r() != tops[i + 1].p())
            throw NonComposable("top chain at " + std::to_string(i));
        widths[i + 1] = tops[i].r();
    }

    std::vector<LaxKey> out(k + n, LaxKey{});
    // inverse of beta to walk result positions in order
    std::vector<int> owner(k + n); // source index at each result position
    for (int j = 0; j < k + n; ++j) owner[beta[j] - 1] = j;

    int eps_done = 0, tops_done = 0;
    for (int pos = 0; pos < k + n; ++pos) {
        int j = owner[pos];
        if (j < k) {
            // lifted path factor eps^{i_j, (p'-j) + p_{s_j}} at path step j+1
            int lower = p_prime - eps_done;           // strands still to be eaten
            int upper = widths[tops_done];            // current top width passing above
            int i = path.idx[j];
            if (i < 1 || i > lower - 1) throw NonComposable("path entry out of range");
            LaxKey e = epsilon(i, lower + upper);
            out[pos] = e;
            ++eps_done;
        } else {
            // lifted top: (1,...,1) of the remaining lower strands below it
            int lower = p_prime - eps_done;
            const LaxKey& t = tops[j - k];
            out[pos] = LaxKey{concat(ones(lower), t.P), t.q};
            ++tops_done;
        }
    }
    // composability of the full chain from p'+p_0 to 1+p_n
    int w = p_prime + widths[0];
    for (const auto& key : out) {
        if (key.p() != w) throw NonComposable("beta sequence width bookkeeping");
        w = key.r();
    }
    if (w != 1 + widths[n]) throw NonComposable("beta sequence terminal width");
    return out;
}

} // namespace boxk
