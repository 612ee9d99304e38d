#include "boxkoszul/laxalg.hpp"

#include <functional>

namespace boxk {

std::size_t lax_dimension(Arity a) {
    if (a.p + a.q - a.r < 1) return 0;
    return enumerate_partitions(a.p, a.r).size();
}

LaxKey lax_compose(const LaxKey& bottom, const std::vector<LaxKey>& tops) {
    if ((int)tops.size() != bottom.q)
        throw ArityMismatch("lax_compose expects " + std::to_string(bottom.q) + " tops");
    int q = 0;
    Partition chain;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        if (i == 0) chain = tops[0].P;
        else {
            if (chain.length() != tops[i].p())
                throw ArityMismatch("lax_compose chain at " + std::to_string(i));
            chain = compose(chain, tops[i].P);
        }
        q += tops[i].q;
    }
    LaxKey out{concat(bottom.P, chain), q};
    if (!out.valid()) throw InvalidKey("lax_compose result " + out.str());
    return out;
}

LaxKey lax_wrap(const LaxKey& k, int strands) {
    return LaxKey{concat(k.P, ones(strands)), k.q};
}

GeneratorSet lax_generator_set() {
    GeneratorSet gs;
    gs.add("m", {0, 2, 0}, 0);
    gs.add("f", {1, 1, 1}, 0);
    gs.add("c", {2, 0, 1}, 0);
    return gs;
}

LaxKey eval_tree_key(const GeneratorSet& gens, const BoxTree& t,
                     const std::function<LaxKey(int)>& label_key) {
    if (t.is_unit()) return LaxKey{Partition{}, 1};
    LaxKey base = label_key(t.gen);
    if (!t.tops.empty()) {
        std::vector<LaxKey> tops;
        tops.reserve(t.tops.size());
        for (const auto& s : t.tops) tops.push_back(eval_tree_key(gens, s, label_key));
        base = lax_compose(base, tops);
    }
    if (t.pass > 0) base = lax_wrap(base, t.pass);
    return base;
}

LaxKey lax_eval_word(const GeneratorSet& gens, const BoxTree& t) {
    return eval_tree_key(gens, t, [&](int g) -> LaxKey {
        Arity ga = gens[g].ar;
        if (ga == Arity{0, 2, 0}) return LaxKey{Partition{}, 2};
        if (ga == Arity{1, 1, 1}) return LaxKey{ones(1), 1};
        if (ga == Arity{2, 0, 1}) return LaxKey{Partition({2}), 0};
        throw ArityMismatch("lax_eval_word label " + gens[g].name);
    });
}

int cooperation_sign_exponent(const LaxDualKey& bottom, const std::vector<LaxDualKey>& tops) {
    std::vector<Arity> tas;
    tas.reserve(tops.size());
    for (const auto& t : tops) tas.push_back(t.arity());
    return desusp_exponent(bottom.p(), bottom.r(), tas);
}

namespace {

// P1 such that Q o P1 = S when Q refines S block-wise, or length -1.
Partition quotient(const Partition& Q, const Partition& S) {
    std::vector<int> blocks;
    std::size_t idx = 0;
    for (int part : S.parts) {
        int sum = 0, count = 0;
        while (sum < part) {
            if (idx >= Q.parts.size()) return Partition({-1});
            sum += Q.parts[idx++];
            ++count;
        }
        if (sum != part) return Partition({-1});
        blocks.push_back(count);
    }
    if (idx != Q.parts.size()) return Partition({-1});
    return Partition(std::move(blocks));
}

} // namespace

std::vector<std::vector<LaxDualKey>> dual_chains(const Partition& S, int q) {
    std::vector<std::vector<LaxDualKey>> out;
    std::vector<LaxDualKey> cur;
    // rest = the partition the remaining chain entries still have to compose to
    std::function<void(const Partition&, int)> rec = [&](const Partition& rest, int q_left) {
        if (rest.is_zero()) {
            // only thin keys can follow
            if (q_left == 0) {
                if (!cur.empty()) out.push_back(cur);
                return;
            }
            for (int q2 = 1; q2 <= q_left; ++q2) {
                cur.push_back(LaxDualKey{Partition{}, q2});
                rec(rest, q_left - q2);
                cur.pop_back();
            }
            return;
        }
        if (rest.all_ones() && q_left == 0 && !cur.empty()) {
            // identity quotient left over: the chain is complete
            out.push_back(cur);
            return;
        }
        int w = rest.weight();
        for (int w2 = 1; w2 <= w; ++w2) {
            for (const auto& Q : enumerate_partitions(w, w2)) {
                Partition rem = quotient(Q, rest);
                if (rem.length() == 1 && rem.parts[0] == -1) continue;
                for (int q2 = 0; q2 <= q_left; ++q2) {
                    LaxDualKey key{Q, q2};
                    if (!key.valid()) continue;
                    cur.push_back(key);
                    rec(rem, q_left - q2);
                    cur.pop_back();
                }
            }
        }
    };
    rec(S, q);
    return out;
}

std::vector<Cooperation> laxdual_decompose(const LaxDualKey& k) {
    if (!k.valid()) throw InvalidKey(k.str());
    std::vector<Cooperation> out;
    const auto& parts = k.P.parts;
    for (int rp = 0; rp <= k.r(); ++rp) {
        Partition P0(std::vector<int>(parts.begin(), parts.begin() + rp));
        Partition suffix(std::vector<int>(parts.begin() + rp, parts.end()));
        for (auto& chain : dual_chains(suffix, k.q)) {
            LaxDualKey bottom{P0, (int)chain.size()};
            if (!bottom.valid()) continue;
            int e = cooperation_sign_exponent(bottom, chain);
            out.push_back({e % 2 == 0 ? 1 : -1, bottom, std::move(chain)});
        }
    }
    return out;
}

std::vector<InfTerm> laxdual_inf_decompose(const LaxDualKey& k) {
    if (!k.valid()) throw InvalidKey(k.str());
    std::vector<InfTerm> out;
    if (k.thin()) {
        // type I: both pieces thin, proper
        for (int kp = 2; kp <= k.q; ++kp) {
            int l = k.q + 1 - kp;
            if (l < 2) continue;
            for (int i = 1; i <= kp; ++i) {
                LaxDualKey bottom{Partition{}, kp};
                std::vector<LaxDualKey> tops(kp, LaxDualKey{Partition{}, 1});
                tops[i - 1] = LaxDualKey{Partition{}, l};
                int e = cooperation_sign_exponent(bottom, tops);
                // thin suspension bookkeeping: (-1)^{|c1|}
                int sign = ((e + bottom.degree()) % 2 == 0) ? 1 : -1;
                out.push_back({sign, 1, bottom, {LaxDualKey{Partition{}, l}}});
            }
        }
        return out;
    }
    // type II: the key keeps its partition, one thin piece of arity l
    for (int l = 2; l <= k.q + 1; ++l) {
        int kp = k.q + 1 - l;
        LaxDualKey bottom{k.P, kp};
        if (!bottom.valid()) continue;
        for (int i = 1; i <= kp; ++i) {
            std::vector<LaxDualKey> tops(kp, LaxDualKey{Partition{}, 1});
            tops[i - 1] = LaxDualKey{Partition{}, l};
            int e = cooperation_sign_exponent(bottom, tops);
            int sign = ((e + bottom.degree() + 1) % 2 == 0) ? 1 : -1;
            out.push_back({sign, 2, bottom, {LaxDualKey{Partition{}, l}}});
        }
    }
    // type III
    if (k.r() == 1) {
        // the beta expansion of a single-part key
        int pp = k.p(), n = k.q;
        std::vector<LaxKey> unit_tops(n, LaxKey{Partition{}, 1});
        for (const auto& [beta, bsign] : shuffles(pp - 1, n)) {
            for (const auto& [path, asign] : paths(pp)) {
                auto seq = beta_sequence(beta, path, unit_tops);
                std::vector<LaxDualKey> pieces;
                pieces.reserve(seq.size());
                for (const auto& key : seq) pieces.push_back(LaxDualKey{key.P, key.q});
                int e = (bsign < 0 ? 1 : 0) + (asign < 0 ? 1 : 0) + n * (pp - 1) + pp;
                LaxDualKey bottom{Partition{}, n + pp - 1};
                out.push_back({e % 2 == 0 ? 1 : -1, 3, bottom, std::move(pieces)});
            }
        }
    } else {
        // chains of non-thin keys with the adapted corolla sign
        for (auto& chain : dual_chains(k.P, k.q)) {
            bool nonthin = true;
            for (const auto& c : chain)
                if (c.thin()) { nonthin = false; break; }
            if (!nonthin || chain.size() < 1) continue;
            if (chain.size() == 1 && chain[0] == k) continue; // counit-style
            LaxDualKey bottom{Partition{}, (int)chain.size()};
            int e = cooperation_sign_exponent(bottom, chain) + 1;
            out.push_back({e % 2 == 0 ? 1 : -1, 3, bottom, std::move(chain)});
        }
    }
    return out;
}

} // namespace boxk
