#include "boxkoszul/minmodels.hpp"

#include <algorithm>
#include <functional>

namespace boxk {

int cobar_sign_exponent(int type, int consumer_dual_degree) {
    switch (type) {
        case 1: return consumer_dual_degree + 1;
        case 2: return consumer_dual_degree;
        case 3: return 1;
        default: throw Error("unknown thin-quadratic type");
    }
}

namespace {

int sign_of(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

ChainSlice component_of(const GeneratorSet& gs, Arity a,
                        const std::function<TreeVec(const BoxTree&)>& d,
                        const std::function<const std::vector<BoxTree>&(Arity, int)>& basis_of) {
    ChainSlice c;
    int dmax = std::max(0, a.p + a.q - a.r - 1);
    c.deg_min = 0;
    c.deg_max = dmax;
    std::map<int, std::map<BoxTree, std::size_t>> index;
    for (int deg = 0; deg <= dmax; ++deg) {
        const auto& ts = basis_of(a, deg);
        for (const auto& t : ts) {
            index[deg][t] = c.basis[deg].size();
            c.basis[deg].push_back(tree_str(gs, t));
        }
    }
    for (int deg = 1; deg <= dmax; ++deg) {
        RatMatrix m(c.dim(deg - 1), c.dim(deg));
        for (const auto& [t, col] : index[deg]) {
            for (const auto& [u, coeff] : d(t)) {
                auto it = index[deg - 1].find(u);
                if (it == index[deg - 1].end())
                    throw Error("differential left the enumerated basis at " + tree_str(gs, u));
                m.add(it->second, col, coeff);
            }
        }
        c.diff[deg] = std::move(m);
    }
    return c;
}

} // namespace

/* ---- LaxInfOperad ---- */

LaxInfOperad::LaxInfOperad(int max_pq) : max_pq_(max_pq) {
    for (int p = 0; p <= max_pq; ++p)
        for (int q = 0; p + q <= max_pq; ++q) {
            if (p + q < 2) continue;
            int gid = gs_.add("m" + std::to_string(p) + "_" + std::to_string(q),
                              {p, q, p == 0 ? 0 : 1}, p + q - 2);
            id_[{p, q}] = gid;
            pq_.push_back({p, q});
        }
    bases_ = std::make_unique<BasisCache>(gs_);
}

const std::vector<BoxTree>& LaxInfOperad::basis(Arity a, int degree) const {
    return bases_->get(a, degree);
}

int LaxInfOperad::id(int p, int q) const {
    auto it = id_.find({p, q});
    return it == id_.end() ? -1 : it->second;
}

const TreeVec& LaxInfOperad::diff(int gid) const {
    auto it = cache_.find(gid);
    if (it != cache_.end()) return it->second;
    auto [p, q] = pq_.at(gid);
    TreeVec out;
    for (const auto& tq : enumerate_thin_quadratic(gs_, {p, q, p == 0 ? 0 : 1})) {
        auto [bp, bq] = pq_.at(tq.tree.gen);
        int cdeg = bq - 1 + bp - (bp > 0 ? 1 : 0);
        int e = (desuspended_sign(gs_, tq.tree) < 0 ? 1 : 0) + cobar_sign_exponent(tq.type, cdeg);
        tv_add(out, tq.tree, Rat(sign_of(e)));
    }
    return cache_.emplace(gid, std::move(out)).first->second;
}

TreeVec LaxInfOperad::diff_tree(const BoxTree& t) const {
    return apply_derivation(gs_, t, [this](int g) -> const TreeVec& { return diff(g); });
}

TreeVec LaxInfOperad::diff_vec(const TreeVec& v) const {
    TreeVec out;
    for (const auto& [t, c] : v)
        for (const auto& [u, c2] : diff_tree(t)) tv_add(out, u, c * c2);
    return out;
}

ChainSlice LaxInfOperad::component(Arity a, int cap) const {
    (void)cap;
    return component_of(gs_, a, [this](const BoxTree& t) { return diff_tree(t); },
                        [this](Arity b, int d) -> const std::vector<BoxTree>& { return basis(b, d); });
}

/* ---- OmegaLaxOperad ---- */

OmegaLaxOperad::OmegaLaxOperad(int max_pq) : max_pq_(max_pq) {
    for (int p = 0; p <= max_pq; ++p)
        for (int q = 0; p + q <= max_pq; ++q)
            for (int r = 0; r <= p; ++r)
                for (const auto& P : enumerate_partitions(p, r)) {
                    LaxDualKey k{P, q};
                    if (!k.valid() || k.is_counit()) continue;
                    int deg = (r > 0) ? (p - r + q - 1) : (q - 2);
                    int gid = gs_.add("w" + P.str() + "_" + std::to_string(q), {p, q, r}, deg);
                    id_[k] = gid;
                    keys_.push_back(k);
                }
}

int OmegaLaxOperad::id(const LaxDualKey& k) const {
    auto it = id_.find(k);
    return it == id_.end() ? -1 : it->second;
}

namespace {

// True when the whole stacking is a pass-wrap of a smaller one, i.e. one
// strand runs over every column.
bool globally_wrapped(const BoxTree& t) {
    if (t.is_unit()) return false;
    if (t.tops.empty()) return t.pass >= 1;
    for (const auto& s : t.tops)
        if (s.is_unit() || !globally_wrapped(s)) return false;
    return true;
}

} // namespace

const TreeVec& OmegaLaxOperad::diff(int gid) const {
    auto it = cache_.find(gid);
    if (it != cache_.end()) return it->second;
    const LaxDualKey& k = keys_.at(gid);
    TreeVec out;
    auto label_key = [this](int g) { return LaxKey{keys_.at(g).P, keys_.at(g).q}; };
    // A stacking that is a pass-wrap of a smaller one re-counts the
    // differential of the unwrapped key; those groupings are dropped.
    for (const auto& tq : enumerate_thin_quadratic(gs_, k.arity())) {
        if (globally_wrapped(tq.tree)) continue;
        if (eval_tree_key(gs_, tq.tree, label_key).P != k.P) continue;
        int cdeg = keys_.at(tq.tree.gen).degree();
        int e = (desuspended_sign(gs_, tq.tree) < 0 ? 1 : 0) + cobar_sign_exponent(tq.type, cdeg);
        tv_add(out, tq.tree, Rat(sign_of(e)));
    }
    return cache_.emplace(gid, std::move(out)).first->second;
}

TreeVec OmegaLaxOperad::diff_tree(const BoxTree& t) const {
    return apply_derivation(gs_, t, [this](int g) -> const TreeVec& { return diff(g); });
}

ChainSlice OmegaLaxOperad::component(Arity a, int cap) const {
    int cp = cap;
    return component_of(gs_, a, [this](const BoxTree& t) { return diff_tree(t); },
                        [this, cp](Arity b, int d) -> const std::vector<BoxTree>& {
                            static thread_local std::vector<BoxTree> tmp;
                            tmp = enumerate_basis(gs_, b, d, cp);
                            return tmp;
                        });
}

TreeVec OmegaLaxOperad::project_to_laxinf(const LaxInfOperad& dst, const BoxTree& t) const {
    std::function<std::optional<BoxTree>(const BoxTree&)> relabel =
        [&](const BoxTree& u) -> std::optional<BoxTree> {
        if (u.is_unit()) return u;
        const LaxDualKey& k = keys_.at(u.gen);
        if (k.r() > 1) return std::nullopt;
        int gid = dst.id(k.p(), k.q);
        if (gid < 0) throw CapExceeded("projection target generator m" + std::to_string(k.p()));
        BoxTree out = u;
        out.gen = gid;
        for (auto& s : out.tops) {
            auto r = relabel(s);
            if (!r) return std::nullopt;
            s = *r;
        }
        return out;
    };
    TreeVec out;
    auto r = relabel(t);
    if (r) tv_add(out, *r, Rat(1));
    return out;
}

TreeVec OmegaLaxOperad::project_to_laxinf(const LaxInfOperad& dst, const TreeVec& v) const {
    TreeVec out;
    for (const auto& [t, c] : v)
        for (const auto& [u, c2] : project_to_laxinf(dst, t)) tv_add(out, u, c * c2);
    return out;
}

std::map<LaxKey, Rat> map_f_to_lax(const LaxInfOperad& op, const TreeVec& v) {
    GeneratorSet lax = lax_generator_set();
    std::map<LaxKey, Rat> out;
    for (const auto& [t, c] : v) {
        // positive-degree generators map to zero
        bool alive = true;
        std::function<void(const BoxTree&)> scan = [&](const BoxTree& u) {
            if (u.is_unit()) return;
            if (op.gens()[u.gen].degree != 0) alive = false;
            for (const auto& s : u.tops) scan(s);
        };
        scan(t);
        if (!alive) continue;
        std::function<BoxTree(const BoxTree&)> relabel = [&](const BoxTree& u) -> BoxTree {
            if (u.is_unit()) return u;
            BoxTree w = u;
            auto [p, q] = op.pq(u.gen);
            if (p == 0 && q == 2) w.gen = lax.find("m");
            else if (p == 1 && q == 1) w.gen = lax.find("f");
            else if (p == 2 && q == 0) w.gen = lax.find("c");
            else throw Error("unexpected degree-0 generator");
            for (auto& s : w.tops) s = relabel(s);
            return w;
        };
        LaxKey key = lax_eval_word(lax, relabel(t));
        auto [it, fresh] = out.emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

/* ---- MorInfOperad ---- */

MorInfOperad::MorInfOperad(int max_q) : max_q_(max_q) {
    for (int q = 2; q <= max_q; ++q) {
        int gid = gs_.add("n0_" + std::to_string(q), {0, q, 0}, q - 2);
        id_[{0, q}] = gid;
        pq_.push_back({0, q});
    }
    for (int q = 1; q <= max_q; ++q) {
        int gid = gs_.add("n1_" + std::to_string(q), {1, q, 1}, q - 1);
        id_[{1, q}] = gid;
        pq_.push_back({1, q});
    }
}

int MorInfOperad::id(int p, int q) const {
    auto it = id_.find({p, q});
    return it == id_.end() ? -1 : it->second;
}

TreeVec MorInfOperad::diff_route_a(int gid) const {
    auto [p, q] = pq_.at(gid);
    TreeVec out;
    if (p == 0) {
        for (int k = 2; k <= q - 1; ++k) {
            int l = q + 1 - k;
            if (l < 2 || id(0, k) < 0 || id(0, l) < 0) continue;
            for (int i = 1; i <= k; ++i) {
                auto st = graft(gs_, BoxTree::bare(id(0, k)), i, BoxTree::bare(id(0, l)));
                tv_add(out, st.tree, Rat(sign_of(i + l * (k - i)) * st.sign));
            }
        }
        return out;
    }
    // p == 1: restriction-side terms, bounds repaired so the q = 2 boundary
    // recovers the defining relation
    for (int k = 1; k <= q - 1; ++k) {
        int l = q + 1 - k;
        if (l < 2 || id(1, k) < 0 || id(0, l) < 0) continue;
        for (int i = 1; i <= k; ++i) {
            auto st = graft(gs_, BoxTree::bare(id(1, k)), i, BoxTree::bare(id(0, l)));
            tv_add(out, st.tree, Rat(sign_of(i - 1 + l * (k - i)) * st.sign));
        }
    }
    std::vector<int> ls;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            int k = (int)ls.size();
            if (k < 2 || id(0, k) < 0) return;
            int e = 0;
            for (int j = 1; j <= k; ++j) e += (ls[j - 1] + 1) * (k - j);
            std::vector<BoxTree> tops;
            for (int lj : ls) {
                if (id(1, lj) < 0) return;
                tops.push_back(BoxTree::bare(id(1, lj)));
            }
            auto st = compose(gs_, BoxTree::bare(id(0, k)), tops);
            tv_add(out, st.tree, Rat(-sign_of(e) * st.sign));
            return;
        }
        for (int l2 = 1; l2 <= rem; ++l2) {
            ls.push_back(l2);
            rec(rem - l2);
            ls.pop_back();
        }
    };
    rec(q);
    return out;
}

TreeVec MorInfOperad::diff_route_b(int gid) const {
    auto [p, q] = pq_.at(gid);
    TreeVec out;
    for (const auto& coop : mordual_decompose(MorDualKey{p, q})) {
        int p0 = coop.bottom.p;
        int n = (int)coop.tops.size();
        if (coop.bottom.is_counit()) continue; // counit remainder
        if (p0 == p) {
            // thin pieces: exactly one non-counit one
            int piece = -1;
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                if (coop.tops[i].is_counit()) continue;
                if (coop.tops[i].p != 0) { ok = false; break; }
                if (piece >= 0) { ok = false; break; }
                piece = i;
            }
            if (!ok || piece < 0) continue;
            int l = coop.tops[piece].q;
            if (l < 2 || id(p0, n) < 0 || id(0, l) < 0) continue;
            int type = (p == 0) ? 1 : 2;
            int e_dec = 0;
            for (int i = 1; i <= n; ++i) e_dec += (coop.tops[i - 1].q - 1) * (n - i);
            int e = e_dec + cobar_sign_exponent(type, coop.bottom.degree());
            auto st = graft(gs_, BoxTree::bare(id(p0, n)), piece + 1, BoxTree::bare(id(0, l)));
            tv_add(out, st.tree, Rat(sign_of(e) * st.sign));
        } else if (p0 == 0 && p >= 1) {
            // thin remainder over the full column splitting
            if (n < 2 || id(0, n) < 0) continue;
            bool ok = true;
            std::vector<BoxTree> tops;
            for (const auto& t : coop.tops) {
                if (t.p != p || id(p, t.q) < 0) { ok = false; break; }
                tops.push_back(BoxTree::bare(id(p, t.q)));
            }
            if (!ok) continue;
            int e_dec = 0;
            for (int i = 1; i <= n; ++i) e_dec += (coop.tops[i - 1].q - 1) * (n - i);
            int e = e_dec + cobar_sign_exponent(3, coop.bottom.degree());
            auto st = compose(gs_, BoxTree::bare(id(0, n)), tops);
            tv_add(out, st.tree, Rat(sign_of(e) * st.sign));
        }
    }
    return out;
}

const TreeVec& MorInfOperad::diff(int gid) const {
    auto it = cache_.find(gid);
    if (it != cache_.end()) return it->second;
    TreeVec a = diff_route_a(gid);
    TreeVec b = diff_route_b(gid);
    if (a != b) {
        auto [p, q] = pq_.at(gid);
        throw RouteMismatch("d(m_{" + std::to_string(p) + "," + std::to_string(q) + "})");
    }
    return cache_.emplace(gid, std::move(a)).first->second;
}

TreeVec MorInfOperad::diff_tree(const BoxTree& t) const {
    return apply_derivation(gs_, t, [this](int g) -> const TreeVec& { return diff(g); });
}

/* ---- OmegaMorOperad ---- */

OmegaMorOperad::OmegaMorOperad(int max_p, int max_q) {
    for (int p = 0; p <= max_p; ++p)
        for (int q = 1; q <= max_q; ++q) {
            if (p == 0 && q == 1) continue; // counit
            int deg = (p > 0) ? (q - 1) : (q - 2);
            if (p == 0 && q < 2) continue;
            int gid = gs_.add("y" + std::to_string(p) + "_" + std::to_string(q), {p, q, p}, deg);
            id_[{p, q}] = gid;
            pq_.push_back({p, q});
        }
}

int OmegaMorOperad::id(int p, int q) const {
    auto it = id_.find({p, q});
    return it == id_.end() ? -1 : it->second;
}

const TreeVec& OmegaMorOperad::diff(int gid) const {
    auto it = cache_.find(gid);
    if (it != cache_.end()) return it->second;
    auto [p, q] = pq_.at(gid);
    TreeVec out;
    for (const auto& coop : mordual_decompose(MorDualKey{p, q})) {
        int p0 = coop.bottom.p;
        int n = (int)coop.tops.size();
        if (coop.bottom.is_counit()) continue;
        if (p0 == p) {
            int piece = -1;
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                if (coop.tops[i].is_counit()) continue;
                if (coop.tops[i].p != 0) { ok = false; break; }
                if (piece >= 0) { ok = false; break; }
                piece = i;
            }
            if (!ok || piece < 0) continue;
            int l = coop.tops[piece].q;
            if (l < 2 || id(p0, n) < 0 || id(0, l) < 0) continue;
            int type = (p == 0) ? 1 : 2;
            int e_dec = 0;
            for (int i = 1; i <= n; ++i) e_dec += (coop.tops[i - 1].q - 1) * (n - i);
            int e = e_dec + cobar_sign_exponent(type, coop.bottom.degree());
            auto st = graft(gs_, BoxTree::bare(id(p0, n)), piece + 1, BoxTree::bare(id(0, l)));
            tv_add(out, st.tree, Rat(sign_of(e) * st.sign));
        } else if (p0 == 0 && p >= 1) {
            if (n < 2 || id(0, n) < 0) continue;
            bool ok = true;
            std::vector<BoxTree> tops;
            for (const auto& t : coop.tops) {
                if (t.p != p || id(p, t.q) < 0) { ok = false; break; }
                tops.push_back(BoxTree::bare(id(p, t.q)));
            }
            if (!ok) continue;
            int e_dec = 0;
            for (int i = 1; i <= n; ++i) e_dec += (coop.tops[i - 1].q - 1) * (n - i);
            int e = e_dec + cobar_sign_exponent(3, coop.bottom.degree());
            auto st = compose(gs_, BoxTree::bare(id(0, n)), tops);
            tv_add(out, st.tree, Rat(sign_of(e) * st.sign));
        }
    }
    return cache_.emplace(gid, std::move(out)).first->second;
}

TreeVec OmegaMorOperad::diff_tree(const BoxTree& t) const {
    return apply_derivation(gs_, t, [this](int g) -> const TreeVec& { return diff(g); });
}

/* ---- d^2 reports ---- */

namespace {

template <class Op>
DsqReport dsq_over(const Op& op, int ngens) {
    DsqReport rep;
    for (int g = 0; g < ngens; ++g) {
        TreeVec dd;
        for (const auto& [t, c] : op.diff(g)) {
            for (const auto& [u, c2] : op.diff_tree(t)) tv_add(dd, u, c * c2);
        }
        if (!dd.empty()) {
            rep.pass = false;
            rep.witness = op.gens()[g].name + " -> " + tree_str(op.gens(), dd.begin()->first);
            return rep;
        }
    }
    return rep;
}

} // namespace

DsqReport d_squared_report(DsqTarget which, int size_cap) {
    switch (which) {
        case DsqTarget::LaxInf: {
            LaxInfOperad op(size_cap);
            return dsq_over(op, (int)op.gens().gens.size());
        }
        case DsqTarget::OmegaLax: {
            OmegaLaxOperad op(size_cap);
            return dsq_over(op, (int)op.gens().gens.size());
        }
        case DsqTarget::MorInf: {
            MorInfOperad op(size_cap);
            return dsq_over(op, (int)op.gens().gens.size());
        }
        case DsqTarget::OmegaMor: {
            OmegaMorOperad op(size_cap, size_cap);
            return dsq_over(op, (int)op.gens().gens.size());
        }
    }
    throw Error("unknown d^2 target");
}

} // namespace boxk
