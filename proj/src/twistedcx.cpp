#include "boxkoszul/twistedcx.hpp"

#include <algorithm>
#include <functional>

namespace boxk {

ComplexId complex_id_from(const std::string& name) {
    if (name == "lax-full") return ComplexId::LaxFull;
    if (name == "lax-le1") return ComplexId::LaxLe1;
    if (name == "lax-gt1") return ComplexId::LaxGt1;
    if (name == "mor-full") return ComplexId::MorFull;
    if (name == "mor-le1") return ComplexId::MorPle1;
    if (name == "mor-gt1") return ComplexId::MorPgt1;
    if (name == "assoc-thin") return ComplexId::AssocThin;
    if (name == "laxinf-le1") return ComplexId::LaxLe1OverLaxInf;
    throw OutOfRange("complex id " + name);
}

std::string to_string(ComplexId id) {
    switch (id) {
        case ComplexId::LaxFull: return "lax-full";
        case ComplexId::LaxLe1: return "lax-le1";
        case ComplexId::LaxGt1: return "lax-gt1";
        case ComplexId::MorFull: return "mor-full";
        case ComplexId::MorPle1: return "mor-le1";
        case ComplexId::MorPgt1: return "mor-gt1";
        case ComplexId::AssocThin: return "assoc-thin";
        case ComplexId::LaxLe1OverLaxInf: return "laxinf-le1";
    }
    return "?";
}

/* ---- Lax Koszul elements ---- */

Arity LaxKoszulElt::arity() const {
    if (tops.empty()) return {bottom.p() + pass, 0, bottom.r() + pass};
    return {bottom.p() + tops.front().p(), [&] {
                int q = 0;
                for (const auto& t : tops) q += t.q;
                return q;
            }(),
            bottom.r() + tops.back().r()};
}

int LaxKoszulElt::degree() const {
    int n_ = n();
    return bottom.thin() ? n_ - 2 : n_ - 1 + bottom.p() - bottom.r();
}

long LaxKoszulElt::level() const {
    long s = 0;
    for (const auto& t : tops) s += stacking_number(t.P, t.q);
    return s;
}

bool LaxKoszulElt::valid() const {
    LaxDualKey b = bottom;
    if (!b.valid() || b.q != n()) return false;
    if (pass != 0 && !tops.empty()) return false;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        if (!tops[i].valid()) return false;
        if (i > 0 && tops[i - 1].r() != tops[i].p()) return false;
    }
    return true;
}

std::string LaxKoszulElt::str() const {
    std::string s = bottom.str();
    if (pass > 0) s += "+" + std::to_string(pass);
    s += "[";
    for (std::size_t i = 0; i < tops.size(); ++i) {
        if (i) s += ";";
        s += tops[i].str();
    }
    return s + "]";
}

LaxKoszulVec lax_koszul_diff(const LaxKoszulElt& e) {
    LaxKoszulVec out;
    int n = e.n();
    int thin = e.bottom.thin() ? 1 : 0;
    // merge terms
    for (int i = 1; i <= n - 1; ++i) {
        LaxKey merged = lax_compose(LaxKey{Partition{}, 2}, {e.tops[i - 1], e.tops[i]});
        LaxKoszulElt t;
        t.bottom = LaxDualKey{e.bottom.P, n - 1};
        t.tops.assign(e.tops.begin(), e.tops.end());
        t.tops.erase(t.tops.begin() + i);
        t.tops[i - 1] = merged;
        int exp = i - 1 + thin;
        Rat c(exp % 2 == 0 ? 1 : -1);
        auto it = out.find(t);
        if (it == out.end()) out.emplace(std::move(t), c);
        else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    // path expansion for a single-output bottom
    if (e.bottom.r() == 1) {
        int pp = e.bottom.p();
        for (const auto& [beta, bsign] : shuffles(pp - 1, n)) {
            for (const auto& [path, asign] : paths(pp)) {
                auto seq = beta_sequence(beta, path, e.tops);
                if (e.pass > 0)
                    for (auto& key : seq) key = lax_wrap(key, e.pass);
                LaxKoszulElt t;
                t.bottom = LaxDualKey{Partition{}, n + pp - 1};
                t.tops = std::move(seq);
                int exp = (bsign < 0 ? 1 : 0) + (asign < 0 ? 1 : 0) + n * (pp - 1) + pp;
                Rat c(exp % 2 == 0 ? 1 : -1);
                auto it = out.find(t);
                if (it == out.end()) out.emplace(std::move(t), c);
                else {
                    it->second += c;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
    }
    return out;
}

/* ---- Mor Koszul elements ---- */

Arity MorKoszulElt::arity() const {
    int q = 0;
    for (const auto& t : tops) q += t.q;
    return {bottom.p + p1(), q, bottom.p + p1()};
}

int MorKoszulElt::degree() const { return bottom.degree() - (bottom.p == 0 ? 1 : 0); }

bool MorKoszulElt::valid() const {
    if (!bottom.valid() || (int)tops.size() != bottom.q) return false;
    for (const auto& t : tops)
        if (!t.valid() || t.p != p1()) return false;
    return true;
}

std::string MorKoszulElt::str() const {
    std::string s = bottom.str() + "[";
    for (std::size_t i = 0; i < tops.size(); ++i) {
        if (i) s += ";";
        s += tops[i].str();
    }
    return s + "]";
}

MorKoszulVec mor_koszul_diff(const MorKoszulElt& e) {
    MorKoszulVec out;
    int n = e.n();
    int q = 0;
    for (const auto& t : e.tops) q += t.q;
    for (int i = 1; i <= n - 1; ++i) {
        MorKoszulElt t;
        t.bottom = MorDualKey{e.bottom.p, n - 1};
        t.tops = e.tops;
        t.tops[i - 1] = MorKey{e.p1(), e.tops[i - 1].q + e.tops[i].q};
        t.tops.erase(t.tops.begin() + i);
        int exp = (n - 2) + q - i + (e.bottom.p == 0 ? 1 : 0);
        Rat c(exp % 2 == 0 ? 1 : -1);
        auto it = out.find(t);
        if (it == out.end()) out.emplace(std::move(t), c);
        else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    if (e.bottom.p == 1) {
        MorKoszulElt t;
        t.bottom = MorDualKey{0, n};
        for (const auto& x : e.tops) t.tops.push_back(MorKey{x.p + 1, x.q});
        auto it = out.find(t);
        Rat c(-1);
        if (it == out.end()) out.emplace(std::move(t), c);
        else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

/* ---- module over the homotopy operad ---- */

const std::vector<ThinQuadratic>& InfModuleOps::tq(Arity a) const {
    auto it = tq_.find(a);
    if (it != tq_.end()) return it->second;
    return tq_.emplace(a, enumerate_thin_quadratic(op_->gens(), a)).first->second;
}

const std::vector<BoxTree>& InfModuleOps::single_rows(Arity a) const {
    auto it = rows_.find(a);
    if (it != rows_.end()) return it->second;
    return rows_.emplace(a, enumerate_nonthin(op_->gens(), a)).first->second;
}

int InfModuleOps::degree(const InfModElt& e) const {
    int n = (int)e.tops.size();
    int d = e.bottom.thin() ? n - 2 : n - 1 + e.bottom.p() - e.bottom.r();
    for (const auto& t : e.tops) d += tree_degree(op_->gens(), t);
    return d;
}

InfModVec InfModuleOps::diff(const InfModElt& e) const {
    const LaxInfOperad& op = *op_;
    const GeneratorSet& gs = op.gens();
    InfModVec out;
    auto add = [&](InfModElt t, Rat c) {
        if (c.is_zero()) return;
        auto it = out.find(t);
        if (it == out.end()) out.emplace(std::move(t), std::move(c));
        else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    int n = (int)e.tops.size();
    std::vector<int> tdeg(n);
    for (int i = 0; i < n; ++i) tdeg[i] = tree_degree(gs, e.tops[i]);
    int bdeg = e.bottom.thin() ? n - 2 : n - 1 + e.bottom.p() - e.bottom.r();

    // internal differential of the tops
    int prefix = bdeg;
    for (int i = 0; i < n; ++i) {
        for (const auto& [u, c] : op.diff_tree(e.tops[i])) {
            InfModElt t = e;
            t.tops[i] = u;
            add(std::move(t), (prefix % 2 == 0) ? c : -c);
        }
        prefix += tdeg[i];
    }

    // twisted part
    if (e.bottom.thin()) {
        for (int l = 2; l <= n; ++l) {
            int k = n - l + 1;
            int gid = op.id(0, l);
            if (gid < 0) throw CapExceeded("homotopy operad too small for m0_" + std::to_string(l));
            for (int i = 1; i <= k; ++i) {
                int sd = (l - 1) * (k - i);
                int exp = sd + (k - 1) + 1;
                int cross = 0;
                for (int j = 0; j < i - 1; ++j) cross += tdeg[j];
                exp += (l - 2) * cross;
                std::vector<BoxTree> block(e.tops.begin() + (i - 1), e.tops.begin() + (i - 1) + l);
                auto st = compose(gs, BoxTree::bare(gid), block);
                InfModElt t;
                t.bottom = LaxDualKey{Partition{}, k};
                t.tops.assign(e.tops.begin(), e.tops.begin() + (i - 1));
                t.tops.push_back(st.tree);
                t.tops.insert(t.tops.end(), e.tops.begin() + (i - 1) + l, e.tops.end());
                add(std::move(t), Rat(st.sign * (exp % 2 == 0 ? 1 : -1)));
            }
        }
        return out;
    }

    if (e.bottom.r() != 1) throw Error("restricted module expects bottoms with r' <= 1");
    int pp = e.bottom.p();
    // one thin piece through a slot (the merge-shaped terms)
    for (int l = 2; l <= n; ++l) {
        int k = n - l + 1;
        int gid = op.id(0, l);
        if (gid < 0) throw CapExceeded("homotopy operad too small for m0_" + std::to_string(l));
        for (int i = 1; i <= k; ++i) {
            int sd = (l - 1) * (k - i + pp - 1);
            int exp = sd + (k - 1 + pp - 1);
            int cross = 0;
            for (int j = 0; j < i - 1; ++j) cross += tdeg[j];
            exp += (l - 2) * cross;
            std::vector<BoxTree> block(e.tops.begin() + (i - 1), e.tops.begin() + (i - 1) + l);
            auto st = compose(gs, BoxTree::bare(gid), block);
            InfModElt t;
            t.bottom = LaxDualKey{Partition(std::vector<int>{pp}), k};
            t.tops.assign(e.tops.begin(), e.tops.begin() + (i - 1));
            t.tops.push_back(st.tree);
            t.tops.insert(t.tops.end(), e.tops.begin() + (i - 1) + l, e.tops.end());
            add(std::move(t), Rat(st.sign * (exp % 2 == 0 ? 1 : -1)));
        }
    }
    // the full resolution of the single-output bottom: the counit remainder
    // over a single non-thin arrangement absorbs the whole element
    for (const auto& T : single_rows({pp, n, 1})) {
        int exp = (desuspended_sign(gs, T) < 0 ? 1 : 0) + 1;
        BoxTree body = T;
        int sign = 1;
        if (n > 0) {
            auto st = compose(gs, T, e.tops);
            sign = st.sign;
            body = std::move(st.tree);
        } else if (e.pass > 0) {
            body = wrap_pass(gs, T, e.pass);
        }
        InfModElt t;
        t.bottom = LaxDualKey{Partition{}, 1};
        t.tops = {std::move(body)};
        add(std::move(t), Rat(sign * (exp % 2 == 0 ? 1 : -1)));
    }
    // ... and a thin remainder over every longer arrangement of non-thin
    // stackings composing to (p'), with the module tops threaded through
    for (const auto& tq : this->tq({pp, n, 1})) {
        if (tq.type != 3) continue;
        const std::vector<BoxTree>& row = tq.tree.tops;
        int m = (int)row.size();
        // S^d of the arrangement plus the adapted type sign
        int exp = (desuspended_sign(gs, tq.tree) < 0 ? 1 : 0) + 1;
        // distribute the module tops over the row's open inputs
        int sign = 1;
        int cross_deg = 0; // total degree of blocks placed so far
        std::vector<BoxTree> tops2;
        std::size_t cursor = 0;
        int row_width = n > 0 ? tree_arity(gs, e.tops[0]).p : e.pass;
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            Arity ra = tree_arity(gs, row[j]);
            int rdeg = tree_degree(gs, row[j]);
            if (j > 0 && rdeg % 2 != 0 && cross_deg % 2 != 0) sign = -sign;
            if (ra.q == 0) {
                tops2.push_back(wrap_pass(gs, row[j], row_width));
                continue;
            }
            if (cursor + ra.q > e.tops.size()) { ok = false; break; }
            std::vector<BoxTree> block(e.tops.begin() + cursor, e.tops.begin() + cursor + ra.q);
            for (int b = 0; b < ra.q; ++b) cross_deg += tdeg[cursor + b];
            cursor += ra.q;
            row_width = tree_arity(gs, block.back()).r;
            auto st = compose(gs, row[j], block);
            sign *= st.sign;
            tops2.push_back(std::move(st.tree));
        }
        if (!ok || cursor != e.tops.size()) continue;
        InfModElt t;
        t.bottom = LaxDualKey{Partition{}, m};
        t.tops = std::move(tops2);
        add(std::move(t), Rat(sign * (exp % 2 == 0 ? 1 : -1)));
    }
    return out;
}

InfModVec inf_mod_diff(const LaxInfOperad& op, const InfModElt& e) {
    InfModuleOps ops(op);
    return ops.diff(e);
}

/* ---- bases ---- */

std::vector<LaxKoszulElt> lax_koszul_basis(Arity a) {
    std::vector<LaxKoszulElt> out;
    for (int rp = 0; rp <= a.r; ++rp) {
        for (int pp = rp; pp <= a.p; ++pp) {
            for (const auto& P0 : enumerate_partitions(pp, rp)) {
                int w0 = a.p - pp, wn = a.r - rp;
                // no tops: pass strands only
                if (a.q == 0 && w0 == wn) {
                    LaxKoszulElt e;
                    e.bottom = LaxDualKey{P0, 0};
                    e.pass = w0;
                    if (e.bottom.valid()) out.push_back(e);
                }
                // chains
                std::vector<LaxKey> cur;
                std::function<void(int, int)> rec = [&](int width, int q_left) {
                    if (width == wn && q_left == 0 && !cur.empty()) {
                        LaxKoszulElt e;
                        e.bottom = LaxDualKey{P0, (int)cur.size()};
                        e.tops = cur;
                        if (e.bottom.valid()) out.push_back(e);
                        // chains may continue with further thin keys only when
                        // width is 0; handled by the loop below
                    }
                    for (int w2 = (width > 0 ? 1 : 0); w2 <= width; ++w2) {
                        for (const auto& Q : enumerate_partitions(width, w2)) {
                            for (int q2 = 0; q2 <= q_left; ++q2) {
                                LaxKey key{Q, q2};
                                if (!key.valid()) continue;
                                cur.push_back(key);
                                rec(w2, q_left - q2);
                                cur.pop_back();
                            }
                        }
                    }
                };
                rec(w0, a.q);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<MorKoszulElt> mor_koszul_basis(Arity a) {
    std::vector<MorKoszulElt> out;
    if (a.p != a.r) return out;
    for (int p0 = 0; p0 <= a.p; ++p0) {
        int p1 = a.p - p0;
        std::vector<int> qs;
        std::function<void(int)> rec = [&](int rem) {
            if (rem == 0 && !qs.empty()) {
                MorKoszulElt e;
                e.bottom = MorDualKey{p0, (int)qs.size()};
                for (int qi : qs) e.tops.push_back(MorKey{p1, qi});
                out.push_back(std::move(e));
                return;
            }
            for (int q2 = 1; q2 <= rem; ++q2) {
                qs.push_back(q2);
                rec(rem - q2);
                qs.pop_back();
            }
        };
        rec(a.q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void InfModuleOps::visit_basis(Arity a, const std::function<void(InfModElt&&)>& f) const {
    const LaxInfOperad& op = *op_;
    for (int rp = 0; rp <= std::min(a.r, 1); ++rp) {
        for (int pp = (rp == 0 ? 0 : 1); pp <= a.p; ++pp) {
            if (rp == 0 && pp > 0) continue; // Part(p,0) empty for p > 0
            for (const auto& P0 : enumerate_partitions(pp, rp)) {
                int w0 = a.p - pp, wn = a.r - rp;
                if (a.q == 0 && w0 == wn) {
                    InfModElt e;
                    e.bottom = LaxDualKey{P0, 0};
                    e.pass = w0;
                    if (e.bottom.valid()) f(std::move(e));
                }
                std::vector<BoxTree> cur;
                std::function<void(int, int)> rec = [&](int width, int q_left) {
                    if (width == wn && q_left == 0 && !cur.empty()) {
                        InfModElt e;
                        e.bottom = LaxDualKey{P0, (int)cur.size()};
                        e.tops = cur;
                        if (e.bottom.valid()) f(std::move(e));
                    }
                    for (int w2 = (width > 0 ? 1 : 0); w2 <= width; ++w2) {
                        for (int q2 = 0; q2 <= q_left; ++q2) {
                            int dmax = width + q2 - w2 - 1;
                            for (int d2 = 0; d2 <= std::max(0, dmax); ++d2) {
                                for (const auto& t : op.basis({width, q2, w2}, d2)) {
                                    cur.push_back(t);
                                    rec(w2, q_left - q2);
                                    cur.pop_back();
                                }
                            }
                        }
                    }
                };
                rec(w0, a.q);
            }
        }
    }
}

std::vector<InfModElt> inf_mod_basis(const LaxInfOperad& op, Arity a) {
    std::vector<InfModElt> out;
    InfModuleOps ops(op);
    ops.visit_basis(a, [&](InfModElt&& e) { out.push_back(std::move(e)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/* ---- slices ---- */

namespace {

template <class Elt, class DiffFn, class DegFn, class LevelFn, class StrFn>
FilteredChainSlice build_slice(const std::vector<Elt>& basis, DiffFn diff, DegFn deg,
                               LevelFn level, StrFn str) {
    FilteredChainSlice c;
    std::map<int, std::map<Elt, std::size_t>> index;
    int dmin = 0, dmax = -1;
    bool first = true;
    for (const auto& e : basis) {
        int d = deg(e);
        if (first || d < dmin) dmin = d;
        if (first || d > dmax) dmax = d;
        first = false;
    }
    if (first) {
        c.deg_min = 0;
        c.deg_max = -1;
        return c;
    }
    c.deg_min = dmin;
    c.deg_max = dmax;
    for (int d = dmin; d <= dmax; ++d) {
        c.basis[d] = {};
        c.level[d] = {};
    }
    for (const auto& e : basis) {
        int d = deg(e);
        index[d][e] = c.basis[d].size();
        c.basis[d].push_back(str(e));
        c.level[d].push_back((std::size_t)level(e));
    }
    for (int d = dmin + 1; d <= dmax; ++d) {
        RatMatrix m(c.dim(d - 1), c.dim(d));
        for (const auto& [e, col] : index[d]) {
            for (const auto& [t, coeff] : diff(e)) {
                int td = deg(t);
                if (td != d - 1) throw Error("differential term off by degree at " + str(e));
                auto it = index[d - 1].find(t);
                if (it == index[d - 1].end())
                    throw Error("differential left the basis: " + str(e) + " -> " + str(t));
                m.add(it->second, col, coeff);
            }
        }
        c.diff[d] = std::move(m);
    }
    // terms out of degree d = dmin would fall outside the slice
    if (c.dim(dmin) > 0) {
        for (const auto& [e, col] : index[dmin]) {
            (void)col;
            if (!diff(e).empty()) throw Error("differential escapes the slice at " + str(e));
        }
    }
    return c;
}

bool keep_lax(ComplexId id, const LaxKoszulElt& e) {
    switch (id) {
        case ComplexId::LaxFull: return true;
        case ComplexId::LaxLe1: return e.bottom.r() <= 1;
        case ComplexId::LaxGt1: return e.bottom.r() > 1;
        default: return true;
    }
}

bool keep_mor(ComplexId id, const MorKoszulElt& e) {
    switch (id) {
        case ComplexId::MorFull: return true;
        case ComplexId::MorPle1: return e.bottom.p <= 1;
        case ComplexId::MorPgt1: return e.bottom.p > 1;
        case ComplexId::AssocThin: return true;
        default: return true;
    }
}

} // namespace

FilteredChainSlice build_complex(ComplexId id, Arity a) {
    switch (id) {
        case ComplexId::LaxFull:
        case ComplexId::LaxLe1:
        case ComplexId::LaxGt1: {
            auto all = lax_koszul_basis(a);
            std::vector<LaxKoszulElt> basis;
            for (const auto& e : all)
                if (keep_lax(id, e)) basis.push_back(e);
            auto diff = [&](const LaxKoszulElt& e) {
                LaxKoszulVec v = lax_koszul_diff(e);
                for (const auto& [t, c] : v) {
                    (void)c;
                    if (!keep_lax(id, t))
                        throw Error("differential crossed the splitting at " + e.str());
                }
                return v;
            };
            return build_slice(
                basis, diff, [](const LaxKoszulElt& e) { return e.degree(); },
                [](const LaxKoszulElt& e) { return e.level(); },
                [](const LaxKoszulElt& e) { return e.str(); });
        }
        case ComplexId::AssocThin:
        case ComplexId::MorFull:
        case ComplexId::MorPle1:
        case ComplexId::MorPgt1: {
            if (id == ComplexId::AssocThin && (a.p != 0 || a.r != 0))
                return FilteredChainSlice{};
            auto all = mor_koszul_basis(a);
            std::vector<MorKoszulElt> basis;
            for (const auto& e : all)
                if (keep_mor(id, e)) basis.push_back(e);
            auto diff = [&](const MorKoszulElt& e) {
                MorKoszulVec v = mor_koszul_diff(e);
                for (const auto& [t, c] : v) {
                    (void)c;
                    if (!keep_mor(id, t))
                        throw Error("differential crossed the splitting at " + e.str());
                }
                return v;
            };
            return build_slice(
                basis, diff, [](const MorKoszulElt& e) { return e.degree(); },
                [](const MorKoszulElt&) { return 0L; },
                [](const MorKoszulElt& e) { return e.str(); });
        }
        case ComplexId::LaxLe1OverLaxInf: {
            LaxInfOperad op(std::max(2, a.p + a.q));
            InfModuleOps ops(op);
            auto basis = inf_mod_basis(op, a);
            const GeneratorSet& gs = op.gens();
            auto deg = [&](const InfModElt& e) { return ops.degree(e); };
            auto str = [&](const InfModElt& e) {
                std::string s = e.bottom.str();
                if (e.pass > 0) s += "+" + std::to_string(e.pass);
                s += "[";
                for (std::size_t i = 0; i < e.tops.size(); ++i) {
                    if (i) s += ";";
                    s += tree_str(gs, e.tops[i]);
                }
                return s + "]";
            };
            auto diff = [&](const InfModElt& e) { return ops.diff(e); };
            return build_slice(basis, diff, deg, [](const InfModElt&) { return 0L; }, str);
        }
    }
    throw Error("unknown complex");
}

ComplexReport verify_d_squared(ComplexId id, int max_pq) {
    ComplexReport rep;
    if (id == ComplexId::LaxLe1OverLaxInf) {
        // the module components grow too large to materialize; stream the
        // basis and cancel d(d(e)) element by element
        LaxInfOperad op(std::max(2, max_pq));
        InfModuleOps ops(op);
        for (int p = 0; p <= max_pq && rep.pass; ++p)
            for (int q = 0; p + q <= max_pq && rep.pass; ++q)
                for (int r = 0; r <= p && rep.pass; ++r) {
                    ops.visit_basis({p, q, r}, [&](InfModElt&& e) {
                        if (!rep.pass) return;
                        int deg = ops.degree(e);
                        InfModVec dd;
                        for (const auto& [t, c] : ops.diff(e)) {
                            if (ops.degree(t) != deg - 1) {
                                rep.pass = false;
                                rep.witness = to_string(Arity{p, q, r}) + " degree drop";
                                return;
                            }
                            for (const auto& [u, c2] : ops.diff(t)) {
                                auto it = dd.find(u);
                                if (it == dd.end()) dd.emplace(u, c * c2);
                                else {
                                    it->second += c * c2;
                                    if (it->second.is_zero()) dd.erase(it);
                                }
                            }
                        }
                        if (!dd.empty()) {
                            rep.pass = false;
                            rep.witness = to_string(Arity{p, q, r});
                        }
                    });
                }
        return rep;
    }
    for (int p = 0; p <= max_pq; ++p)
        for (int q = 0; p + q <= max_pq; ++q)
            for (int r = 0; r <= p; ++r) {
                try {
                    build_complex(id, {p, q, r}).check_complex();
                } catch (const NonComplex& e) {
                    rep.pass = false;
                    rep.witness = to_string(Arity{p, q, r}) + " " + e.witness;
                    return rep;
                }
            }
    return rep;
}

std::map<int, std::size_t> homology(ComplexId id, Arity a) {
    return homology_dims(build_complex(id, a));
}

} // namespace boxk
