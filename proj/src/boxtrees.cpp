#include "boxkoszul/boxtrees.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace boxk {

void tv_add(TreeVec& v, const BoxTree& t, const Rat& c) {
    if (c.is_zero()) return;
    auto it = v.find(t);
    if (it == v.end()) {
        v.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

TreeVec tv_scale(const TreeVec& v, const Rat& c) {
    TreeVec out;
    if (c.is_zero()) return out;
    for (const auto& [t, x] : v) out.emplace(t, x * c);
    return out;
}

Arity tree_arity(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return {0, 1, 0};
    Arity g = gens[t.gen].ar;
    if (t.tops.empty()) {
        if (t.pass > 0 && g.q != 0) throw Error("pass strands on a q>0 generator");
        return {g.p + t.pass, g.q, g.r + t.pass};
    }
    if ((int)t.tops.size() != g.q) throw ArityMismatch("tops of " + gens[t.gen].name);
    int q = 0;
    Arity prev{};
    for (std::size_t i = 0; i < t.tops.size(); ++i) {
        Arity a = tree_arity(gens, t.tops[i]);
        if (i > 0 && prev.r != a.p)
            throw ArityMismatch("chained tops of " + gens[t.gen].name);
        q += a.q;
        prev = a;
    }
    int p0 = tree_arity(gens, t.tops.front()).p;
    return {g.p + p0, q, g.r + prev.r};
}

int tree_degree(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return 0;
    int d = gens[t.gen].degree;
    for (const auto& s : t.tops) d += tree_degree(gens, s);
    return d;
}

int tree_boxes(const BoxTree& t) {
    if (t.is_unit()) return 0;
    int n = 1;
    for (const auto& s : t.tops) n += tree_boxes(s);
    return n;
}

int tree_thin_boxes(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return 0;
    int n = gens.is_thin(t.gen) ? 1 : 0;
    for (const auto& s : t.tops) n += tree_thin_boxes(gens, s);
    return n;
}

std::string tree_str(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return "u";
    std::string s = gens[t.gen].name;
    if (t.pass > 0) s += "+" + std::to_string(t.pass);
    if (!t.tops.empty()) {
        s += "(";
        for (std::size_t i = 0; i < t.tops.size(); ++i) {
            if (i) s += ",";
            s += tree_str(gens, t.tops[i]);
        }
        s += ")";
    }
    return s;
}

bool tree_canonical(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return t.pass == 0 && t.tops.empty();
    const GenInfo& g = gens[t.gen];
    if (t.tops.empty()) return t.pass == 0 || g.ar.q == 0;
    if (t.pass != 0) return false;
    if ((int)t.tops.size() != g.ar.q) return false;
    bool all_units = true;
    for (const auto& s : t.tops) {
        if (!s.is_unit()) all_units = false;
        if (!tree_canonical(gens, s)) return false;
    }
    if (all_units) return false; // collapses to the bare generator
    try {
        (void)tree_arity(gens, t);
    } catch (const Error&) {
        return false;
    }
    return true;
}

namespace {

int koszul_pow(int deg_a, int deg_b) { return (deg_a % 2 != 0 && deg_b % 2 != 0) ? -1 : 1; }

} // namespace

SignedTree compose(const GeneratorSet& gens, const BoxTree& bottom,
                   const std::vector<BoxTree>& tops) {
    if (bottom.is_unit()) {
        if (tops.size() != 1) throw ArityMismatch("unit strand takes one top");
        return {1, tops[0]};
    }
    Arity ba = tree_arity(gens, bottom);
    if ((int)tops.size() != ba.q)
        throw ArityMismatch("compose expects " + std::to_string(ba.q) + " tops");
    if (ba.q == 0) return {1, bottom};

    if (bottom.tops.empty()) {
        // bare generator
        bool all_units = true;
        for (const auto& t : tops)
            if (!t.is_unit()) { all_units = false; break; }
        if (all_units) return {1, bottom};
        BoxTree out = BoxTree::node(bottom.gen, tops);
        (void)tree_arity(gens, out); // validates the chain
        return {1, out};
    }

    // distribute tops into blocks over the bottom's own tops
    int sign = 1;
    int exponent = 0;
    std::vector<BoxTree> newtops;
    newtops.reserve(bottom.tops.size());
    std::size_t cursor = 0;
    std::vector<int> block_deg(bottom.tops.size(), 0);
    std::vector<int> top_deg(bottom.tops.size(), 0);
    std::vector<std::vector<BoxTree>> blocks(bottom.tops.size());
    for (std::size_t i = 0; i < bottom.tops.size(); ++i) {
        int qi = tree_arity(gens, bottom.tops[i]).q;
        top_deg[i] = tree_degree(gens, bottom.tops[i]);
        for (int j = 0; j < qi; ++j) {
            if (cursor >= tops.size()) throw ArityMismatch("compose ran out of tops");
            block_deg[i] += tree_degree(gens, tops[cursor]);
            blocks[i].push_back(tops[cursor++]);
        }
    }
    // Koszul sign: block i moves left past the bottom tops i+1..n
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            exponent += block_deg[i] * top_deg[j];
    // Widths of the incoming row at each block boundary: an empty block means
    // the row passes over that piece, which absorbs the strands as passes.
    int row_width = tops.empty() ? 0 : tree_arity(gens, tops.front()).p;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty()) {
            newtops.push_back(wrap_pass(gens, bottom.tops[i], row_width));
            continue;
        }
        SignedTree st = compose(gens, bottom.tops[i], blocks[i]);
        sign *= st.sign;
        newtops.push_back(std::move(st.tree));
        row_width = tree_arity(gens, blocks[i].back()).r;
    }
    if (exponent % 2 != 0) sign = -sign;
    BoxTree out = BoxTree::node(bottom.gen, std::move(newtops));
    (void)tree_arity(gens, out);
    return {sign, out};
}

BoxTree wrap_pass(const GeneratorSet& gens, const BoxTree& t, int k) {
    if (k == 0) return t;
    if (t.is_unit()) throw Error("cannot pass strands over the unit");
    Arity a = tree_arity(gens, t);
    if (a.q != 0) throw Error("pass strands require a q=0 stacking");
    BoxTree out = t;
    if (out.tops.empty()) {
        out.pass += k;
        return out;
    }
    for (auto& s : out.tops) s = wrap_pass(gens, s, k);
    return out;
}

SignedTree graft(const GeneratorSet& gens, const BoxTree& bottom, int slot, const BoxTree& top) {
    Arity ba = tree_arity(gens, bottom);
    if (slot < 1 || slot > ba.q) throw SlotOutOfRange("graft slot " + std::to_string(slot));
    std::vector<BoxTree> tops(ba.q, BoxTree::unit());
    tops[slot - 1] = top;
    return compose(gens, bottom, tops);
}

int desusp_exponent(int p, int r, const std::vector<Arity>& tops) {
    int n = (int)tops.size();
    if (n == 0) return 0;
    int p0 = tops.front().p, pn = tops.back().r;
    int e = (p0 + pn) * r;
    for (int i = 1; i <= n; ++i)
        e += (tops[i - 1].q - 1) * ((n - i) + (p - r) + (p0 - tops[i - 1].p));
    return e;
}

int desusp_exponent_pass(int p, int r, int pass) { return (pass + pass) * r; }

int desuspended_sign(const GeneratorSet& gens, const BoxTree& t) {
    if (t.is_unit()) return 1;
    int e = 0;
    if (!t.tops.empty()) {
        const GenInfo& g = gens[t.gen];
        std::vector<Arity> tas;
        tas.reserve(t.tops.size());
        for (const auto& s : t.tops) tas.push_back(tree_arity(gens, s));
        e += desusp_exponent(g.ar.p, g.ar.r, tas);
    }
    int sign = (e % 2 == 0) ? 1 : -1;
    for (const auto& s : t.tops) sign *= desuspended_sign(gens, s);
    return sign;
}

namespace {

void preorder_labels(const BoxTree& t, std::vector<int>& out) {
    if (t.is_unit()) return;
    out.push_back(t.gen);
    for (const auto& s : t.tops) preorder_labels(s, out);
}

// Replaces the label of the idx-th box (preorder) by the stacking R of the
// same arity; counts down idx while walking.
SignedTree replace_box(const GeneratorSet& gens, const BoxTree& t, int& idx, const BoxTree& R) {
    if (t.is_unit()) return {1, t};
    if (idx == 0) {
        idx = -1;
        std::vector<BoxTree> tops = t.tops;
        if (tops.empty()) {
            int q = gens[t.gen].ar.q;
            tops.assign(q, BoxTree::unit());
        }
        SignedTree st = compose(gens, R, tops);
        if (t.pass > 0) st.tree = wrap_pass(gens, st.tree, t.pass);
        return st;
    }
    --idx;
    BoxTree out = t;
    int sign = 1;
    for (std::size_t i = 0; i < out.tops.size(); ++i) {
        if (idx < 0) break;
        SignedTree st = replace_box(gens, out.tops[i], idx, R);
        sign *= st.sign;
        out.tops[i] = std::move(st.tree);
    }
    return {sign, out};
}

} // namespace

TreeVec apply_derivation(const GeneratorSet& gens, const BoxTree& t,
                         const std::function<const TreeVec&(int)>& d_of_gen) {
    TreeVec out;
    std::vector<int> labels;
    preorder_labels(t, labels);
    int prefix = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const TreeVec& dg = d_of_gen(labels[i]);
        for (const auto& [R, c] : dg) {
            int idx = (int)i;
            SignedTree st = replace_box(gens, t, idx, R);
            Rat coeff = c * Rat(st.sign);
            if (prefix % 2 != 0) coeff = -coeff;
            tv_add(out, st.tree, coeff);
        }
        prefix += gens[labels[i]].degree;
    }
    return out;
}

/* ---- thin-quadratic stackings ---- */

namespace {

// Strand tracing over a row of trees: unions boxes that share a strand.
struct StrandTracer {
    const GeneratorSet& gens;
    std::vector<int> parent;
    std::vector<int> strand_last; // per strand id, last box seen (-1 none)

    explicit StrandTracer(const GeneratorSet& g) : gens(g) {}

    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int new_box() {
        parent.push_back((int)parent.size());
        return (int)parent.size() - 1;
    }
    int new_strand(int box) {
        strand_last.push_back(box);
        return (int)strand_last.size() - 1;
    }
    void touch(int strand, int box) {
        if (strand_last[strand] >= 0) unite(strand_last[strand], box);
        strand_last[strand] = box;
    }

    std::vector<int> pass_tree(const BoxTree& t, const std::vector<int>& in) {
        if (t.is_unit()) throw Error("unit strand in a traced row");
        const GenInfo& g = gens[t.gen];
        int box = new_box();
        std::vector<int> out;
        for (int i = 0; i < g.ar.p; ++i) touch(in[i], box);
        for (int i = 0; i < g.ar.r; ++i) out.push_back(new_strand(box));
        if (t.tops.empty()) {
            for (int i = 0; i < t.pass; ++i) out.push_back(in[g.ar.p + i]);
        } else {
            std::vector<int> rest(in.begin() + g.ar.p, in.end());
            std::vector<int> row_out = pass_row(t.tops, rest);
            out.insert(out.end(), row_out.begin(), row_out.end());
        }
        return out;
    }

    std::vector<int> pass_row(const std::vector<BoxTree>& row, std::vector<int> cur) {
        for (const auto& t : row) {
            if (t.is_unit()) continue; // no horizontal ports
            cur = pass_tree(t, cur);
        }
        return cur;
    }
};

bool row_connected(const GeneratorSet& gens, const std::vector<BoxTree>& row, int width_in) {
    StrandTracer tr(gens);
    std::vector<int> in;
    int pre_box = -1; // boundary strands touch nothing on the left
    (void)pre_box;
    for (int i = 0; i < width_in; ++i) {
        tr.strand_last.push_back(-1);
        in.push_back((int)tr.strand_last.size() - 1);
    }
    tr.pass_row(row, in);
    if (tr.parent.empty()) return false;
    int root = tr.find(0);
    for (std::size_t i = 1; i < tr.parent.size(); ++i)
        if (tr.find((int)i) != root) return false;
    return true;
}

// Enumerates all stackings over non-thin generators at the given arity
// (no units, no thin boxes, any degree).
void nonthin_trees(const GeneratorSet& gens, Arity a, std::vector<BoxTree>& out) {
    if (a.p < 1 || a.r < 1 || a.p < a.r) return;
    for (std::size_t gid = 0; gid < gens.gens.size(); ++gid) {
        if (gens.is_thin((int)gid)) continue;
        const Arity& ga = gens.gens[gid].ar;
        if (ga.q == 0) {
            int k = a.p - ga.p;
            if (k >= 0 && k == a.r - ga.r && a.q == 0) {
                BoxTree t = BoxTree::bare((int)gid);
                t.pass = k;
                out.push_back(t);
            }
            continue;
        }
        if (ga == a) out.push_back(BoxTree::bare((int)gid));
        int w0 = a.p - ga.p, wn = a.r - ga.r;
        if (w0 <= 0 || wn < 0) continue;
        // chains of ga.q non-thin trees from width w0 to wn with total q = a.q
        std::vector<BoxTree> row;
        std::function<void(int, int, int)> rec = [&](int slot, int width, int q_left) {
            if (slot == ga.q) {
                if (width == wn && q_left == 0) {
                    BoxTree t = BoxTree::node((int)gid, row);
                    out.push_back(t);
                }
                return;
            }
            int slots_left = ga.q - slot - 1;
            for (int w2 = (slot == ga.q - 1 ? wn : 1); w2 <= width; ++w2) {
                if (slot != ga.q - 1 && w2 < wn) continue;
                for (int q2 = 0; q2 <= q_left; ++q2) {
                    (void)slots_left;
                    std::vector<BoxTree> subs;
                    // strictly smaller in p+q: width+q2 < p+q of the parent problem
                    nonthin_trees(gens, {width, q2, w2}, subs);
                    for (auto& s : subs) {
                        row.push_back(std::move(s));
                        rec(slot + 1, w2, q_left - q2);
                        row.pop_back();
                    }
                }
                if (slot == ga.q - 1) break;
            }
        };
        rec(0, w0, a.q);
    }
}

} // namespace

std::vector<ThinQuadratic> enumerate_thin_quadratic(const GeneratorSet& gens, Arity target) {
    std::vector<ThinQuadratic> out;
    const bool thin_target = (target.p == 0 && target.r == 0);
    if (thin_target) {
        // type I: two thin boxes
        for (std::size_t b = 0; b < gens.gens.size(); ++b) {
            if (!gens.is_thin((int)b)) continue;
            int k = gens.gens[b].ar.q;
            for (std::size_t t = 0; t < gens.gens.size(); ++t) {
                if (!gens.is_thin((int)t)) continue;
                int l = gens.gens[t].ar.q;
                if (k + l - 1 != target.q) continue;
                for (int i = 1; i <= k; ++i) {
                    std::vector<BoxTree> tops(k, BoxTree::unit());
                    tops[i - 1] = BoxTree::bare((int)t);
                    out.push_back({1, BoxTree::node((int)b, tops)});
                }
            }
        }
        return out;
    }
    if (target.p <= 0 || target.r <= 0) return out; // no semi-thin generators in scope
    // type II: non-thin bottom, one thin top
    for (std::size_t b = 0; b < gens.gens.size(); ++b) {
        const Arity& ba = gens.gens[b].ar;
        if (gens.is_thin((int)b) || ba.p != target.p || ba.r != target.r) continue;
        int k = ba.q;
        if (k < 1) continue;
        for (std::size_t t = 0; t < gens.gens.size(); ++t) {
            if (!gens.is_thin((int)t)) continue;
            int l = gens.gens[t].ar.q;
            if (k - 1 + l != target.q) continue;
            for (int i = 1; i <= k; ++i) {
                std::vector<BoxTree> tops(k, BoxTree::unit());
                tops[i - 1] = BoxTree::bare((int)t);
                out.push_back({2, BoxTree::node((int)b, tops)});
            }
        }
    }
    // type III: thin bottom, horizontally connected non-thin tops
    for (std::size_t b = 0; b < gens.gens.size(); ++b) {
        if (!gens.is_thin((int)b)) continue;
        int m = gens.gens[b].ar.q;
        std::vector<BoxTree> row;
        std::function<void(int, int, int)> rec = [&](int slot, int width, int q_left) {
            if (slot == m) {
                if (width == target.r && q_left == 0 && row_connected(gens, row, target.p))
                    out.push_back({3, BoxTree::node((int)b, row)});
                return;
            }
            for (int w2 = 1; w2 <= width; ++w2) {
                for (int q2 = 0; q2 <= q_left; ++q2) {
                    std::vector<BoxTree> subs;
                    nonthin_trees(gens, {width, q2, w2}, subs);
                    for (auto& s : subs) {
                        row.push_back(std::move(s));
                        rec(slot + 1, w2, q_left - q2);
                        row.pop_back();
                    }
                }
            }
        };
        rec(0, target.p, target.q);
    }
    return out;
}

/* ---- exhaustive component bases ---- */

namespace {

struct TreeEnumerator {
    const GeneratorSet& gens;
    int cap;
    std::map<std::tuple<int, int, int, int>, std::vector<BoxTree>>& memo;

    TreeEnumerator(const GeneratorSet& g, int c,
                   std::map<std::tuple<int, int, int, int>, std::vector<BoxTree>>& m)
        : gens(g), cap(c), memo(m) {
        for (const auto& gi : g.gens) {
            if (gi.degree < 0) throw Error("enumerator requires nonnegative generator degrees");
            if (gi.ar.p < gi.ar.r) throw Error("enumerator requires an inclined generator set");
        }
    }

    // thin-box budget forced by (arity, degree)
    static int budget(Arity a, int deg) { return a.p + a.q - a.r - 1 - deg; }

    const std::vector<BoxTree>& trees(Arity a, int deg) {
        auto key = std::make_tuple(a.p, a.q, a.r, deg);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<BoxTree> out;
        int T = budget(a, deg);
        if (T < 0 || a.p < a.r) {
            return memo.emplace(key, std::move(out)).first->second;
        }
        if (a == Arity{0, 1, 0} && deg == 0) out.push_back(BoxTree::unit());
        for (std::size_t gid = 0; gid < gens.gens.size(); ++gid) {
            const GenInfo& g = gens.gens[gid];
            if (g.ar.q == 0) {
                int k = a.p - g.ar.p;
                if (k >= 0 && k == a.r - g.ar.r && a.q == 0 && deg == g.degree) {
                    BoxTree t = BoxTree::bare((int)gid);
                    t.pass = k;
                    out.push_back(t);
                }
                continue;
            }
            if (g.ar == a && deg == g.degree) out.push_back(BoxTree::bare((int)gid));
            int w0 = a.p - g.ar.p, wn = a.r - g.ar.r, rem = deg - g.degree;
            if (w0 < 0 || wn < 0 || rem < 0) continue;
            bool thin_bottom = gens.is_thin((int)gid);
            std::vector<BoxTree> row;
            std::function<void(int, int, int, int)> rec = [&](int slot, int width, int q_left,
                                                              int d_left) {
                if (slot == g.ar.q) {
                    if (width == wn && q_left == 0 && d_left == 0) {
                        bool all_units = true;
                        for (const auto& s : row)
                            if (!s.is_unit()) { all_units = false; break; }
                        if (!all_units) {
                            BoxTree t = BoxTree::node((int)gid, row);
                            if (tree_boxes(t) > cap)
                                throw CapExceeded("enumerate_basis at " + to_string(a));
                            out.push_back(t);
                        }
                    }
                    return;
                }
                for (int w2 = 0; w2 <= width; ++w2) {
                    for (int q2 = 0; q2 <= q_left; ++q2) {
                        for (int d2 = 0; d2 <= d_left; ++d2) {
                            Arity sub{width, q2, w2};
                            int Ts = budget(sub, d2);
                            if (Ts < 0) continue;
                            // termination: thin bottoms spend one thin box,
                            // non-thin bottoms shrink p+q strictly
                            if (thin_bottom) {
                                if (Ts > T - 1)
                                    continue;
                            } else if (width + q2 >= a.p + a.q || Ts > T) {
                                if (width + q2 >= a.p + a.q)
                                    throw CapExceeded("termination measure violation at " +
                                                      to_string(a));
                                continue;
                            }
                            for (const auto& s : trees(sub, d2)) {
                                row.push_back(s);
                                rec(slot + 1, w2, q_left - q2, d_left - d2);
                                row.pop_back();
                            }
                        }
                    }
                }
            };
            rec(0, w0, a.q, rem);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return memo.emplace(key, std::move(out)).first->second;
    }
};

} // namespace

std::vector<BoxTree> enumerate_basis(const GeneratorSet& gens, Arity target, int degree, int cap) {
    std::map<std::tuple<int, int, int, int>, std::vector<BoxTree>> memo;
    TreeEnumerator en(gens, cap, memo);
    return en.trees(target, degree);
}

const std::vector<BoxTree>& BasisCache::get(Arity a, int degree) {
    TreeEnumerator en(*gens_, cap_, memo_);
    return en.trees(a, degree);
}

std::vector<BoxTree> enumerate_nonthin(const GeneratorSet& gens, Arity target) {
    std::vector<BoxTree> out;
    nonthin_trees(gens, target, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<BoxTree> enumerate_all(const GeneratorSet& gens, Arity target, int cap) {
    std::map<std::tuple<int, int, int, int>, std::vector<BoxTree>> memo;
    TreeEnumerator en(gens, cap, memo);
    std::vector<BoxTree> out;
    int dmax = target.p + target.q - target.r - 1;
    for (int d = 0; d <= std::max(0, dmax); ++d) {
        const auto& ts = en.trees(target, d);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

} // namespace boxk
