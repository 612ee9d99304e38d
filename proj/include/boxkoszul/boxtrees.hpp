/* Canonical labeled stackings in a free graded box operad: composition with
 * exact Koszul signs, desuspended signs, thin-quadratic stackings, and
 * exhaustive component bases. */
#pragma once

#include "base.hpp"
#include "rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace boxk {

struct GenInfo {
    std::string name;
    Arity ar;
    int degree = 0;
};

struct GeneratorSet {
    std::vector<GenInfo> gens;

    int add(const std::string& name, Arity ar, int degree) {
        if (ar == Arity{0, 1, 0}) throw InvalidKey("generator in unit arity (0,1,0)");
        gens.push_back({name, ar, degree});
        return (int)gens.size() - 1;
    }
    const GenInfo& operator[](int id) const { return gens.at(id); }
    int find(const std::string& name) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return (int)i;
        throw OutOfRange("generator " + name);
    }
    bool is_thin(int id) const { return gens[id].ar.p == 0 && gens[id].ar.r == 0; }
};

// Canonical stacking: either the unit strand or a bottom generator with
// pass-through strands (childless, q = 0 nodes only) and ordered tops.
// Tops empty means the bare generator; otherwise one top per vertical input,
// unit strands included.
struct BoxTree {
    int gen = -1; // -1: unit strand
    int pass = 0;
    std::vector<BoxTree> tops;

    bool is_unit() const { return gen < 0; }
    static BoxTree unit() { return {}; }
    static BoxTree bare(int g) {
        BoxTree t;
        t.gen = g;
        return t;
    }
    static BoxTree node(int g, std::vector<BoxTree> ts) {
        BoxTree t;
        t.gen = g;
        t.tops = std::move(ts);
        return t;
    }

    friend bool operator==(const BoxTree&, const BoxTree&) = default;
    std::strong_ordering operator<=>(const BoxTree& o) const {
        if (auto c = gen <=> o.gen; c != 0) return c;
        if (auto c = pass <=> o.pass; c != 0) return c;
        return tops <=> o.tops;
    }
};

using TreeVec = std::map<BoxTree, Rat>; // signed formal sum, no zero entries

void tv_add(TreeVec& v, const BoxTree& t, const Rat& c);
TreeVec tv_scale(const TreeVec& v, const Rat& c);

struct SignedTree {
    int sign = 1;
    BoxTree tree;
};

Arity tree_arity(const GeneratorSet& gens, const BoxTree& t);
int tree_degree(const GeneratorSet& gens, const BoxTree& t);
int tree_boxes(const BoxTree& t);
int tree_thin_boxes(const GeneratorSet& gens, const BoxTree& t);
std::string tree_str(const GeneratorSet& gens, const BoxTree& t);

// Checks the canonical-form invariants (unit-law collapse, pass placement,
// matching chained arities).
bool tree_canonical(const GeneratorSet& gens, const BoxTree& t);

// Stacks `tops` (one per vertical input of `bottom`) onto `bottom` and
// renormalizes; the sign is the Koszul sign of the label reordering.
SignedTree compose(const GeneratorSet& gens, const BoxTree& bottom,
                   const std::vector<BoxTree>& tops);

// Adds k pass-through strands over a q = 0 stacking.
BoxTree wrap_pass(const GeneratorSet& gens, const BoxTree& t, int k);

// Substitution of `top` at the slot-th open vertical input of `bottom`
// (1-based), unit strands filling the remaining inputs.
SignedTree graft(const GeneratorSet& gens, const BoxTree& bottom, int slot, const BoxTree& top);

// Sign exponent of the two-level generator with bottom (p,·,r) and the given
// chained top arities; the desuspended sign is (-1)^exponent.
int desusp_exponent(int p, int r, const std::vector<Arity>& tops);
int desusp_exponent_pass(int p, int r, int pass);

// Desuspended sign of a canonical stacking (multiplicative over nodes).
int desuspended_sign(const GeneratorSet& gens, const BoxTree& t);

// Extends a generator differential to the whole tree as a degree -1
// derivation (Koszul prefix signs over the standard order).
TreeVec apply_derivation(const GeneratorSet& gens, const BoxTree& t,
                         const std::function<const TreeVec&(int)>& d_of_gen);

struct ThinQuadratic {
    int type = 0; // 1, 2 or 3
    BoxTree tree;
};

// All thin-quadratic stackings over `gens` with the given resulting arity.
std::vector<ThinQuadratic> enumerate_thin_quadratic(const GeneratorSet& gens, Arity target);

// Exhaustive basis of the free-box-operad component at (target, degree).
// Throws CapExceeded if a stacking would exceed `cap` boxes or the
// termination measure fails to decrease.
std::vector<BoxTree> enumerate_basis(const GeneratorSet& gens, Arity target, int degree,
                                     int cap = 64);

// All stackings at `target` regardless of degree (finite for inclined
// generator sets).
std::vector<BoxTree> enumerate_all(const GeneratorSet& gens, Arity target, int cap = 64);

// All stackings at `target` whose every box is non-thin.
std::vector<BoxTree> enumerate_nonthin(const GeneratorSet& gens, Arity target);

// Memoized component bases over one generator set.
class BasisCache {
public:
    BasisCache(const GeneratorSet& gens, int cap = 64) : gens_(&gens), cap_(cap) {}
    const std::vector<BoxTree>& get(Arity a, int degree);

private:
    const GeneratorSet* gens_;
    int cap_;
    std::map<std::tuple<int, int, int, int>, std::vector<BoxTree>> memo_;
};

} // namespace boxk
