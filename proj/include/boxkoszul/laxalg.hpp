/* The box operad Lax in its partition basis, generator-word evaluation, and
 * the Koszul dual box cooperad with its full and thin-infinitesimal
 * decompositions. */
#pragma once

#include "base.hpp"
#include "boxtrees.hpp"
#include "partitions.hpp"

#include <vector>

namespace boxk {

// Basis index of Lax^!: m^c_{P,q} of degree q-1+p-r.
struct LaxDualKey {
    Partition P;
    int q = 0;

    int p() const { return P.weight(); }
    int r() const { return P.length(); }
    Arity arity() const { return {p(), q, r()}; }
    int degree() const { return q - 1 + p() - r(); }
    bool valid() const { return p() + q - r() >= 1; }
    bool is_counit() const { return P.is_zero() && q == 1; }
    bool thin() const { return P.is_zero(); }

    friend bool operator==(const LaxDualKey&, const LaxDualKey&) = default;
    std::strong_ordering operator<=>(const LaxDualKey& o) const {
        if (auto c = P <=> o.P; c != 0) return c;
        return q <=> o.q;
    }
    std::string str() const { return "mc{" + P.str() + "," + std::to_string(q) + "}"; }
};

// dim Lax(p,q,r): |Part(p,r)| when p+q-r >= 1, else 0.
std::size_t lax_dimension(Arity a);

// Box composition of basis elements: bottom with vertical arity n over a
// composable chain of n keys (units allowed). The result partition is the
// bottom partition concatenated with the chained top composite.
LaxKey lax_compose(const LaxKey& bottom, const std::vector<LaxKey>& tops);

// P  ->  P (x) (1,...,1): k strands passing over the element.
LaxKey lax_wrap(const LaxKey& k, int strands);

// The generators m (0,2,0), f (1,1,1), c (2,0,1) in degree 0.
GeneratorSet lax_generator_set();

// Normal form of a generator word; every word evaluates to a single basis key.
LaxKey lax_eval_word(const GeneratorSet& gens, const BoxTree& t);

// Partition/arity normal form of a stacking whose labels carry basis keys.
LaxKey eval_tree_key(const GeneratorSet& gens, const BoxTree& t,
                     const std::function<LaxKey(int)>& label_key);

// One term of the full decomposition of m^c_{P,q}.
struct Cooperation {
    int sign = 1;
    LaxDualKey bottom;
    std::vector<LaxDualKey> tops;
};

// All splittings bottom (x) (chained tops) of a dual key, with the
// desuspended corolla signs; includes the two counit-style splittings.
std::vector<Cooperation> laxdual_decompose(const LaxDualKey& k);

// One term of the thin-desuspended infinitesimal decomposition.
struct InfTerm {
    int sign = 1;
    int type = 0; // 1, 2, 3
    LaxDualKey consumer;
    std::vector<LaxDualKey> consumed; // single piece for types I and II
};

// Thin-quadratic part of the decomposition. Type I and II terms carry the
// degree-bookkeeping signs; the type III terms of a single-part key (p') are
// the shuffled path chains with sign -(-1)^{beta+a+1+n(p'-1)+p'}; for keys
// with r >= 2 the chain terms carry the adapted corolla sign.
std::vector<InfTerm> laxdual_inf_decompose(const LaxDualKey& k);

// Desuspended corolla sign exponent of a splitting, from the key data.
int cooperation_sign_exponent(const LaxDualKey& bottom, const std::vector<LaxDualKey>& tops);

// All composable chains of valid dual keys whose partition composite is S
// and whose vertical arities sum to q.
std::vector<std::vector<LaxDualKey>> dual_chains(const Partition& S, int q);

} // namespace boxk
