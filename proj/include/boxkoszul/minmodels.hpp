/* The quasi-free dg box operads built on the dual generators: the homotopy
 * operad with generators m_{p,q}, the full cobar operad on the Lax dual, and
 * the morphism analogues, with their differentials and structure maps. */
#pragma once

#include "base.hpp"
#include "boxtrees.hpp"
#include "laxalg.hpp"
#include "morassoc.hpp"
#include "qlinalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace boxk {

// Shared cobar sign rule: the exponent added to the desuspended sign of a
// thin-quadratic stacking, depending on its type and the dual degree of the
// box carrying the vertical output.
int cobar_sign_exponent(int type, int consumer_dual_degree);

// Generators m_{p,q} of arity (p, q, 1-[p=0]) and degree p+q-2 for
// 2 <= p+q <= max_pq, with the thin-quadratic differential.
class LaxInfOperad {
public:
    explicit LaxInfOperad(int max_pq);

    const GeneratorSet& gens() const { return gs_; }
    int max_pq() const { return max_pq_; }
    int id(int p, int q) const; // -1 when absent
    std::pair<int, int> pq(int id) const { return pq_.at(id); }

    const TreeVec& diff(int id) const;
    TreeVec diff_tree(const BoxTree& t) const; // derivation extension
    TreeVec diff_vec(const TreeVec& v) const;

    // Memoized component basis and the slice at the given arity.
    const std::vector<BoxTree>& basis(Arity a, int degree) const;
    ChainSlice component(Arity a, int cap = 64) const;

private:
    GeneratorSet gs_;
    std::map<std::pair<int, int>, int> id_;
    std::vector<std::pair<int, int>> pq_;
    int max_pq_;
    mutable std::map<int, TreeVec> cache_;
    mutable std::unique_ptr<BasisCache> bases_;
};

// Generators m_{P,q} for every valid non-counit dual key with p+q <= max_pq,
// with the cobar differential.
class OmegaLaxOperad {
public:
    explicit OmegaLaxOperad(int max_pq);

    const GeneratorSet& gens() const { return gs_; }
    int id(const LaxDualKey& k) const; // -1 when absent
    const LaxDualKey& key(int id) const { return keys_.at(id); }

    const TreeVec& diff(int id) const;
    TreeVec diff_tree(const BoxTree& t) const;

    ChainSlice component(Arity a, int cap = 64) const;

    // m_{P,q} -> m_{p,q} when r <= 1, 0 otherwise; extended to stackings.
    TreeVec project_to_laxinf(const LaxInfOperad& dst, const BoxTree& t) const;
    TreeVec project_to_laxinf(const LaxInfOperad& dst, const TreeVec& v) const;

private:
    GeneratorSet gs_;
    std::map<LaxDualKey, int> id_;
    std::vector<LaxDualKey> keys_;
    int max_pq_;
    mutable std::map<int, TreeVec> cache_;
};

// The morphism of graded modules sending the three degree-0 generators to
// m, f, c and everything else to 0, evaluated in the Lax basis.
std::map<LaxKey, Rat> map_f_to_lax(const LaxInfOperad& op, const TreeVec& v);

// Generators m_{0,q} (q >= 2) and m_{1,q} (q >= 1) with the differential
// computed by both the explicit summation formulas and the cobar route;
// the two must agree (RouteMismatch otherwise).
class MorInfOperad {
public:
    explicit MorInfOperad(int max_q);

    const GeneratorSet& gens() const { return gs_; }
    int id(int p, int q) const;
    std::pair<int, int> pq(int id) const { return pq_.at(id); }

    const TreeVec& diff(int id) const;       // checked against both routes
    TreeVec diff_route_a(int id) const;      // explicit summation formulas
    TreeVec diff_route_b(int id) const;      // cobar of the dual decomposition
    TreeVec diff_tree(const BoxTree& t) const;

private:
    GeneratorSet gs_;
    std::map<std::pair<int, int>, int> id_;
    std::vector<std::pair<int, int>> pq_;
    int max_q_;
    mutable std::map<int, TreeVec> cache_;
};

// Generators y_p for all columns p <= max_p, q <= max_q (full cobar of the
// morphism dual).
class OmegaMorOperad {
public:
    OmegaMorOperad(int max_p, int max_q);

    const GeneratorSet& gens() const { return gs_; }
    int id(int p, int q) const;
    std::pair<int, int> pq(int id) const { return pq_.at(id); }

    const TreeVec& diff(int id) const;
    TreeVec diff_tree(const BoxTree& t) const;

private:
    GeneratorSet gs_;
    std::map<std::pair<int, int>, int> id_;
    std::vector<std::pair<int, int>> pq_;
    mutable std::map<int, TreeVec> cache_;
};

struct DsqReport {
    bool pass = true;
    std::string witness; // first uncancelled term
};

// Expands d(d(g)) for every generator within the cap and reports the first
// uncancelled term, if any.
enum class DsqTarget { LaxInf, OmegaLax, MorInf, OmegaMor };
DsqReport d_squared_report(DsqTarget which, int size_cap);

} // namespace boxk
