/* The twisted (Koszul) complexes: the full Lax complex with its bottom-arity
 * splitting, the morphism complex with its column splitting, the thin
 * classical complex, and the module over the homotopy operad. */
#pragma once

#include "base.hpp"
#include "laxalg.hpp"
#include "minmodels.hpp"
#include "morassoc.hpp"
#include "partitions.hpp"
#include "qlinalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace boxk {

enum class ComplexId {
    LaxFull,
    LaxLe1,
    LaxGt1,
    MorFull,
    MorPle1,
    MorPgt1,
    AssocThin,
    LaxLe1OverLaxInf,
};

ComplexId complex_id_from(const std::string& name);
std::string to_string(ComplexId id);

// Basis element of the Lax Koszul complex: a dual bottom of vertical arity n
// over a composable chain of n basis keys; a bare bottom may carry pass
// strands (the q = 0 components of the box composite).
struct LaxKoszulElt {
    LaxDualKey bottom;
    std::vector<LaxKey> tops;
    int pass = 0;

    int n() const { return (int)tops.size(); }
    Arity arity() const;
    int degree() const; // bottom degree, thin-desuspended
    long level() const; // sum of top stacking numbers
    bool valid() const;
    std::string str() const;

    friend bool operator==(const LaxKoszulElt&, const LaxKoszulElt&) = default;
    std::strong_ordering operator<=>(const LaxKoszulElt& o) const {
        if (auto c = bottom <=> o.bottom; c != 0) return c;
        if (auto c = pass <=> o.pass; c != 0) return c;
        return tops <=> o.tops;
    }
};

using LaxKoszulVec = std::map<LaxKoszulElt, Rat>;

// Merge terms for every adjacent top pair, plus the shuffled path expansion
// when the bottom has a single horizontal output.
LaxKoszulVec lax_koszul_diff(const LaxKoszulElt& e);

// Basis element of the morphism Koszul complex: (m^c_n) at column p0 over n
// operations sharing column p1.
struct MorKoszulElt {
    MorDualKey bottom;        // vertical arity n = bottom.q
    std::vector<MorKey> tops; // size n, common p

    int n() const { return bottom.q; }
    int p1() const { return tops.empty() ? 0 : tops[0].p; }
    Arity arity() const;
    int degree() const; // bottom degree, thin-desuspended
    bool valid() const;
    std::string str() const;

    friend bool operator==(const MorKoszulElt&, const MorKoszulElt&) = default;
    std::strong_ordering operator<=>(const MorKoszulElt& o) const {
        if (auto c = bottom <=> o.bottom; c != 0) return c;
        return tops <=> o.tops;
    }
};

using MorKoszulVec = std::map<MorKoszulElt, Rat>;

MorKoszulVec mor_koszul_diff(const MorKoszulElt& e);

// Basis element of the module over the homotopy operad: restricted dual
// bottom over a chain of homotopy-operad basis stackings.
struct InfModElt {
    LaxDualKey bottom;
    std::vector<BoxTree> tops;
    int pass = 0;

    friend bool operator==(const InfModElt&, const InfModElt&) = default;
    std::strong_ordering operator<=>(const InfModElt& o) const {
        if (auto c = bottom <=> o.bottom; c != 0) return c;
        if (auto c = pass <=> o.pass; c != 0) return c;
        return tops <=> o.tops;
    }
};

using InfModVec = std::map<InfModElt, Rat>;

// Cached differential and streaming basis enumeration for the module over
// the homotopy operad.
class InfModuleOps {
public:
    explicit InfModuleOps(const LaxInfOperad& op) : op_(&op) {}

    const LaxInfOperad& op() const { return *op_; }
    InfModVec diff(const InfModElt& e) const;
    int degree(const InfModElt& e) const;
    void visit_basis(Arity a, const std::function<void(InfModElt&&)>& f) const;

private:
    const LaxInfOperad* op_;
    mutable std::map<Arity, std::vector<ThinQuadratic>> tq_;
    mutable std::map<Arity, std::vector<BoxTree>> rows_;
    const std::vector<ThinQuadratic>& tq(Arity a) const;
    const std::vector<BoxTree>& single_rows(Arity a) const;
};

InfModVec inf_mod_diff(const LaxInfOperad& op, const InfModElt& e);

// All basis elements of the Lax Koszul complex at the given arity.
std::vector<LaxKoszulElt> lax_koszul_basis(Arity a);
std::vector<MorKoszulElt> mor_koszul_basis(Arity a);
std::vector<InfModElt> inf_mod_basis(const LaxInfOperad& op, Arity a);

// Builds the slice with differentials, degree layout, and (for the Lax
// complexes) the stacking-number filtration.
FilteredChainSlice build_complex(ComplexId id, Arity a);

struct ComplexReport {
    bool pass = true;
    std::string witness;
};

// d∘d = 0 on every slice with p+q <= max_pq (and r <= p).
ComplexReport verify_d_squared(ComplexId id, int max_pq);

std::map<int, std::size_t> homology(ComplexId id, Arity a);

} // namespace boxk
