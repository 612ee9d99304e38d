/* The operad Assoc, its Koszul dual, and the box operad Mor(Assoc) of
 * algebra morphisms with its dual decompositions. */
#pragma once

#include "base.hpp"
#include "qlinalg.hpp"

#include <string>
#include <vector>

namespace boxk {

// x_p: the element of arity (p,q,p) built from one q-ary operation and p
// restriction columns. The unit is (0,1).
struct MorKey {
    int p = 0, q = 1;
    Arity arity() const { return {p, q, p}; }
    bool valid() const { return q >= 1 && p >= 0; }
    friend bool operator==(const MorKey&, const MorKey&) = default;
    auto operator<=>(const MorKey&) const = default;
    std::string str() const { return "x" + std::to_string(q) + "_" + std::to_string(p); }
};

// (m^c_q)_p of degree q-1; q = 1 is the restriction column (eta^c)_p.
struct MorDualKey {
    int p = 0, q = 1;
    Arity arity() const { return {p, q, p}; }
    int degree() const { return q - 1; }
    bool valid() const { return q >= 1 && p >= 0; }
    bool is_counit() const { return p == 0 && q == 1; }
    friend bool operator==(const MorDualKey&, const MorDualKey&) = default;
    auto operator<=>(const MorDualKey&) const = default;
    std::string str() const { return "yc" + std::to_string(q) + "_" + std::to_string(p); }
};

// dim Mor(Assoc)(p,q,r): 1 when p = r and q >= 1, else 0.
std::size_t mor_dimension(Arity a);

// Box composition: bottom of vertical arity n over n keys sharing one
// horizontal arity.
MorKey mor_compose(const MorKey& bottom, const std::vector<MorKey>& tops);

// One term of the decomposition of (m^c_q)_p.
struct MorCooperation {
    int sign = 1;
    MorDualKey bottom; // at column p0
    std::vector<MorDualKey> tops; // sharing column p1
};

// All column splittings p = p0 + p1 and Assoc^! cosplittings of m^c_q, with
// sign (-1)^{sum (q_i - 1)(n - i)}.
std::vector<MorCooperation> mordual_decompose(const MorDualKey& k);

// The classical Koszul complex of Assoc realized inside the thin part, at
// vertical arity q (acyclic for q >= 2; the unit class sits at q = 1 in
// degree -1).
ChainSlice assoc_koszul_data(int q);

} // namespace boxk
