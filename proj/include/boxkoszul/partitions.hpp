/* The category of partitions (compositions of p into r positive parts),
 * stacking numbers, epsilon elements, paths and shuffles. These index every
 * basis that appears on the Lax side. */
#pragma once

#include "base.hpp"

#include <compare>
#include <string>
#include <vector>

namespace boxk {

// Composition (t_1,...,t_r) of p into r positive parts. The empty list is
// the distinguished element (0) of Part(0,0).
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> ps) : parts(std::move(ps)) {}

    int weight() const { // p
        int s = 0;
        for (int t : parts) s += t;
        return s;
    }
    int length() const { return (int)parts.size(); } // r
    bool is_zero() const { return parts.empty(); }   // the element (0)
    bool all_ones() const {
        for (int t : parts)
            if (t != 1) return false;
        return true;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    // total order: weight, then length, then lexicographic
    std::strong_ordering operator<=>(const Partition& o) const {
        if (auto c = weight() <=> o.weight(); c != 0) return c;
        if (auto c = length() <=> o.length(); c != 0) return c;
        return parts <=> o.parts;
    }

    std::string str() const {
        if (parts.empty()) return "(0)";
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

inline Partition ones(int n) { return Partition(std::vector<int>(n, 1)); }

// All compositions of p into r positive parts, lexicographic. [(0)] at (0,0);
// empty when p < r or exactly one of p, r is zero.
std::vector<Partition> enumerate_partitions(int p, int r);

// Block-summation composite of P in Part(p,r) with Q in Part(r,s).
Partition compose(const Partition& P, const Partition& Q);

// Concatenation; (0) is the unit.
Partition concat(const Partition& P, const Partition& Q);

// Basis index of Lax: a partition together with a vertical arity q.
struct LaxKey {
    Partition P;
    int q = 0;

    int p() const { return P.weight(); }
    int r() const { return P.length(); }
    Arity arity() const { return {p(), q, r()}; }
    bool valid() const { return p() + q - r() >= 1; }
    bool is_unit() const { return P.is_zero() && q == 1; }

    friend bool operator==(const LaxKey&, const LaxKey&) = default;
    std::strong_ordering operator<=>(const LaxKey& o) const {
        if (auto c = P <=> o.P; c != 0) return c;
        return q <=> o.q;
    }
    std::string str() const { return "m{" + P.str() + "," + std::to_string(q) + "}"; }
};

// Maximal number of f- and c-generators in any computation of m_{P,q},
// by the closed formula.
long stacking_number(const Partition& P, int q);

// Same quantity by brute-force maximisation over horizontal epsilon chains.
long stacking_number_oracle(const Partition& P, int q, int cap = 7);

// SN(P∘P', q+q') − SN(P,q) − SN(P',q'), always >= 0.
long stacking_difference(const LaxKey& a, const LaxKey& b);

// epsilon(i,p): the i-th generator-tower key; i = p gives ((1,...,1),1),
// i < p gives the partition with a single 2 in position i and q = 0.
LaxKey epsilon(int i, int p);

// Index sequence (i_1,...,i_{p'-1}) encoding (eps^{i_1,p'},...,eps^{i_{p'-1},2}).
struct PathSeq {
    std::vector<int> idx;
    friend bool operator==(const PathSeq&, const PathSeq&) = default;
};

// All paths for p', with sign prod_j (-1)^{i_j}.
std::vector<std::pair<PathSeq, int>> paths(int p_prime);

// A (k,l)-shuffle as the image list beta(1..k+l); increasing on the first k
// and on the last l positions. Sign (-1)^{sum_j (beta(j)-j)} over j <= k.
using Shuffle = std::vector<int>;
std::vector<std::pair<Shuffle, int>> shuffles(int k, int l);

// The interleaved chain of lifted epsilon factors and lifted tops determined
// by a (p'-1,n)-shuffle and a path; composability is asserted.
std::vector<LaxKey> beta_sequence(const Shuffle& beta, const PathSeq& path,
                                  const std::vector<LaxKey>& tops);

} // namespace boxk
