/* Exact rational sparse/dense linear algebra, homology of finite chain
 * complexes, and a spectral-sequence calculator for filtered complexes. */
#pragma once

#include "base.hpp"
#include "rational.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace boxk {

// Sparse rational matrix; no stored zero entries.
struct RatMatrix {
    std::size_t rows = 0, cols = 0;
    std::map<std::pair<std::size_t, std::size_t>, Rat> entries;

    RatMatrix() = default;
    RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c) {}

    void set(std::size_t r, std::size_t c, const Rat& v) {
        if (v.is_zero()) entries.erase({r, c});
        else entries[{r, c}] = v;
    }
    void add(std::size_t r, std::size_t c, const Rat& v) {
        auto it = entries.find({r, c});
        if (it == entries.end()) { set(r, c, v); return; }
        it->second += v;
        if (it->second.is_zero()) entries.erase(it);
    }
    Rat at(std::size_t r, std::size_t c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? Rat() : it->second;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols, rows);
        for (const auto& [rc, v] : entries) t.entries[{rc.second, rc.first}] = v;
        return t;
    }

    // this * other, exact.
    RatMatrix mul(const RatMatrix& other) const;

    bool is_zero() const { return entries.empty(); }
};

using QVec = std::vector<Rat>; // dense column vector

// Rank over Q. Dense or sparse elimination is picked by a size threshold;
// both are exact so the result is identical either way.
std::size_t rank(const RatMatrix& m);
std::size_t rank_dense(const RatMatrix& m);
std::size_t rank_sparse(const RatMatrix& m);

// Basis of ker(m) as dense coordinate vectors of length m.cols.
std::vector<QVec> kernel_basis(const RatMatrix& m);

// Dimension of the span of a set of dense vectors (all the same length).
std::size_t span_dim(const std::vector<QVec>& vecs);

// Chain slice: contiguous degree range, ordered basis keys per degree, and
// differentials d: C_d -> C_{d-1} as sparse matrices. Degrees outside the
// range carry zero spaces.
struct ChainSlice {
    int deg_min = 0, deg_max = -1; // empty when deg_min > deg_max
    std::map<int, std::vector<std::string>> basis;
    std::map<int, RatMatrix> diff; // diff[d]: basis[d] -> basis[d-1]

    std::size_t dim(int d) const {
        auto it = basis.find(d);
        return it == basis.end() ? 0 : it->second.size();
    }
    const RatMatrix* differential(int d) const {
        auto it = diff.find(d);
        return it == diff.end() ? nullptr : &it->second;
    }
    // Throws NonComplex with a witness basis element if d∘d != 0.
    void check_complex() const;
};

// Per-degree homology dimensions: dim ker d_d − rank d_{d+1}.
// Verifies d∘d = 0 first (NonComplex on failure).
std::map<int, std::size_t> homology_dims(const ChainSlice& c);

// Chain slice with a decreasing filtration level per basis element.
// Invariant: the differential never lowers the level.
struct FilteredChainSlice : ChainSlice {
    std::map<int, std::vector<std::size_t>> level; // per degree, per basis index
    void check_filtration() const;                 // asserts d F_s ⊆ F_s
};

struct SpectralPage {
    // (filtration level s, total degree d) -> dimension of E^l_{s,d}
    std::map<std::pair<int, int>, std::size_t> dims;
    // rank of the page differential d^l : E^l_{s,d} -> E^l_{s+l,d-1}
    std::map<std::pair<int, int>, std::size_t> diff_rank;

    std::size_t dim_at_degree(int d) const {
        std::size_t n = 0;
        for (const auto& [sd, v] : dims)
            if (sd.second == d) n += v;
        return n;
    }
};

// Pages E^0 .. E^maxPage of the spectral sequence of the (decreasing,
// bounded) filtration, by the standard Z^l/(B+Z) quotient-dimension formula.
std::vector<SpectralPage> spectral_pages(const FilteredChainSlice& c, std::size_t max_page);

} // namespace boxk
