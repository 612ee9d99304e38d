#include "boxkoszul/qlinalg.hpp"

#include <algorithm>
#include <cassert>

namespace boxk {

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
    assert(cols == other.rows);
    RatMatrix out(rows, other.cols);
    // group other's entries by row for the sparse product
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rat>>> by_row;
    for (const auto& [rc, v] : other.entries) by_row[rc.first].push_back({rc.second, v});
    for (const auto& [rc, v] : entries) {
        auto it = by_row.find(rc.second);
        if (it == by_row.end()) continue;
        for (const auto& [c2, v2] : it->second) out.add(rc.first, c2, v * v2);
    }
    return out;
}

std::size_t rank_dense(const RatMatrix& m) {
    std::vector<QVec> a(m.rows, QVec(m.cols));
    for (const auto& [rc, v] : m.entries) a[rc.first][rc.second] = v;
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols && rk < m.rows; ++col) {
        std::size_t piv = rk;
        while (piv < m.rows && a[piv][col].is_zero()) ++piv;
        if (piv == m.rows) continue;
        std::swap(a[piv], a[rk]);
        for (std::size_t i = rk + 1; i < m.rows; ++i) {
            if (a[i][col].is_zero()) continue;
            Rat f = a[i][col] / a[rk][col];
            for (std::size_t j = col; j < m.cols; ++j) a[i][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

std::size_t rank_sparse(const RatMatrix& m) {
    // rows as sparse maps col -> value
    std::vector<std::map<std::size_t, Rat>> rows(m.rows);
    for (const auto& [rc, v] : m.entries) rows[rc.first][rc.second] = v;
    std::vector<bool> done(m.rows, false);
    std::size_t rk = 0;
    for (;;) {
        // pick the live row with fewest entries
        std::size_t best = m.rows;
        for (std::size_t i = 0; i < m.rows; ++i)
            if (!done[i] && !rows[i].empty() && (best == m.rows || rows[i].size() < rows[best].size()))
                best = i;
        if (best == m.rows) break;
        done[best] = true;
        ++rk;
        std::size_t pc = rows[best].begin()->first;
        Rat pv = rows[best].begin()->second;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (done[i] || rows[i].empty()) continue;
            auto it = rows[i].find(pc);
            if (it == rows[i].end()) continue;
            Rat f = it->second / pv;
            for (const auto& [c, v] : rows[best]) {
                auto jt = rows[i].find(c);
                if (jt == rows[i].end()) {
                    rows[i][c] = -(f * v);
                    if (rows[i][c].is_zero()) rows[i].erase(c);
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) rows[i].erase(jt);
                }
            }
        }
    }
    return rk;
}

std::size_t rank(const RatMatrix& m) {
    if (m.entries.empty()) return 0;
    return (m.rows * m.cols <= 4096) ? rank_dense(m) : rank_sparse(m);
}

std::vector<QVec> kernel_basis(const RatMatrix& m) {
    // reduced row echelon form with free-column back substitution
    std::vector<QVec> a(m.rows, QVec(m.cols));
    for (const auto& [rc, v] : m.entries) a[rc.first][rc.second] = v;
    std::vector<std::size_t> pivot_col;
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols && rk < m.rows; ++col) {
        std::size_t piv = rk;
        while (piv < m.rows && a[piv][col].is_zero()) ++piv;
        if (piv == m.rows) continue;
        std::swap(a[piv], a[rk]);
        Rat inv = Rat(1) / a[rk][col];
        for (std::size_t j = col; j < m.cols; ++j) a[rk][j] *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rk || a[i][col].is_zero()) continue;
            Rat f = a[i][col];
            for (std::size_t j = col; j < m.cols; ++j) a[i][j] -= f * a[rk][j];
        }
        pivot_col.push_back(col);
        ++rk;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<QVec> out;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols);
        v[free] = Rat(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t span_dim(const std::vector<QVec>& vecs) {
    if (vecs.empty()) return 0;
    RatMatrix m(vecs.size(), vecs[0].size());
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < vecs[i].size(); ++j)
            if (!vecs[i][j].is_zero()) m.entries[{i, j}] = vecs[i][j];
    return rank(m);
}

void ChainSlice::check_complex() const {
    for (int d = deg_min; d + 1 <= deg_max; ++d) {
        const RatMatrix* d1 = differential(d + 1);
        const RatMatrix* d0 = differential(d);
        if (!d1 || !d0) continue;
        RatMatrix prod = d0->mul(*d1);
        if (!prod.is_zero()) {
            std::size_t col = prod.entries.begin()->first.second;
            throw NonComplex(d + 1, basis.at(d + 1)[col]);
        }
    }
}

std::map<int, std::size_t> homology_dims(const ChainSlice& c) {
    c.check_complex();
    std::map<int, std::size_t> h;
    for (int d = c.deg_min; d <= c.deg_max; ++d) {
        std::size_t n = c.dim(d);
        const RatMatrix* down = c.differential(d);
        std::size_t rk_down = (down && c.dim(d - 1) > 0) ? rank(*down) : 0;
        const RatMatrix* up = c.differential(d + 1);
        std::size_t rk_up = (up && c.dim(d + 1) > 0) ? rank(*up) : 0;
        h[d] = n - rk_down - rk_up;
    }
    return h;
}

void FilteredChainSlice::check_filtration() const {
    for (const auto& [d, m] : diff) {
        for (const auto& [rc, v] : m.entries) {
            (void)v;
            std::size_t src_lvl = level.at(d)[rc.second];
            std::size_t dst_lvl = level.at(d - 1)[rc.first];
            if (dst_lvl < src_lvl)
                throw Error("differential lowered the filtration level on " + basis.at(d)[rc.second]);
        }
    }
}

namespace {

// Z^l_{s,d} = { x in F_s C_d : dx in F_{s+l} C_{d-1} }, as full-coordinate
// vectors. Convention: l < 0 gives F_s itself.
std::vector<QVec> z_space(const FilteredChainSlice& c, int l, int s, int d) {
    std::size_t n = c.dim(d);
    if (n == 0) return {};
    const auto& lv = c.level.at(d);
    std::vector<std::size_t> cols_sel;
    for (std::size_t i = 0; i < n; ++i)
        if ((int)lv[i] >= s) cols_sel.push_back(i);
    if (cols_sel.empty()) return {};
    if (l < 0) {
        std::vector<QVec> out;
        for (auto i : cols_sel) {
            QVec v(n);
            v[i] = Rat(1);
            out.push_back(std::move(v));
        }
        return out;
    }
    const RatMatrix* dm = c.differential(d);
    std::size_t m = c.dim(d - 1);
    std::vector<std::size_t> rows_sel;
    if (dm && m > 0) {
        const auto& lvt = c.level.at(d - 1);
        for (std::size_t j = 0; j < m; ++j)
            if ((int)lvt[j] < s + l) rows_sel.push_back(j);
    }
    if (rows_sel.empty()) {
        std::vector<QVec> out;
        for (auto i : cols_sel) {
            QVec v(n);
            v[i] = Rat(1);
            out.push_back(std::move(v));
        }
        return out;
    }
    RatMatrix sub(rows_sel.size(), cols_sel.size());
    for (std::size_t jj = 0; jj < rows_sel.size(); ++jj)
        for (std::size_t ii = 0; ii < cols_sel.size(); ++ii) {
            Rat v = dm->at(rows_sel[jj], cols_sel[ii]);
            if (!v.is_zero()) sub.entries[{jj, ii}] = v;
        }
    std::vector<QVec> out;
    for (const auto& k : kernel_basis(sub)) {
        QVec v(n);
        for (std::size_t ii = 0; ii < cols_sel.size(); ++ii) v[cols_sel[ii]] = k[ii];
        out.push_back(std::move(v));
    }
    return out;
}

QVec apply_diff(const FilteredChainSlice& c, int d, const QVec& x) {
    std::size_t m = c.dim(d - 1);
    QVec y(m);
    const RatMatrix* dm = c.differential(d);
    if (!dm || m == 0) return y;
    for (const auto& [rc, v] : dm->entries) {
        if (!x[rc.second].is_zero()) y[rc.first] += v * x[rc.second];
    }
    return y;
}

std::vector<QVec> image_of(const FilteredChainSlice& c, int d, const std::vector<QVec>& xs) {
    std::vector<QVec> out;
    for (const auto& x : xs) {
        QVec y = apply_diff(c, d, x);
        bool nz = false;
        for (const auto& e : y)
            if (!e.is_zero()) { nz = true; break; }
        if (nz) out.push_back(std::move(y));
    }
    return out;
}

} // namespace

std::vector<SpectralPage> spectral_pages(const FilteredChainSlice& c, std::size_t max_page) {
    c.check_complex();
    c.check_filtration();
    int smax = 0;
    for (const auto& [d, lv] : c.level)
        for (auto s : lv) smax = std::max(smax, (int)s);
    std::vector<SpectralPage> pages;
    for (std::size_t l = 0; l <= max_page; ++l) {
        SpectralPage page;
        for (int d = c.deg_min; d <= c.deg_max; ++d) {
            if (c.dim(d) == 0) continue;
            for (int s = 0; s <= smax; ++s) {
                auto zl = z_space(c, (int)l, s, d);
                if (zl.empty()) continue;
                auto den1 = z_space(c, (int)l - 1, s + 1, d);
                auto den2 = image_of(c, d + 1, z_space(c, (int)l - 1, s - (int)l + 1, d + 1));
                std::vector<QVec> den = den1;
                den.insert(den.end(), den2.begin(), den2.end());
                std::size_t dim_e = span_dim(zl) - span_dim(den);
                if (dim_e > 0) page.dims[{s, d}] = dim_e;
                // rank of d^l out of E^l_{s,d}
                auto img = image_of(c, d, zl);
                if (!img.empty()) {
                    auto tden1 = z_space(c, (int)l - 1, s + (int)l + 1, d - 1);
                    auto tden2 = image_of(c, d + 1 - 1, z_space(c, (int)l - 1, s + 1, d));
                    std::vector<QVec> tden = tden1;
                    tden.insert(tden.end(), tden2.begin(), tden2.end());
                    std::size_t before = span_dim(tden);
                    std::vector<QVec> both = tden;
                    both.insert(both.end(), img.begin(), img.end());
                    std::size_t rk = span_dim(both) - before;
                    if (rk > 0) page.diff_rank[{s, d}] = rk;
                }
            }
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

} // namespace boxk
