#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxkoszul/laxalg.hpp"

#include <algorithm>
#include <set>

using namespace boxk;

namespace {

const LaxKey UNIT{Partition{}, 1};

LaxKey key(std::vector<int> parts, int q) { return LaxKey{Partition(std::move(parts)), q}; }

} // namespace

TEST_CASE("lax dimensions") {
    CHECK(lax_dimension({3, 1, 2}) == 2);
    CHECK(lax_dimension({1, 0, 1}) == 0);
    for (int q = 1; q <= 6; ++q) CHECK(lax_dimension({0, q, 0}) == 1);
    CHECK(lax_dimension({0, 0, 0}) == 0);
    CHECK(lax_dimension({2, 1, 3}) == 0); // inclined
}

TEST_CASE("lax composition of basis keys") {
    // towers rewriting of generator words; both routes agree
    CHECK(lax_compose(key({}, 2), {key({2}, 0), key({1}, 1)}) == key({2}, 1));
    CHECK(lax_compose(key({}, 2), {key({1}, 1), key({1}, 1)}) == key({1}, 2));
    CHECK(lax_compose(key({1}, 1), {key({}, 2)}) == key({1}, 2));
    LaxKey b = key({2, 1}, 3);
    CHECK(lax_compose(b, {UNIT, UNIT, UNIT}) == b);
    CHECK_THROWS_AS(lax_compose(key({}, 2), {key({2}, 0), key({2}, 0)}), ArityMismatch);
}

TEST_CASE("lax composition is box-operadically associative") {
    // nested composition equals composition of merged chains, exhaustively
    // over small composable data
    std::vector<LaxKey> pool;
    for (int p = 0; p <= 3; ++p)
        for (int r = 0; r <= p; ++r)
            for (const auto& P : enumerate_partitions(p, r))
                for (int q = 0; q <= 2; ++q)
                    if (LaxKey{P, q}.valid()) pool.push_back(LaxKey{P, q});
    int checked = 0;
    for (const auto& bot : pool) {
        if (bot.q == 0 || bot.q > 2) continue;
        // chains of length bot.q from the pool
        std::vector<std::vector<LaxKey>> chains;
        for (const auto& a : pool) {
            if (bot.q == 1) chains.push_back({a});
            else
                for (const auto& c : pool)
                    if (a.r() == c.p()) chains.push_back({a, c});
        }
        for (const auto& mids : chains) {
            LaxKey inner;
            try {
                inner = lax_compose(bot, mids);
            } catch (const Error&) {
                continue;
            }
            // now stack units-or-epsilons on the composite, grouped per mid
            int total_q = inner.q;
            if (total_q == 0 || total_q > 3) continue;
            std::vector<LaxKey> tops;
            std::vector<int> widths;
            bool ok = true;
            // a simple composable filling: identity wrap of matching width
            {
                int w = -1;
                for (const auto& m : mids)
                    for (int j = 0; j < m.q; ++j) widths.push_back(-1);
                (void)w;
            }
            // fill every slot with a unit; then the two routes must agree
            tops.assign(total_q, UNIT);
            (void)ok;
            LaxKey left = lax_compose(inner, tops);
            std::vector<LaxKey> outer;
            std::size_t cur = 0;
            for (const auto& m : mids) {
                std::vector<LaxKey> block(tops.begin() + cur, tops.begin() + cur + m.q);
                cur += m.q;
                outer.push_back(m.q == 0 ? m : lax_compose(m, block));
            }
            LaxKey right = lax_compose(bot, outer);
            CHECK(left == right);
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("generator words evaluate through the defining relations") {
    GeneratorSet gs = lax_generator_set();
    int m = gs.find("m"), f = gs.find("f"), c = gs.find("c");
    auto U = BoxTree::unit();
    // associativity
    CHECK(lax_eval_word(gs, BoxTree::node(m, {BoxTree::bare(m), U})) ==
          lax_eval_word(gs, BoxTree::node(m, {U, BoxTree::bare(m)})));
    // functoriality: m(f,f) = f m
    CHECK(lax_eval_word(gs, BoxTree::node(m, {BoxTree::bare(f), BoxTree::bare(f)})) ==
          lax_eval_word(gs, BoxTree::node(f, {BoxTree::bare(m)})));
    CHECK(lax_eval_word(gs, BoxTree::node(m, {BoxTree::bare(f), BoxTree::bare(f)})) == key({1}, 2));
    // naturality: m(c,f) = m(ff-tower, c)
    BoxTree eps22 = BoxTree::node(f, {BoxTree::bare(f)});
    CHECK(lax_eval_word(gs, BoxTree::node(m, {BoxTree::bare(c), BoxTree::bare(f)})) ==
          lax_eval_word(gs, BoxTree::node(m, {eps22, BoxTree::bare(c)})));
    // cocycle: m(c+1, c) = m(fc-tower, c)
    BoxTree cpass = BoxTree::bare(c);
    cpass.pass = 1;
    BoxTree fc = BoxTree::node(f, {BoxTree::bare(c)});
    CHECK(lax_eval_word(gs, BoxTree::node(m, {cpass, BoxTree::bare(c)})) ==
          lax_eval_word(gs, BoxTree::node(m, {fc, BoxTree::bare(c)})));
    CHECK(lax_eval_word(gs, BoxTree::node(m, {cpass, BoxTree::bare(c)})) == key({3}, 0));
}

TEST_CASE("epsilon towers evaluate to epsilon keys") {
    GeneratorSet gs = lax_generator_set();
    int f = gs.find("f"), c = gs.find("c");
    for (int p = 1; p <= 6; ++p) {
        for (int i = 1; i <= p; ++i) {
            BoxTree t;
            if (i == p) {
                t = BoxTree::bare(f);
                for (int k = 1; k < p; ++k) t = BoxTree::node(f, {t});
            } else {
                t = BoxTree::bare(c);
                t.pass = p - i - 1;
                for (int k = 0; k < i - 1; ++k) t = BoxTree::node(f, {t});
            }
            CHECK(lax_eval_word(gs, t) == epsilon(i, p));
        }
    }
}

TEST_CASE("tower identities of the basis proof") {
    // m(eps^{a,b} (x) eps^{c,d}) = m(eps^{c+1,d+1} (x) eps^{a,b-1}) for a <= c, a < b
    for (int b = 2; b <= 6; ++b)
        for (int a = 1; a < b; ++a) {
            LaxKey e1 = epsilon(a, b);
            int d = e1.r();
            for (int cc = a; cc <= d; ++cc) {
                LaxKey e2 = epsilon(cc, d);
                LaxKey lhs = lax_compose(key({}, 2), {e1, e2});
                if (cc < d) {
                    LaxKey rhs = lax_compose(key({}, 2), {epsilon(cc + 1, d + 1), epsilon(a, b - 1)});
                    CHECK(lhs == rhs);
                } else {
                    // c = d: the twist stays, the restriction tower grows
                    LaxKey rhs = lax_compose(key({}, 2), {epsilon(d + 1, d + 1), epsilon(a, b)});
                    CHECK(lhs == rhs);
                }
            }
        }
}

TEST_CASE("dual decomposition of small keys") {
    auto d02 = laxdual_decompose(LaxDualKey{Partition{}, 2});
    // only the two counit-style splittings
    REQUIRE(d02.size() == 2);
    for (const auto& coop : d02) CHECK(coop.sign == 1);

    auto d12 = laxdual_decompose(LaxDualKey{ones(1), 2});
    int proper = 0;
    for (const auto& coop : d12) {
        bool trivial = coop.bottom.is_counit() ||
                       (coop.bottom == LaxDualKey{ones(1), 2});
        if (trivial) continue;
        ++proper;
        CHECK(coop.sign == 1); // both corelation terms carry +
        bool shape_a = coop.bottom == LaxDualKey{ones(1), 1} && coop.tops.size() == 1 &&
                       coop.tops[0] == LaxDualKey{Partition{}, 2};
        bool shape_b = coop.bottom == LaxDualKey{Partition{}, 2} && coop.tops.size() == 2 &&
                       coop.tops[0] == LaxDualKey{ones(1), 1} &&
                       coop.tops[1] == LaxDualKey{ones(1), 1};
        CHECK((shape_a || shape_b));
    }
    CHECK(proper == 2);
}

namespace {

LaxDualKey dual_merge(const LaxDualKey& bottom, const std::vector<LaxDualKey>& tops) {
    int q = 0;
    Partition chain;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        chain = (i == 0) ? tops[0].P : compose(chain, tops[i].P);
        q += tops[i].q;
    }
    if (tops.empty()) return bottom;
    return LaxDualKey{concat(bottom.P, chain), q};
}

} // namespace

TEST_CASE("nested dual splittings satisfy the composite sign law") {
    std::vector<LaxDualKey> keys = {LaxDualKey{Partition({2}), 1}, LaxDualKey{Partition({1, 1}), 1},
                                    LaxDualKey{Partition({2, 1}), 0}, LaxDualKey{ones(1), 2},
                                    LaxDualKey{Partition({3}), 0}};
    for (const auto& k : keys) {
        for (const auto& outer : laxdual_decompose(k)) {
            for (const auto& inner : laxdual_decompose(outer.bottom)) {
                // flatten: compose each inner top with its block of outer tops
                if (inner.tops.empty()) continue;
                std::vector<LaxDualKey> flat;
                std::size_t cur = 0;
                bool ok = true;
                int koszul = 0;
                // Koszul: block j moves past inner tops j+1..m
                std::vector<int> block_deg(inner.tops.size(), 0), top_deg(inner.tops.size(), 0);
                std::vector<std::vector<LaxDualKey>> blocks(inner.tops.size());
                for (std::size_t j = 0; j < inner.tops.size(); ++j) {
                    top_deg[j] = inner.tops[j].degree();
                    for (int t = 0; t < inner.tops[j].q; ++t) {
                        if (cur >= outer.tops.size()) { ok = false; break; }
                        block_deg[j] += outer.tops[cur].degree();
                        blocks[j].push_back(outer.tops[cur++]);
                    }
                    if (!ok) break;
                }
                if (!ok || cur != outer.tops.size()) continue;
                for (std::size_t i = 0; i < blocks.size(); ++i)
                    for (std::size_t j = i + 1; j < blocks.size(); ++j)
                        koszul += block_deg[i] * top_deg[j];
                for (std::size_t j = 0; j < inner.tops.size(); ++j)
                    flat.push_back(dual_merge(inner.tops[j], blocks[j]));
                // the flattened splitting of k and the per-top splittings
                int lhs = outer.sign * inner.sign * (koszul % 2 == 0 ? 1 : -1);
                int rhs_e = cooperation_sign_exponent(inner.bottom, flat);
                int rhs = (rhs_e % 2 == 0) ? 1 : -1;
                for (std::size_t j = 0; j < inner.tops.size(); ++j) {
                    int e = blocks[j].empty()
                                ? 0
                                : cooperation_sign_exponent(inner.tops[j], blocks[j]);
                    rhs *= (e % 2 == 0) ? 1 : -1;
                }
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("thin infinitesimal decomposition") {
    CHECK(laxdual_inf_decompose(LaxDualKey{Partition{}, 2}).empty());
    auto d21 = laxdual_inf_decompose(LaxDualKey{Partition({2}), 1});
    REQUIRE(d21.size() == 2);
    for (const auto& t : d21) {
        CHECK(t.type == 3);
        CHECK(t.consumer == LaxDualKey{Partition{}, 2});
        CHECK((t.sign == 1 || t.sign == -1));
        REQUIRE(t.consumed.size() == 2);
    }
    std::set<std::string> shapes;
    for (const auto& t : d21)
        shapes.insert(t.consumed[0].str() + "|" + t.consumed[1].str());
    CHECK(shapes.count("mc{(2),0}|mc{(1),1}") == 1);
    CHECK(shapes.count("mc{(1,1),1}|mc{(2),0}") == 1);
    // the two terms cancel against the merge route in the Koszul complex:
    // their signs must be opposite
    CHECK(d21.begin()->sign * std::next(d21.begin())->sign == -1);
}

TEST_CASE("degree bookkeeping of dual keys matches label counts") {
    // degree = (#m^c labels needed) - 1 + p - r is reproduced by q-1+p-r
    for (int p = 0; p <= 6; ++p)
        for (int r = 0; r <= p; ++r)
            for (const auto& P : enumerate_partitions(p, r))
                for (int q = 0; q <= 6 - p; ++q) {
                    LaxDualKey k{P, q};
                    if (!k.valid()) continue;
                    CHECK(k.degree() == q - 1 + p - r);
                }
}
