#pragma once

#include "corkcalc/homomorphism.hpp"
#include "corkcalc/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace corkcalc {

/// The left shift {}^gF(x) = F(g^{-1} x) on a base map given in the top
/// group's canonical order.
inline std::vector<GroupValue> wreath_shift(const GroupPtr& wreath, const GroupValue& g,
                                            const std::vector<GroupValue>& base_map) {
    const auto& tops = *wreath->top_elements;
    if (base_map.size() != tops.size()) throw Error("wreath_shift: base map must be total on the top group");
    GroupValue gi = inverse(g);
    std::vector<GroupValue> out;
    out.reserve(tops.size());
    for (std::size_t k = 0; k < tops.size(); ++k)
        out.push_back(base_map[top_index(*wreath, multiply(gi, tops[k]))]);
    return out;
}

// ---------------------------------------------------------------------------
// Krasner-Kaloujnine embedding G -> N wr (G/N)

struct KKOptions {
    bool quotient_cyclic = false;    // represent a cyclic quotient as Z_q
    std::optional<int> ball_radius;  // verification radius for infinite groups
};

struct KKEmbedding {
    Homomorphism embedding;    // G -> wreath
    GroupPtr wreath;           // Wreath(base_rep, quotient_rep)
    GroupPtr base_rep;
    GroupPtr quotient_rep;
    Homomorphism quotient_map; // G -> quotient_rep
    Certificate certificate;
};

namespace detail {

/// Cyclic re-labeling of a quotient-table group: the first generator in
/// canonical order is mapped to 1 in Z_q.
struct CyclicRelabel {
    GroupPtr cyclic;
    std::vector<int> exp_of_index;    // table index -> exponent
    std::vector<int> index_of_exp;    // exponent -> table index
};

inline CyclicRelabel cyclic_relabel(const GroupPtr& table_spec) {
    const int q = table_spec->table_order;
    const int id = table_spec->table_identity;
    int gen = -1;
    for (int c = 0; c < q && gen < 0; ++c) {
        if (c == id) continue;
        int cur = c, ord = 1;
        while (cur != id) {
            cur = table_spec->table_at(cur, c);
            ++ord;
        }
        if (ord == q) gen = c;
    }
    if (gen < 0) throw Error("cyclic_relabel: quotient is not cyclic");
    CyclicRelabel r;
    r.cyclic = cyclic_group(static_cast<std::uint64_t>(q));
    r.exp_of_index.assign(static_cast<std::size_t>(q), -1);
    r.index_of_exp.assign(static_cast<std::size_t>(q), -1);
    int cur = id;
    for (int j = 0; j < q; ++j) {
        r.exp_of_index[static_cast<std::size_t>(cur)] = j;
        r.index_of_exp[static_cast<std::size_t>(j)] = cur;
        cur = table_spec->table_at(cur, gen);
    }
    return r;
}

}  // namespace detail

/// Embedding of a finite group into (normal subgroup) wr (quotient), through
/// the canonical transversal t(identity coset) = 1, t(C) = min C otherwise:
///   theta(g) = (q -> t(q)^{-1} g t(pi(g)^{-1} q), pi(g)).
/// Verified exhaustively: homomorphism law, trivial kernel, image order, and
/// that the top coordinate reproduces the quotient map.
inline KKEmbedding kk_embed(const GroupPtr& g, const std::vector<GroupValue>& normal_generators,
                            const KKOptions& opts = {}) {
    auto order = group_order(g);
    if (!order) throw Error("kk_embed: finite groups only (use kk_embed_kernel for Z^m extensions)");
    std::vector<GroupValue> whole = enumerate_elements(g);
    std::vector<GroupValue> n = subgroup_closure(g, normal_generators);
    if (auto w = normality_witness(whole, n))
        throw Error("kk_embed: normality violated at (" + to_string(w->first) + ", " + to_string(w->second) + ")");

    KKEmbedding out;
    out.certificate.add_chain("kk-embed", Json{{"group", spec_name(*g)}, {"normal_order", n.size()}});
    out.certificate.add_check("normal subgroup", "conjugation over all " + std::to_string(whole.size() * n.size()) + " pairs", true);

    TableReification base = reify_as_table(g, n);
    out.base_rep = base.table;
    QuotientReification quo = quotient_by_normal(g, whole, n);

    // quotient representation and transversal accessors
    std::function<GroupValue(const GroupValue&)> project;     // G -> quotient_rep
    std::function<GroupValue(const GroupValue&)> transversal; // quotient_rep -> G
    if (opts.quotient_cyclic) {
        detail::CyclicRelabel rel = detail::cyclic_relabel(quo.table);
        out.quotient_rep = rel.cyclic;
        auto quo_ptr = std::make_shared<QuotientReification>(quo);
        auto rel_ptr = std::make_shared<detail::CyclicRelabel>(std::move(rel));
        project = [quo_ptr, rel_ptr](const GroupValue& x) {
            int idx = quo_ptr->project(x).as_index();
            return GroupValue(rel_ptr->cyclic, BigInt(rel_ptr->exp_of_index[static_cast<std::size_t>(idx)]));
        };
        transversal = [quo_ptr, rel_ptr](const GroupValue& c) {
            int idx = rel_ptr->index_of_exp[static_cast<std::size_t>(static_cast<long long>(c.as_int()))];
            return quo_ptr->transversal(GroupValue(quo_ptr->table, idx));
        };
    } else {
        out.quotient_rep = quo.table;
        auto quo_ptr = std::make_shared<QuotientReification>(quo);
        project = [quo_ptr](const GroupValue& x) { return quo_ptr->project(x); };
        transversal = [quo_ptr](const GroupValue& c) { return quo_ptr->transversal(c); };
    }

    out.wreath = wreath_product(out.base_rep, out.quotient_rep);
    out.quotient_map = Homomorphism{g, out.quotient_rep, project, "quotient map"};

    GroupPtr wreath = out.wreath;
    auto base_ptr = std::make_shared<TableReification>(std::move(base));
    out.embedding.domain = g;
    out.embedding.codomain = wreath;
    out.embedding.provenance = "kk-embed";
    out.embedding.map = [wreath, base_ptr, project, transversal](const GroupValue& x) {
        GroupValue top = project(x);
        GroupValue top_inv = inverse(top);
        const auto& tops = *wreath->top_elements;
        std::vector<GroupValue> f;
        f.reserve(tops.size());
        for (const auto& q : tops) {
            GroupValue tq = transversal(q);
            GroupValue tq2 = transversal(multiply(top_inv, q));
            f.push_back(base_ptr->to_table(multiply(multiply(inverse(tq), x), tq2)));
        }
        return wreath_value(wreath, std::move(f), top);
    };

    out.certificate.absorb(verify_homomorphism_injective(out.embedding), "embedding: ");
    bool proj_ok = true;
    std::string witness;
    for (const auto& x : whole) {
        if (!values_equal(wreath_top_of(out.embedding(x)), project(x))) {
            proj_ok = false;
            witness = to_string(x);
            break;
        }
    }
    out.certificate.add_check("top projection equals quotient map", "all " + std::to_string(whole.size()) + " elements",
                              proj_ok, witness);
    if (!out.certificate.passed()) throw Error("kk_embed: verification failed (internal error)");
    return out;
}

/// The Z^m-kernel case: G an extension of Z^m by its finite part. Transversal
/// t(h) = (0, h); the base lands in FreeAbelian(rank). Verified on a
/// generator ball (default radius 3).
inline KKEmbedding kk_embed_kernel(const GroupPtr& g, const KKOptions& opts = {}) {
    if (g->kind != GroupKind::AbelianByFinite) throw Error("kk_embed_kernel: AbelianByFinite groups only");
    KKEmbedding out;
    out.base_rep = free_abelian_group(g->rank);
    out.quotient_rep = g->finite_part;
    out.wreath = wreath_product(out.base_rep, out.quotient_rep);
    out.certificate.add_chain("kk-embed-kernel", Json{{"group", spec_name(*g)}});

    GroupPtr wreath = out.wreath;
    GroupPtr base_rep = out.base_rep;
    out.quotient_map = Homomorphism{g, out.quotient_rep,
                                    [](const GroupValue& x) { return *x.as_abf().fin; }, "quotient map"};
    out.embedding.domain = g;
    out.embedding.codomain = wreath;
    out.embedding.provenance = "kk-embed-kernel";
    out.embedding.map = [g, wreath, base_rep](const GroupValue& x) {
        GroupValue top = *x.as_abf().fin;
        GroupValue top_inv = inverse(top);
        auto t = [g](const GroupValue& h) { return abf_value(g, zero_vec(g->rank), h); };
        const auto& tops = *wreath->top_elements;
        std::vector<GroupValue> f;
        f.reserve(tops.size());
        for (const auto& q : tops) {
            GroupValue val = multiply(multiply(inverse(t(q)), x), t(multiply(top_inv, q)));
            if (!is_identity(*val.as_abf().fin)) throw Error("kk_embed_kernel: value escaped the kernel");
            f.push_back(free_abelian_value(base_rep, val.as_abf().vec));
        }
        return wreath_value(wreath, std::move(f), top);
    };

    int radius = opts.ball_radius.value_or(3);
    out.certificate.absorb(verify_homomorphism_injective(out.embedding, radius), "embedding: ");
    bool proj_ok = true;
    std::string witness;
    for (const auto& x : ball(g, radius)) {
        if (!values_equal(wreath_top_of(out.embedding(x)), out.quotient_map(x))) {
            proj_ok = false;
            witness = to_string(x);
            break;
        }
    }
    out.certificate.add_check("top projection equals quotient map",
                              "radius-" + std::to_string(radius) + " ball", proj_ok, witness);
    if (!out.certificate.passed()) throw Error("kk_embed_kernel: verification failed (internal error)");
    return out;
}

// ---------------------------------------------------------------------------
// Iterated embedding along a subnormal series

/// Base functoriality: an embedding B -> W induces B wr Q -> W wr Q,
/// pointwise on base maps.
inline Homomorphism wreath_base_lift(const GroupPtr& from_wreath, const GroupPtr& to_wreath,
                                     const Homomorphism& base_hom) {
    if (!specs_equal(from_wreath->wreath_top, to_wreath->wreath_top))
        throw Error("wreath_base_lift: top groups differ");
    Homomorphism h;
    h.domain = from_wreath;
    h.codomain = to_wreath;
    h.provenance = "base-lift[" + base_hom.provenance + "]";
    auto f = base_hom.map;
    GroupPtr to = to_wreath;
    h.map = [to, f](const GroupValue& x) {
        const auto& w = x.as_wreath();
        std::vector<GroupValue> mapped;
        mapped.reserve(w.base->size());
        for (const auto& v : *w.base) mapped.push_back(f(v));
        return wreath_value(to, std::move(mapped), *w.top);
    };
    return h;
}

struct SeriesEmbedding {
    Homomorphism embedding;
    GroupPtr target;
    BigInt target_order;  // closed-form iterated wreath size
    Certificate certificate;
};

namespace detail {

/// Isomorphism onto Z_q for a finite cyclic group: the first element of full
/// order in canonical order maps to 1.
inline Homomorphism cyclic_normal_form(const GroupPtr& g) {
    std::vector<GroupValue> elems = enumerate_elements(g);
    const std::uint64_t q = elems.size();
    GroupPtr target = cyclic_group(q);
    std::optional<GroupValue> gen;
    for (const auto& x : elems) {
        if (is_identity(x)) continue;
        if (element_order(x) == q) { gen = x; break; }
    }
    if (q == 1) return Homomorphism{g, target, [target](const GroupValue&) { return identity(target); }, "cyclic-normal-form"};
    if (!gen) throw Error("cyclic_normal_form: group is not cyclic");
    auto tbl = std::make_shared<std::map<GroupValue, GroupValue>>();
    GroupValue cur = identity(g);
    for (std::uint64_t j = 0; j < q; ++j) {
        tbl->emplace(cur, GroupValue(target, BigInt(j)));
        cur = multiply(cur, *gen);
    }
    return Homomorphism{g, target, [tbl](const GroupValue& x) { return tbl->at(x); }, "cyclic-normal-form"};
}

inline SeriesEmbedding series_embed_impl(const GroupPtr& g, const SubnormalSeries& series) {
    SeriesEmbedding out;
    const std::size_t r = series.length();
    if (r == 0) {
        out.embedding = identity_homomorphism(g);
        out.target = g;
        out.target_order = group_order(g).value_or(BigInt(1));
        out.certificate.add_chain("series-embed", Json{{"levels", 0}});
        return out;
    }
    if (r == 1) {
        // G itself is the only quotient; put it in cyclic normal form when cyclic.
        if (!series.quotient_orders.empty()) {
            out.embedding = cyclic_normal_form(g);
            out.target = out.embedding.codomain;
        } else {
            auto reif = std::make_shared<TableReification>(reify_as_table(g, enumerate_elements(g)));
            out.target = reif->table;
            out.embedding = Homomorphism{g, out.target,
                                         [reif](const GroupValue& x) { return reif->to_table(x); },
                                         "table-normal-form"};
        }
        out.target_order = *group_order(out.target);
        out.certificate.add_chain("series-embed", Json{{"levels", 1}});
        return out;
    }

    // Level 1: G -> G_1 wr (G/G_1), quotient in cyclic normal form when recorded.
    KKOptions opts;
    opts.quotient_cyclic = !series.quotient_orders.empty();
    KKEmbedding level = kk_embed(g, series.subgroups[1], opts);

    // Rebase the tail series into the reified G_1 and recurse.
    TableReification n1 = reify_as_table(g, series.subgroups[1]);
    SubnormalSeries tail;
    tail.group = n1.table;
    for (std::size_t i = 1; i < series.subgroups.size(); ++i) {
        std::vector<GroupValue> mapped;
        mapped.reserve(series.subgroups[i].size());
        for (const auto& v : series.subgroups[i]) mapped.push_back(n1.to_table(v));
        std::sort(mapped.begin(), mapped.end(), value_less);
        tail.subgroups.push_back(std::move(mapped));
        if (i >= 2) {
            std::vector<GroupValue> gens;
            for (const auto& v : series.step_generators[i - 1]) gens.push_back(n1.to_table(v));
            tail.step_generators.push_back(std::move(gens));
        }
    }
    if (!series.quotient_orders.empty())
        tail.quotient_orders.assign(series.quotient_orders.begin() + 1, series.quotient_orders.end());
    SeriesEmbedding inner = series_embed_impl(n1.table, tail);

    // level.base_rep is the same reification of G_1 (same sorted elements).
    Homomorphism into_inner = compose(inner.embedding,
                                      Homomorphism{level.base_rep, n1.table,
                                                   [](const GroupValue& x) { return x; }, "rebase"});
    GroupPtr lifted = wreath_product(inner.target, level.quotient_rep);
    Homomorphism lift = wreath_base_lift(level.wreath, lifted, into_inner);
    out.embedding = compose(lift, level.embedding);
    out.target = lifted;
    std::uint64_t q1 = static_cast<std::uint64_t>(level.quotient_rep->kind == GroupKind::Cyclic
                                                      ? level.quotient_rep->modulus
                                                      : static_cast<std::uint64_t>(level.quotient_rep->table_order));
    BigInt sz = 1;
    for (std::uint64_t i = 0; i < q1; ++i) sz *= inner.target_order;
    out.target_order = sz * BigInt(q1);
    out.certificate.absorb(level.certificate, "level: ");
    out.certificate.absorb(inner.certificate, "inner: ");
    return out;
}

}  // namespace detail

/// Embedding of a finite group into the iterated wreath product of its series
/// quotients, built inductively from kk_embed and base functoriality.
/// The full composite is re-verified exhaustively.
inline SeriesEmbedding series_embed(const GroupPtr& g, const SubnormalSeries& series) {
    verify_series(series);
    SeriesEmbedding out = detail::series_embed_impl(g, series);
    Certificate top;
    top.add_chain("series-embed", Json{{"group", spec_name(*g)},
                                       {"quotient_orders", series.quotient_orders},
                                       {"target", spec_name(*out.target)},
                                       {"target_order", out.target_order.str()}});
    top.absorb(verify_homomorphism_injective(out.embedding), "composite: ");
    auto closed_form = group_order(out.target);
    top.add_check("closed-form target order", "iterated size formula",
                  closed_form && *closed_form == out.target_order, "",
                  "order " + out.target_order.str());
    top.absorb(out.certificate);
    out.certificate = std::move(top);
    if (!out.certificate.passed()) throw Error("series_embed: verification failed (internal error)");
    return out;
}

}  // namespace corkcalc
