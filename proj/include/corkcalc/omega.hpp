#pragma once

#include "corkcalc/wreath.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace corkcalc {

/// Input data for the wreath-to-codomain assembly: a finite group H, a group
/// N, a homomorphism phi : H -> codomain and one homomorphism psi_h : N ->
/// codomain per element of H (aligned with H's canonical element order).
struct OmegaInput {
    GroupPtr H;
    GroupPtr N;
    GroupPtr codomain;
    Homomorphism phi;
    std::vector<Homomorphism> psi;
};

namespace detail {
inline std::vector<GroupValue> omega_range(const OmegaInput& inp, std::optional<int> bound) {
    if (is_finite_group(inp.N)) return enumerate_elements(inp.N);
    if (!bound) throw Error("check_omega_hypotheses: infinite N requires a ball bound");
    return ball(inp.N, *bound);
}
}  // namespace detail

/// Verifies the two assembly hypotheses:
///   (1) phi(h) psi_g(x) phi(h)^{-1} = psi_{hg}(x)   for all x in N, g,h in H
///   (2) psi_g(x) psi_h(y) = psi_h(y) psi_g(x)        for all x,y in N, g != h
inline Certificate check_omega_hypotheses(const OmegaInput& inp, std::optional<int> bound = std::nullopt) {
    Certificate cert;
    std::vector<GroupValue> hs = enumerate_elements(inp.H);
    if (inp.psi.size() != hs.size()) throw Error("omega: psi family must have exactly one entry per element of H");
    std::vector<GroupValue> xs = detail::omega_range(inp, bound);
    std::string range = std::to_string(xs.size()) + " base elements x " + std::to_string(hs.size()) + "^2 index pairs";

    bool conj_ok = true;
    std::string conj_witness;
    for (std::size_t gi = 0; gi < hs.size() && conj_ok; ++gi) {
        for (std::size_t hi = 0; hi < hs.size() && conj_ok; ++hi) {
            GroupValue hg = multiply(hs[hi], hs[gi]);
            std::size_t hgi = canonical_index(hs, hg);
            GroupValue ph = inp.phi(hs[hi]);
            GroupValue phi_inv = inverse(ph);
            for (const auto& x : xs) {
                GroupValue lhs = multiply(multiply(ph, inp.psi[gi](x)), phi_inv);
                if (!values_equal(lhs, inp.psi[hgi](x))) {
                    conj_ok = false;
                    conj_witness = "(x=" + to_string(x) + ", g=" + to_string(hs[gi]) + ", h=" + to_string(hs[hi]) + ")";
                    break;
                }
            }
        }
    }
    cert.add_check("conjugation carries psi_g to psi_hg", range, conj_ok, conj_witness);

    bool comm_ok = true;
    std::string comm_witness;
    for (std::size_t gi = 0; gi < hs.size() && comm_ok; ++gi) {
        for (std::size_t hi = 0; hi < hs.size() && comm_ok; ++hi) {
            if (gi == hi) continue;
            for (const auto& x : xs) {
                GroupValue a = inp.psi[gi](x);
                bool stop = false;
                for (const auto& y : xs) {
                    GroupValue b = inp.psi[hi](y);
                    if (!values_equal(multiply(a, b), multiply(b, a))) {
                        comm_ok = false;
                        comm_witness = "(x=" + to_string(x) + ", y=" + to_string(y) + ", g=" + to_string(hs[gi]) +
                                       ", h=" + to_string(hs[hi]) + ")";
                        stop = true;
                        break;
                    }
                }
                if (stop) break;
            }
        }
    }
    cert.add_check("distinct psi images commute", range, comm_ok, comm_witness);
    return cert;
}

struct OmegaResult {
    Homomorphism omega;  // N wr H -> codomain
    GroupPtr wreath;
    Certificate certificate;
};

/// Assembles omega(F,h) = (prod over g in H of psi_g(F(g))) * phi(h), the
/// product taken in H's canonical element order. Refuses when the hypothesis
/// check fails; re-evaluates the product in 20 random orders to demonstrate
/// order independence, and verifies the homomorphism law over the range.
inline OmegaResult build_omega(const OmegaInput& inp, std::optional<int> bound = std::nullopt) {
    OmegaResult out;
    out.certificate.add_chain("build-omega", Json{{"H", spec_name(*inp.H)},
                                                  {"N", spec_name(*inp.N)},
                                                  {"codomain", spec_name(*inp.codomain)}});
    Certificate hyp = check_omega_hypotheses(inp, bound);
    out.certificate.absorb(hyp, "hypothesis: ");
    if (!hyp.passed()) throw Error("build_omega: hypothesis check failed; refusing to assemble omega");

    out.wreath = wreath_product(inp.N, inp.H);
    GroupPtr wreath = out.wreath;
    auto inp_ptr = std::make_shared<OmegaInput>(inp);
    GroupPtr codomain = inp.codomain;

    auto eval_in_order = [inp_ptr, codomain](const GroupValue& x, const std::vector<std::size_t>& order) {
        const auto& w = x.as_wreath();
        GroupValue acc = identity(codomain);
        for (std::size_t k : order) acc = multiply(acc, inp_ptr->psi[k]((*w.base)[k]));
        return multiply(acc, inp_ptr->phi(*w.top));
    };
    std::vector<std::size_t> canonical(inp.psi.size());
    for (std::size_t i = 0; i < canonical.size(); ++i) canonical[i] = i;

    out.omega.domain = wreath;
    out.omega.codomain = inp.codomain;
    out.omega.provenance = "omega-assembly";
    out.omega.map = [eval_in_order, canonical](const GroupValue& x) { return eval_in_order(x, canonical); };

    // range of wreath elements to verify over
    std::vector<GroupValue> probe;
    auto worder = group_order(wreath);
    const bool full = worder && *worder <= max_exhaustive_order();
    probe = full ? enumerate_elements(wreath) : ball(wreath, bound.value_or(2));

    std::vector<GroupValue> images;
    images.reserve(probe.size());
    for (const auto& x : probe) images.push_back(out.omega(x));

    bool hom_ok = true;
    std::string hom_witness;
    for (std::size_t i = 0; i < probe.size() && hom_ok; ++i) {
        for (std::size_t j = 0; j < probe.size(); ++j) {
            GroupValue prod = multiply(probe[i], probe[j]);
            // with a full enumeration the image of the product is a lookup
            GroupValue expect = full ? images[canonical_index(probe, prod)] : out.omega(prod);
            if (!values_equal(expect, multiply(images[i], images[j]))) {
                hom_ok = false;
                hom_witness = "(" + to_string(probe[i]) + ", " + to_string(probe[j]) + ")";
                break;
            }
        }
    }
    out.certificate.add_check("omega is a homomorphism",
                              "all " + std::to_string(probe.size() * probe.size()) + " pairs", hom_ok, hom_witness);

    std::mt19937_64 rng(0xC0FFEEull);
    bool order_ok = true;
    std::string order_witness;
    for (int trial = 0; trial < 20 && order_ok; ++trial) {
        std::vector<std::size_t> shuffled = canonical;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < probe.size(); ++i) {
            if (!values_equal(eval_in_order(probe[i], shuffled), images[i])) {
                order_ok = false;
                order_witness = to_string(probe[i]);
                break;
            }
        }
    }
    out.certificate.add_check("product order independence", "20 random orders x " + std::to_string(probe.size()) + " elements",
                              order_ok, order_witness);
    return out;
}

}  // namespace corkcalc
