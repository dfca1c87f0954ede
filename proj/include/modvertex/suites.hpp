#pragma once

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "modvertex/diffop.hpp"
#include "modvertex/json_io.hpp"
#include "modvertex/poly.hpp"
#include "modvertex/report.hpp"
#include "modvertex/wakimoto.hpp"

namespace modvertex {

struct SuiteConfig {
    std::vector<uint32_t> primes{2, 3};
    std::vector<std::string> kappas{"0", "1"};  // integer literals, "critical" or "formal"
    int depth = 3;
    int mode_bound = 2;
    int depth_hard_cap = 8;
    std::vector<long long> lambda{};  // lambda(h_i); empty means -rho where a weight is needed
    int threads = 1;
    uint64_t seed = 0;
    bool force = false;

    nlohmann::json to_json() const {
        return nlohmann::json{{"primes", primes}, {"kappas", kappas},   {"depth", depth},
                              {"mode_bound", mode_bound}, {"lambda", lambda}, {"seed", seed}};
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lucas",      "restricted",     "state-field", "iota-commute", "centrality",   "wff-relations",
        "pcenter-images", "phi-pformula", "character",   "singular",     "center-probe", "all"};
    return names;
}

namespace detail {

/// Independent big-integer binomial (polynomial extension in the upper
/// index), reduced mod p only at the end.  Verification-side oracle: it never
/// touches the Lucas path.
inline uint32_t bigint_binom_mod(long long b, long long a, uint32_t p) {
    using boost::multiprecision::cpp_int;
    if (a < 0) return 0;
    cpp_int num = 1, den = 1;
    for (long long i = 0; i < a; ++i) num *= cpp_int(b - i);
    for (long long i = 1; i <= a; ++i) den *= i;
    cpp_int r = (num / den) % p;
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

inline Fp resolve_kappa(const std::string& s, const FiniteLieData& lie, Prime p) {
    if (s == "critical") return Fp::from_int(-lie.dual_coxeter, p);
    return Fp::from_int(std::stoll(s), p);
}

template <class R>
std::vector<Monomial> probes_with_seed(const ModuleSpec<R>& mod, int depth, uint32_t zero_cap, uint64_t seed) {
    auto probes = mod.enumerate_basis(depth, std::nullopt, zero_cap);
    if (seed != 0) {
        auto deeper = mod.enumerate_basis(depth + 1, std::nullopt, zero_cap);
        std::vector<Monomial> pool;
        for (auto& m : deeper)
            if (m.depth() == depth + 1) pool.push_back(m);
        std::mt19937_64 rng(seed);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (size_t i = 0; i < pool.size() && i < 6; ++i) probes.push_back(pool[i]);
    }
    return probes;
}

inline void push_check(SuiteResult& res, std::string name, const VerifyReport& rep, const CheckTimer& timer,
                       std::string details = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.pass = rep.pass;
    c.details = rep.pass ? std::move(details) : rep.witness;
    if (!rep.pass) c.witness = rep.witness;
    c.millis = timer.millis();
    res.checks.push_back(std::move(c));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Individual suites
// ---------------------------------------------------------------------------

inline SuiteResult suite_lucas(const SuiteConfig& cfg) {
    SuiteResult res{"lucas", cfg.to_json(), {}};
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        {
            CheckTimer t;
            VerifyReport rep;
            long long pairs = 0;
            for (long long b = -50; b <= 50 && rep.pass; ++b)
                for (long long a = 0; a <= 50; ++a) {
                    ++pairs;
                    if (fp_binom(b, a, p).residue() != detail::bigint_binom_mod(b, a, pv)) {
                        rep = {false, "fp_binom(" + std::to_string(b) + "," + std::to_string(a) +
                                          ") disagrees with the big-integer oracle"};
                        break;
                    }
                }
            detail::push_check(res, "binomial vs big-integer oracle p=" + std::to_string(pv), rep, t,
                               std::to_string(pairs) + " pairs");
        }
        {
            CheckTimer t;
            VerifyReport rep;
            for (long long b = -30; b <= 30 && rep.pass; ++b)
                for (long long a = 1; a <= 30; ++a)
                    if (!(fp_binom(b, a, p) == fp_binom(b - 1, a, p) + fp_binom(b - 1, a - 1, p))) {
                        rep = {false, "Pascal rule fails at (" + std::to_string(b) + "," + std::to_string(a) + ")"};
                        break;
                    }
            detail::push_check(res, "Pascal rule p=" + std::to_string(pv), rep, t);
        }
        {
            CheckTimer t;
            VerifyReport rep;
            for (long long n = -20; n <= 20 && rep.pass; ++n)
                for (long long r = 1; r <= 5; ++r) {
                    if (!(fp_binom(-n * pv - 1, r * pv - 1, p) == fp_binom(-n - 1, r - 1, p))) {
                        rep = {false, "binom(-np-1, rp-1) reduction fails at n=" + std::to_string(n) +
                                          ", r=" + std::to_string(r)};
                        break;
                    }
                    if (n % pv != 0 && n != 0 && !fp_binom(-n - 1, r * pv - 1, p).is_zero()) {
                        rep = {false, "binom(-m-1, rp-1) does not vanish at m=" + std::to_string(n) +
                                          ", r=" + std::to_string(r)};
                        break;
                    }
                }
            detail::push_check(res, "negative-index reduction p=" + std::to_string(pv), rep, t);
        }
    }
    return res;
}

inline SuiteResult suite_restricted(const SuiteConfig& cfg) {
    SuiteResult res{"restricted", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        CheckTimer t;
        auto rep = verify_restricted(lie, Prime(pv), cfg.mode_bound);
        detail::push_check(res, "restricted structure p=" + std::to_string(pv), rep, t,
                           "|modes| <= " + std::to_string(cfg.mode_bound));
    }
    return res;
}

inline SuiteResult suite_state_field(const SuiteConfig& cfg) {
    SuiteResult res{"state-field", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            auto run_with = [&](const auto& V) {
                auto probes = detail::probes_with_seed(V, cfg.depth, 0, cfg.seed);
                auto sweep = [&](auto&& check, const std::string& label) {
                    CheckTimer t;
                    VerifyReport rep;
                    for (int x = 0; x < 3 && rep.pass; ++x)
                        for (int r : {1, 2}) {
                            rep = check(V, x, r, cfg.mode_bound, probes, cfg.threads);
                            if (!rep.pass) break;
                        }
                    detail::push_check(res, label + " p=" + std::to_string(pv) + " kappa=" + ks, rep, t,
                                       std::to_string(probes.size()) + " probes");
                };
                sweep([](auto&... a) { return check_state_field_modes(a...); }, "state-field modes");
                sweep([](auto&... a) { return check_p_power_lattice_modes(a...); }, "p-power lattice field");
                sweep([](auto&... a) { return check_p_power_nop_modes(a...); }, "p-th power field");
            };
            if (ks == "formal")
                run_with(ModuleSpec<FpPoly>::vacuum(lie, p, FpPoly::indeterminate(p)));
            else
                run_with(ModuleSpec<Fp>::vacuum(lie, p, detail::resolve_kappa(ks, lie, p)));
        }
    }
    return res;
}

inline SuiteResult suite_iota_commute(const SuiteConfig& cfg) {
    SuiteResult res{"iota-commute", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            CheckTimer t;
            VerifyReport rep;
            if (ks == "formal") {
                auto V = ModuleSpec<FpPoly>::vacuum(lie, p, FpPoly::indeterminate(p));
                auto probes = V.enumerate_basis(cfg.depth, std::nullopt, 0);
                for (int x = 0; x < 3 && rep.pass; ++x)
                    for (int r : {1, 2}) {
                        rep = verify_center_field_modes(V, x, r, cfg.mode_bound, probes, cfg.threads);
                        if (!rep.pass) break;
                    }
            } else {
                auto V = ModuleSpec<Fp>::vacuum(lie, p, detail::resolve_kappa(ks, lie, p));
                auto probes = detail::probes_with_seed(V, cfg.depth, 0, cfg.seed);
                for (int x = 0; x < 3 && rep.pass; ++x)
                    for (int r : {1, 2}) {
                        rep = verify_center_field_modes(V, x, r, cfg.mode_bound, probes, cfg.threads);
                        if (!rep.pass) break;
                    }
            }
            detail::push_check(res, "center-field modes p=" + std::to_string(pv) + " kappa=" + ks, rep, t);
        }
    }
    return res;
}

inline SuiteResult suite_centrality(const SuiteConfig& cfg) {
    SuiteResult res{"centrality", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            CheckTimer t;
            VerifyReport rep;
            if (ks == "formal") {
                auto V = ModuleSpec<FpPoly>::vacuum(lie, p, FpPoly::indeterminate(p));
                rep = verify_centrality(V, cfg.mode_bound, V.enumerate_basis(cfg.depth, std::nullopt, 0));
            } else {
                auto V = ModuleSpec<Fp>::vacuum(lie, p, detail::resolve_kappa(ks, lie, p));
                rep = verify_centrality(V, cfg.mode_bound, V.enumerate_basis(cfg.depth, std::nullopt, 0));
            }
            detail::push_check(res, "centrality p=" + std::to_string(pv) + " kappa=" + ks, rep, t);
        }
    }
    return res;
}

inline SuiteResult suite_wff_relations(const SuiteConfig& cfg) {
    SuiteResult res{"wff-relations", cfg.to_json(), {}};
    auto lie = sl2();
    auto data = sl2_wff_data();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            CheckTimer t;
            VerifyReport rep;
            if (ks == "formal")
                rep = verify_wff_relations<FpPoly>(lie, data, p, FpPoly::indeterminate(p), cfg.mode_bound,
                                                   cfg.depth, {}, cfg.threads);
            else
                rep = verify_wff_relations<Fp>(lie, data, p, detail::resolve_kappa(ks, lie, p), cfg.mode_bound,
                                               cfg.depth, {}, cfg.threads);
            detail::push_check(res, "affine relations p=" + std::to_string(pv) + " kappa=" + ks, rep, t);
        }
    }
    return res;
}

inline SuiteResult suite_pcenter_images(const SuiteConfig& cfg) {
    SuiteResult res{"pcenter-images", cfg.to_json(), {}};
    auto lie = sl2();
    auto data = sl2_wff_data();
    for (uint32_t pv : cfg.primes) {
        if (pv != 2 && pv != 3 && !cfg.force)
            throw std::invalid_argument("pcenter-images at p=" + std::to_string(pv) +
                                        " is expensive; rerun with --force");
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            CheckTimer t;
            VerifyReport rep;
            if (ks == "formal")
                rep = verify_wff_pcenter_images<FpPoly>(lie, data, p, FpPoly::indeterminate(p), cfg.mode_bound,
                                                        cfg.depth, cfg.threads);
            else
                rep = verify_wff_pcenter_images<Fp>(lie, data, p, detail::resolve_kappa(ks, lie, p),
                                                    cfg.mode_bound, cfg.depth, cfg.threads);
            detail::push_check(res, "center images p=" + std::to_string(pv) + " kappa=" + ks, rep, t);
        }
    }
    return res;
}

inline SuiteResult suite_phi_pformula(const SuiteConfig& cfg) {
    SuiteResult res{"phi-pformula", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        CheckTimer t1;
        detail::push_check(res, "phi bracket preservation p=" + std::to_string(pv), verify_phi_bracket(lie, p), t1);
        CheckTimer t2;
        detail::push_check(res, "phi p-formula p=" + std::to_string(pv), verify_phi_pformula(lie, p), t2);
    }
    return res;
}

inline SuiteResult suite_character(const SuiteConfig& cfg) {
    SuiteResult res{"character", cfg.to_json(), {}};
    auto lie = sl2();
    auto data = sl2_wff_data();
    const int N = cfg.depth;
    const int cap = default_alpha_cap(std::max(N, 10));
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        // character of the baby Wakimoto module at -rho against the product formula
        {
            CheckTimer t;
            std::map<int32_t, Fp> lam{{0, Fp::from_int(cfg.lambda.empty() ? -1 : cfg.lambda[0], p)}};
            auto w = build_baby_wakimoto_critical<Fp>(lie, data, p, lam, PCharacter::zero());
            auto cf = fock_character(lie, w.basis(N), N, cap);
            auto mp = mathieu_product(lie, p, N, cap);
            VerifyReport rep;
            if (!(cf == mp)) rep = {false, "module character differs from the product formula"};
            if (rep.pass && pv == 2) {
                // pinned depth-0 coefficients for p=2: 1 at weight 0 and -alpha
                if (mp.coeff({{0}, 0}) != 1 || mp.coeff({{-1}, 0}) != 1 || mp.coeff({{-2}, 0}) != 0)
                    rep = {false, "pinned depth-0 coefficients are wrong"};
            }
            CheckResult c;
            c.name = "module character vs product formula p=" + std::to_string(pv);
            c.pass = rep.pass;
            c.details = rep.pass ? "delta-depth <= " + std::to_string(N) : rep.witness;
            c.witness = char_series_to_json(mp);
            c.millis = t.millis();
            res.checks.push_back(std::move(c));
        }
        // series identity and the Steinberg shift
        {
            CheckTimer t;
            const int NI = std::max(N, 10);
            auto lhs = mathieu_product(lie, p, NI, default_alpha_cap(NI));
            auto rhs = verma_denominator(lie, NI, default_alpha_cap(NI)) *
                       steinberg_factor(lie, p, NI, default_alpha_cap(NI));
            VerifyReport rep;
            std::string w;
            if (!lhs.equal_on_box(rhs, 2 * NI, NI, &w)) rep = {false, w};
            if (rep.pass && !lhs.support_within(NI + static_cast<int>(pv)))
                rep = {false, "product support leaks outside the comparison box"};
            // the (p-1)rho character carries the same product series shifted
            // by p rho: prefactors -1 and p-1 as multiples of rho
            long long shift = (static_cast<long long>(pv) - 1) - (-1);
            if (rep.pass && shift != static_cast<long long>(pv))
                rep = {false, "prefactor shift is not p rho"};
            detail::push_check(res, "series identity p=" + std::to_string(pv), rep, t,
                               "truncated at delta-depth " + std::to_string(NI));
        }
    }
    return res;
}

inline SuiteResult suite_singular(const SuiteConfig& cfg) {
    SuiteResult res{"singular", cfg.to_json(), {}};
    auto lie = sl2();
    auto data = sl2_wff_data();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        {
            CheckTimer t;
            std::map<int32_t, Fp> lam{{0, Fp::from_int(cfg.lambda.empty() ? -1 : cfg.lambda[0], p)}};
            auto w = build_baby_wakimoto_critical<Fp>(lie, data, p, lam, PCharacter::zero());
            auto act = [&](int x, int n, const SparseVec<Fp>& v) { return w.act(x, n, v); };
            auto census = singular_vectors(lie, p, w.basis(cfg.depth), act, cfg.depth);
            bool pass = true;
            nlohmann::json jentries = nlohmann::json::array();
            for (auto& e : census.entries) {
                if (e.depth >= 1 && e.depth <= cfg.depth) pass = false;
                nlohmann::json je{{"depth", e.depth}, {"weight", e.weight}};
                nlohmann::json vecs = nlohmann::json::array();
                for (auto& v : e.kernel) vecs.push_back(v.str(lie));
                je["vectors"] = std::move(vecs);
                jentries.push_back(std::move(je));
            }
            CheckResult c;
            c.name = "singular census of the Wakimoto module p=" + std::to_string(pv);
            c.pass = pass;
            c.details = pass ? "no singular vectors in depths 1.." + std::to_string(cfg.depth)
                             : "census is nonempty";
            c.witness = nlohmann::json{{"entries", std::move(jentries)}};
            c.millis = t.millis();
            res.checks.push_back(std::move(c));
        }
        {
            CheckTimer t;
            RestrictedQuotient<Fp> BV(ModuleSpec<Fp>::baby_verma(lie, p, Fp::zero(p), {Fp::zero(p)}),
                                      PCharacter::zero());
            auto act = [&](int x, int n, const SparseVec<Fp>& v) {
                return BV.apply(GenMode{Fam::Lie, static_cast<uint8_t>(x), n}, v);
            };
            auto census = singular_vectors(lie, p, BV.basis(1), act, 1);
            VerifyReport rep;
            if (census.empty()) rep = {false, "reducible baby Verma control produced an empty census"};
            detail::push_check(res, "reducible baby Verma control p=" + std::to_string(pv), rep, t,
                               rep.pass ? std::to_string(census.entries.size()) + " singular weight spaces" : "");
        }
    }
    return res;
}

inline SuiteResult suite_center_probe(const SuiteConfig& cfg) {
    SuiteResult res{"center-probe", cfg.to_json(), {}};
    auto lie = sl2();
    for (uint32_t pv : cfg.primes) {
        Prime p(pv);
        for (auto& ks : cfg.kappas) {
            if (ks == "formal") continue;
            CheckTimer t;
            auto rows = center_probe(lie, p, detail::resolve_kappa(ks, lie, p), cfg.depth);
            bool pass = true;
            bool excess = false;
            nlohmann::json jrows = nlohmann::json::array();
            for (auto& r : rows) {
                if (r.commutant_dim < r.p_center_dim) pass = false;
                if (r.commutant_dim > r.p_center_dim) excess = true;
                jrows.push_back({{"depth", r.depth},
                                 {"commutant_dim", r.commutant_dim},
                                 {"p_center_dim", r.p_center_dim}});
            }
            CheckResult c;
            c.name = "center probe p=" + std::to_string(pv) + " kappa=" + ks;
            c.pass = pass;
            c.details = pass ? (excess ? "commutant exceeds the p-center at some depth" : "commutant equals the p-center")
                             : "commutant smaller than the p-center";
            c.witness = nlohmann::json{{"rows", std::move(jrows)}};
            c.millis = t.millis();
            res.checks.push_back(std::move(c));
        }
    }
    return res;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (cfg.depth > cfg.depth_hard_cap)
        throw std::invalid_argument("depth " + std::to_string(cfg.depth) + " exceeds the hard cap " +
                                    std::to_string(cfg.depth_hard_cap));
    for (uint32_t pv : cfg.primes) Prime check(pv);  // validates primality
    if (name == "lucas") return suite_lucas(cfg);
    if (name == "restricted") return suite_restricted(cfg);
    if (name == "state-field") return suite_state_field(cfg);
    if (name == "iota-commute") return suite_iota_commute(cfg);
    if (name == "centrality") return suite_centrality(cfg);
    if (name == "wff-relations") return suite_wff_relations(cfg);
    if (name == "pcenter-images") return suite_pcenter_images(cfg);
    if (name == "phi-pformula") return suite_phi_pformula(cfg);
    if (name == "character") return suite_character(cfg);
    if (name == "singular") return suite_singular(cfg);
    if (name == "center-probe") return suite_center_probe(cfg);
    if (name == "all") {
        SuiteResult res{"all", cfg.to_json(), {}};
        for (auto& n : suite_names()) {
            if (n == "all") continue;
            auto sub = run_suite(n, cfg);
            for (auto& c : sub.checks) {
                c.name = n + "/" + c.name;
                res.checks.push_back(std::move(c));
            }
        }
        return res;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace modvertex
