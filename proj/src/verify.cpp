#include "strel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "json.hpp"

namespace strel {

namespace {

struct Ctx {
    SuiteRequest req;
    RingSpec ring;
    FiniteGroup G;
    std::string base;
};

struct Res {
    std::string status;
    std::string witness;
};

std::string shape_str(const Shape& s) {
    std::string t = "[";
    for (std::size_t i = 0; i < s.exps.size(); ++i) {
        if (i) t += ",";
        t += std::to_string(s.exps[i]);
    }
    return t + "]";
}

std::string iso_str(IsoStatus s) {
    return s == IsoStatus::Yes ? "pass" : (s == IsoStatus::No ? "fail" : "unknown");
}

CheckReport timed(const std::string& id, const std::string& ref, const std::string& params,
                  const std::function<Res()>& body) {
    CheckReport r;
    r.id = id;
    r.paper_ref = ref;
    r.params = params;
    auto t0 = std::chrono::steady_clock::now();
    Res res = body();
    auto t1 = std::chrono::steady_clock::now();
    r.status = res.status;
    r.witness = res.witness;
    r.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return r;
}

CheckReport vacuous(const std::string& id, const std::string& ref, const std::string& params,
                    const std::string& why) {
    CheckReport r;
    r.id = id;
    r.paper_ref = ref;
    r.params = params;
    r.status = "pass";
    r.witness = why;
    return r;
}

bool is_p_power(std::size_t order, std::uint64_t p) {
    while (order % p == 0) order /= p;
    return order == 1;
}

// Random relation rows between induced modules: pick the image of each
// source generator block subject to the congruence its exponent demands and
// extend along the group action.
GModule random_presentation(const RingSpec& ring, const FiniteGroup& G, unsigned level,
                            std::mt19937_64& eng, std::size_t max_gens,
                            const std::vector<unsigned>* fixed_lam) {
    auto rnd = [&](std::uint64_t m) { return m ? eng() % m : 0; };
    std::vector<unsigned> lam;
    if (fixed_lam) {
        lam = *fixed_lam;
    } else {
        std::size_t s = 1 + rnd(max_gens);
        for (std::size_t i = 0; i < s; ++i) lam.push_back(1 + static_cast<unsigned>(rnd(level)));
        std::sort(lam.rbegin(), lam.rend());
    }
    GModule T = induce_shape(ring, G, level, Shape::make(ring.at_level(level), lam));
    std::size_t t = rnd(lam.size() + 1);
    if (t == 0) return T;
    std::vector<unsigned> mu;
    for (std::size_t j = 0; j < t; ++j) mu.push_back(1 + static_cast<unsigned>(rnd(level)));
    std::sort(mu.rbegin(), mu.rend());
    GModule S = induce_shape(ring, G, level, Shape::make(ring.at_level(level), mu));
    std::size_t o = G.order;
    RMatrix H(T.shape.ring, S.rank(), T.rank());
    for (std::size_t j = 0; j < t; ++j) {
        std::vector<std::uint64_t> r(T.rank(), 0);
        for (std::size_t c = 0; c < T.rank(); ++c) {
            unsigned lc = T.shape.exps[c];
            unsigned sh = lc > mu[j] ? lc - mu[j] : 0;
            r[c] = rnd(ring.pow_of_p(lc - sh)) * ring.pow_of_p(sh);
        }
        for (std::size_t g = 0; g < o; ++g) {
            std::vector<std::uint64_t> row = T.act(g).mat.apply_row(r);
            for (std::size_t c = 0; c < T.rank(); ++c) H.at(j * o + g, c) = row[c];
        }
    }
    GHom f = GHom::make(S, T, RnHom::make(S.shape, T.shape, std::move(H)));
    return cokernel_g(f).quot;
}

GModule random_two_generator(const RingSpec& ring, const FiniteGroup& G, std::mt19937_64& eng) {
    std::vector<unsigned> lam{1, 1};
    return random_presentation(ring, G, 1, eng, 2, &lam);
}

std::vector<unsigned> intersect(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<unsigned> interval(unsigned lo, unsigned hi) {
    std::vector<unsigned> out;
    for (unsigned i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

// ---- suites -------------------------------------------------------------

std::vector<CheckReport> suite_prop21(const Ctx& c) {
    std::vector<CheckReport> out;
    for (unsigned i = 1; i <= c.ring.n; ++i) {
        out.push_back(timed("prop-2.1", "Prop 2.1", c.base + " i=" + std::to_string(i), [&] {
            Shape ri = Shape::make(c.ring.at_level(i), {i});
            GModule ind = induce_shape(c.ring, c.G, i, ri);
            IsoResult r = is_isomorphic(ind, regular_module(c.ring, c.G, i), c.req.seed,
                                        c.req.budget);
            std::string w = "induce(R_" + std::to_string(i) + ") shape " + shape_str(ind.shape);
            if (r.status == IsoStatus::Yes) w += ", matches A_" + std::to_string(i) + " by a verified invertible hom";
            return Res{iso_str(r.status), w};
        }));
    }
    std::mt19937_64 eng(c.req.seed);
    for (unsigned i = 1; i <= c.ring.n; ++i) {
        for (unsigned t = 0; t < 2; ++t) {
            std::vector<unsigned> exps;
            std::size_t rank = 1 + eng() % 2;
            for (std::size_t k = 0; k < rank; ++k)
                exps.push_back(1 + static_cast<unsigned>(eng() % i));
            std::sort(exps.rbegin(), exps.rend());
            std::string params =
                c.base + " i=" + std::to_string(i) + " sample=" + std::to_string(t);
            out.push_back(timed("prop-2.1", "Prop 2.1", params, [&] {
                GModule ind = induce_shape(c.ring, c.G, i, Shape::make(c.ring.at_level(i), exps));
                StableVerdict v = is_weakly_projective(ind);
                std::string w = "induced module of shape " + shape_str(ind.shape);
                w += v.weakly_projective ? ": trace preimage verified" : ": trace test failed";
                return Res{v.weakly_projective ? "pass" : "fail", w};
            }));
        }
    }
    return out;
}

std::vector<CheckReport> suite_lemma22(const Ctx& c) {
    std::vector<CheckReport> out;
    if (c.ring.n < 2) {
        out.push_back(vacuous("lemma-2.2", "Lemma 2.2", c.base, "vacuous at n=1"));
        return out;
    }
    for (unsigned m = 2; m <= c.ring.n; ++m) {
        out.push_back(timed("lemma-2.2", "Lemma 2.2", c.base + " m=" + std::to_string(m), [&] {
            GModule W = cosyzygy_w(c.ring, c.G, m).w;
            GModule bc = base_change(W, m - 1);
            IsoResult r =
                is_isomorphic(bc, regular_module(c.ring, c.G, m - 1), c.req.seed, c.req.budget);
            std::string w = "base_change(W_" + std::to_string(m) + ", " + std::to_string(m - 1) +
                            ") shape " + shape_str(bc.shape);
            if (r.status == IsoStatus::Yes) w += ", invertible equivariant witness verified";
            return Res{iso_str(r.status), w};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_lemma23(const Ctx& c) {
    std::vector<CheckReport> out;
    if (c.ring.n < 2) {
        out.push_back(vacuous("lemma-2.3", "Lemma 2.3", c.base, "vacuous at n=1"));
        return out;
    }
    for (unsigned m = 2; m <= c.ring.n; ++m) {
        out.push_back(timed("lemma-2.3", "Lemma 2.3", c.base + " m=" + std::to_string(m), [&] {
            SES ses = magic_sequence(c.ring, c.G, m);
            ses.validate();
            std::optional<RnHom> retr = check_r_split(ses);
            bool split = retr.has_value() &&
                         ses.i.underlying.then(*retr) == RnHom::identity(ses.i.source.shape);
            IsoResult sub = is_isomorphic(
                ses.i.source, view_at_level(trivial_module(c.ring, c.G, m - 1), m), c.req.seed,
                c.req.budget);
            IsoResult mid = is_isomorphic(ses.i.target, cosyzygy_w(c.ring, c.G, m).w, c.req.seed,
                                          c.req.budget);
            std::string st = "pass";
            if (!split || sub.status == IsoStatus::No || mid.status == IsoStatus::No) st = "fail";
            else if (sub.status == IsoStatus::Unknown || mid.status == IsoStatus::Unknown)
                st = "unknown";
            std::string w = "exact, base-ring retraction verified; sub shape " +
                            shape_str(ses.i.source.shape) + " = R_" + std::to_string(m - 1) +
                            ", middle shape " + shape_str(ses.i.target.shape) + " = W_" +
                            std::to_string(m);
            return Res{st, w};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_lemma24(const Ctx& c) {
    std::vector<CheckReport> out;
    if (c.ring.n < 2) {
        out.push_back(vacuous("lemma-2.4", "Lemma 2.4", c.base, "vacuous at n=1"));
        return out;
    }
    for (unsigned i = 1; i <= c.ring.n; ++i)
        for (unsigned j = i + 1; j <= c.ring.n; ++j) {
            std::string params =
                c.base + " i=" + std::to_string(i) + " j=" + std::to_string(j);
            out.push_back(timed("lemma-2.4", "Lemma 2.4", params, [&] {
                GModule lhs = tensor_g(cosyzygy_w(c.ring, c.G, i).w, cosyzygy_w(c.ring, c.G, j).w);
                GModule rhs = view_at_level(
                    i >= 2 ? regular_module(c.ring, c.G, i - 1) : GModule::zero(c.ring, c.G), j);
                for (std::size_t t = 1; t < c.G.order; ++t)
                    rhs = direct_sum_g(rhs, view_at_level(regular_module(c.ring, c.G, i), j)).sum;
                std::string w = "W_" + std::to_string(i) + " (x) W_" + std::to_string(j) +
                                " shape " + shape_str(lhs.shape);
                if (is_p_power(c.G.order, c.ring.p)) {
                    StableVerdict va = is_weakly_projective(lhs);
                    StableVerdict vb = is_weakly_projective(rhs);
                    bool ok = va.weakly_projective && vb.weakly_projective &&
                              lhs.shape == rhs.shape;
                    w += ok ? "; both sides weakly projective with verified traces and equal "
                              "shapes, which determines the module for a p-group"
                            : "; decomposition mismatch against " + shape_str(rhs.shape);
                    return Res{ok ? "pass" : "fail", w};
                }
                IsoResult r = is_isomorphic(lhs, rhs, c.req.seed, c.req.budget);
                if (r.status == IsoStatus::Yes) w += "; verified invertible hom onto " + shape_str(rhs.shape);
                return Res{iso_str(r.status), w};
            }));
        }
    return out;
}

std::vector<CheckReport> suite_lemma41(const Ctx& c) {
    std::vector<CheckReport> out;
    out.push_back(timed("lemma-4.1", "Lemma 4.1", c.base, [&] {
        GModule sigma = suspend(trivial_module(c.ring, c.G, c.ring.n)).sigma;
        GModule cn = c.ring.n >= 2
                         ? cone(magic_sequence(c.ring, c.G, c.ring.n).i).cone
                         : cone(GHom::zero(view_at_level(GModule::zero(c.ring, c.G), 1),
                                           cosyzygy_w(c.ring, c.G, 1).w))
                               .cone;
        StableIsoResult r = stably_isomorphic(cn, sigma, c.req.seed, c.req.budget);
        std::string w = "cone shape " + shape_str(cn.shape) + " vs sigma(1_n) shape " +
                        shape_str(sigma.shape);
        if (r.status == IsoStatus::Yes) w += "; witness map has weakly projective cone";
        return Res{iso_str(r.status), w};
    }));
    return out;
}

std::vector<CheckReport> suite_lemma51(const Ctx& c) {
    std::vector<CheckReport> out;
    GModule k = trivial_module(c.ring, c.G, 1);
    std::vector<std::pair<std::string, GModule>> xs;
    xs.emplace_back("k", k);
    xs.emplace_back("sigma-k", suspend(k).sigma);
    xs.emplace_back("sigma2-k", suspend(suspend(k).sigma).sigma);
    xs.emplace_back("A_1", regular_module(c.ring, c.G, 1));
    std::mt19937_64 eng(c.req.seed);
    xs.emplace_back("random-1", random_two_generator(c.ring, c.G, eng));
    xs.emplace_back("random-2", random_two_generator(c.ring, c.G, eng));
    for (const auto& [name, X] : xs) {
        out.push_back(timed("lemma-5.1", "Lemma 5.1", c.base + " x=" + name, [&] {
            GModule FX = functor_f(X);
            GModule PX = mult_functor(FX, c.ring.n - 1);
            StableIsoResult r = stably_isomorphic(PX, X, c.req.seed, c.req.budget);
            StableVerdict v = is_weakly_projective(base_change(FX, c.ring.n - 1));
            std::string st = iso_str(r.status);
            if (st == "pass" && !v.weakly_projective) st = "fail";
            std::string w = "F(x) shape " + shape_str(FX.shape) + "; mult(F(x), n-1) shape " +
                            shape_str(PX.shape);
            if (r.status == IsoStatus::Yes) w += " stably x with verified witness";
            w += v.weakly_projective ? "; base change weakly projective (trace verified)"
                                     : "; base change fails the trace test";
            return Res{st, w};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_thm54(const Ctx& c) {
    std::vector<CheckReport> out;
    std::mt19937_64 eng(c.req.seed);
    for (unsigned t = 0; t < 25; ++t) {
        GModule M = random_module(c.ring, c.G, c.ring.n, eng);
        GModule N = random_module(c.ring, c.G, c.ring.n, eng);
        out.push_back(timed("thm-5.4", "Thm 5.4", c.base + " pair=" + std::to_string(t), [&] {
            GHom f = mult_monoidal(M, N, c.ring.n - 1);
            bool ok = f.source.shape == f.target.shape && kernel_g(f).sub.is_zero();
            std::string w = "mult(M,n-1) (x) mult(N,n-1) shape " + shape_str(f.source.shape);
            w += ok ? "; canonical map is a verified bijection"
                    : "; canonical map fails against " + shape_str(f.target.shape);
            return Res{ok ? "pass" : "fail", w};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_prop61(const Ctx& c) {
    std::vector<CheckReport> out;
    if (c.ring.n < 2) {
        out.push_back(vacuous("prop-6.1", "Prop 6.1", c.base, "vacuous at n=1"));
        return out;
    }
    for (unsigned i = 1; i <= c.ring.n; ++i)
        for (unsigned j = i + 1; j <= c.ring.n; ++j) {
            std::string params = c.base + " i=" + std::to_string(i) + " j=" + std::to_string(j);
            out.push_back(timed("prop-6.1", "Prop 6.1", params, [&] {
                GModule t = tensor_g(cosyzygy_w(c.ring, c.G, i).w, cosyzygy_w(c.ring, c.G, j).w);
                StableVerdict v = is_weakly_projective(t);
                std::string w = "W_" + std::to_string(i) + " (x) W_" + std::to_string(j) +
                                " shape " + shape_str(t.shape);
                w += v.weakly_projective ? "; trace preimage verified" : "; trace test failed";
                return Res{v.weakly_projective ? "pass" : "fail", w};
            }));
        }
    return out;
}

std::vector<CheckReport> suite_thm66(const Ctx& c) {
    require(c.G.order == c.ring.p, "suite thm-6.6 needs a cyclic group of prime order p");
    std::vector<CheckReport> out;
    out.push_back(timed("thm-6.6", "Thm 6.6", c.base, [&] {
        auto pts = spc_points(c.ring, c.G);
        bool ok = pts.size() == c.ring.n;
        std::string w = std::to_string(pts.size()) +
                        " spectrum points; generator cosyzygies pairwise annihilate under tensor";
        return Res{ok ? "pass" : "fail", w};
    }));
    out.push_back(timed("thm-6.6", "Thm 6.6", c.base + " object=unit", [&] {
        SupportSet s = support(trivial_module(c.ring, c.G, c.ring.n));
        bool ok = s.members == interval(1, c.ring.n);
        return Res{ok ? "pass" : "fail", "support(1_n) = " + s.str()};
    }));
    out.push_back(timed("thm-6.6", "Thm 6.6", c.base + " object=regular", [&] {
        SupportSet s = support(regular_module(c.ring, c.G, c.ring.n));
        return Res{s.members.empty() ? "pass" : "fail", "support(A_n) = " + s.str()};
    }));
    return out;
}

std::vector<CheckReport> suite_cor67(const Ctx& c) {
    require(c.G.order == c.ring.p, "suite cor-6.7 needs a cyclic group of prime order p");
    std::vector<CheckReport> out;
    for (unsigned i = 1; i <= c.ring.n; ++i) {
        out.push_back(timed("cor-6.7", "Cor 6.7", c.base + " i=" + std::to_string(i), [&] {
            SupportSet s = support(view_at_level(cosyzygy_w(c.ring, c.G, i).w, c.ring.n));
            bool ok = s.members == std::vector<unsigned>{i};
            return Res{ok ? "pass" : "fail",
                       "support(W_" + std::to_string(i) + ") = " + s.str()};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_cor68(const Ctx& c) {
    std::vector<CheckReport> out;
    if (c.ring.n < 2) {
        out.push_back(vacuous("cor-6.8", "Cor 6.8", c.base, "vacuous at n=1"));
        return out;
    }
    std::mt19937_64 eng(c.req.seed);
    for (unsigned m = 1; m < c.ring.n; ++m) {
        out.push_back(timed("cor-6.8", "Cor 6.8", c.base + " m=" + std::to_string(m), [&] {
            SupportSet unit_up = support(view_at_level(trivial_module(c.ring, c.G, m), c.ring.n));
            SupportSet unit_own = support(trivial_module(c.ring, c.G, m));
            bool ok = unit_up.members == interval(1, m) && unit_own.members == interval(1, m);
            std::string w = "support(1_" + std::to_string(m) + " viewed at n) = " + unit_up.str();
            for (unsigned t = 0; t < 3 && ok; ++t) {
                GModule X = view_at_level(random_module(c.ring, c.G, m, eng), c.ring.n);
                SupportSet s = support(X);
                ok = intersect(s.members, interval(1, m)) == s.members;
                if (!ok) w += "; random level-" + std::to_string(m) + " module escapes: " + s.str();
            }
            if (ok) w += "; random level-" + std::to_string(m) + " modules stay within {1..m}";
            return Res{ok ? "pass" : "fail", w};
        }));
    }
    return out;
}

std::vector<CheckReport> suite_tensor_support(const Ctx& c) {
    require(c.G.order == c.ring.p,
            "suite tensor-support needs a cyclic group of prime order p");
    std::vector<CheckReport> out;
    std::mt19937_64 eng(c.req.seed);
    for (unsigned t = 0; t < 50; ++t) {
        GModule X = random_module(c.ring, c.G, c.ring.n, eng);
        GModule Y = random_module(c.ring, c.G, c.ring.n, eng);
        out.push_back(
            timed("tensor-support", "Thm 6.6 (tensor formula)",
                  c.base + " pair=" + std::to_string(t), [&] {
                      SupportSet sx = support(X);
                      SupportSet sy = support(Y);
                      SupportSet st = support(tensor_g(X, Y));
                      bool ok = st.members == intersect(sx.members, sy.members);
                      std::string w = "supp X = " + sx.str() + ", supp Y = " + sy.str() +
                                      ", supp X(x)Y = " + st.str();
                      return Res{ok ? "pass" : "fail", w};
                  }));
    }
    return out;
}

using SuiteFn = std::vector<CheckReport> (*)(const Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"prop-2.1", suite_prop21},   {"lemma-2.2", suite_lemma22},
        {"lemma-2.3", suite_lemma23}, {"lemma-2.4", suite_lemma24},
        {"lemma-4.1", suite_lemma41}, {"lemma-5.1", suite_lemma51},
        {"thm-5.4", suite_thm54},     {"prop-6.1", suite_prop61},
        {"thm-6.6", suite_thm66},     {"cor-6.7", suite_cor67},
        {"cor-6.8", suite_cor68},     {"tensor-support", suite_tensor_support},
    };
    return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

std::vector<CheckReport> run_suite(const std::string& suite, const SuiteRequest& req) {
    Ctx c{req, RingSpec::make(req.p, req.n), FiniteGroup::parse(req.group), {}};
    c.base = "p=" + std::to_string(req.p) + " n=" + std::to_string(req.n) + " group=" + req.group;
    if (suite == "all") {
        std::vector<CheckReport> out;
        for (const auto& [name, fn] : registry()) {
            std::vector<CheckReport> part = fn(c);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    for (const auto& [name, fn] : registry())
        if (name == suite) return fn(c);
    throw ParseError("unknown suite \"" + suite + "\"");
}

bool all_pass(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return r.status == "pass"; });
}

std::string text_report(const std::vector<CheckReport>& reports) {
    std::string out;
    std::size_t pass = 0, fail = 0, unknown = 0;
    for (const CheckReport& r : reports) {
        (r.status == "pass" ? pass : r.status == "fail" ? fail : unknown) += 1;
        out += r.status;
        out.append(r.status.size() < 8 ? 8 - r.status.size() : 1, ' ');
        out += r.id + "  {" + r.params + "}  [" + r.paper_ref + "]  " +
               std::to_string(r.wall_ms) + " ms\n        " + r.witness + "\n";
    }
    out += std::to_string(reports.size()) + " checks: " + std::to_string(pass) + " pass, " +
           std::to_string(fail) + " fail, " + std::to_string(unknown) + " unknown\n";
    return out;
}

std::string machine_report(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) {
        nlohmann::json j;
        j["id"] = r.id;
        j["params"] = r.params;
        j["paper_ref"] = r.paper_ref;
        j["status"] = r.status;
        j["witness"] = r.witness;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

GModule random_module(const RingSpec& ring, const FiniteGroup& G, unsigned level,
                      std::mt19937_64& eng) {
    require(level >= 1, "random modules need a positive level");
    std::size_t max_gens = G.order >= 5 ? 1 : (G.order == 2 ? 3 : 2);
    if (eng() % 2 == 0) return random_presentation(ring, G, level, eng, max_gens, nullptr);
    std::size_t cnt = 1 + eng() % 2;
    GModule acc = view_at_level(GModule::zero(ring, G), level);
    for (std::size_t t = 0; t < cnt; ++t) {
        unsigned j = 1 + static_cast<unsigned>(eng() % level);
        GModule atom;
        switch (eng() % 4) {
            case 0: atom = trivial_module(ring, G, j); break;
            case 1: atom = cosyzygy_w(ring, G, j).w; break;
            case 2: atom = regular_module(ring, G, j); break;
            default: atom = dual_g(cosyzygy_w(ring, G, j).w); break;
        }
        acc = direct_sum_g(acc, view_at_level(atom, level)).sum;
    }
    return acc;
}

}  // namespace strel
