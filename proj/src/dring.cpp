#include "dring.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

namespace epsq {

std::string AxiomReport::json_text() const {
    nlohmann::json j;
    j["axiom"] = axiom;
    j["verified_degree"] = verified_degree;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures)
        j["failures"].push_back({{"element", f.element}, {"witness_monomial", f.witness}});
    return j.dump();
}

namespace {

int degree_label(long bound) {
    // -1 marks an exact (untruncated) comparison in reports
    return bound >= kExactTrunc ? -1 : static_cast<int>(bound);
}

long min_long(long a, long b) { return a < b ? a : b; }

int clamp_trunc(long bound) { return static_cast<int>(std::clamp<long>(bound, 0, kExactTrunc)); }

} // namespace

std::vector<Variable> DRing::carrier_vars() const {
    std::vector<Variable> vars;
    for (const auto& c : carrier_) vars.push_back({c.name, 1});
    return vars;
}

DRing DRing::make(const FormalGroupLaw& F, int grade_a,
                  const std::vector<std::pair<std::string, uint32_t>>& vars,
                  const TwistResult* coeff_action) {
    if (!F.order_two()) fail(ErrCode::OrderTwoRequired, "model requires an order-two law");
    if (grade_a < 1 || grade_a > 2)
        fail(ErrCode::InvalidArgument, "grade multiple must be 1 or 2");
    DRing d(F, grade_a);
    for (const auto& [name, n] : vars) {
        if (n == 0) fail(ErrCode::InvalidArgument, "truncation order must be positive");
        if (F.ring()->find(name))
            fail(ErrCode::InvalidArgument, "carrier variable shadows a generator: " + name);
        d.carrier_.push_back({name, static_cast<uint32_t>(grade_a) * n});
    }

    // carrier images t -> t F(t,u)
    std::vector<Variable> cu = d.carrier_vars();
    cu.push_back({"u", 1});
    for (const auto& c : d.carrier_) {
        MultiSeries t = MultiSeries::variable(F.ring(), cu, c.name);
        MultiSeries su = MultiSeries::variable(F.ring(), cu, "u");
        MultiSeries img = t.mul_to(
            F.series().substitute_to({{F.var_x(), t}, {F.var_y(), su}}, kExactTrunc), kExactTrunc);
        d.var_images_.emplace(c.name, d.reduce(img));
    }

    // Coefficient generator images come from the twist: a generator occupying
    // the (i,j) slot of F goes to the coefficient series of F_u at that slot.
    // Its u^0 term is the Frobenius square, exact at every position.
    if (F.ring()->gen_count() > 0) {
        if (!coeff_action)
            fail(ErrCode::MissingCoefficientAction,
                 "coefficient ring has generators but no twist was supplied");
        d.twist_owned_ = std::make_shared<TwistResult>(*coeff_action);
        d.twist_ = d.twist_owned_.get();
        uint32_t span = static_cast<uint32_t>(
            F.series().exact() ? F.degree() : F.series().truncation());
        for (uint32_t m = 2; m <= span; ++m) {
            for (uint32_t i = 1; i < m; ++i) {
                uint32_t j = m - i;
                RingElem c = F.coefficient(i, j).coefficient({});
                if (c.terms().size() != 1) continue;
                const GenExp& mono = c.terms()[0];
                uint32_t total = 0;
                size_t idx = 0;
                for (size_t g = 0; g < mono.size(); ++g) {
                    total += mono[g];
                    if (mono[g] > 0) idx = g;
                }
                if (total != 1) continue; // not a bare generator slot
                const std::string& name = F.ring()->gen(idx).name;
                if (d.gen_images_.count(name)) continue;
                auto [series, depth] = coeff_action->coefficient_series(i, j, "u");
                RingElem frobenius = c.square();
                if (depth >= 0 && series.coefficient({0}) != frobenius)
                    fail(ErrCode::Internal, "twist u^0 slice disagrees with squaring at " + name);
                if (depth < 0) series.insert_term({0}, frobenius);
                d.gen_images_.emplace(name, series);
            }
        }
        for (size_t g = 0; g < F.ring()->gen_count(); ++g) {
            const std::string& name = F.ring()->gen(g).name;
            if (!d.gen_images_.count(name))
                fail(ErrCode::MissingCoefficientAction,
                     "no total-operation image for generator " + name);
        }
    }
    return d;
}

DRing DRing::additive_model(size_t k, uint32_t order, int degree) {
    RingPtr f2 = CoeffRing::f2(0);
    FormalGroupLaw add = FormalGroupLaw::additive(f2, degree);
    std::vector<std::pair<std::string, uint32_t>> vars;
    for (size_t i = 1; i <= k; ++i) vars.emplace_back("t" + std::to_string(i), order);
    return make(add, 1, vars);
}

MultiSeries DRing::parse_element(const std::string& text) const {
    return reduce(parse_series(ring(), carrier_vars(), text));
}

MultiSeries DRing::reduce(const MultiSeries& s) const {
    MultiSeries out = s;
    for (const auto& c : carrier_) {
        bool present = false;
        for (const auto& v : out.vars())
            if (v.name == c.name) present = true;
        if (present) out = out.cap_variable(c.name, c.order);
    }
    return out;
}

const MultiSeries& DRing::image_of(const std::string& name) const {
    auto vi = var_images_.find(name);
    if (vi != var_images_.end()) return vi->second;
    auto gi = gen_images_.find(name);
    if (gi != gen_images_.end()) return gi->second;
    fail(ErrCode::InvalidArgument, "no image recorded for " + name);
}

MultiSeries DRing::apply_images(const MultiSeries& x, const std::string& u,
                                const std::string& inner) const {
    // output variables: those of x, plus the outer series variable
    std::vector<Variable> vars = x.vars();
    for (const auto& v : vars)
        if (v.name == u) fail(ErrCode::InvalidArgument, "outer variable collides: " + u);
    vars.push_back({u, 1});

    std::vector<MultiSeries> imgs;
    for (const auto& v : x.vars()) {
        auto vi = var_images_.find(v.name);
        if (vi != var_images_.end()) {
            MultiSeries img = vi->second;
            if (u != "u") img = img.rename_variable("u", {u, 1});
            imgs.push_back(img.with_variables(vars));
        } else if (!inner.empty() && v.name == inner) {
            // the inner total variable transforms by D_u(v) = v F(u, v)
            MultiSeries sv = MultiSeries::variable(ring(), vars, inner);
            MultiSeries su = MultiSeries::variable(ring(), vars, u);
            MultiSeries img = sv.mul_to(
                law_.series().substitute_to({{law_.var_x(), su}, {law_.var_y(), sv}}, kExactTrunc),
                kExactTrunc);
            imgs.push_back(reduce(img));
        } else {
            fail(ErrCode::InvalidArgument, "element uses unknown variable " + v.name);
        }
    }

    MultiSeries total = MultiSeries::zero(ring(), vars, kExactTrunc);
    for (const auto& [ve, coeff] : x.terms()) {
        // coefficient image: sum over monomials of products of generator images
        MultiSeries cimg = MultiSeries::zero(ring(), vars, kExactTrunc);
        for (const auto& mono : coeff.terms()) {
            MultiSeries prod = MultiSeries::constant(RingElem::one(ring()), vars);
            for (size_t g = 0; g < mono.size(); ++g) {
                if (mono[g] == 0) continue;
                auto gi = gen_images_.find(ring()->gen(g).name);
                if (gi == gen_images_.end())
                    fail(ErrCode::MissingCoefficientAction,
                         "no total-operation image for generator " + ring()->gen(g).name);
                MultiSeries img = gi->second;
                if (u != "u") img = img.rename_variable("u", {u, 1});
                prod =
                    prod.mul_to(img.with_variables(vars).pow_to(mono[g], kExactTrunc), kExactTrunc);
            }
            cimg = cimg + prod;
        }
        MultiSeries term = cimg;
        for (size_t i = 0; i < ve.size(); ++i) {
            if (ve[i] == 0) continue;
            term = reduce(term.mul_to(imgs[i].pow_to(ve[i], kExactTrunc), kExactTrunc));
        }
        total = total + term;
    }

    // Unknown input terms sit above x's truncation and their images start at
    // twice that degree, so the composite is sound through 2*trunc + 1.
    if (!x.exact()) total = total.truncate_to(clamp_trunc(2L * x.truncation() + 1));
    return reduce(total);
}

MultiSeries DRing::apply_total(const MultiSeries& x, const std::string& u) const {
    return apply_images(x, u, "");
}

std::vector<MultiSeries> DRing::default_samples(uint64_t seed, size_t extra) const {
    std::vector<MultiSeries> out;
    std::vector<std::string> seen;
    auto push = [&](const MultiSeries& s) {
        if (s.is_zero()) return;
        std::string key = s.to_text();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        out.push_back(s);
    };

    std::vector<Variable> vars = carrier_vars();
    for (const auto& c : carrier_) push(MultiSeries::variable(ring(), vars, c.name));
    for (size_t g = 0; g < ring()->gen_count(); ++g)
        push(MultiSeries::constant(RingElem::generator(ring(), ring()->gen(g).name), vars));

    // all carrier monomials of total degree <= 3
    std::vector<VarExp> frontier{VarExp(carrier_.size(), 0)};
    for (int d = 1; d <= 3; ++d) {
        std::vector<VarExp> next;
        for (const auto& e : frontier) {
            for (size_t i = 0; i < carrier_.size(); ++i) {
                VarExp ne = e;
                ne[i] += 1;
                if (ne[i] >= carrier_[i].order) continue;
                next.push_back(ne);
                MultiSeries m(ring(), vars, kExactTrunc);
                m.insert_term(ne, RingElem::one(ring()));
                push(m);
            }
        }
        frontier = std::move(next);
    }

    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < extra; ++i) {
        MultiSeries s(ring(), vars, kExactTrunc);
        size_t terms = 1 + rng() % 4;
        for (size_t t = 0; t < terms; ++t) {
            VarExp e(carrier_.size(), 0);
            for (size_t v = 0; v < e.size(); ++v)
                e[v] = static_cast<uint32_t>(rng() % std::min<uint32_t>(carrier_[v].order, 4));
            GenExp g(ring()->gen_count(), 0);
            for (auto& gv : g) gv = static_cast<uint32_t>(rng() % 2);
            s.insert_term(e, RingElem::monomial(ring(), g));
        }
        push(s);
    }
    return out;
}

AxiomReport DRing::check_d1(const std::vector<MultiSeries>& samples) const {
    AxiomReport rep;
    rep.axiom = "D1";
    long verified = kExactTrunc;
    for (const auto& x : samples) {
        MultiSeries lhs = apply_total(x).coefficient_of("u", 0);
        MultiSeries rhs = reduce(x.square());
        long bound = min_long(lhs.truncation(), rhs.truncation());
        MultiSeries tl = lhs.truncate_to(clamp_trunc(bound));
        MultiSeries tr = rhs.truncate_to(clamp_trunc(bound));
        auto diff = tl.first_difference(tr);
        if (diff) rep.failures.push_back({x.to_text(), (tl + tr).term_text(*diff)});
        verified = min_long(verified, bound);
    }
    rep.verified_degree = degree_label(verified);
    return rep;
}

AxiomReport DRing::check_d2() const {
    AxiomReport rep;
    rep.axiom = "D2";
    std::shared_ptr<TwistResult> local;
    const TwistResult* tw = twist_;
    if (!tw) {
        local = std::make_shared<TwistResult>(lubin_twist(law_));
        tw = local.get();
    }

    // Every slot is compared at least at u^0, where the twist coefficient is
    // the Frobenius square; deeper u powers are compared to the determined
    // depth of the solve.
    std::vector<Variable> vars = carrier_vars();
    int max_m = 0;
    uint32_t span =
        static_cast<uint32_t>(law_.series().exact() ? law_.degree() : law_.series().truncation());
    for (uint32_t m = 2; m <= span; ++m) {
        max_m = static_cast<int>(m);
        for (uint32_t i = 1; i < m; ++i) {
            uint32_t j = m - i;
            RingElem a = law_.coefficient(i, j).coefficient({});
            MultiSeries lhs = apply_total(MultiSeries::constant(a, vars));
            auto [rhs, depth] = tw->coefficient_series(i, j, "u");
            if (depth < 0) rhs.insert_term({0}, a.square());
            long bound = min_long(lhs.truncation(), std::max(depth, 0));
            MultiSeries tl = lhs.truncate_to(clamp_trunc(bound));
            MultiSeries tr = rhs.with_variables(tl.vars()).truncate_to(clamp_trunc(bound));
            auto diff = tl.first_difference(tr);
            if (diff)
                rep.failures.push_back(
                    {"a_" + std::to_string(i) + "_" + std::to_string(j), (tl + tr).term_text(*diff)});
        }
    }
    rep.verified_degree = max_m;
    return rep;
}

AxiomReport DRing::check_d3(const std::vector<MultiSeries>& samples) const {
    AxiomReport rep;
    rep.axiom = "D3";
    long verified = kExactTrunc;
    for (const auto& x : samples) {
        MultiSeries dv = apply_total(x, "v");
        MultiSeries du = apply_total(x, "u");
        MultiSeries c1 = apply_images(dv, "u", "v");
        MultiSeries c2 = apply_images(du, "v", "u");
        long bound = min_long(c1.truncation(), c2.truncation());
        MultiSeries t1 = c1.truncate_to(clamp_trunc(bound));
        MultiSeries t2 = c2.truncate_to(clamp_trunc(bound));
        auto diff = t1.first_difference(t2);
        if (diff) rep.failures.push_back({x.to_text(), (t1 + t2).term_text(*diff)});
        verified = min_long(verified, bound);
    }
    rep.verified_degree = degree_label(verified);
    return rep;
}

AxiomReport DRing::check_hom(
    const std::vector<std::pair<MultiSeries, MultiSeries>>& pairs) const {
    AxiomReport rep;
    rep.axiom = "hom";
    long verified = kExactTrunc;
    auto compare = [&](const MultiSeries& lhs, const MultiSeries& rhs, const std::string& label,
                       const std::string& what) {
        long bound = min_long(lhs.truncation(), rhs.truncation());
        MultiSeries tl = lhs.truncate_to(clamp_trunc(bound));
        MultiSeries tr = rhs.truncate_to(clamp_trunc(bound));
        if (tl.first_difference(tr)) rep.failures.push_back({label, what});
        verified = min_long(verified, bound);
    };
    for (const auto& [x, y] : pairs) {
        MultiSeries dx = apply_total(x);
        MultiSeries dy = apply_total(y);
        std::string label = x.to_text() + " | " + y.to_text();
        compare(apply_total(reduce(x.mul_to(y, kExactTrunc))), reduce(dx.mul_to(dy, kExactTrunc)),
                label, "product");
        compare(apply_total(x + y), dx + dy, label, "sum");
    }
    rep.verified_degree = degree_label(verified);
    return rep;
}

MultiSeries DRing::euler_total(const std::string& var) const {
    const CarrierVar* cv = nullptr;
    for (const auto& c : carrier_)
        if (c.name == var) cv = &c;
    if (!cv) fail(ErrCode::InvalidArgument, "unknown carrier variable " + var);

    std::vector<Variable> vars = carrier_vars();
    MultiSeries t = MultiSeries::variable(ring(), vars, var);
    MultiSeries e = reduce(t.pow_to(static_cast<uint32_t>(grade_), kExactTrunc));
    MultiSeries lhs =
        reduce(apply_total(t).pow_to(static_cast<uint32_t>(grade_), kExactTrunc));

    std::vector<Variable> cu = vars;
    cu.push_back({"u", 1});
    MultiSeries rhs = MultiSeries::zero(ring(), cu, kExactTrunc);
    if (!e.is_zero()) {
        FormalGroupLaw fa = square_compose(law_, static_cast<uint32_t>(grade_));
        MultiSeries su = MultiSeries::variable(ring(), cu, "u");
        MultiSeries ua = su.pow_to(static_cast<uint32_t>(grade_), kExactTrunc);
        MultiSeries e3 = e.with_variables(cu);
        rhs = reduce(e3.mul_to(
            fa.series().substitute_to({{fa.var_x(), e3}, {fa.var_y(), ua}}, kExactTrunc),
            kExactTrunc));
    }
    long bound = min_long(lhs.truncation(), rhs.truncation());
    MultiSeries tl = lhs.truncate_to(clamp_trunc(bound));
    MultiSeries tr = rhs.with_variables(tl.vars()).truncate_to(clamp_trunc(bound));
    auto diff = tl.first_difference(tr);
    if (diff)
        fail(ErrCode::CompatibilityViolated,
             "euler class identity fails at " + (tl + tr).term_text(*diff));
    return lhs;
}

} // namespace epsq
